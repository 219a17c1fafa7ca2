use num_traits::Zero;

use super::scalar::Field;
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Interpolating polynomial of degree at most `degree` through `points`.
///
/// The first `degree + 1` points determine the polynomial (Newton divided
/// differences); any further points are checked against it and a mismatch
/// is reported as [`AlgebraError::DegreeMismatch`].
pub fn poly_interpolate<F: Field>(points: &[(F, F)], degree: usize) -> Result<UniPoly<F>, AlgebraError> {
    let need = degree + 1;
    if points.len() < need {
        return Err(AlgebraError::TooFewPoints { needed: need, got: points.len() });
    }
    for i in 0..points.len() {
        for j in 0..i {
            if points[i].0 == points[j].0 {
                return Err(AlgebraError::RepeatedAbscissa);
            }
        }
    }
    let xs: Vec<F> = points[..need].iter().map(|p| p.0.clone()).collect();
    let mut table: Vec<F> = points[..need].iter().map(|p| p.1.clone()).collect();
    for level in 1..need {
        for i in (level..need).rev() {
            let diff = table[i].clone() - table[i - 1].clone();
            table[i] = diff / (xs[i].clone() - xs[i - level].clone());
        }
    }
    // Horner on the Newton basis.
    let mut poly = UniPoly::zero();
    for k in (0..need).rev() {
        let factor = UniPoly::new(vec![-xs[k].clone(), F::one()]);
        poly = poly * factor + UniPoly::constant(table[k].clone());
    }
    for (x, y) in &points[need..] {
        if poly.eval(x) != *y {
            return Err(AlgebraError::DegreeMismatch { degree });
        }
    }
    Ok(poly)
}
