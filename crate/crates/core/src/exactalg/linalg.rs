//! Determinants, resultants and linear solves over exact rings.

use num_traits::Zero;

use super::multipoly::MultiPoly;
use super::ratfun::RationalFunction;
use super::scalar::{Field, Ring};
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Dense row-major square matrix.
pub type Matrix<R> = Vec<Vec<R>>;

fn check_square<R>(m: &Matrix<R>) -> Result<usize, AlgebraError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::NotSquare);
    }
    Ok(n)
}

/// Coefficients of `det(t*I - A)`, leading coefficient first, computed
/// without division (Berkowitz). Works over any commutative ring.
pub fn char_poly_coeffs<R: Ring>(a: &Matrix<R>) -> Result<Vec<R>, AlgebraError> {
    let n = check_square(a)?;
    let mut vect = vec![R::one()];
    for r in 0..n {
        // Leading principal block of size r, row r left of the diagonal,
        // column r above it, and the diagonal entry.
        let row: Vec<R> = a[r][..r].to_vec();
        let mut col: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(R::one());
        toeplitz.push(-a[r][r].clone());
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&col)
                .fold(R::zero(), |s, (x, y)| s + x.clone() * y.clone());
            toeplitz.push(-dot);
            col = (0..r)
                .map(|i| {
                    (0..r).fold(R::zero(), |s, k| s + a[i][k].clone() * col[k].clone())
                })
                .collect();
        }
        let next: Vec<R> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .filter(|&j| i - j < toeplitz.len())
                    .fold(R::zero(), |s, j| s + toeplitz[i - j].clone() * vect[j].clone())
            })
            .collect();
        vect = next;
    }
    Ok(vect)
}

/// Division-free determinant.
pub fn determinant<R: Ring>(a: &Matrix<R>) -> Result<R, AlgebraError> {
    let n = check_square(a)?;
    let cp = char_poly_coeffs(a)?;
    let last = cp[n].clone();
    Ok(if n % 2 == 0 { last } else { -last })
}

/// Sylvester matrix of `p` (degree `m`) and `q` (degree `n`), size `m + n`.
pub fn sylvester_matrix<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> Matrix<R> {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let mut out = vec![vec![R::zero(); size]; size];
    // Rows hold coefficients from the leading one down.
    for i in 0..n {
        for k in 0..=m {
            out[i][i + k] = p.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            out[n + i][i + k] = q.coeff(n - k);
        }
    }
    out
}

/// `Res(p, q)` as the Sylvester determinant. `Res(0, q) = 0` for nonzero `q`.
pub fn resultant<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> Result<R, AlgebraError> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(AlgebraError::BothZero),
        (true, false) | (false, true) => Ok(R::zero()),
        _ => determinant(&sylvester_matrix(p, q)),
    }
}

/// Discriminant with the usual normalization
/// `disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lc(p)`, so that
/// `disc(a W^2 + b W + c) = b^2 - 4ac`.
///
/// The division by the leading coefficient is exact; `divide` performs it.
pub fn discriminant_with<R: Ring>(
    p: &UniPoly<R>,
    divide: impl Fn(&R, &R) -> Option<R>,
) -> Result<R, AlgebraError> {
    let n = p.degree().ok_or(AlgebraError::BothZero)?;
    if n == 0 {
        return Err(AlgebraError::ConstantPolynomial);
    }
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading_coeff().unwrap();
    let q = divide(&res, lc).ok_or(AlgebraError::InexactDivision)?;
    Ok(if (n * (n - 1) / 2) % 2 == 0 { q } else { -q })
}

/// Discriminant over a multivariate coefficient ring.
pub fn discriminant_multi<T: Field>(p: &UniPoly<MultiPoly<T>>) -> Result<MultiPoly<T>, AlgebraError> {
    discriminant_with(p, |a, b| a.div_exact(b))
}

/// Gaussian elimination over a field. Fails with `SingularSystem` if the
/// matrix is not invertible.
pub fn solve_field<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>, AlgebraError> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(AlgebraError::DimensionMismatch);
    }
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(AlgebraError::SingularSystem)?;
        m.swap(c, piv);
        let inv = m[c][c].inv();
        for k in c..=n {
            m[c][k] = m[c][k].clone() * inv.clone();
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    m[r][k] = m[r][k].clone() - f.clone() * m[c][k].clone();
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solves `matrix * x = rhs` over the fraction field of the polynomial ring
/// by Cramer's rule with division-free determinants.
pub fn solve_linear<T: Field>(
    matrix: &Matrix<MultiPoly<T>>,
    rhs: &[MultiPoly<T>],
) -> Result<Vec<RationalFunction<T>>, AlgebraError> {
    let n = check_square(matrix)?;
    if rhs.len() != n {
        return Err(AlgebraError::DimensionMismatch);
    }
    let det = determinant(matrix)?;
    if det.is_zero() {
        return Err(AlgebraError::SingularSystem);
    }
    (0..n)
        .map(|k| {
            let replaced: Matrix<MultiPoly<T>> = matrix
                .iter()
                .zip(rhs)
                .map(|(row, r)| {
                    let mut row = row.clone();
                    row[k] = r.clone();
                    row
                })
                .collect();
            RationalFunction::new(determinant(&replaced)?, det.clone())
        })
        .collect()
}
