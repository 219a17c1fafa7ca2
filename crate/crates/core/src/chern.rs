//! Chern classes on a surface and Riemann–Roch Euler characteristics of the
//! log 2-jet bundle `E_{2,m}` through its graded pieces
//! `S^{m-3j} T̄* ⊗ K̄^j`.

use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::exactalg::{poly_interpolate, AlgebraError, Field, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChernError {
    #[error("symmetric powers are implemented for rank 2 only, got rank {0}")]
    RankUnsupported(usize),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("intersection form is not symmetric")]
    AsymmetricForm,
    #[error("intersection form has shape {rows}x{cols}, basis has {basis} elements")]
    BadShape { rows: usize, cols: usize, basis: usize },
    #[error("divisor class has {got} coefficients, basis has {expected}")]
    BasisMismatch { expected: usize, got: usize },
    #[error("residue classes of m mod 3 disagree on the m^4 coefficient")]
    ResidueMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Coefficient vector of a divisor class in a surface's fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorClass<F>(pub Vec<F>);

impl<F: Field> DivisorClass<F> {
    pub fn zero(dim: usize) -> Self {
        DivisorClass(vec![F::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &F) -> Self {
        DivisorClass(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }
}

impl<F: Field> Add for DivisorClass<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DivisorClass(self.0.into_iter().zip(rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<F: Field> Sub for DivisorClass<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DivisorClass(self.0.into_iter().zip(rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl<F: Field> Neg for DivisorClass<F> {
    type Output = Self;
    fn neg(self) -> Self {
        DivisorClass(self.0.into_iter().map(|a| -a).collect())
    }
}

/// Ordinary and logarithmic Chern data of a surface together with the
/// intersection form on a chosen basis of divisor classes.
#[derive(Clone, Debug, PartialEq)]
pub struct Surface<F> {
    basis: Vec<String>,
    form: Vec<Vec<F>>,
    /// `c1(T_X)`.
    pub c1: DivisorClass<F>,
    /// Degree of `c2(T_X)`.
    pub c2: F,
    /// `c1` of the log tangent bundle.
    pub c1_log: DivisorClass<F>,
    /// Degree of `c2` of the log tangent bundle.
    pub c2_log: F,
}

impl<F: Field> Surface<F> {
    pub fn new(
        basis: Vec<String>,
        form: Vec<Vec<F>>,
        c1: DivisorClass<F>,
        c2: F,
        c1_log: DivisorClass<F>,
        c2_log: F,
    ) -> Result<Self, ChernError> {
        let n = basis.len();
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(ChernError::BadShape {
                rows: form.len(),
                cols: form.first().map_or(0, Vec::len),
                basis: n,
            });
        }
        for i in 0..n {
            for j in 0..i {
                if form[i][j] != form[j][i] {
                    return Err(ChernError::AsymmetricForm);
                }
            }
        }
        for d in [&c1, &c1_log] {
            if d.dim() != n {
                return Err(ChernError::BasisMismatch { expected: n, got: d.dim() });
            }
        }
        Ok(Surface { basis, form, c1, c2, c1_log, c2_log })
    }

    /// `(P^2, C_d)` for a smooth plane curve of degree `d`, basis `{h}`.
    pub fn plane(d: i64) -> Self {
        let h = |c: i64| DivisorClass(vec![F::from_i64(c)]);
        Surface {
            basis: vec!["h".to_string()],
            form: vec![vec![F::one()]],
            c1: h(3),
            c2: F::from_i64(3),
            c1_log: h(3 - d),
            c2_log: F::from_i64(d * d - 3 * d + 3),
        }
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn form(&self) -> &[Vec<F>] {
        &self.form
    }

    pub fn intersect(&self, a: &DivisorClass<F>, b: &DivisorClass<F>) -> F {
        let mut acc = F::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                acc = acc + ai.clone() * self.form[i][j].clone() * bj.clone();
            }
        }
        acc
    }

    /// `c̄1²`.
    pub fn c1_log_sq(&self) -> F {
        self.intersect(&self.c1_log, &self.c1_log)
    }

    /// `K̄ = -c̄1`.
    pub fn log_canonical(&self) -> DivisorClass<F> {
        -self.c1_log.clone()
    }

    /// The log cotangent bundle `T̄*`: rank 2, `c1 = -c̄1`, `c2 = c̄2`.
    pub fn log_cotangent(&self) -> BundleChern<F> {
        BundleChern { rank: 2, c1: -self.c1_log.clone(), c2: self.c2_log.clone() }
    }

    pub fn check_class(&self, d: &DivisorClass<F>) -> Result<(), ChernError> {
        if d.dim() != self.dim() {
            return Err(ChernError::BasisMismatch { expected: self.dim(), got: d.dim() });
        }
        Ok(())
    }
}

/// Rank and first two Chern classes of a vector bundle on a surface.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleChern<F> {
    pub rank: usize,
    pub c1: DivisorClass<F>,
    /// Degree of `c2`.
    pub c2: F,
}

impl<F: Field> BundleChern<F> {
    pub fn line(c1: DivisorClass<F>) -> Self {
        BundleChern { rank: 1, c1, c2: F::zero() }
    }

    pub fn trivial(dim: usize) -> Self {
        Self::line(DivisorClass::zero(dim))
    }

    /// Formal direct sum (Whitney formula).
    pub fn direct_sum(&self, other: &Self, surface: &Surface<F>) -> Self {
        BundleChern {
            rank: self.rank + other.rank,
            c1: self.c1.clone() + other.c1.clone(),
            c2: self.c2.clone() + other.c2.clone() + surface.intersect(&self.c1, &other.c1),
        }
    }
}

fn int<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

/// Chern classes of `S^p E` for a rank-2 bundle `E`.
///
/// With Chern roots `α, β` the roots of `S^p E` are `iα + (p-i)β`,
/// `0 ≤ i ≤ p`; writing `e1 = α+β`, `e2 = αβ`:
///
/// * `c1 = p(p+1)/2 · e1`
/// * `Σ roots² = S2 (e1² - 2 e2) + p(p²-1)/3 · e2` with `S2 = p(p+1)(2p+1)/6`
/// * `c2 = (c1² - Σ roots²) / 2`
pub fn sym_power<F: Field>(surface: &Surface<F>, e: &BundleChern<F>, p: u32) -> Result<BundleChern<F>, ChernError> {
    if e.rank != 2 {
        return Err(ChernError::RankUnsupported(e.rank));
    }
    let p = p as i64;
    let tri: F = int::<F>(p * (p + 1)) / int(2);
    let s2: F = int::<F>(p * (p + 1) * (2 * p + 1)) / int(6);
    let cross: F = int::<F>(p * (p * p - 1)) / int(3);
    let e1sq = surface.intersect(&e.c1, &e.c1);
    let e2 = e.c2.clone();
    let c1sq = tri.clone() * tri.clone() * e1sq.clone();
    let roots_sq = s2 * (e1sq - int::<F>(2) * e2.clone()) + cross * e2;
    Ok(BundleChern {
        rank: (p + 1) as usize,
        c1: e.c1.scale(&tri),
        c2: (c1sq - roots_sq) / int(2),
    })
}

/// `F ⊗ L` for a line bundle with first Chern class `l`.
pub fn twist<F: Field>(surface: &Surface<F>, f: &BundleChern<F>, l: &DivisorClass<F>) -> BundleChern<F> {
    let r = f.rank as i64;
    let c2 = f.c2.clone()
        + int::<F>(r - 1) * surface.intersect(&f.c1, l)
        + int::<F>(r * (r - 1) / 2) * surface.intersect(l, l);
    BundleChern { rank: f.rank, c1: f.c1.clone() + l.scale(&int(r)), c2 }
}

/// Hirzebruch–Riemann–Roch on a surface:
/// `χ = (c1² - 2c2)/2 + c1·c1(X)/2 + rank·(c1(X)² + c2(X))/12`.
pub fn chi<F: Field>(surface: &Surface<F>, f: &BundleChern<F>) -> F {
    let ch2 = (surface.intersect(&f.c1, &f.c1) - int::<F>(2) * f.c2.clone()) / int(2);
    let mixed = surface.intersect(&f.c1, &surface.c1) / int(2);
    let todd2 = (surface.intersect(&surface.c1, &surface.c1) + surface.c2.clone()) / int(12);
    ch2 + mixed + int::<F>(f.rank as i64) * todd2
}

/// Graded pieces `(p, j) = (m - 3j, j)`, `0 ≤ j ≤ ⌊m/3⌋`.
pub fn filtration_pieces(m: u32) -> Vec<(u32, u32)> {
    (0..=m / 3).map(|j| (m - 3 * j, j)).collect()
}

/// `χ(E_{2,m} T̄* ⊗ O(extra_twist))`, summed over the graded pieces.
pub fn chi_e2m<F: Field>(surface: &Surface<F>, m: u32, extra_twist: &DivisorClass<F>) -> Result<F, ChernError> {
    surface.check_class(extra_twist)?;
    let cot = surface.log_cotangent();
    let kbar = surface.log_canonical();
    let mut total = F::zero();
    for (p, j) in filtration_pieces(m) {
        let sym = sym_power(surface, &cot, p)?;
        let l = kbar.scale(&int(j as i64)) + extra_twist.clone();
        total = total + chi(surface, &twist(surface, &sym, &l));
    }
    Ok(total)
}

/// Samples per residue class used by [`chi_e2m_quasi_polynomial`]; two more
/// than a quartic needs, so the interpolation is checked.
pub const SAMPLES_PER_RESIDUE: u32 = 7;

/// The three quartics `χ(E_{2,3i+r}) = P_r(m)`, `r = 0, 1, 2`, as
/// polynomials in `m`, recovered by exact interpolation.
pub fn chi_e2m_quasi_polynomial<F: Field>(
    surface: &Surface<F>,
    extra_twist: &DivisorClass<F>,
) -> Result<[UniPoly<F>; 3], ChernError> {
    let class = |r: u32| -> Result<UniPoly<F>, ChernError> {
        let pts = (0..SAMPLES_PER_RESIDUE)
            .map(|i| {
                let m = r + 3 * i;
                Ok((int::<F>(m as i64), chi_e2m(surface, m, extra_twist)?))
            })
            .collect::<Result<Vec<_>, ChernError>>()?;
        Ok(poly_interpolate(&pts, 4)?)
    };
    Ok([class(0)?, class(1)?, class(2)?])
}

/// The `m⁴` coefficient of `m ↦ χ(E_{2,m} ⊗ O(extra_twist))`.
pub fn chi_e2m_leading<F: Field>(surface: &Surface<F>, extra_twist: &DivisorClass<F>) -> Result<F, ChernError> {
    let [p0, p1, p2] = chi_e2m_quasi_polynomial(surface, extra_twist)?;
    let lead = p0.coeff(4);
    if p1.coeff(4) != lead || p2.coeff(4) != lead {
        return Err(ChernError::ResidueMismatch);
    }
    Ok(lead)
}

/// The rational-coefficient plane model.
pub fn plane(d: i64) -> Surface<Rational> {
    Surface::plane(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, qi};

    type S = Surface<Rational>;

    /// One-dimensional toy surface where classes are plain numbers.
    fn toy() -> S {
        S::new(
            vec!["h".into()],
            vec![vec![qi(1)]],
            DivisorClass(vec![qi(3)]),
            qi(3),
            DivisorClass(vec![qi(0)]),
            qi(0),
        )
        .unwrap()
    }

    fn split(alpha: i64, beta: i64) -> BundleChern<Rational> {
        BundleChern {
            rank: 2,
            c1: DivisorClass(vec![qi(alpha + beta)]),
            c2: qi(alpha * beta),
        }
    }

    #[test]
    fn sym_power_small_cases() {
        let s = toy();
        let e = split(2, 3);
        let s1 = sym_power(&s, &e, 1).unwrap();
        assert_eq!(s1, e);
        let s2 = sym_power(&s, &e, 2).unwrap();
        assert_eq!(s2.c1, DivisorClass(vec![qi(15)]));
        assert_eq!(s2.c2, qi(74));
        assert_eq!(sym_power(&s, &split(1, 1), 2).unwrap().c2, qi(12));
        assert_eq!(sym_power(&s, &split(4, 5), 0).unwrap(), BundleChern::trivial(1));
    }

    #[test]
    fn sym_power_rejects_other_ranks() {
        let s = toy();
        let l = BundleChern::line(DivisorClass(vec![qi(1)]));
        assert_eq!(sym_power(&s, &l, 2).unwrap_err(), ChernError::RankUnsupported(1));
    }

    #[test]
    fn twist_cases() {
        let s = toy();
        let e = split(2, 3);
        assert_eq!(twist(&s, &e, &DivisorClass::zero(1)), e);
        let line = BundleChern::line(DivisorClass(vec![qi(4)]));
        let t = twist(&s, &line, &DivisorClass(vec![qi(-7)]));
        assert_eq!(t, BundleChern::line(DivisorClass(vec![qi(-3)])));
        // roots shift to 2+5, 3+5
        assert_eq!(twist(&s, &e, &DivisorClass(vec![qi(5)])), split(7, 8));
    }

    #[test]
    fn chi_of_line_bundles_on_the_plane() {
        let s = plane(5);
        assert_eq!(chi(&s, &BundleChern::trivial(1)), qi(1));
        for k in 0..12i64 {
            let monomials = (k + 1) * (k + 2) / 2;
            assert_eq!(chi(&s, &BundleChern::line(DivisorClass(vec![qi(k)]))), qi(monomials));
        }
    }

    #[test]
    fn pieces() {
        assert_eq!(filtration_pieces(0), vec![(0, 0)]);
        assert_eq!(filtration_pieces(3), vec![(3, 0), (0, 1)]);
        assert_eq!(filtration_pieces(7), vec![(7, 0), (4, 1), (1, 2)]);
    }

    #[test]
    fn chi_e2m_at_zero_is_chi_of_structure_sheaf() {
        let s = plane(7);
        assert_eq!(chi_e2m(&s, 0, &DivisorClass::zero(1)).unwrap(), qi(1));
    }

    #[test]
    fn plane_leading_coefficients() {
        let minus_h = DivisorClass(vec![qi(-1)]);
        assert_eq!(chi_e2m_leading(&plane(11), &minus_h).unwrap(), q(13, 648));
        assert_eq!(chi_e2m_leading(&plane(10), &minus_h).unwrap(), q(-5, 162));
    }

    #[test]
    fn surface_validation() {
        let err = S::new(
            vec!["a".into(), "b".into()],
            vec![vec![qi(0), qi(1)], vec![qi(2), qi(0)]],
            DivisorClass(vec![qi(0), qi(0)]),
            qi(0),
            DivisorClass(vec![qi(0), qi(0)]),
            qi(0),
        )
        .unwrap_err();
        assert_eq!(err, ChernError::AsymmetricForm);
    }
}
