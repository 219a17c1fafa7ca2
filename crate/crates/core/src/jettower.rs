//! Picard-group bookkeeping on the 2-level log jet tower `X̄₂ → X̄₁ → X`.
//!
//! `Pic(X̄₂) = Pic(X) ⊕ Z u₁ ⊕ Z u₂`, with `u₂ = O_{X̄₂}(1)` and `u₁` the
//! pullback of `O_{X̄₁}(1)`. Top-degree products are read off a fixed table
//! in `c̄₁, c̄₂` and extended multilinearly.

use thiserror::Error;

use crate::chern::{DivisorClass, Surface};
use crate::exactalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("u1^{e1} u2^{e2} is not a top-degree product (need e1+e2 = 4, or 3 with a class from X)")]
    DegreeError { e1: u32, e2: u32 },
    #[error("divisor class does not match the surface basis")]
    BasisMismatch,
}

/// Dimensions of the tower over a directed manifold `(X, V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerShape {
    /// `dim X`.
    pub n: u32,
    /// `rank V`.
    pub r: u32,
}

impl TowerShape {
    pub fn dim(&self, k: u32) -> u32 {
        self.n + k * (self.r - 1)
    }

    /// Every level carries a subbundle of the same rank.
    pub fn rank(&self, _k: u32) -> u32 {
        self.r
    }
}

/// `a₁ u₁ + a₂ u₂ + π* f`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetClass2<F> {
    pub a1: F,
    pub a2: F,
    pub f: DivisorClass<F>,
}

impl<F: Field> JetClass2<F> {
    pub fn new(a1: F, a2: F, f: DivisorClass<F>) -> Self {
        JetClass2 { a1, a2, f }
    }

    /// `a₁ u₁ + a₂ u₂ + t π*K̄`.
    pub fn with_kbar_twist(surface: &Surface<F>, a1: F, a2: F, t: F) -> Self {
        JetClass2 { a1, a2, f: surface.log_canonical().scale(&t) }
    }
}

/// Evaluates `u₁^{e1} u₂^{e2}` (when `e1 + e2 = 4`) or `u₁^{e1} u₂^{e2} · π*f`
/// (when `e1 + e2 = 3`) on `X̄₂`.
pub fn intersect4<F: Field>(
    surface: &Surface<F>,
    e1: u32,
    e2: u32,
    f: Option<&DivisorClass<F>>,
) -> Result<F, TowerError> {
    let c1sq = surface.c1_log_sq();
    let c2 = surface.c2_log.clone();
    let n = |k: i64| F::from_i64(k);
    match (e1, e2, f) {
        (4, 0, None) => Ok(F::zero()),
        (3, 1, None) => Ok(c1sq - c2),
        (2, 2, None) => Ok(c2),
        (1, 3, None) => Ok(c1sq - n(3) * c2),
        (0, 4, None) => Ok(n(5) * c2 - c1sq),
        (_, _, Some(f)) if e1 + e2 == 3 => {
            if f.dim() != surface.dim() {
                return Err(TowerError::BasisMismatch);
            }
            if (e1, e2) == (2, 1) {
                Ok(-surface.intersect(&surface.c1_log, f))
            } else {
                Ok(F::zero())
            }
        }
        _ => Err(TowerError::DegreeError { e1, e2 }),
    }
}

/// `(2u₁ + u₂)³ · Z` expanded through the table.
pub fn z_degree<F: Field>(surface: &Surface<F>, z: &JetClass2<F>) -> Result<F, TowerError> {
    // (2u₁+u₂)³ = Σ C(3,i) 2^i u₁^i u₂^{3-i}
    let cube = [(0u32, 1i64), (1, 6), (2, 12), (3, 8)];
    let mut total = F::zero();
    for (i, c) in cube {
        let c = F::from_i64(c);
        let (e1, e2) = (i, 3 - i);
        total = total
            + c.clone() * z.a1.clone() * intersect4(surface, e1 + 1, e2, None)?
            + c.clone() * z.a2.clone() * intersect4(surface, e1, e2 + 1, None)?
            + c * intersect4(surface, e1, e2, Some(&z.f))?;
    }
    Ok(total)
}

/// Which of the three shapes an effective irreducible component
/// `Z ~ a₁u₁ + a₂u₂ + tπ*K̄` of the base locus can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ComponentCase {
    /// `(a₁, a₂) = (0, 0)`, `t > 0`: pulled back from `X`.
    Vertical,
    /// `(a₁, a₂) = (-1, 1)`, `t = 0`: the divisor `Γ₂` itself.
    Gamma2,
    /// `a₁ ≥ 2a₂ ≥ 0`, `a₁ + a₂ > 0`.
    Horizontal,
    Infeasible,
}

pub fn classify_component<F: Field + PartialOrd>(a1: &F, a2: &F, t: &F) -> ComponentCase {
    let zero = F::zero();
    let one = F::one();
    if a1.is_zero() && a2.is_zero() && *t > zero {
        ComponentCase::Vertical
    } else if *a1 == -one.clone() && *a2 == one && t.is_zero() {
        ComponentCase::Gamma2
    } else if *a1 >= F::from_i64(2) * a2.clone() && *a2 >= zero && a1.clone() + a2.clone() > zero {
        ComponentCase::Horizontal
    } else {
        ComponentCase::Infeasible
    }
}

/// `O_{X̄₂}(a₁, a₂) = O_{X̄₂}(a₁ + a₂) ⊗ O(-a₁ Γ₂)`, written as a
/// tautological degree plus a multiple of `Γ₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaForm {
    pub tautological: i64,
    pub gamma2: i64,
}

pub fn relation_gamma2(a1: i64, a2: i64) -> GammaForm {
    GammaForm { tautological: a1 + a2, gamma2: -a1 }
}

/// Inverse of [`relation_gamma2`].
pub fn weights_from_gamma_form(g: GammaForm) -> (i64, i64) {
    (-g.gamma2, g.tautological + g.gamma2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::plane;
    use crate::exactalg::{q, qi, Rational};

    #[test]
    fn table_entries_on_the_plane() {
        for d in 4..20i64 {
            let s = plane(d);
            assert_eq!(intersect4(&s, 4, 0, None).unwrap(), qi(0));
            assert_eq!(intersect4(&s, 2, 2, None).unwrap(), qi(d * d - 3 * d + 3));
            let h = DivisorClass(vec![qi(1)]);
            assert_eq!(intersect4(&s, 2, 1, Some(&h)).unwrap(), qi(d - 3));
            assert_eq!(intersect4(&s, 1, 2, Some(&h)).unwrap(), qi(0));
        }
    }

    #[test]
    fn non_top_degree_rejected() {
        let s = plane(6);
        assert_eq!(intersect4(&s, 2, 1, None).unwrap_err(), TowerError::DegreeError { e1: 2, e2: 1 });
        let h = DivisorClass(vec![qi(1)]);
        assert!(intersect4(&s, 2, 2, Some(&h)).is_err());
    }

    #[test]
    fn z_degree_special_classes() {
        let s = plane(13);
        let c1sq = s.c1_log_sq();
        let c2 = s.c2_log.clone();
        let u2 = JetClass2::new(qi(0), qi(1), DivisorClass::zero(1));
        assert_eq!(z_degree(&s, &u2).unwrap(), qi(13) * c1sq.clone() - qi(9) * c2);
        let t0 = q(-2, 7);
        let pure = JetClass2::with_kbar_twist(&s, qi(0), qi(0), t0.clone());
        assert_eq!(z_degree(&s, &pure).unwrap(), qi(12) * t0 * c1sq);
    }

    #[test]
    fn component_cases() {
        assert_eq!(classify_component(&qi(0), &qi(0), &qi(1)), ComponentCase::Vertical);
        assert_eq!(classify_component(&qi(-1), &qi(1), &qi(0)), ComponentCase::Gamma2);
        assert_eq!(classify_component(&qi(4), &qi(2), &q(-1, 3)), ComponentCase::Horizontal);
        assert_eq!(classify_component(&qi(1), &qi(1), &qi(0)), ComponentCase::Infeasible);
        assert_eq!(classify_component(&qi(0), &qi(0), &qi(0)), ComponentCase::Infeasible);
        let _: ComponentCase = classify_component::<Rational>(&qi(3), &qi(0), &qi(5));
    }

    #[test]
    fn gamma_relation() {
        assert_eq!(relation_gamma2(0, 7), GammaForm { tautological: 7, gamma2: 0 });
        assert_eq!(relation_gamma2(-1, 1), GammaForm { tautological: 0, gamma2: 1 });
        for (a1, a2) in [(3, -4), (0, 0), (-9, 2), (5, 5)] {
            assert_eq!(weights_from_gamma_form(relation_gamma2(a1, a2)), (a1, a2));
        }
    }

    #[test]
    fn tower_dimensions() {
        let t = TowerShape { n: 2, r: 2 };
        for k in 0..=5 {
            assert_eq!(t.dim(k), 2 + k);
            assert_eq!(t.rank(k), 2);
        }
    }
}
