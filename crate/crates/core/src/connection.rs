//! Meromorphic connection making the curve
//! `C_a = {z₀^{k₀}(z₀^{d-k₀} + a z₁^{k₁} z₂^{k₂}) + z₁^d + z₂^d = 0}`
//! totally geodesic, found by solving
//! `Σ_k Γᵏᵢⱼ ∂s_ℓ/∂z_k = ∂²s_ℓ/∂z_i∂z_j` over `Q(z₀, z₁, z₂)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{
    determinant, q, qi, solve_linear, AlgebraError, Matrix, MultiPoly, Rational, RationalFunction,
};
use crate::thresholds::theta1_lower;

pub const VARS: [&str; 3] = ["z0", "z1", "z2"];

type Poly = MultiPoly<Rational>;
type RatFn = RationalFunction<Rational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnectionError {
    #[error("parameter out of range: {0}")]
    DomainError(String),
    #[error("the Jacobian of (s0, s1, s2) vanishes identically")]
    SingularSystem,
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl From<AlgebraError> for ConnectionError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SingularSystem => ConnectionError::SingularSystem,
            other => ConnectionError::Algebra(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveFamily {
    pub d: u32,
    pub k: [u32; 3],
    pub a: Rational,
    pub s: [Poly; 3],
}

impl CurveFamily {
    /// `p = 3 + k₁ + k₂`, the pole-order parameter of the Wronskian twist.
    pub fn p(&self) -> u32 {
        3 + self.k[1] + self.k[2]
    }

    /// `s₀ + s₁ + s₂`.
    pub fn curve(&self) -> Poly {
        self.s.iter().cloned().fold(Poly::zero(), |a, b| a + b)
    }

    /// `G = d z₀^{k₁+k₂} + a k₀ z₁^{k₁} z₂^{k₂}`.
    pub fn pole_factor(&self) -> Poly {
        let [k0, k1, k2] = self.k;
        Poly::term(qi(self.d as i64), &[k1 + k2])
            + Poly::term(self.a.clone() * qi(k0 as i64), &[0, k1, k2])
    }

    /// `B = z₀ z₁ z₂ · G`.
    pub fn pole_divisor(&self) -> Poly {
        Poly::term(Rational::one(), &[1, 1, 1]) * self.pole_factor()
    }

    /// `M[ℓ][k] = ∂s_ℓ/∂z_k`.
    pub fn jacobian(&self) -> Matrix<Poly> {
        self.s.iter().map(|s| (0..3).map(|k| s.partial(k)).collect()).collect()
    }
}

pub fn build_family(d: u32, k0: u32, k1: u32, k2: u32, a: Rational) -> Result<CurveFamily, ConnectionError> {
    if d < 6 {
        return Err(ConnectionError::DomainError(format!("need d >= 6, got {d}")));
    }
    if k0 + k1 + k2 != d {
        return Err(ConnectionError::DomainError(format!(
            "need k0 + k1 + k2 = d, got {k0} + {k1} + {k2} != {d}"
        )));
    }
    let s0 = Poly::term(qi(1), &[k0]) * (Poly::term(qi(1), &[d - k0]) + Poly::term(a.clone(), &[0, k1, k2]));
    let s1 = Poly::term(qi(1), &[0, d]);
    let s2 = Poly::term(qi(1), &[0, 0, d]);
    Ok(CurveFamily { d, k: [k0, k1, k2], a, s: [s0, s1, s2] })
}

/// Christoffel symbols `Γᵏᵢⱼ`, stored for all ordered `(i, j)`.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    /// `christoffels[i][j][k] = Γᵏᵢⱼ`.
    pub christoffels: [[[RatFn; 3]; 3]; 3],
    /// `det M`.
    pub jacobian_det: Poly,
}

impl ConnectionData {
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &RatFn {
        &self.christoffels[i][j][k]
    }

    /// `Σ_k Γᵏᵢⱼ ∂s_ℓ/∂z_k - ∂²s_ℓ/∂z_i∂z_j` for every `(i, j, ℓ)`, `i ≤ j`.
    pub fn residuals(&self, family: &CurveFamily) -> Vec<((usize, usize, usize), RatFn)> {
        let m = family.jacobian();
        let mut out = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                for (l, s) in family.s.iter().enumerate() {
                    let lhs = (0..3).fold(RatFn::zero(), |acc, k| {
                        acc + self.gamma(k, i, j).clone() * RatFn::from_poly(m[l][k].clone())
                    });
                    let rhs = RatFn::from_poly(s.partial(i).partial(j));
                    out.push(((i, j, l), lhs - rhs));
                }
            }
        }
        out
    }

    pub fn residual_is_zero(&self, family: &CurveFamily) -> bool {
        self.residuals(family).iter().all(|(_, r)| r.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| self.gamma(k, i, j) == self.gamma(k, j, i))))
    }

    /// Every nonzero symbol is a quotient of homogeneous polynomials whose
    /// degrees differ by `-1`.
    pub fn is_homogeneous_of_degree_minus_one(&self) -> bool {
        self.christoffels
            .iter()
            .flatten()
            .flatten()
            .all(|g| g.is_homogeneous_of_degree(-1))
    }

    /// Each denominator divides a power of `B`, i.e. its zero set is
    /// contained in the pole divisor.
    pub fn poles_contained_in(&self, pole_divisor: &Poly) -> bool {
        self.christoffels.iter().flatten().flatten().all(|g| {
            let den = g.denom();
            let n = den.total_degree().unwrap_or(0);
            if n == 0 {
                return true;
            }
            let mut power = Poly::one();
            for _ in 0..n {
                power = power * pole_divisor.clone();
            }
            den.divides(&power)
        })
    }

    /// The lowest common denominator candidate: `det M` with its constant stripped.
    pub fn pole_poly(&self) -> Poly {
        self.jacobian_det.monic()
    }
}

/// Solves the six systems (one per unordered `(i, j)`) sharing the matrix `M`.
pub fn solve_connection(family: &CurveFamily) -> Result<ConnectionData, ConnectionError> {
    let m = family.jacobian();
    let det = determinant(&m)?;
    if det.is_zero() {
        return Err(ConnectionError::SingularSystem);
    }
    let zero = || RatFn::zero();
    let mut ch: [[[RatFn; 3]; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| zero())));
    for i in 0..3 {
        for j in i..3 {
            let rhs: Vec<Poly> = family.s.iter().map(|s| s.partial(i).partial(j)).collect();
            let sol = solve_linear(&m, &rhs)?;
            for (k, g) in sol.into_iter().enumerate() {
                ch[i][j][k] = g.clone();
                ch[j][i][k] = g;
            }
        }
    }
    Ok(ConnectionData { christoffels: ch, jacobian_det: det })
}

/// `det M = d² z₀^{k₀-1} z₁^{d-1} z₂^{d-1} G` for `k₀ ≥ 1`, and
/// `d³ z₀^{d-1} z₁^{d-1} z₂^{d-1}` for `k₀ = 0`, built directly from the
/// single-entry rows of `s₁, s₂`.
pub fn expected_jacobian_det(family: &CurveFamily) -> Poly {
    let d = family.d;
    let dq = qi(d as i64);
    let [k0, _, _] = family.k;
    if k0 == 0 {
        return Poly::term(dq.clone() * dq.clone() * dq, &[d - 1, d - 1, d - 1]);
    }
    Poly::term(dq.clone() * dq, &[k0 - 1, d - 1, d - 1]) * family.pole_factor()
}

/// `t₁ = p/(d-3) - 1`, the twist of the Wronskian section `P₁`.
pub fn wronskian_twist(d: i64, p: i64) -> Result<Rational, ConnectionError> {
    if d < 6 {
        return Err(ConnectionError::DomainError(format!("need d >= 6, got {d}")));
    }
    if !(3..=d + 3).contains(&p) {
        return Err(ConnectionError::DomainError(format!("need 3 <= p <= d + 3, got p = {p}")));
    }
    Ok(q(p, d - 3) - Rational::one())
}

/// Target of `β₁P₂ - β₂P₁`: `S^{m₁+m₂-3} T̄* ⊗ O((1+t₁+t₂) K̄)`.
pub fn proportionality_degree(m1: i64, m2: i64, t1: &Rational, t2: &Rational) -> Result<(i64, Rational), ConnectionError> {
    for m in [m1, m2] {
        if !(3..=5).contains(&m) {
            return Err(ConnectionError::DomainError(format!("need m in {{3,4,5}}, got {m}")));
        }
    }
    Ok((m1 + m2 - 3, Rational::one() + t1 + t2))
}

/// Whether the proportionality section is forced to vanish on `(P², C_d)`:
/// `1 + t₁ + t₂ < (m₁+m₂-3) θ̄_{1,m₁+m₂-3}`, the threshold taken from its
/// lower bound.
pub fn proportional_section_vanishes(
    d: i64,
    m1: i64,
    m2: i64,
    t1: &Rational,
    t2: &Rational,
) -> Result<bool, ConnectionError> {
    let (sym, twist) = proportionality_degree(m1, m2, t1, t2)?;
    let theta = theta1_lower(d, sym).map_err(|e| ConnectionError::DomainError(e.to_string()))?;
    Ok(twist < qi(sym) * theta.bound)
}
