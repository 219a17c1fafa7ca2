use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::scalar::Field;
use super::AlgebraError;

/// Quotient of two multivariate polynomials.
///
/// Representatives are reduced by common monomial factors, by exact
/// divisibility of the numerator by the denominator, and by making the
/// denominator monic. They are not canonical in general: compare with `==`,
/// which cross-multiplies.
#[derive(Clone, Debug)]
pub struct RationalFunction<T> {
    num: MultiPoly<T>,
    den: MultiPoly<T>,
}

impl<T: Field> RationalFunction<T> {
    pub fn new(num: MultiPoly<T>, den: MultiPoly<T>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: MultiPoly<T>) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    fn reduced(num: MultiPoly<T>, den: MultiPoly<T>) -> Self {
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&g).unwrap(), den.div_monomial(&g).unwrap())
        };
        if let Some(q) = num.div_exact(&den) {
            return Self::from_poly(q);
        }
        let lc = den.leading_term().map(|(_, c)| c.inv()).unwrap();
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn numer(&self) -> &MultiPoly<T> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<T> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.total_degree() == Some(0)
    }

    /// Degree as a homogeneous function (`deg num - deg den`), or `None` when
    /// numerator or denominator is not homogeneous. Zero is homogeneous of
    /// every degree; callers get `Some(None)`-free semantics via
    /// [`RationalFunction::is_homogeneous_of_degree`].
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.num.is_zero() || !self.num.is_homogeneous() || !self.den.is_homogeneous() {
            return None;
        }
        Some(self.num.total_degree()? as i64 - self.den.total_degree()? as i64)
    }

    pub fn is_homogeneous_of_degree(&self, k: i64) -> bool {
        self.num.is_zero() || self.homogeneous_degree() == Some(k)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<T: Field> PartialEq for RationalFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl<T: Field> Zero for RationalFunction<T> {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Field> One for RationalFunction<T> {
    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }
}

impl<T: Field> Add for RationalFunction<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::reduced(self.num + rhs.num, self.den);
        }
        Self::reduced(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl<T: Field> Sub for RationalFunction<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Field> Neg for RationalFunction<T> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl<T: Field> Mul for RationalFunction<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduced(self.num * rhs.num, self.den * rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::inv`] for a checked path.
impl<T: Field> Div for RationalFunction<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        Self::reduced(self.num * rhs.den, self.den * rhs.num)
    }
}

impl<T: Field> super::scalar::Ring for RationalFunction<T> {
    fn from_i64(n: i64) -> Self {
        Self::from_poly(MultiPoly::constant(T::from_i64(n)))
    }
}

impl<T: Field> Field for RationalFunction<T> {}

impl<T: Field + fmt::Display> RationalFunction<T> {
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_polynomial() && self.den == MultiPoly::one() {
            return self.num.display_with(names);
        }
        format!("({}) / ({})", self.num.display_with(names), self.den.display_with(names))
    }
}
