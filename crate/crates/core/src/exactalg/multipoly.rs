use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{Field, Ring};
use super::unipoly::UniPoly;

/// Exponent vector with trailing zeros stripped, so `x0` and `x0*x1^0` are
/// the same key regardless of how many variables the caller has in mind.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with `x0 > x1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The monomial `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= other.exp(i))
    }

    /// `other / self`, assuming [`Monomial::divides`].
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let n = other.0.len();
        Monomial::new((0..n).map(|i| other.exp(i) - self.exp(i)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i).min(other.exp(i))).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Ring> MultiPoly<T> {
    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(terms: I) -> Self {
        let mut out = MultiPoly { terms: BTreeMap::new() };
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn constant(c: T) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        Self::from_terms([(Monomial::var(i), T::one())])
    }

    pub fn term(c: T, exps: &[u32]) -> Self {
        Self::from_terms([(Monomial::new(exps.to_vec()), c)])
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &T)> {
        self.terms.iter().next_back()
    }

    /// Highest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Degree in the single variable `x_i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(i)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree greater than `k`.
    pub fn truncate(&self, k: u32) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, mono: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !mono.divides(m) {
                return None;
            }
            terms.insert(mono.quotient_of(m), c.clone());
        }
        Some(MultiPoly { terms })
    }

    /// Largest monomial dividing every term; `1` for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial::new(e), T::from_i64(k as i64) * c.clone())
        }))
    }

    /// Substitutes `values[i]` for `x_i`. Variables beyond `values.len()` must not occur.
    pub fn eval(&self, values: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let mono = m
                .0
                .iter()
                .enumerate()
                .fold(T::one(), |p, (i, &e)| p * values[i].pow_u32(e));
            acc + c.clone() * mono
        })
    }

    /// Composition: replaces `x_i` by the polynomial `images[i]`.
    pub fn compose(&self, images: &[MultiPoly<T>]) -> Self {
        let mut cache: Vec<Vec<MultiPoly<T>>> = vec![vec![Self::one()]; images.len()];
        let mut power = |i: usize, e: u32| -> MultiPoly<T> {
            while cache[i].len() <= e as usize {
                let next = cache[i].last().unwrap().clone() * images[i].clone();
                cache[i].push(next);
            }
            cache[i][e as usize].clone()
        };
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * power(i, e);
                }
            }
            out = out + t;
        }
        out
    }

    /// Views the polynomial as univariate in `x_i` with coefficients in the
    /// remaining variables (which keep their indices).
    pub fn as_univariate(&self, i: usize) -> UniPoly<MultiPoly<T>> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut coeffs = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = m.exp(i) as usize;
            if i < e.len() {
                e[i] = 0;
            }
            coeffs[k].add_term(Monomial::new(e), c.clone());
        }
        UniPoly::new(coeffs)
    }

    /// For a polynomial in `x_i` only, the corresponding dense univariate.
    /// Returns `None` if another variable occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly<T>> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut coeffs = vec![T::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.exp(i) {
                return None;
            }
            coeffs[m.exp(i) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly<T>, i: usize) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; i + 1];
            e[i] = k as u32;
            (Monomial::new(e), c.clone())
        }))
    }

    /// Homogenizes to degree `deg` with the new variable `x_var`, which must
    /// not already occur. `deg` must be at least the total degree.
    pub fn homogenize(&self, var: usize, deg: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            if e.len() <= var {
                e.resize(var + 1, 0);
            }
            e[var] += deg - m.degree();
            (Monomial::new(e), c.clone())
        }))
    }
}

impl<T: Field> MultiPoly<T> {
    /// Exact quotient `self / divisor` if `divisor` divides `self` in the
    /// polynomial ring, `None` otherwise. Panics on a zero divisor.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term().expect("division by the zero polynomial");
        let (lm, lc_inv) = (lm.clone(), lc.inv());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.clone() * lc_inv.clone();
            rem = rem - divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }
}

impl<T: Ring> Zero for MultiPoly<T> {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Ring> One for MultiPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add for MultiPoly<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<T: Ring> Sub for MultiPoly<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<T: Ring> Neg for MultiPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<T: Ring> Mul for MultiPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Ring> Ring for MultiPoly<T> {
    fn from_i64(n: i64) -> Self {
        Self::constant(T::from_i64(n))
    }
}

impl<T: Ring + fmt::Display> MultiPoly<T> {
    /// Renders with the given variable names, highest graded-lex term first.
    /// Missing names fall back to `x<i>`.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl<T: Ring + fmt::Display> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}
