#![allow(dead_code)]

use logjet::chern::{DivisorClass, Surface};
use logjet::exactalg::{q, Monomial, MultiPoly, Rational, UniPoly};
use proptest::prelude::*;
use rand::Rng;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(n, d)| q(n, d))
}

pub fn uni_poly(max_deg: usize) -> impl Strategy<Value = UniPoly<Rational>> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

/// Sparse polynomial in `nvars` variables with exponents below `max_exp`.
pub fn multi_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(0..max_exp, nvars), small_rational()), 0..=max_terms)
        .prop_map(|terms| MultiPoly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e), c))))
}

pub fn rand_rational(rng: &mut impl Rng, span: i64, max_den: i64) -> Rational {
    q(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

/// A surface with random symmetric intersection form and Chern data.
pub fn rand_surface(rng: &mut impl Rng) -> Surface<Rational> {
    let n = rng.gen_range(1..=3);
    let mut form = vec![vec![q(0, 1); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rand_rational(rng, 5, 3);
            form[i][j] = v.clone();
            form[j][i] = v;
        }
    }
    let class = |rng: &mut _| DivisorClass((0..n).map(|_| rand_rational(rng, 6, 4)).collect());
    let basis = (0..n).map(|i| format!("e{i}")).collect();
    let c1 = class(rng);
    let c1_log = class(rng);
    Surface::new(basis, form, c1, rand_rational(rng, 20, 4), c1_log, rand_rational(rng, 20, 4)).unwrap()
}

/// `Σ_{i<j} r_i · r_j` and `Σ r_i` for explicit Chern roots.
pub fn from_roots(s: &Surface<Rational>, roots: &[DivisorClass<Rational>]) -> (DivisorClass<Rational>, Rational) {
    let mut c1 = DivisorClass::zero(s.dim());
    let mut c2 = q(0, 1);
    for (i, a) in roots.iter().enumerate() {
        c1 = c1 + a.clone();
        for b in &roots[i + 1..] {
            c2 += s.intersect(a, b);
        }
    }
    (c1, c2)
}
