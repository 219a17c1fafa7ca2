use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use super::Rational;

/// Rational roots with multiplicities (ascending), plus the cofactor that has
/// no rational root left. The cofactor is monic, `1` when everything split.
pub fn rational_roots(p: &UniPoly<Rational>) -> (Vec<(Rational, u32)>, UniPoly<Rational>) {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let mut rest = p.monic();
    let mut roots = Vec::new();

    let zero_mult = rest.order().unwrap_or(0);
    if zero_mult > 0 {
        rest = UniPoly::new(rest.coeffs()[zero_mult..].to_vec());
        roots.push((Rational::zero(), zero_mult as u32));
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }

    let ints = integer_coeffs(&rest);
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let mut candidates = Vec::new();
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            let r = Rational::new(num.clone(), den);
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();

    for r in candidates {
        let linear = UniPoly::new(vec![-r.clone(), Rational::one()]);
        let mut mult = 0;
        loop {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let (quot, rem) = rest.div_rem(&linear);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, rest.monic())
}

/// Scales to a primitive integer polynomial (same roots).
fn integer_coeffs(p: &UniPoly<Rational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors of `n > 0` by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            let j = n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, qi};

    fn from_roots(rs: &[Rational]) -> UniPoly<Rational> {
        rs.iter().fold(UniPoly::constant(qi(3)), |acc, r| {
            acc * UniPoly::new(vec![-r.clone(), qi(1)])
        })
    }

    #[test]
    fn splits_constructed_products() {
        let p = from_roots(&[q(2, 3), q(2, 3), qi(-1), qi(0), q(-5, 2)]);
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![(q(-5, 2), 1), (qi(-1), 1), (qi(0), 1), (q(2, 3), 2)]);
        assert_eq!(rest, UniPoly::constant(qi(1)));
    }

    #[test]
    fn irrational_cofactor_kept() {
        // (x - 1)(x^2 - 2)
        let p = UniPoly::new(vec![qi(2), qi(-2), qi(-1), qi(1)]);
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![(qi(1), 1)]);
        assert_eq!(rest, UniPoly::new(vec![qi(-2), qi(0), qi(1)]));
    }
}
