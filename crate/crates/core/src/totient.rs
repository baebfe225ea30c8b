//! Euler's totient and `phi(n^2)`, evaluated in factored form.
//!
//! For `n = prod p^a`, `phi(n) = prod p^(a-1) (p-1)` and
//! `phi(n^2) = prod p^(2a-1) (p-1) = n phi(n)`. Each `p - 1` is factored so
//! the result stays a [`FactoredInteger`].

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factored::{Exponent, FactoredInteger};
use crate::factorize::factor;

/// A totient value, fully factored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotientValue(FactoredInteger);

impl TotientValue {
    pub fn factors(&self) -> &FactoredInteger {
        &self.0
    }

    pub fn into_factors(self) -> FactoredInteger {
        self.0
    }

    pub fn expand(&self) -> BigUint {
        self.0.expand()
    }
}

/// `prod p^power(a) * (p - 1)` over the entries `p^a` of `f`.
fn evaluate(f: &FactoredInteger, power: impl Fn(Exponent) -> Option<Exponent>) -> Result<TotientValue> {
    let mut acc = FactoredInteger::one();
    for (p, a) in f.iter() {
        let k = power(a).ok_or_else(|| Error::ExponentOverflow { prime: p.clone() })?;
        if k > 0 {
            acc = acc.mul_prime_power(p, k)?;
        }
        let p_minus_one = p - BigUint::one();
        if !p_minus_one.is_one() {
            acc = acc.mul(&factor(&p_minus_one)?)?;
        }
    }
    Ok(TotientValue(acc))
}

pub fn totient(f: &FactoredInteger) -> Result<TotientValue> {
    evaluate(f, |a| Some(a - 1))
}

/// `phi(n^2)` for the `n` denoted by `f`.
pub fn totient_of_square(f: &FactoredInteger) -> Result<TotientValue> {
    evaluate(f, |a| a.checked_mul(2).map(|d| d - 1))
}

/// `n * phi(n)`, the value of `phi(n^2)`.
pub fn phi_square_value(n: &BigUint) -> Result<BigUint> {
    Ok(totient_of_square(&factor(n)?)?.expand())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::factor_u64;
    use num_integer::Integer;

    fn count_units(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    fn pairs(f: &FactoredInteger) -> Vec<(u32, i64)> {
        f.iter().map(|(p, e)| (u32::try_from(p).unwrap(), e)).collect()
    }

    #[test]
    fn totient_examples() {
        assert_eq!(count_units(9), 6);
        assert_eq!(pairs(totient(&factor_u64(9)).unwrap().factors()), vec![(2, 1), (3, 1)]);
        assert!(totient(&FactoredInteger::one()).unwrap().factors().is_one());
        assert!(totient(&factor_u64(2)).unwrap().factors().is_one());
    }

    #[test]
    fn square_examples() {
        let v = totient_of_square(&factor_u64(39330)).unwrap();
        assert_eq!(v.expand(), BigUint::from(373_792_320u64));
        assert_eq!(v.expand(), BigUint::from(19u32 * 19_673_280));
        assert!(totient_of_square(&FactoredInteger::one()).unwrap().factors().is_one());
        assert_eq!(pairs(totient_of_square(&factor_u64(4)).unwrap().factors()), vec![(2, 3)]);
    }

    #[test]
    fn phi_square_examples() {
        assert_eq!(phi_square_value(&BigUint::from(1u32)).unwrap(), BigUint::from(1u32));
        assert_eq!(phi_square_value(&BigUint::from(10u32)).unwrap(), BigUint::from(40u32));
        assert_eq!(phi_square_value(&BigUint::from(7u32)).unwrap(), BigUint::from(42u32));
    }

    #[test]
    fn brute_force_oracle() {
        for n in 1..=2000u64 {
            let t = totient(&factor_u64(n)).unwrap().expand();
            assert_eq!(t, BigUint::from(count_units(n)), "n = {n}");
        }
    }

    #[test]
    fn square_identity() {
        for n in 1..=10_000u64 {
            let f = factor_u64(n);
            let sq = totient_of_square(&f).unwrap().expand();
            let direct = BigUint::from(n) * totient(&f).unwrap().expand();
            assert_eq!(sq, direct, "n = {n}");
            // Also as factored values: phi(n^2) = n * phi(n).
            let product = f.mul(totient(&f).unwrap().factors()).unwrap();
            assert_eq!(totient_of_square(&f).unwrap().factors(), &product);
        }
    }

    #[test]
    fn multiplicative_on_coprime_parts() {
        for a in 1..60u64 {
            for b in 1..60u64 {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let merged = factor_u64(a).mul(&factor_u64(b)).unwrap();
                let lhs = totient(&merged).unwrap().expand();
                let rhs = totient(&factor_u64(a)).unwrap().expand()
                    * totient(&factor_u64(b)).unwrap().expand();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn large_prime_power() {
        // phi((2^61-1)^2 ^ 2) stays factored: exponent 3 on the prime, plus 2^61-2.
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let f = FactoredInteger::prime_power(m61.clone(), 2).unwrap();
        let v = totient_of_square(&f).unwrap();
        assert_eq!(v.factors().exponent(&m61), 3);
        assert_eq!(v.expand(), m61.pow(3) * (&m61 - 1u32));
    }
}
