//! Canonical prime-exponent forms of positive integers and rationals.
//!
//! Both types keep their factors in a `BTreeMap`, so iteration is always in
//! strictly increasing prime order. Keys are certified primes and no stored
//! exponent is zero. Exponents are `i64` with checked arithmetic; `i64::MIN`
//! is treated as overflow so that negation is always total.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::primality::{primality, Primality};

pub type Exponent = i64;

fn checked_sum(p: &BigUint, a: Exponent, b: Exponent) -> Result<Exponent> {
    match a.checked_add(b) {
        Some(s) if s != Exponent::MIN => Ok(s),
        _ => Err(Error::ExponentOverflow { prime: p.clone() }),
    }
}

fn require_prime(p: &BigUint) -> Result<()> {
    match primality(p) {
        Primality::Prime => Ok(()),
        Primality::Composite => Err(Error::NotPrime(p.clone())),
        Primality::Unknown => Err(Error::PrimalityUnknown(p.clone())),
    }
}

fn validate_pairs<I>(pairs: I, allow_negative: bool) -> Result<BTreeMap<BigUint, Exponent>>
where
    I: IntoIterator<Item = (BigUint, Exponent)>,
{
    let mut map = BTreeMap::new();
    for (p, e) in pairs {
        if e == 0 {
            return Err(Error::ZeroExponent { prime: p });
        }
        if e == Exponent::MIN {
            return Err(Error::ExponentOverflow { prime: p });
        }
        if e < 0 && !allow_negative {
            return Err(Error::NotAnInteger(format!("{p}^{e}")));
        }
        require_prime(&p)?;
        if map.contains_key(&p) {
            return Err(Error::DuplicatePrime(p));
        }
        map.insert(p, e);
    }
    Ok(map)
}

fn merge(
    a: &BTreeMap<BigUint, Exponent>,
    b: &BTreeMap<BigUint, Exponent>,
) -> Result<BTreeMap<BigUint, Exponent>> {
    let mut out = a.clone();
    for (p, &e) in b {
        match out.get(p) {
            Some(&cur) => {
                let s = checked_sum(p, cur, e)?;
                if s == 0 {
                    out.remove(p);
                } else {
                    out.insert(p.clone(), s);
                }
            }
            None => {
                out.insert(p.clone(), e);
            }
        }
    }
    Ok(out)
}

fn expand_power(p: &BigUint, e: Exponent) -> BigUint {
    Pow::pow(p, e.unsigned_abs())
}

fn write_factors(f: &mut fmt::Formatter<'_>, map: &BTreeMap<BigUint, Exponent>) -> fmt::Result {
    if map.is_empty() {
        return f.write_str("1");
    }
    for (i, (p, e)) in map.iter().enumerate() {
        if i > 0 {
            f.write_str(" * ")?;
        }
        write!(f, "{p}^{e}")?;
    }
    Ok(())
}

/// A positive integer as a map prime -> exponent (all exponents >= 1).
/// The empty map is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<BigUint, Exponent>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    pub(crate) fn from_map_unchecked(factors: BTreeMap<BigUint, Exponent>) -> Self {
        debug_assert!(factors.values().all(|&e| e >= 1));
        FactoredInteger { factors }
    }

    /// Builds a value from `(prime, exponent)` pairs, checking that every
    /// base is prime, every exponent is positive and no prime repeats.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, Exponent)>,
    {
        Ok(FactoredInteger {
            factors: validate_pairs(pairs, false)?,
        })
    }

    pub fn prime_power(p: BigUint, e: Exponent) -> Result<Self> {
        Self::from_pairs([(p, e)])
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&BigUint, Exponent)> + '_ {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl DoubleEndedIterator<Item = &BigUint> + '_ {
        self.factors.keys()
    }

    /// Exponent of `p`, zero when absent.
    pub fn exponent(&self, p: &BigUint) -> Exponent {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.keys().next_back()
    }

    pub fn expand(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * expand_power(p, e))
    }

    pub fn mul(&self, other: &FactoredInteger) -> Result<FactoredInteger> {
        Ok(FactoredInteger {
            factors: merge(&self.factors, &other.factors)?,
        })
    }

    /// `self * p^e` for a prime `p` and `e >= 1`; callers guarantee `p` is prime.
    pub(crate) fn mul_prime_power(&self, p: &BigUint, e: Exponent) -> Result<FactoredInteger> {
        debug_assert!(e >= 1);
        let mut factors = self.factors.clone();
        let cur = factors.get(p).copied().unwrap_or(0);
        factors.insert(p.clone(), checked_sum(p, cur, e)?);
        Ok(FactoredInteger { factors })
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &FactoredInteger) -> Option<FactoredInteger> {
        let mut factors = self.factors.clone();
        for (p, &e) in &other.factors {
            let cur = factors.get(p).copied().unwrap_or(0);
            match cur - e {
                0 => {
                    factors.remove(p);
                }
                d if d > 0 => {
                    factors.insert(p.clone(), d);
                }
                _ => return None,
            }
        }
        Some(FactoredInteger { factors })
    }

    pub fn to_rational(&self) -> FactoredRational {
        FactoredRational {
            factors: self.factors.clone(),
        }
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, &self.factors)
    }
}

/// A positive rational as a map prime -> nonzero signed exponent.
/// The empty map is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredRational {
    factors: BTreeMap<BigUint, Exponent>,
}

impl FactoredRational {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, Exponent)>,
    {
        Ok(FactoredRational {
            factors: validate_pairs(pairs, true)?,
        })
    }

    /// `numerator / denominator`, cancelled by exponent arithmetic.
    pub fn ratio(numerator: &FactoredInteger, denominator: &FactoredInteger) -> Result<Self> {
        numerator.to_rational().mul(&denominator.to_rational().inverse())
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&BigUint, Exponent)> + '_ {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn exponent(&self, p: &BigUint) -> Exponent {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// Largest prime together with its exponent.
    pub fn largest(&self) -> Option<(&BigUint, Exponent)> {
        self.factors.iter().next_back().map(|(p, &e)| (p, e))
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.keys().next_back()
    }

    /// Exponent-wise sum. Fails only on exponent overflow.
    pub fn mul(&self, other: &FactoredRational) -> Result<FactoredRational> {
        Ok(FactoredRational {
            factors: merge(&self.factors, &other.factors)?,
        })
    }

    pub fn inverse(&self) -> FactoredRational {
        FactoredRational {
            factors: self.factors.iter().map(|(p, &e)| (p.clone(), -e)).collect(),
        }
    }

    /// Copy of `self` with the entry for `p` removed.
    pub fn without(&self, p: &BigUint) -> FactoredRational {
        let mut factors = self.factors.clone();
        factors.remove(p);
        FactoredRational { factors }
    }

    /// Primes with positive exponent.
    pub fn numerator(&self) -> FactoredInteger {
        FactoredInteger {
            factors: self
                .factors
                .iter()
                .filter(|(_, &e)| e > 0)
                .map(|(p, &e)| (p.clone(), e))
                .collect(),
        }
    }

    /// Primes with negative exponent, negated.
    pub fn denominator(&self) -> FactoredInteger {
        FactoredInteger {
            factors: self
                .factors
                .iter()
                .filter(|(_, &e)| e < 0)
                .map(|(p, &e)| (p.clone(), -e))
                .collect(),
        }
    }

    /// `(p, q)` with `self = p / q` in lowest terms.
    pub fn expand_parts(&self) -> (BigUint, BigUint) {
        (self.numerator().expand(), self.denominator().expand())
    }

    pub fn as_integer(&self) -> Option<FactoredInteger> {
        if self.factors.values().all(|&e| e > 0) {
            Some(FactoredInteger {
                factors: self.factors.clone(),
            })
        } else {
            None
        }
    }
}

impl From<FactoredInteger> for FactoredRational {
    fn from(value: FactoredInteger) -> Self {
        FactoredRational {
            factors: value.factors,
        }
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, &self.factors)
    }
}
