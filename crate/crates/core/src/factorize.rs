//! Factorization of positive integers: trial division by the sieved primes
//! below [`SMALL_PRIME_LIMIT`], then Pollard-Brent splitting of whatever
//! cofactor remains. Every reported prime is certified by [`primality`].

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::primality::{is_prime_u64, primality, small_primes, Primality, SMALL_PRIME_LIMIT};

/// Effort budget for [`factor_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial division uses every prime below this value.
    pub trial_bound: u32,
    /// Iterations of one Pollard-Brent run before giving up on it.
    pub rho_iterations: u64,
    /// Number of runs (each with a different polynomial) per cofactor.
    pub rho_attempts: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: SMALL_PRIME_LIMIT,
            rho_iterations: 1 << 20,
            rho_attempts: 8,
        }
    }
}

type ExponentMap = BTreeMap<BigUint, i64>;

/// Factors `n >= 1` with the default budget.
pub fn factor(n: &BigUint) -> Result<FactoredInteger> {
    factor_with(n, &FactorConfig::default())
}

pub fn factor_with(n: &BigUint, config: &FactorConfig) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::ZeroValue("factor"));
    }
    let (found, mut leftover) = factor_partial(n, config);
    match leftover.pop() {
        None => Ok(FactoredInteger::from_map_unchecked(found)),
        Some(cofactor) => Err(Error::FactorizationFailure { cofactor }),
    }
}

/// Always succeeds. `n` must be nonzero.
pub fn factor_u64(n: u64) -> FactoredInteger {
    assert!(n > 0, "cannot factor zero");
    let mut map = ExponentMap::new();
    factor_u64_into(n, 0, SMALL_PRIME_LIMIT, &mut map);
    FactoredInteger::from_map_unchecked(map)
}

/// Splits off as much of `n` as the budget allows. Returns the certified
/// prime factors and the cofactors (composite or uncertifiable) that could
/// not be split further. The product of both parts is `n`.
pub(crate) fn factor_partial(n: &BigUint, config: &FactorConfig) -> (ExponentMap, Vec<BigUint>) {
    let mut found = ExponentMap::new();
    let mut leftover = Vec::new();
    if let Some(small) = n.to_u64() {
        if small > 0 {
            factor_u64_into(small, 0, config.trial_bound, &mut found);
        }
        return (found, leftover);
    }

    let mut rest = n.clone();
    let mut trial_done = false;
    for (idx, &p) in small_primes().iter().enumerate() {
        if p >= config.trial_bound {
            break;
        }
        if let Some(small) = rest.to_u64() {
            factor_u64_into(small, idx, config.trial_bound, &mut found);
            return (found, leftover);
        }
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rest {
            trial_done = true;
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&p_big);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            *found.entry(p_big).or_insert(0) += e;
        }
    }
    if rest.is_one() {
        return (found, leftover);
    }
    if trial_done {
        add(&mut found, rest, 1);
        return (found, leftover);
    }

    // Every prime factor of `rest` is now at least `trial_bound`.
    let mut stack = vec![(rest, 1i64)];
    while let Some((c, mult)) = stack.pop() {
        if let Some(small) = c.to_u64() {
            let mut sub = ExponentMap::new();
            split_u64(small, &mut sub);
            for (p, e) in sub {
                add(&mut found, p, e * mult);
            }
            continue;
        }
        match primality(&c) {
            Primality::Prime => add(&mut found, c, mult),
            Primality::Unknown => leftover.push(c),
            Primality::Composite => {
                if let Some((root, k)) = perfect_power(&c, config.trial_bound) {
                    stack.push((root, mult * k as i64));
                } else if let Some(d) = pollard_brent(&c, config) {
                    let other = &c / &d;
                    stack.push((d, mult));
                    stack.push((other, mult));
                } else {
                    leftover.push(c);
                }
            }
        }
    }
    (found, leftover)
}

fn add(map: &mut ExponentMap, p: BigUint, e: i64) {
    *map.entry(p).or_insert(0) += e;
}

fn factor_u64_into(mut n: u64, start: usize, trial_bound: u32, map: &mut ExponentMap) {
    let primes = small_primes();
    let mut reached_sqrt = false;
    for &p in &primes[start..] {
        if p >= trial_bound {
            break;
        }
        let p = p as u64;
        if p * p > n {
            reached_sqrt = true;
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            add(map, BigUint::from(p), e);
        }
    }
    if n == 1 {
        return;
    }
    // All prime factors of n are now at least the last trial prime.
    let b = trial_bound.min(SMALL_PRIME_LIMIT) as u128;
    if reached_sqrt || (n as u128) < b * b {
        add(map, BigUint::from(n), 1);
    } else {
        split_u64(n, map);
    }
}

/// Full factorization of a `u64` none of whose factors need trial division.
fn split_u64(n: u64, map: &mut ExponentMap) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        add(map, BigUint::from(n), 1);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, map);
    split_u64(n / d, map);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nontrivial divisor of the composite `n`.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let r = n.sqrt();
    if r * r == n {
        return r;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q, mut g) = (2u64, 2u64, 1u64, 1u64);
        let mut ys = 2u64;
        let mut len = 1u64;
        let batch = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..len {
                y = f(y);
            }
            let mut k = 0;
            while k < len && g == 1 {
                ys = y;
                for _ in 0..batch.min(len - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += batch;
            }
            len *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// `(root, k)` with `root^k = n`, `k >= 2`, if `n` is a perfect power. Only
/// roots at least `min_root` are considered.
fn perfect_power(n: &BigUint, min_root: u32) -> Option<(BigUint, u32)> {
    let max_k = (n.bits() / (u32::BITS - min_root.leading_zeros()).max(1) as u64).max(2) as u32;
    for k in 2..=max_k {
        let root = n.nth_root(k);
        if root.pow(k) == *n {
            return Some((root, k));
        }
    }
    None
}

/// Pollard-Brent within the configured budget.
fn pollard_brent(n: &BigUint, config: &FactorConfig) -> Option<BigUint> {
    let one = BigUint::one();
    for attempt in 0..config.rho_attempts {
        let c = BigUint::from(attempt as u64 * 2 + 1);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32 + attempt);
        let mut x;
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut len = 1u64;
        let mut spent = 0u64;
        let batch = 128u64;
        while g.is_one() && spent < config.rho_iterations {
            x = y.clone();
            for _ in 0..len {
                y = f(&y);
            }
            let mut k = 0;
            while k < len && g.is_one() {
                ys = y.clone();
                let steps = batch.min(len - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            spent += 2 * len;
            len *= 2;
            if g.is_one() {
                continue;
            }
            if &g == n {
                // Batched product overshot; replay one step at a time.
                loop {
                    ys = f(&ys);
                    let diff = if x > ys { &x - &ys } else { &ys - &x };
                    g = diff.gcd(n);
                    if !g.is_one() {
                        break;
                    }
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(f: &FactoredInteger) -> Vec<(u64, i64)> {
        f.iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect()
    }

    #[test]
    fn worked_example_numbers() {
        let f = factor(&BigUint::from(39330u32)).unwrap();
        assert_eq!(pairs(&f), vec![(2, 1), (3, 2), (5, 1), (19, 1), (23, 1)]);
        let f = factor(&BigUint::from(20010u32)).unwrap();
        assert_eq!(pairs(&f), vec![(2, 1), (3, 1), (5, 1), (23, 1), (29, 1)]);
        let f = factor(&BigUint::from(55836u32)).unwrap();
        assert_eq!(pairs(&f), vec![(2, 2), (3, 3), (11, 1), (47, 1)]);
    }

    #[test]
    fn unit_and_zero() {
        assert!(factor(&BigUint::one()).unwrap().is_one());
        assert_eq!(factor(&BigUint::zero()), Err(Error::ZeroValue("factor")));
    }

    #[test]
    fn u64_semiprimes_past_trial_bound() {
        let p = 1_000_003u64;
        let q = 4_294_967_291u64;
        let f = factor_u64(p * q);
        assert_eq!(pairs(&f), vec![(p, 1), (q, 1)]);
        let f = factor_u64(p * p * 7);
        assert_eq!(pairs(&f), vec![(7, 1), (p, 2)]);
        assert_eq!(pairs(&factor_u64(u64::MAX)), vec![
            (3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6_700_417, 1)
        ]);
    }

    #[test]
    fn big_cofactor_split() {
        // (2^61 - 1) * (2^31 - 1) * 1000003^2 * 12
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let m31 = BigUint::from(2_147_483_647u32);
        let p = BigUint::from(1_000_003u32);
        let n = &m61 * &m31 * &p * &p * 12u32;
        let f = factor(&n).unwrap();
        assert_eq!(f.expand(), n);
        assert_eq!(f.exponent(&p), 2);
        assert_eq!(f.exponent(&m61), 1);
        assert_eq!(f.exponent(&BigUint::from(2u32)), 2);
    }

    #[test]
    fn big_perfect_power() {
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let n = m61.pow(3);
        let f = factor(&n).unwrap();
        assert_eq!(f.exponent(&m61), 3);
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // Product of two 64-bit primes with a budget far too small to split it.
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        let q = BigUint::from(18_446_744_073_709_551_533u64);
        let config = FactorConfig {
            trial_bound: 1000,
            rho_iterations: 16,
            rho_attempts: 1,
        };
        let err = factor_with(&(&p * &q), &config).unwrap_err();
        assert!(matches!(err, Error::FactorizationFailure { .. }));
        assert!(err.is_scale_error());
    }

    #[test]
    fn round_trip_to_one_million() {
        for n in 1..=1_000_000u64 {
            let f = factor_u64(n);
            assert_eq!(f.expand(), BigUint::from(n));
        }
    }
}
