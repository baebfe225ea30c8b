//! Exact primality testing.
//!
//! Below [`DETERMINISTIC_BOUND`] a strong-pseudoprime test to the first
//! thirteen prime bases is a proof of primality (Sorenson and Webster, 2015).
//! Above it, a number that passes those bases is only accepted as prime once
//! a Pocklington certificate has been built from a partial factorization of
//! `n - 1`. Numbers for which no certificate can be found within the
//! factoring budget are reported as [`Primality::Unknown`] and never treated
//! as prime.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::factorize::{factor_partial, FactorConfig};

/// Primes below this limit are produced by the sieve and used for trial division.
pub const SMALL_PRIME_LIMIT: u32 = 1_000_000;

/// The first thirteen primes; as Miller-Rabin witnesses they are exact below
/// [`DETERMINISTIC_BOUND`].
const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// 3 317 044 064 679 887 385 961 981 (about 2^81.4).
pub const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Prime,
    Composite,
    /// Passed every witness but lies above [`DETERMINISTIC_BOUND`] and no
    /// certificate was found.
    Unknown,
}

/// All primes below [`SMALL_PRIME_LIMIT`], ascending.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_primes(SMALL_PRIME_LIMIT))
}

/// Number of primes `<= n`, for `n` below [`SMALL_PRIME_LIMIT`].
pub fn prime_count(n: u64) -> Option<usize> {
    if n >= SMALL_PRIME_LIMIT as u64 {
        return None;
    }
    Some(small_primes().partition_point(|&p| p as u64 <= n))
}

fn sieve_primes(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = vec![false; limit];
    let mut primes = Vec::with_capacity(80_000);
    for i in 2..limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        let p = p as u64;
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 43 * 43 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    WITNESSES
        .iter()
        .all(|&a| strong_probable_prime_u64(n, d, s, a as u64))
}

fn strong_probable_prime(n: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let n_minus_one = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Exact classification of `n`.
pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    for &a in &WITNESSES {
        if !strong_probable_prime(n, &d, s, &BigUint::from(a)) {
            return Primality::Composite;
        }
    }
    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_BOUND) {
        return Primality::Prime;
    }
    pocklington(n)
}

/// True iff `n` is prime. Never true for a composite; for `n` above
/// [`DETERMINISTIC_BOUND`] whose primality cannot be certified this returns
/// false, so callers that must distinguish that case use [`primality`].
pub fn is_prime(n: &BigUint) -> bool {
    primality(n) == Primality::Prime
}

/// Pocklington's criterion: if `n - 1 = F * R` with `F > sqrt(n)` fully
/// factored, and for every prime `q | F` some base `a` has
/// `a^(n-1) = 1 (mod n)` and `gcd(a^((n-1)/q) - 1, n) = 1`, then `n` is prime.
fn pocklington(n: &BigUint) -> Primality {
    let n_minus_one = n - 1u32;
    let config = FactorConfig::default();
    // Factors of n - 1 are far smaller than n, so the recursion through
    // `factor_partial` terminates. Unsplit cofactors are simply left out of F.
    let (factored, _) = factor_partial(&n_minus_one, &config);
    let mut certified = BigUint::one();
    let mut primes = Vec::new();
    // Largest factors first: they grow F fastest.
    for (p, &e) in factored.iter().rev() {
        certified *= p.pow(e as u32);
        primes.push(p.clone());
        if &certified * &certified > *n {
            break;
        }
    }
    if &certified * &certified <= *n {
        return Primality::Unknown;
    }
    for q in &primes {
        let exp = &n_minus_one / q;
        let mut witnessed = false;
        for a in 2u32..200 {
            let a = BigUint::from(a);
            if !a.modpow(&n_minus_one, n).is_one() {
                return Primality::Composite;
            }
            let t = a.modpow(&exp, n);
            if t.is_zero() {
                continue;
            }
            if (t - 1u32).gcd(n).is_one() {
                witnessed = true;
                break;
            }
        }
        if !witnessed {
            return Primality::Unknown;
        }
    }
    Primality::Prime
}
