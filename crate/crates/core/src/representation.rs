//! Construction of `(m, n)` with `phi(m^2) / phi(n^2) = r`.
//!
//! The construction removes the largest prime `q` of `r` and recurses on a
//! rational whose primes are all smaller than `q`:
//!
//! * `r = 1`: `m = n = 1`.
//! * `r = 2^a`: closed form, see [`represent_power_of_two`].
//! * `q^a` with `a` even: `r0 = r / q^a`, then `m = m0 q^b`, `n = n0 q^c` with
//!   `b - c = a/2` and `b, c >= 1`. The `(q - 1)` factors cancel.
//! * `q^a` with `a` odd and positive: `r0 = r / (q^a (q - 1))`, then
//!   `m = m0 q^((a+1)/2)`, `n = n0`.
//! * `q^a` with `a` odd and negative: represent `1/r` and swap.
//!
//! Since every prime of `q - 1` is below `q`, no prime of `m n` exceeds the
//! largest prime of `r`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::factored::{Exponent, FactoredInteger, FactoredRational};
use crate::factorize::factor;
use crate::totient::totient_of_square;

/// A pair `(m, n)` for the rational `ratio`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub m: FactoredInteger,
    pub n: FactoredInteger,
    pub ratio: FactoredRational,
    /// Number of prime-eliminating steps taken. Never exceeds the number of
    /// primes up to the largest prime of `ratio`.
    pub depth: usize,
}

/// Which rule applies at the top level of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Unit,
    PowerOfTwo,
    EvenExponent,
    OddPositive,
    OddNegative,
}

impl Branch {
    pub fn of(r: &FactoredRational) -> Branch {
        match r.largest() {
            None => Branch::Unit,
            Some((q, _)) if *q == BigUint::from(2u32) => Branch::PowerOfTwo,
            Some((_, a)) if a % 2 == 0 => Branch::EvenExponent,
            Some((_, a)) if a > 0 => Branch::OddPositive,
            Some(_) => Branch::OddNegative,
        }
    }
}

fn power_of_two(e: Exponent) -> FactoredInteger {
    if e == 0 {
        FactoredInteger::one()
    } else {
        FactoredInteger::one()
            .mul_prime_power(&BigUint::from(2u32), e)
            .expect("exponent checked by caller")
    }
}

/// `(m, n)` with `phi(m^2) / phi(n^2) = 2^a`, both powers of two.
///
/// For `a = 2t` the pair is `(2^(t+b), 2^b)` with the smallest `b >= 1` that
/// keeps `t + b >= 1`. For `a = 2t + 1` it is `(2^(t+1), 1)` when `t >= 0` and
/// `(1, 2^(-t))` otherwise.
pub fn represent_power_of_two(a: Exponent) -> (FactoredInteger, FactoredInteger) {
    if a == 0 {
        return (FactoredInteger::one(), FactoredInteger::one());
    }
    // Floor division: t = floor(a / 2) for both parities.
    let t = a.div_euclid(2);
    if a.rem_euclid(2) == 0 {
        let b = (1 - t).max(1);
        (power_of_two(t + b), power_of_two(b))
    } else if t >= 0 {
        (power_of_two(t + 1), FactoredInteger::one())
    } else {
        (FactoredInteger::one(), power_of_two(-t))
    }
}

/// Returns `(m, n, depth)`.
fn construct(r: &FactoredRational) -> Result<(FactoredInteger, FactoredInteger, usize)> {
    let Some((q, a)) = r.largest() else {
        return Ok((FactoredInteger::one(), FactoredInteger::one(), 0));
    };
    match Branch::of(r) {
        Branch::Unit => unreachable!(),
        Branch::PowerOfTwo => {
            let (m, n) = represent_power_of_two(a);
            Ok((m, n, 1))
        }
        Branch::EvenExponent => {
            let half = a / 2;
            let c = (1 - half).max(1);
            let b = c + half;
            let (m0, n0, depth) = construct(&r.without(q))?;
            Ok((m0.mul_prime_power(q, b)?, n0.mul_prime_power(q, c)?, depth + 1))
        }
        Branch::OddPositive => {
            let removed = FactoredInteger::one()
                .mul_prime_power(q, a)?
                .mul(&factor(&(q - BigUint::one()))?)?;
            let r0 = r.mul(&removed.to_rational().inverse())?;
            debug_assert!(r0.largest_prime().is_none_or(|p| p < q));
            let (m0, n0, depth) = construct(&r0)?;
            Ok((m0.mul_prime_power(q, a / 2 + 1)?, n0, depth + 1))
        }
        Branch::OddNegative => {
            let (m, n, depth) = construct(&r.inverse())?;
            Ok((n, m, depth))
        }
    }
}

/// Constructs `(m, n)` with `phi(m^2) / phi(n^2) = r` and no prime of `m n`
/// larger than the largest prime of `r`.
pub fn represent(r: &FactoredRational) -> Result<Representation> {
    let (m, n, depth) = construct(r)?;
    Ok(Representation {
        m,
        n,
        ratio: r.clone(),
        depth,
    })
}

/// Result of checking `phi(m^2) / phi(n^2)` against an expected ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub holds: bool,
    /// `phi(m^2) / phi(n^2)` as computed.
    pub lhs: FactoredRational,
    pub expected: FactoredRational,
    /// With `expected = p / q` in lowest terms, the shared cofactor `k` such
    /// that `phi(m^2) = p k` and `phi(n^2) = q k`. Present iff `holds`.
    pub common_value: Option<BigUint>,
}

/// Checks `phi(m^2) / phi(n^2) = r` exactly. A mismatch is reported through
/// `holds`; errors only come from factoring `p - 1` for very large primes.
pub fn verify(
    m: &FactoredInteger,
    n: &FactoredInteger,
    r: &FactoredRational,
) -> Result<VerificationReport> {
    let phi_m = totient_of_square(m)?;
    let phi_n = totient_of_square(n)?;
    let lhs = FactoredRational::ratio(phi_m.factors(), phi_n.factors())?;
    let holds = lhs == *r;
    let common_value = if holds {
        phi_n
            .factors()
            .checked_div(&r.denominator())
            .map(|k| k.expand())
    } else {
        None
    };
    Ok(VerificationReport {
        holds,
        lhs,
        expected: r.clone(),
        common_value,
    })
}
