//! Built-in consistency checks, run by the `selftest` command.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::factored::{Exponent, FactoredRational};
use crate::factorize::factor_u64;
use crate::oracle::{injectivity_scan, sequence_from_table, totient_table};
use crate::primality::{prime_count, small_primes};
use crate::representation::{represent, verify};
use crate::totient::{phi_square_value, totient, totient_of_square};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SelfTestConfig {
    pub identity_limit: u64,
    pub injectivity_limit: u64,
    pub round_trip_cases: usize,
    pub seed: u64,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            identity_limit: 10_000,
            injectivity_limit: 10_000,
            round_trip_cases: 200,
            seed: 0x5eed,
        }
    }
}

/// A random rational over the primes `<= max_prime` with exponents in
/// `-max_exp..=max_exp` (zero exponents simply drop the prime).
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_prime: u32, max_exp: Exponent) -> FactoredRational {
    let pairs: Vec<(BigUint, Exponent)> = small_primes()
        .iter()
        .take_while(|&&p| p <= max_prime)
        .filter_map(|&p| {
            let e = rng.gen_range(-max_exp..=max_exp);
            (e != 0).then(|| (BigUint::from(p), e))
        })
        .collect();
    FactoredRational::from_pairs(pairs).expect("small primes with nonzero exponents")
}

/// Checks one constructed representation: `phi(m^2)/phi(n^2) = r`, every
/// prime of `m n` at most the largest prime of `r`, and the depth bound.
pub fn check_representation(r: &FactoredRational) -> Result<(), String> {
    let rep = represent(r).map_err(|e| format!("represent({r}) failed: {e}"))?;
    let report = verify(&rep.m, &rep.n, r).map_err(|e| format!("verify failed: {e}"))?;
    if !report.holds {
        return Err(format!("r = {r}: m = {}, n = {} gives {}", rep.m, rep.n, report.lhs));
    }
    match r.largest_prime() {
        None => {
            if !(rep.m.is_one() && rep.n.is_one()) {
                return Err(format!("r = 1 gave m = {}, n = {}", rep.m, rep.n));
            }
        }
        Some(top) => {
            if let Some(p) = rep.m.primes().chain(rep.n.primes()).find(|p| *p > top) {
                return Err(format!("r = {r}: prime {p} exceeds {top}"));
            }
            if let Some(limit) = top.to_u64().and_then(prime_count) {
                if rep.depth > limit {
                    return Err(format!("r = {r}: depth {} exceeds pi({top}) = {limit}", rep.depth));
                }
            }
        }
    }
    Ok(())
}

fn timed(name: &'static str, check: impl FnOnce() -> Result<String, String>) -> CheckOutcome {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        name,
        passed,
        detail,
        elapsed,
    }
}

fn example_check(m: u64, n: u64, num: u64, den: u64, common: u64) -> Result<String, String> {
    let r = FactoredRational::ratio(&factor_u64(num), &factor_u64(den)).map_err(|e| e.to_string())?;
    let report = verify(&factor_u64(m), &factor_u64(n), &r).map_err(|e| e.to_string())?;
    if !report.holds {
        return Err(format!("phi({m}^2)/phi({n}^2) = {}, expected {num}/{den}", report.lhs));
    }
    if report.common_value != Some(BigUint::from(common)) {
        return Err(format!("common value {:?}, expected {common}", report.common_value));
    }
    Ok(format!("phi({m}^2)/phi({n}^2) = {num}/{den}, common value {common}"))
}

fn identity_check(limit: u64, table: &[u64]) -> Result<String, String> {
    if table.len() <= limit as usize {
        return Err(format!("totient table has {} entries, need {}", table.len(), limit + 1));
    }
    for n in 1..=limit {
        let f = factor_u64(n);
        let square = totient_of_square(&f).map_err(|e| e.to_string())?.expand();
        let direct = BigUint::from(n) * totient(&f).map_err(|e| e.to_string())?.expand();
        let tabled = BigUint::from(n) * table[n as usize];
        if square != direct || square != tabled {
            return Err(format!(
                "n = {n}: factored phi(n^2) = {square}, n phi(n) = {direct}, table gives {tabled}"
            ));
        }
    }
    Ok(format!("n = 1..={limit}"))
}

fn sieve_check(limit: u64, table: &[u64]) -> Result<String, String> {
    let seq = sequence_from_table(&table[..=limit as usize]);
    for (i, &v) in seq.iter().enumerate() {
        let n = i as u64 + 1;
        let expected = phi_square_value(&BigUint::from(n)).map_err(|e| e.to_string())?;
        if BigUint::from(v) != expected {
            return Err(format!("n = {n}: sieve {v}, factored {expected}"));
        }
    }
    Ok(format!("n = 1..={limit}"))
}

fn round_trip_check(cases: usize, seed: u64) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    check_representation(&FactoredRational::one())?;
    for _ in 0..cases {
        check_representation(&random_rational(&mut rng, 97, 6))?;
    }
    Ok(format!("{cases} random rationals, primes <= 97, exponents in [-6, 6]"))
}

/// Runs every check with the sieve-built totient table.
pub fn run(config: &SelfTestConfig) -> Vec<CheckOutcome> {
    run_with(config, &totient_table)
}

/// Runs every check, taking `phi(k)` for `k = 0..=limit` from `table_source`.
pub fn run_with(config: &SelfTestConfig, table_source: &dyn Fn(usize) -> Vec<u64>) -> Vec<CheckOutcome> {
    let table = table_source(config.identity_limit as usize);
    vec![
        timed("example 19/47", || example_check(39330, 55836, 19, 47, 19_673_280)),
        timed("example 47/58", || example_check(14476, 20010, 47, 58, 1_700_160)),
        timed("phi(n^2) = n phi(n)", || identity_check(config.identity_limit, &table)),
        timed("sieve vs factored", || sieve_check(config.identity_limit, &table)),
        timed("injectivity", || match injectivity_scan(config.injectivity_limit) {
            None => Ok(format!("no collision up to {}", config.injectivity_limit)),
            Some((m, n)) => Err(format!("phi({m}^2) = phi({n}^2)")),
        }),
        timed("round trip", || round_trip_check(config.round_trip_cases, config.seed)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let outcomes = run(&SelfTestConfig::default());
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
        assert_eq!(outcomes.len(), 6);
    }

    #[test]
    fn corrupted_table_is_caught() {
        let corrupt = |limit: usize| {
            let mut t = totient_table(limit);
            t[720] += 1;
            t
        };
        let outcomes = run_with(&SelfTestConfig::default(), &corrupt);
        let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
        assert_eq!(failed, vec!["phi(n^2) = n phi(n)", "sieve vs factored"]);
        let identity = outcomes.iter().find(|o| o.name == "phi(n^2) = n phi(n)").unwrap();
        assert!(identity.detail.starts_with("n = 720"), "{}", identity.detail);
    }

    #[test]
    fn random_rationals_stay_in_range() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            let r = random_rational(&mut rng, 13, 2);
            assert!(r.iter().all(|(p, e)| *p <= BigUint::from(13u32) && (-2..=2).contains(&e) && e != 0));
        }
    }
}
