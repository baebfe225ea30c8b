//! Brute-force checks that do not go through the constructive algorithm:
//! a sieve for `phi(n^2)`, exhaustive search for minimal pairs, and a
//! collision scan for `n -> phi(n^2)`.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::thread;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::factored::FactoredInteger;
use crate::totient::phi_square_value;
use crate::FactoredRational;

/// `phi(k)` for `k` in `0..=limit` by a linear sieve (`table[0] = 0`).
pub fn totient_table(limit: usize) -> Vec<u64> {
    let mut phi = vec![0u64; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    if limit >= 1 {
        phi[1] = 1;
    }
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}

/// `[phi(1^2), ..., phi(limit^2)]`, i.e. `k * phi(k)` for `k = 1..=limit`.
pub fn phi_square_sequence(limit: usize) -> Vec<u64> {
    sequence_from_table(&totient_table(limit))
}

pub(crate) fn sequence_from_table(table: &[u64]) -> Vec<u64> {
    table
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &t)| k as u64 * t)
        .collect()
}

/// Outcome of [`brute_force_minimal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchResult {
    /// The minimal `(m, n)` under the order `(max(m, n), m)`, if any exists
    /// with `m, n <= bound`.
    pub pair: Option<(u64, u64)>,
    pub bound: u64,
}

impl SearchResult {
    pub fn found(&self) -> bool {
        self.pair.is_some()
    }
}

fn order_key((m, n): (u64, u64)) -> (u64, u64) {
    (m.max(n), m)
}

/// Bit length of `f` is at least this.
fn min_bits(f: &FactoredInteger) -> u64 {
    f.iter()
        .map(|(p, e)| (p.bits() - 1).saturating_mul(e as u64))
        .fold(0u64, u64::saturating_add)
}

/// `(p, q)` for `r = p / q` if both fit in a `u64`.
fn small_parts(r: &FactoredRational) -> Option<(u128, u128)> {
    let (num, den) = (r.numerator(), r.denominator());
    if min_bits(&num) >= 64 || min_bits(&den) >= 64 {
        return None;
    }
    let (p, q) = r.expand_parts();
    Some((p.to_u64()? as u128, q.to_u64()? as u128))
}

/// `phi(k^2)` for `k = 1..=bound` with a reverse index. The map is
/// well defined because `k -> phi(k^2)` is injective.
struct ShellTable {
    values: Vec<u64>,
    index: HashMap<u64, u64>,
}

impl ShellTable {
    fn new(bound: u64) -> Self {
        let values = phi_square_sequence(bound as usize);
        let index = values.iter().enumerate().map(|(i, &v)| (v, i as u64 + 1)).collect();
        ShellTable { values, index }
    }

    fn phi(&self, k: u64) -> u128 {
        self.values[k as usize - 1] as u128
    }

    /// The `k` with `phi(k^2) = target`, if `target` is such a value.
    fn lookup(&self, target: u128) -> Option<u64> {
        u64::try_from(target).ok().and_then(|t| self.index.get(&t).copied())
    }

    /// `k` with `phi(k^2) = phi(s^2) * num / den`, if any.
    fn partner(&self, s: u64, num: u128, den: u128) -> Option<u64> {
        let scaled = self.phi(s) * num;
        if !scaled.is_multiple_of(den) {
            return None;
        }
        self.lookup(scaled / den)
    }
}

/// First solution in `shells` under the order `(max(m, n), m)`. Within shell
/// `s` the candidates are `(m, s)` for `m < s`, then `(s, n)` for `n <= s`; the
/// reverse index finds the only possible `m` (or `n`) for each directly.
fn scan_shells(table: &ShellTable, p: u128, q: u128, shells: RangeInclusive<u64>) -> Option<(u64, u64)> {
    for s in shells {
        // phi(m^2) q = phi(s^2) p
        if let Some(m) = table.partner(s, p, q).filter(|&m| m < s) {
            return Some((m, s));
        }
        // phi(s^2) q = phi(n^2) p
        if let Some(n) = table.partner(s, q, p).filter(|&n| n <= s) {
            return Some((s, n));
        }
    }
    None
}

/// Exhaustive search over `m, n <= bound` for `phi(m^2) q = phi(n^2) p`,
/// visiting pairs in increasing `(max(m, n), m)` order. Uses only the sieve
/// and exact integer comparison, never the constructive algorithm.
pub fn brute_force_minimal(r: &FactoredRational, bound: u64) -> SearchResult {
    brute_force_minimal_partitioned(r, bound, 1)
}

/// As [`brute_force_minimal`], with the shells `max(m, n) = s` split into
/// contiguous ranges scanned on `workers` threads. The global minimum is
/// taken over all partial results, so the answer does not depend on the
/// partitioning.
pub fn brute_force_minimal_partitioned(r: &FactoredRational, bound: u64, workers: usize) -> SearchResult {
    let miss = SearchResult { pair: None, bound };
    // phi(k^2) < k^2 <= bound^2, so larger p or q can never match.
    let Some((p, q)) = small_parts(r) else {
        return miss;
    };
    if bound == 0 {
        return miss;
    }
    let table = ShellTable::new(bound);
    let workers = workers.clamp(1, bound as usize) as u64;
    let chunk = bound.div_ceil(workers);
    let ranges: Vec<RangeInclusive<u64>> = (0..workers)
        .map(|w| (w * chunk + 1)..=((w + 1) * chunk).min(bound))
        .filter(|range| !range.is_empty())
        .collect();
    let pair = if ranges.len() == 1 {
        scan_shells(&table, p, q, ranges[0].clone())
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|range| {
                    let table = &table;
                    scope.spawn(move || scan_shells(table, p, q, range))
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("scan worker panicked"))
                .min_by_key(|&pair| order_key(pair))
        })
    };
    SearchResult { pair, bound }
}

/// Computes `phi(n^2)` for `n = 1..=limit` through factorization and returns
/// the first pair `m < n` with equal values, if any.
pub fn injectivity_scan(limit: u64) -> Option<(u64, u64)> {
    let mut seen: HashMap<BigUint, u64> = HashMap::with_capacity(limit as usize);
    for n in 1..=limit {
        // Every u64 factors within budget.
        let v = phi_square_value(&BigUint::from(n)).expect("u64 input always factors");
        if let Some(&m) = seen.get(&v) {
            return Some((m, n));
        }
        seen.insert(v, n);
    }
    None
}
