//! Exact representation of positive rationals as `phi(m^2) / phi(n^2)`.
//!
//! Every positive rational `r` can be written as `phi(m^2) / phi(n^2)` with
//! `m * n` divisible by no prime larger than the largest prime of `r`. This
//! crate computes such a pair by eliminating the largest prime of `r` one
//! step at a time, verifies the result in exact factored arithmetic, and
//! provides brute-force oracles to cross-check it.

pub mod error;
pub mod factored;
pub mod factorize;
pub mod oracle;
pub mod parse;
pub mod primality;
pub mod representation;
pub mod selftest;
pub mod totient;

pub use error::{Error, Result};
pub use factored::{Exponent, FactoredInteger, FactoredRational};
pub use factorize::{factor, factor_u64, factor_with, FactorConfig};
pub use oracle::{
    brute_force_minimal, brute_force_minimal_partitioned, injectivity_scan, phi_square_sequence,
    SearchResult,
};
pub use parse::{parse_integer, parse_rational};
pub use primality::{is_prime, primality, Primality};
pub use representation::{
    represent, represent_power_of_two, verify, Branch, Representation, VerificationReport,
};
pub use totient::{phi_square_value, totient, totient_of_square, TotientValue};
