//! Text input: `<nat>`, `<nat>/<nat>`, or a factored literal
//! `p1^e1 * p2^e2 ...` (whitespace around tokens ignored, primes distinct,
//! exponents nonzero and signed).

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factored::{Exponent, FactoredInteger, FactoredRational};
use crate::factorize::factor;

fn parse_nat(text: &str) -> Result<BigUint> {
    let t = text.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected a natural number, got {text:?}")));
    }
    BigUint::parse_bytes(t.as_bytes(), 10)
        .ok_or_else(|| Error::Parse(format!("expected a natural number, got {text:?}")))
}

fn parse_exponent(text: &str) -> Result<Exponent> {
    let t = text.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected a signed exponent, got {text:?}")));
    }
    t.parse::<Exponent>()
        .map_err(|_| Error::Parse(format!("exponent {t} out of range")))
}

fn parse_literal(text: &str) -> Result<FactoredRational> {
    let mut pairs = Vec::new();
    for term in text.split('*') {
        let (base, exp) = term
            .split_once('^')
            .ok_or_else(|| Error::Parse(format!("expected <prime>^<exponent>, got {:?}", term.trim())))?;
        pairs.push((parse_nat(base)?, parse_exponent(exp)?));
    }
    FactoredRational::from_pairs(pairs)
}

fn factor_positive(n: &BigUint, what: &'static str) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::ZeroValue(what));
    }
    factor(n)
}

/// Parses a positive rational into canonical factored form.
pub fn parse_rational(text: &str) -> Result<FactoredRational> {
    if text.contains('^') {
        return parse_literal(text);
    }
    match text.split_once('/') {
        Some((num, den)) => {
            let num = factor_positive(&parse_nat(num)?, "numerator")?;
            let den = factor_positive(&parse_nat(den)?, "denominator")?;
            FactoredRational::ratio(&num, &den)
        }
        None => Ok(factor_positive(&parse_nat(text)?, "value")?.into()),
    }
}

/// Parses a positive integer given as `<nat>` or as a factored literal with
/// positive exponents.
pub fn parse_integer(text: &str) -> Result<FactoredInteger> {
    if text.contains('^') {
        let r = parse_literal(text)?;
        return r
            .as_integer()
            .ok_or_else(|| Error::NotAnInteger(text.trim().to_string()));
    }
    factor_positive(&parse_nat(text)?, "value")
}
