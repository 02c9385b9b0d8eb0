//! Tokenizing signed sums of monomial terms such as `5c4c2 - 2c4c1^2 + x1^5`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Splits `s` into `(coefficient, body)` pairs. The body is the factor string after the
/// leading integer, empty for a bare constant.
pub(crate) fn split_terms<'a>(what: &'static str, s: &'a str) -> Result<Vec<(BigInt, &'a str)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(what, "empty input"));
    }
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        rest = rest.trim_start();
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r.trim_start();
        } else if !first {
            return Err(Error::parse(what, format!("expected + or - before {rest:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = rest[..end].trim();
        rest = &rest[end..];
        if term.is_empty() {
            return Err(Error::parse(what, format!("dangling sign in {s:?}")));
        }
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let (num, body) = term.split_at(digits);
        let mut coeff = if num.is_empty() {
            BigInt::one()
        } else {
            num.parse::<BigInt>()
                .map_err(|e| Error::parse(what, e.to_string()))?
        };
        let body = body.trim_start_matches('*').trim();
        if num.is_empty() && body.is_empty() {
            return Err(Error::parse(what, format!("empty term in {s:?}")));
        }
        if negative {
            coeff = -coeff;
        }
        out.push((coeff, body));
    }
    Ok(out)
}

/// Splits a factor string like `c4c1^2x1` into `(letter, index, power)` triples.
/// Indices may contain underscores, as in `y2_01`.
pub(crate) fn split_factors(what: &'static str, body: &str) -> Result<Vec<(char, String, u32)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let letter = chars[i];
        if !letter.is_ascii_alphabetic() {
            return Err(Error::parse(what, format!("unexpected {letter:?} in {body:?}")));
        }
        i += 1;
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
            i += 1;
        }
        let index: String = chars[start..i].iter().collect();
        if index.is_empty() {
            return Err(Error::parse(what, format!("missing index after {letter:?}")));
        }
        let mut power = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let pstart = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let p: String = chars[pstart..i].iter().collect();
            power = p
                .parse()
                .map_err(|_| Error::parse(what, format!("bad exponent in {body:?}")))?;
        }
        out.push((letter, index, power));
    }
    Ok(out)
}
