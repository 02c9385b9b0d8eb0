//! Basis labels `w ⊗ ξ` of `E_3^{s,t}` and integer combinations of them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chern::ChernMonomial;
use crate::error::{Error, Result};
use crate::kz3::Kz3Monomial;
use crate::text::{split_factors, split_terms};

/// A Chern monomial paired with a `K(Z,3)` monomial, written `c4c1x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PageLabel {
    pub chern: ChernMonomial,
    pub kz3: Kz3Monomial,
}

impl PageLabel {
    pub fn new(chern: ChernMonomial, kz3: Kz3Monomial) -> Self {
        Self { chern, kz3 }
    }

    /// `(s, t)`: the `K(Z,3)` degree and twice the Chern weight.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.kz3.degree(), self.chern.degree())
    }

    /// Parses a single label such as `c2^2x1^2` or `1`.
    pub fn parse(s: &str) -> Result<Self> {
        let terms = parse_class(s)?;
        match terms.as_slice() {
            [(c, label)] if c == &BigInt::from(1) => Ok(label.clone()),
            _ => Err(Error::parse("page label", format!("{s:?} is not a single label"))),
        }
    }
}

impl fmt::Display for PageLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.chern.is_one(), self.kz3.is_one()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{}", self.kz3),
            (false, true) => write!(f, "{}", self.chern),
            (false, false) => write!(f, "{}{}", self.chern, self.kz3),
        }
    }
}

/// Parses `2c4c1x1 + c3c2x1` into coefficient/label pairs.
pub fn parse_class(s: &str) -> Result<Vec<(BigInt, PageLabel)>> {
    let mut out = Vec::new();
    for (coeff, body) in split_terms("class", s)? {
        let mut parts = Vec::new();
        let mut kz3_text = String::new();
        for (letter, index, power) in split_factors("class", body)? {
            if letter == 'c' {
                let i: u32 = index
                    .parse()
                    .map_err(|_| Error::parse("class", format!("bad Chern index {index}")))?;
                parts.extend(std::iter::repeat_n(i, power as usize));
            } else if power == 1 {
                kz3_text.push_str(&format!("{letter}{index}"));
            } else {
                kz3_text.push_str(&format!("{letter}{index}^{power}"));
            }
        }
        let kz3 = if kz3_text.is_empty() {
            Kz3Monomial::one()
        } else {
            Kz3Monomial::parse(&kz3_text)?
        };
        out.push((coeff, PageLabel::new(ChernMonomial::from_parts(parts), kz3)));
    }
    Ok(out)
}

/// Common bidegree of the terms; `None` for the empty (zero) class.
pub fn class_bidegree(terms: &[(BigInt, PageLabel)]) -> Result<Option<(u32, u32)>> {
    let mut found: Option<(u32, u32)> = None;
    for (_, label) in terms {
        let b = label.bidegree();
        match found {
            Some(prev) if prev != b => {
                return Err(Error::parse(
                    "class",
                    format!("terms in bidegrees {prev:?} and {b:?}"),
                ))
            }
            _ => found = Some(b),
        }
    }
    Ok(found)
}

/// Coordinates of a class in an entry basis. Terms that vanish at this `n` (a part above
/// `n`, or a zero `K(Z,3)` monomial) contribute nothing.
pub fn class_vector(terms: &[(BigInt, PageLabel)], labels: &[PageLabel], n: u32) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); labels.len()];
    for (c, label) in terms {
        if label.chern.largest_part() > n || label.kz3.is_zero() {
            continue;
        }
        let i = labels.iter().position(|l| l == label).ok_or_else(|| {
            Error::RuleMismatch(format!("{label} is not a basis label of this entry"))
        })?;
        v[i] += c;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for text in ["2c4c1x1", "c1^2y2_1", "c2^2x1^2", "1", "x1^4", "c6"] {
            let terms = parse_class(text).unwrap();
            let (c, l) = &terms[0];
            let rendered = if c == &BigInt::from(1) {
                l.to_string()
            } else {
                format!("{c}{l}")
            };
            assert_eq!(rendered, text);
        }
        let sum = parse_class("x1^5 + y2_01").unwrap();
        assert_eq!(class_bidegree(&sum).unwrap(), Some((15, 0)));
        assert_eq!(PageLabel::parse("c4c1x1").unwrap().bidegree(), (3, 10));
        assert!(class_bidegree(&parse_class("x1 + c1").unwrap()).is_err());
    }
}
