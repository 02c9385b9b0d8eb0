use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::monomial::ChernMonomial;
use crate::error::{Error, Result};
use crate::text::{split_factors, split_terms};

/// Exact scalars a polynomial may carry: `BigInt` or `BigRational`.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + Eq + Num + Signed + From<BigInt>
{
}

impl<T> Coefficient for T where
    T: Clone + fmt::Debug + fmt::Display + Eq + Num + Signed + From<BigInt>
{
}

/// A polynomial in `c_1, …, c_n`. Terms with a part above `n` are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernPolynomial<C = BigInt> {
    n: u32,
    terms: BTreeMap<ChernMonomial, C>,
}

pub type RationalChernPolynomial = ChernPolynomial<BigRational>;

impl<C: Coefficient> ChernPolynomial<C> {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::constant(n, C::one())
    }

    pub fn constant(n: u32, value: C) -> Self {
        Self::term(n, ChernMonomial::one(), value)
    }

    /// `value · m`, zero if `m` involves some `c_i` with `i > n`.
    pub fn term(n: u32, m: ChernMonomial, value: C) -> Self {
        let mut p = Self::zero(n);
        p.add_term(m, value);
        p
    }

    pub fn c(n: u32, i: u32) -> Self {
        if i == 0 {
            return Self::one(n);
        }
        Self::term(n, ChernMonomial::c(i), C::one())
    }

    /// Builds `Σ coeff · m` from pairs, combining repeats.
    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (ChernMonomial, C)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Coordinates in `basis` become coefficients.
    pub fn from_vector(n: u32, basis: &[ChernMonomial], v: &[C]) -> Self {
        Self::from_terms(n, basis.iter().cloned().zip(v.iter().cloned()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn add_term(&mut self, m: ChernMonomial, value: C) {
        if value.is_zero() || m.largest_part() > self.n {
            return;
        }
        let sum = self.terms.get(&m).cloned().unwrap_or_else(C::zero) + value;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ChernMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&ChernMonomial, &C)> {
        self.terms.iter()
    }

    /// The weight if all terms share one; `Some(0)` for the zero polynomial.
    pub fn weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(ChernMonomial::weight);
        let first = weights.next().unwrap_or(0);
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weight().is_some()
    }

    pub fn to_vector(&self, basis: &[ChernMonomial]) -> Vec<C> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// Whether every term lies in `basis`.
    pub fn is_supported_on(&self, basis: &[ChernMonomial]) -> bool {
        self.terms.keys().all(|m| basis.contains(m))
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The derivation with `∇c_k = (n - k + 1) c_{k-1}`, `c_0 = 1`.
    pub fn divergence(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            for (part, mult) in m.grouped() {
                let factor = BigInt::from(mult) * BigInt::from(self.n - part + 1);
                out.add_term(m.replace_one(part, part - 1), c.clone() * C::from(factor));
            }
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> ChernPolynomial<D> {
        ChernPolynomial::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Same polynomial with `n` replaced; terms with parts above the new `n` are dropped.
    pub fn with_n(&self, n: u32) -> Self {
        Self::from_terms(n, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    fn check_n(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polynomials over different n");
    }
}

impl ChernPolynomial<BigInt> {
    /// Gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_rational(&self) -> RationalChernPolynomial {
        self.map_coefficients(|c| BigRational::from_integer(c.clone()))
    }

    /// Parses text such as `5c4c2 - 2c4c1^2 + 1`.
    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let mut p = Self::zero(n);
        for (coeff, body) in split_terms("Chern polynomial", s)? {
            let mut parts = Vec::new();
            for (letter, index, power) in split_factors("Chern polynomial", body)? {
                let i: u32 = match (letter, index.parse()) {
                    ('c', Ok(i)) => i,
                    _ => {
                        return Err(Error::parse(
                            "Chern polynomial",
                            format!("unknown factor {letter}{index}"),
                        ))
                    }
                };
                parts.extend(std::iter::repeat_n(i, power as usize));
            }
            p.add_term(ChernMonomial::from_parts(parts), coeff);
        }
        Ok(p)
    }
}

impl RationalChernPolynomial {
    /// The polynomial over the integers, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<ChernPolynomial<BigInt>> {
        if self.terms.values().any(|c| !c.is_integer()) {
            return None;
        }
        Some(self.map_coefficients(|c| c.to_integer()))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }
}

impl<C: Coefficient> Add for &ChernPolynomial<C> {
    type Output = ChernPolynomial<C>;
    fn add(self, rhs: Self) -> ChernPolynomial<C> {
        self.check_n(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Neg for &ChernPolynomial<C> {
    type Output = ChernPolynomial<C>;
    fn neg(self) -> ChernPolynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> Sub for &ChernPolynomial<C> {
    type Output = ChernPolynomial<C>;
    fn sub(self, rhs: Self) -> ChernPolynomial<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul for &ChernPolynomial<C> {
    type Output = ChernPolynomial<C>;
    fn mul(self, rhs: Self) -> ChernPolynomial<C> {
        self.check_n(rhs);
        let mut out = ChernPolynomial::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for ChernPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mag_text = mag.to_string();
            let mag_text = if mag_text.contains('/') {
                format!("({mag_text})")
            } else {
                mag_text
            };
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{mag_text}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag_text}{m}")?,
            }
        }
        Ok(())
    }
}

/// JSON: a list of `{"exponents": [k_1, …, k_n], "coeff": "<decimal>"}`.
impl<C: Coefficient> Serialize for ChernPolynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Term {
            exponents: Vec<u32>,
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&Term {
                exponents: m.exponents(self.n),
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, s: &str) -> ChernPolynomial {
        ChernPolynomial::parse(n, s).unwrap()
    }

    #[test]
    fn divergence_examples() {
        for n in 2..9 {
            assert_eq!(p(n, "c1").divergence(), ChernPolynomial::constant(n, n.into()));
            let expected = &p(n, "c2").scale(&n.into()) + &p(n, "c1^2").scale(&(n - 1).into());
            assert_eq!(p(n, "c2c1").divergence(), expected);
        }
        assert!(p(4, "1").divergence().is_zero());
    }

    #[test]
    fn square_of_e2_at_three() {
        let e2 = p(3, "3c2 - c1^2");
        assert_eq!(&e2 * &e2, p(3, "9c2^2 - 6c2c1^2 + c1^4"));
        assert_eq!(&e2 * &ChernPolynomial::one(3), e2);
        assert!((&e2 * &ChernPolynomial::zero(3)).is_zero());
    }

    #[test]
    fn truncation_above_n() {
        assert!(p(3, "c4").is_zero());
        assert_eq!(p(3, "c4 + c1"), p(3, "c1"));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let q = p(6, "5c4c2 - 2c4c1^2 - 15c3^2 + 1");
        assert_eq!(q.to_string(), "1 + 5c4c2 - 15c3^2 - 2c4c1^2");
        assert_eq!(p(6, &q.to_string()), q);
        assert_eq!(q.content(), BigInt::one());
        assert_eq!(q.weight(), None);
    }

    #[test]
    fn json_terms() {
        let q = p(2, "2c2 - c1^2");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"[{"exponents":[0,1],"coeff":"2"},{"exponents":[2,0],"coeff":"-1"}]"#
        );
    }
}
