//! The presented graded ring for the integral cohomology of `K(Z,3)` through degree 15:
//! generators `x1, y3_0, y2_1, y5_0, y2_01` in degrees 3, 8, 10, 12, 15 with relations
//! `2x1^2 = 3y3_0 = 2y2_1 = 5y5_0 = 2y2_01 = 0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{FgAbGroup, IntMatrix};
use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kz3Generator {
    X1,
    Y3_0,
    Y2_1,
    Y5_0,
    Y2_01,
}

impl Kz3Generator {
    pub const ALL: [Kz3Generator; 5] = [
        Kz3Generator::X1,
        Kz3Generator::Y3_0,
        Kz3Generator::Y2_1,
        Kz3Generator::Y5_0,
        Kz3Generator::Y2_01,
    ];

    pub fn degree(self) -> u32 {
        match self {
            Kz3Generator::X1 => 3,
            Kz3Generator::Y3_0 => 8,
            Kz3Generator::Y2_1 => 10,
            Kz3Generator::Y5_0 => 12,
            Kz3Generator::Y2_01 => 15,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kz3Generator::X1 => "x1",
            Kz3Generator::Y3_0 => "y3_0",
            Kz3Generator::Y2_1 => "y2_1",
            Kz3Generator::Y5_0 => "y5_0",
            Kz3Generator::Y2_01 => "y2_01",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }

    /// `(power, k)` for the relation `k·g^power = 0`, `None` for `x1` alone.
    pub fn relation(self) -> (u32, u32) {
        match self {
            Kz3Generator::X1 => (2, 2),
            Kz3Generator::Y3_0 => (1, 3),
            Kz3Generator::Y2_1 => (1, 2),
            Kz3Generator::Y5_0 => (1, 5),
            Kz3Generator::Y2_01 => (1, 2),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// A monomial in the five generators, degree at most 15.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Kz3Monomial {
    exponents: [u32; 5],
}

impl Kz3Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(exponents: [u32; 5]) -> Result<Self> {
        let m = Self { exponents };
        if m.degree() > MAX_DEGREE {
            return Err(Error::OutOfRange(format!(
                "{m} has degree {} above {MAX_DEGREE}",
                m.degree()
            )));
        }
        Ok(m)
    }

    pub fn generator(g: Kz3Generator) -> Self {
        let mut e = [0; 5];
        e[g.index()] = 1;
        Self { exponents: e }
    }

    pub fn x1_power(k: u32) -> Result<Self> {
        Self::new([k, 0, 0, 0, 0])
    }

    pub fn exponents(&self) -> [u32; 5] {
        self.exponents
    }

    pub fn exponent(&self, g: Kz3Generator) -> u32 {
        self.exponents[g.index()]
    }

    pub fn degree(&self) -> u32 {
        Kz3Generator::ALL
            .iter()
            .map(|g| g.degree() * self.exponents[g.index()])
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents == [0; 5]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut e = self.exponents;
        for (a, b) in e.iter_mut().zip(other.exponents) {
            *a += b;
        }
        Self::new(e)
    }

    /// Additive order: 0 when free, otherwise the gcd of the applicable relation
    /// multipliers. An annihilator of 1 means the monomial vanishes.
    pub fn annihilator(&self) -> BigInt {
        Kz3Generator::ALL
            .iter()
            .filter_map(|&g| {
                let (power, k) = g.relation();
                (self.exponent(g) >= power).then_some(BigInt::from(k))
            })
            .fold(BigInt::zero(), |a, k| a.gcd(&k))
    }

    pub fn is_zero(&self) -> bool {
        self.annihilator().is_one()
    }

    /// Parses `x1^2y3_0`, `1`, …
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let mut e = [0; 5];
        for (letter, index, power) in crate::text::split_factors("K(Z,3) monomial", s)? {
            let name = format!("{letter}{index}");
            let g = Kz3Generator::from_name(&name)
                .ok_or_else(|| Error::parse("K(Z,3) monomial", format!("unknown {name}")))?;
            e[g.index()] += power;
        }
        Self::new(e)
    }
}

/// Label order: exponent vectors in descending lexicographic order, so `x1^4` precedes
/// `y5_0` and `x1^5` precedes `x1y5_0` and `y2_01`.
impl Ord for Kz3Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Kz3Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Kz3Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for g in Kz3Generator::ALL {
            match self.exponent(g) {
                0 => {}
                1 => write!(f, "{}", g.name())?,
                k => write!(f, "{}^{k}", g.name())?,
            }
        }
        Ok(())
    }
}

/// All monomials of degree `s`, zero ones included, in label order.
pub fn monomials(s: u32) -> Result<Vec<Kz3Monomial>> {
    if s > MAX_DEGREE {
        return Err(Error::OutOfRange(format!(
            "degree {s} above {MAX_DEGREE}"
        )));
    }
    fn go(i: usize, rest: u32, e: &mut [u32; 5], out: &mut Vec<Kz3Monomial>) {
        if i == 5 {
            if rest == 0 {
                out.push(Kz3Monomial { exponents: *e });
            }
            return;
        }
        let d = Kz3Generator::ALL[i].degree();
        for k in 0..=rest / d {
            e[i] = k;
            go(i + 1, rest - k * d, e, out);
        }
        e[i] = 0;
    }
    let mut out = Vec::new();
    go(0, s, &mut [0; 5], &mut out);
    out.sort();
    Ok(out)
}

/// Nonzero monomials of degree `s`: the labels of the degree-`s` group.
pub fn degree_basis(s: u32) -> Result<Vec<Kz3Monomial>> {
    Ok(monomials(s)?.into_iter().filter(|m| !m.is_zero()).collect())
}

/// The degree-`s` group, one generator per nonzero monomial.
pub fn degree_group(s: u32) -> Result<FgAbGroup> {
    let basis = degree_basis(s)?;
    let k = basis.len();
    let rows: Vec<Vec<BigInt>> = basis
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.annihilator().is_zero())
        .map(|(i, m)| {
            let mut row = vec![BigInt::zero(); k];
            row[i] = m.annihilator();
            row
        })
        .collect();
    let rel = IntMatrix::from_rows(rows, k)?;
    FgAbGroup::new(k, rel)?.with_labels(basis.iter().map(|m| m.to_string()).collect())
}

/// An integer combination of monomials, reduced modulo each annihilator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Kz3Element {
    terms: BTreeMap<Kz3Monomial, BigInt>,
}

impl Kz3Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Kz3Monomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, BigInt::one());
        e
    }

    pub fn add_term(&mut self, m: Kz3Monomial, value: BigInt) {
        let ann = m.annihilator();
        let mut sum = self.terms.get(&m).cloned().unwrap_or_default() + value;
        if !ann.is_zero() {
            sum = sum.mod_floor(&ann);
        }
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Kz3Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Kz3Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Multiplication by `x1`.
    pub fn mul_x1(&self) -> Result<Self> {
        let x1 = Kz3Monomial::generator(Kz3Generator::X1);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mul(&x1)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Kz3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.terms.keys().map(|m| m.to_string()).collect();
        let coeffs: Vec<BigInt> = self.terms.values().cloned().collect();
        write!(f, "{}", crate::abelian::group::render_combination(&coeffs, &labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Kz3Monomial {
        Kz3Monomial::parse(s).unwrap()
    }

    #[test]
    fn annihilators() {
        assert_eq!(m("x1").annihilator(), BigInt::zero());
        assert_eq!(m("1").annihilator(), BigInt::zero());
        assert_eq!(m("x1^2").annihilator(), BigInt::from(2));
        assert_eq!(m("x1^2y3_0").annihilator(), BigInt::one());
        assert_eq!(m("x1y5_0").annihilator(), BigInt::from(5));
        assert!(Kz3Monomial::parse("x1^6").is_err());
    }

    #[test]
    fn degree_groups() {
        let g = degree_group(3).unwrap();
        assert_eq!(g.structure(), (1, vec![]));
        assert_eq!(g.labels().unwrap(), &["x1".to_string()]);
        let g = degree_group(12).unwrap();
        assert_eq!(g.structure(), (0, vec![BigInt::from(10)]));
        assert_eq!(g.labels().unwrap(), &["x1^4".to_string(), "y5_0".to_string()]);
        assert!(degree_group(14).unwrap().is_trivial());
        let g = degree_group(15).unwrap();
        assert_eq!(g.labels().unwrap(), &["x1^5", "x1y5_0", "y2_01"]);
        assert_eq!(g.p_primary(2).unwrap(), vec![BigInt::from(2), BigInt::from(2)]);
        assert!(degree_group(16).is_err());
    }

    #[test]
    fn torsion_below_twelve() {
        for s in 0..=12 {
            let g = degree_group(s).unwrap();
            let free = g.free_rank();
            assert_eq!(free, usize::from(s == 0 || s == 3), "degree {s}");
        }
    }

    #[test]
    fn multiplication_by_x1() {
        let x1 = Kz3Element::from_monomial(m("x1"));
        let sq = x1.mul_x1().unwrap();
        assert_eq!(sq.to_string(), "x1^2");
        assert!(sq.scale(&BigInt::from(2)).is_zero());
        assert_eq!(Kz3Element::from_monomial(m("1")).mul_x1().unwrap(), x1);
        let y = Kz3Element::from_monomial(m("x1y3_0"));
        assert!(y.mul_x1().unwrap().is_zero());
        assert!(Kz3Element::from_monomial(m("x1^5")).mul_x1().is_err());
    }
}
