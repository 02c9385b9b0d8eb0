//! Higher differentials that cannot be derived from `d_3`, kept as data.
//!
//! Each record states `d_r(source) = coeff · target` on a range of pages. Special forms:
//! a source of `*` with target `0` says every differential leaving the matching entries
//! vanishes; a source of `*` with a nonzero target and coefficient `0` says the target
//! class is never hit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::label::{class_bidegree, parse_class, PageLabel};
use crate::error::{Error, Result};

pub const DEFAULT_RULES: &str = include_str!("../../data/rules.json");

/// Pages a rule applies to: one page `r`, or every page from `r` on (`r..`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageRange {
    Exactly(u32),
    From(u32),
}

impl PageRange {
    pub fn contains(self, r: u32) -> bool {
        match self {
            PageRange::Exactly(p) => r == p,
            PageRange::From(p) => r >= p,
        }
    }
}

impl FromStr for PageRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse("page range", s.to_string());
        match s.strip_suffix("..") {
            Some(p) => Ok(PageRange::From(p.parse().map_err(|_| bad())?)),
            None => Ok(PageRange::Exactly(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for PageRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageRange::Exactly(r) => write!(f, "{r}"),
            PageRange::From(r) => write!(f, "{r}.."),
        }
    }
}

/// A bidegree coordinate: a number or `*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    Any,
    At(u32),
}

impl Coord {
    pub fn matches(self, v: u32) -> bool {
        match self {
            Coord::Any => true,
            Coord::At(x) => x == v,
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coord::Any => s.serialize_str("*"),
            Coord::At(v) => s.serialize_u32(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "*" => Ok(Coord::Any),
            serde_json::Value::Number(v) => v
                .as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .map(Coord::At)
                .ok_or_else(|| serde::de::Error::custom("coordinate out of range")),
            other => Err(serde::de::Error::custom(format!(
                "expected a number or \"*\", got {other}"
            ))),
        }
    }
}

/// `all` or `n%m==r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NCondition {
    All,
    Residue { modulus: u32, residue: u32 },
}

impl NCondition {
    pub fn holds(self, n: u32) -> bool {
        match self {
            NCondition::All => true,
            NCondition::Residue { modulus, residue } => n % modulus == residue,
        }
    }
}

impl FromStr for NCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(NCondition::All);
        }
        let bad = || Error::parse("n condition", s.to_string());
        let rest = s.strip_prefix("n%").ok_or_else(bad)?;
        let (m, r) = rest.split_once("==").ok_or_else(bad)?;
        let modulus: u32 = m.parse().map_err(|_| bad())?;
        let residue: u32 = r.parse().map_err(|_| bad())?;
        if modulus == 0 || residue >= modulus {
            return Err(bad());
        }
        Ok(NCondition::Residue { modulus, residue })
    }
}

impl fmt::Display for NCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NCondition::All => write!(f, "all"),
            NCondition::Residue { modulus, residue } => write!(f, "n%{modulus}=={residue}"),
        }
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(
                d: D,
            ) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(PageRange);
string_serde!(NCondition);
string_serde!(Formula);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialRule {
    pub page: PageRange,
    pub s: Coord,
    pub t: Coord,
    pub n_condition: NCondition,
    pub source_label: String,
    pub coeff_formula: Formula,
    pub target_label: String,
    pub citation: String,
}

/// What a rule says once its text is interpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleKind {
    /// Every differential leaving the matching entries is zero.
    AllVanish,
    /// `d_r(source) = coeff · target`; an empty target means zero.
    Value {
        source: Vec<(BigInt, PageLabel)>,
        target: Vec<(BigInt, PageLabel)>,
    },
    /// The target class is never a boundary.
    NeverHit { target: Vec<(BigInt, PageLabel)> },
}

impl DifferentialRule {
    pub fn kind(&self) -> Result<RuleKind> {
        let wildcard = self.source_label.trim() == "*";
        let target = parse_class(&self.target_label)?;
        match (wildcard, target.is_empty()) {
            (true, true) => Ok(RuleKind::AllVanish),
            (true, false) => Ok(RuleKind::NeverHit { target }),
            (false, _) => Ok(RuleKind::Value {
                source: parse_class(&self.source_label)?,
                target,
            }),
        }
    }

    /// Whether the rule speaks about differentials leaving `(s,t)` on page `r` at `n`.
    pub fn applies(&self, n: u32, r: u32, s: u32, t: u32) -> bool {
        self.page.contains(r) && self.n_condition.holds(n) && self.s.matches(s) && self.t.matches(t)
    }

    /// Checks that labels parse, sit in the stated bidegree and follow `(s+r, t-r+1)`.
    pub fn validate(&self) -> Result<()> {
        let kind = self.kind()?;
        self.coeff_formula.eval(4)?;
        let mismatch = |what: String| Error::RuleMismatch(format!("{}: {what}", self.citation));
        match kind {
            RuleKind::AllVanish => {}
            RuleKind::NeverHit { target } => {
                class_bidegree(&target)?;
            }
            RuleKind::Value { source, target } => {
                let Some((s, t)) = class_bidegree(&source)? else {
                    return Err(mismatch("empty source".into()));
                };
                if !self.s.matches(s) || !self.t.matches(t) {
                    return Err(mismatch(format!("source lies in ({s},{t})")));
                }
                if let (Some((ts, tt)), PageRange::Exactly(r)) = (class_bidegree(&target)?, self.page) {
                    if (ts, tt + r - 1) != (s + r, t) {
                        return Err(mismatch(format!(
                            "d{r} from ({s},{t}) cannot land in ({ts},{tt})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleTable {
    pub version: u32,
    pub rules: Vec<DifferentialRule>,
}

impl RuleTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let table: RuleTable =
            serde_json::from_str(text).map_err(|e| Error::parse("rule table", e.to_string()))?;
        for rule in &table.rules {
            rule.validate()?;
        }
        Ok(table)
    }

    /// Pretty JSON with a trailing newline; the shipped table is stored in this form.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_RULES).expect("shipped rule table is valid")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn applicable(&self, n: u32, r: u32, s: u32, t: u32) -> impl Iterator<Item = &DifferentialRule> {
        self.rules.iter().filter(move |rule| rule.applies(n, r, s, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table_round_trips() {
        let table = RuleTable::builtin();
        assert_eq!(table.to_json(), DEFAULT_RULES);
        assert!(table.rules.len() >= 8);
    }

    #[test]
    fn field_syntax() {
        assert_eq!("4..".parse::<PageRange>().unwrap(), PageRange::From(4));
        assert!(PageRange::From(4).contains(9));
        assert!(!PageRange::Exactly(7).contains(9));
        let c: NCondition = "n%4==2".parse().unwrap();
        assert!(c.holds(10) && !c.holds(8));
        assert!("n%4==4".parse::<NCondition>().is_err());
        assert_eq!(c.to_string(), "n%4==2");
    }

    #[test]
    fn serre_pattern_enforced() {
        let mut table = RuleTable::builtin();
        let rule = table
            .rules
            .iter_mut()
            .find(|r| r.source_label == "2c4c1x1")
            .unwrap();
        rule.page = PageRange::Exactly(9);
        assert!(matches!(rule.validate(), Err(Error::RuleMismatch(_))));
    }
}
