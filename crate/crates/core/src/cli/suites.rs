//! Verification sweeps behind `bpu verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::Serialize;

use super::Span;
use crate::invariants::{self, construct, lambda};
use crate::page::label::class_vector;
use crate::page::rules::RuleKind;
use crate::page::{e3_entry, expected_torsion, torsion_of_h, torsion_with_engine, AssemblyReport, Engine, RuleTable};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Torsion in degrees 12..14 against `Z/gcd(2,n)` and `Z/gcd(5,n)`.
    #[value(alias = "theorem-1.1")]
    Torsion,
    /// The weight-6 quotient is cyclic of order `λ^3`, and the relation solves.
    #[value(alias = "theorem-1.2")]
    CyclicQuotient,
    /// Closed forms, lattice spans and the worked relation at `n = 5`.
    #[value(alias = "section-4")]
    Invariants,
    /// The rule table parses, round-trips and decides every needed differential.
    RulesConsistency,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Torsion => "torsion",
            Suite::CyclicQuotient => "cyclic-quotient",
            Suite::Invariants => "invariants",
            Suite::RulesConsistency => "rules-consistency",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub n: u32,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub n_range: String,
    pub cases: usize,
    pub failures: Vec<SuiteFailure>,
    pub passed: bool,
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<SuiteFailure>,
}

impl Tally {
    fn check(&mut self, n: u32, check: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        self.cases += 1;
        let (expected, actual) = (expected.to_string(), actual.to_string());
        if expected != actual {
            self.failures.push(SuiteFailure {
                n,
                check: check.into(),
                expected,
                actual,
            });
        }
    }

    fn error(&mut self, n: u32, check: impl Into<String>, e: impl ToString) {
        self.cases += 1;
        self.failures.push(SuiteFailure {
            n,
            check: check.into(),
            expected: "no error".into(),
            actual: e.to_string(),
        });
    }
}

fn divisors(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|d| format!("Z/{d}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Torsion reports for every `(n, degree)`, one engine per even `n`.
pub fn torsion_reports(ns: Span, degrees: Span, rules: &RuleTable) -> Result<Vec<AssemblyReport>> {
    let mut out = Vec::new();
    for n in ns.iter() {
        if n % 2 == 1 {
            for d in degrees.iter() {
                out.push(torsion_of_h(n, d, rules)?);
            }
            continue;
        }
        let engine = Engine::new(n, rules)?;
        for d in degrees.iter() {
            out.push(torsion_with_engine(&engine, d)?);
        }
    }
    Ok(out)
}

fn torsion_suite(ns: Span, rules: &RuleTable, t: &mut Tally) {
    for n in ns.iter() {
        let engine = if n % 2 == 0 {
            match Engine::new(n, rules) {
                Ok(e) => Some(e),
                Err(e) => {
                    t.error(n, "engine", e);
                    continue;
                }
            }
        } else {
            None
        };
        for d in 12..=14 {
            let report = match &engine {
                Some(e) => torsion_with_engine(e, d),
                None => torsion_of_h(n, d, rules),
            };
            let check = format!("torsion of H^{d}");
            match report {
                Ok(r) if r.torsion.bounds.is_some() => {
                    t.check(n, check, divisors(&expected_torsion(n, d)), "undetermined extension")
                }
                Ok(r) => t.check(n, check, divisors(&expected_torsion(n, d)), divisors(&r.torsion.elementary_divisors)),
                Err(e) => t.error(n, check, e),
            }
        }
    }
}

fn quotient_suite(ns: Span, t: &mut Tally) {
    for n in ns.iter() {
        let m = BigInt::from(lambda(n)).pow(3);
        let want = if m == BigInt::from(1) { "0".to_string() } else { format!("Z/{m}") };
        match invariants::quotient_k12(n) {
            Ok(g) => t.check(n, "weight-6 quotient", want, g),
            Err(e) => t.error(n, "weight-6 quotient", e),
        }
        match invariants::solve_relation(n) {
            Ok(w) => {
                let holds = construct::construct_e(n, 6).map(|s| w.holds(&s)).unwrap_or(false);
                t.check(n, "relation identity", true, holds);
                t.check(n, "relation without e6", true, w.f_zero_achievable);
            }
            Err(e) => t.error(n, "relation", e),
        }
    }
}

fn invariants_suite(ns: Span, t: &mut Tally) {
    for n in ns.iter() {
        match invariants::verify_formulas(n) {
            Ok(r) => {
                for c in r.checks {
                    let actual = if c.pass { "pass".to_string() } else { format!("fail: {}", c.detail) };
                    t.check(n, c.name, "pass", actual);
                }
            }
            Err(e) => t.error(n, "closed forms", e),
        }
        match construct::construct_e(n, 6) {
            Ok(seq) => {
                for w in 0..=5 {
                    let index = construct::index_in_kn(&seq, w).map(|i| i.map_or("infinite".into(), |i| i.to_string()));
                    match index {
                        Ok(i) => t.check(n, format!("index of generator products in weight {w}"), 1, i),
                        Err(e) => t.error(n, format!("index in weight {w}"), e),
                    }
                }
            }
            Err(e) => t.error(n, "construction", e),
        }
        if n == 5 {
            let got = invariants::solve_relation_with(5, &super::worked_alpha6())
                .map(|w| format!("({}, {}, {}, {})", w.b, w.c, w.d, w.f));
            match got {
                Ok(g) => t.check(n, "worked relation 125·α6", "(25, -3, 119, 0)", g),
                Err(e) => t.error(n, "worked relation", e),
            }
        }
    }
}

fn rules_suite(ns: Span, rules: &RuleTable, t: &mut Tally) {
    let reparsed = RuleTable::from_json(&rules.to_json());
    t.check(0, "rule table round trip", true, reparsed.as_ref() == Ok(rules));
    for n in ns.iter().filter(|n| n % 2 == 0) {
        for rule in rules.rules.iter().filter(|r| r.n_condition.holds(n)) {
            let Ok(RuleKind::Value { source, target }) = rule.kind() else {
                continue;
            };
            for (what, class) in [("source", &source), ("target", &target)] {
                let Some((cs, ct)) = class.first().map(|(_, l)| l.bidegree()) else {
                    continue;
                };
                let resolved = e3_entry(n, cs, ct).and_then(|e| class_vector(class, &e.basis_labels, n));
                if let Err(e) = resolved {
                    t.error(n, format!("{what} of {}", rule.citation), e);
                } else {
                    t.cases += 1;
                }
            }
        }
        let engine = match Engine::new(n, rules) {
            Ok(e) => e,
            Err(e) => {
                t.error(n, "engine", e);
                continue;
            }
        };
        for s in 0..=14u32 {
            for tt in (0..=14 - s).step_by(2) {
                if let Err(e) = engine.einf(s, tt) {
                    t.error(n, format!("E_inf^{{{s},{tt}}}"), e);
                } else {
                    t.cases += 1;
                }
            }
        }
    }
}

pub fn run_suite(suite: Suite, ns: Span, rules: &RuleTable) -> SuiteResult {
    let mut t = Tally::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Torsion {
        torsion_suite(ns, rules, &mut t);
    }
    if all || suite == Suite::CyclicQuotient {
        quotient_suite(ns, &mut t);
    }
    if all || suite == Suite::Invariants {
        invariants_suite(ns, &mut t);
    }
    if all || suite == Suite::RulesConsistency {
        rules_suite(ns, rules, &mut t);
    }
    t.failures.sort_by(|a, b| (a.n, &a.check).cmp(&(b.n, &b.check)));
    SuiteResult {
        suite: suite.name().into(),
        n_range: ns.to_string(),
        cases: t.cases,
        passed: t.failures.is_empty(),
        failures: t.failures,
    }
}
