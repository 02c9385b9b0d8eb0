//! Markdown renderings and the page dump.

use num_bigint::BigInt;
use serde::Serialize;

use super::suites::SuiteResult;
use crate::abelian::{FgAbGroup, GroupSummary};
use crate::error::Result;
use crate::invariants::{GeneratorSequence, InvariantsReport, RelationWitness};
use crate::page::entry::{d3, default_localization, e3_labels};
use crate::page::{e3_entry, e4_entry, AssemblyReport, Engine, Page, RuleTable};

/// A fixed-width markdown table.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect()));
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn sum_of_cyclics(v: &[BigInt]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
}

pub fn torsion(reports: &[AssemblyReport]) -> String {
    let mut sorted: Vec<&AssemblyReport> = reports.iter().collect();
    sorted.sort_by_key(|r| (r.n, r.degree));
    let rows: Vec<Vec<String>> = sorted
        .iter()
        .map(|r| {
            let torsion = match &r.torsion.bounds {
                Some(b) => format!(
                    "graded {}, order {}",
                    sum_of_cyclics(&b.associated_graded),
                    b.maximal_extension.first().map(|x| x.to_string()).unwrap_or_default()
                ),
                None => sum_of_cyclics(&r.torsion.elementary_divisors),
            };
            vec![r.n.to_string(), r.degree.to_string(), torsion, r.verdict.to_string()]
        })
        .collect();
    table(&["n", "degree", "torsion", "verdict"], &rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D3Dump {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageReport {
    pub n: u32,
    pub s: u32,
    pub t: u32,
    pub page: String,
    pub coefficients: &'static str,
    pub basis: Vec<String>,
    pub group: GroupSummary,
    #[serde(skip)]
    structure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<D3Dump>,
}

pub fn page_report(n: u32, s: u32, t: u32, page: Page, rules: &RuleTable) -> Result<PageReport> {
    let basis: Vec<String> = e3_labels(n, s, t)?.iter().map(|l| l.to_string()).collect();
    let (group, coefficients, dump): (FgAbGroup, _, _) = match page {
        Page::Finite(3) => {
            let entry = e3_entry(n, s, t)?;
            let dump = if t >= 2 && !basis.is_empty() && s + 3 <= crate::kz3::MAX_DEGREE {
                let map = d3(n, s, t)?;
                Some(D3Dump {
                    source: basis.clone(),
                    target: e3_labels(n, s + 3, t - 2)?.iter().map(|l| l.to_string()).collect(),
                    matrix: map
                        .matrix()
                        .row_vecs()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect(),
                })
            } else {
                None
            };
            (entry.group, "integral", dump)
        }
        Page::Finite(_) => {
            let loc = if default_localization(s) == crate::abelian::Localization::Integral {
                "integral"
            } else {
                "2-local"
            };
            (e4_entry(n, s, t)?, loc, None)
        }
        Page::Infinity => {
            let g = Engine::new(n, rules)?.einf(s, t)?;
            (g, if s == 0 { "integral" } else { "2-local" }, None)
        }
    };
    Ok(PageReport {
        n,
        s,
        t,
        page: page.to_string(),
        coefficients,
        basis,
        structure: group.to_string(),
        group: GroupSummary::from(&group),
        d3: dump,
    })
}

pub fn page(r: &PageReport) -> String {
    let mut out = format!("## E_{}^{{{},{}}} at n = {} ({})\n\n", r.page, r.s, r.t, r.n, r.coefficients);
    out.push_str(&format!("group: {}\n", r.structure));
    if !r.group.generators.is_empty() {
        out.push_str(&format!("generators: {}\n", r.group.generators.join(", ")));
    }
    out.push_str(&format!("basis: {}\n", if r.basis.is_empty() { "(empty)".to_string() } else { r.basis.join(", ") }));
    if let Some(d) = &r.d3 {
        out.push_str(&format!("\nd3 into E_3^{{{},{}}}\n\n", r.s + 3, r.t - 2));
        let mut headers = vec![""];
        headers.extend(d.target.iter().map(String::as_str));
        let rows: Vec<Vec<String>> = d
            .source
            .iter()
            .zip(&d.matrix)
            .map(|(label, row)| std::iter::once(label.clone()).chain(row.iter().cloned()).collect())
            .collect();
        out.push_str(&table(&headers, &rows));
    }
    out
}

pub fn invariants(r: &InvariantsReport) -> String {
    let c = &r.constants;
    let mut out = format!(
        "## Invariants at n = {}\n\nλ = {}, δ = {}, μ = {}\n\n",
        r.n, c.lambda, c.delta, c.mu
    );
    let rows: Vec<Vec<String>> = r
        .weights
        .iter()
        .map(|w| vec![w.weight.to_string(), w.rank.to_string(), w.basis.join("; ")])
        .collect();
    out.push_str(&table(&["weight", "rank", "basis"], &rows));
    out.push('\n');
    for g in &r.generators {
        out.push_str(&format!("e{} = {}\n", g.index, g.polynomial));
    }
    out.push_str(&format!(
        "\nquotient: order {}, cyclic {}\n",
        r.quotient.order, r.quotient.cyclic
    ));
    let w = &r.relation;
    out.push_str(&format!(
        "relation: {}·α6 = {}·e4e2 + {}·e3^2 + {}·e2^3 + {}·e6\n\n",
        w.m, w.b, w.c, w.d, w.f
    ));
    let rows: Vec<Vec<String>> = r
        .formula_checks
        .iter()
        .map(|c| {
            let status = match (c.pass, c.skipped) {
                (_, true) => "skipped",
                (true, _) => "pass",
                _ => "FAIL",
            };
            vec![c.name.clone(), status.to_string()]
        })
        .collect();
    out.push_str(&table(&["check", "status"], &rows));
    out
}

pub fn relation(w: &RelationWitness, seq: &GeneratorSequence) -> String {
    let mut out = format!("## Weight-6 relation at n = {}\n\n", w.n);
    out.push_str(&format!(
        "{}·α6 = {}·e4e2 + {}·e3^2 + {}·e2^3 + {}·e6\n\n",
        w.m, w.b, w.c, w.d, w.f
    ));
    out.push_str(&format!("α6 = {}\n", w.alpha6));
    out.push_str(&seq.to_string());
    out.push_str(&format!("f can be made zero: {}\n", w.f_zero_achievable));
    out
}

pub fn suite(r: &SuiteResult) -> String {
    let mut out = format!(
        "## Suite {} over n = {}\n\n{} cases, {} failures: {}\n",
        r.suite,
        r.n_range,
        r.cases,
        r.failures.len(),
        if r.passed { "PASS" } else { "FAIL" }
    );
    if !r.failures.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = r
            .failures
            .iter()
            .map(|f| vec![f.n.to_string(), f.check.clone(), f.expected.clone(), f.actual.clone()])
            .collect();
        out.push_str(&table(&["n", "check", "expected", "actual"], &rows));
    }
    out
}
