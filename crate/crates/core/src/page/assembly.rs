//! Torsion of `H^s(BPU_n)` for `s ∈ {12, 13, 14}` from the `E_∞` antidiagonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use super::engine::Engine;
use super::entry::e4_entry;
use super::rules::RuleTable;
use crate::abelian::FgAbGroup;
use crate::chern::partition_count;
use crate::error::{Error, Result};
use crate::kz3::MAX_DEGREE;

pub const SUPPORTED_DEGREES: [u32; 3] = [12, 13, 14];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// One torsion entry below a free `(0,s)` entry: the extension splits.
    SplitByFreeTop,
    /// At most one nonzero entry on the antidiagonal.
    UnambiguousSingleEntry,
    /// Several torsion entries; only bounds are reported.
    ExtensionAmbiguous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::SplitByFreeTop => "split-by-free-top",
            Verdict::UnambiguousSingleEntry => "unambiguous-single-entry",
            Verdict::ExtensionAmbiguous => "extension-ambiguous",
        };
        write!(f, "{s}")
    }
}

/// Serializes integers as JSON numbers when they fit, as strings otherwise.
pub(crate) fn big_list<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub s: u32,
    pub t: u32,
    /// `integral` for the zeroth column, `2-local` elsewhere.
    pub coefficients: &'static str,
    pub free_rank: usize,
    #[serde(serialize_with = "big_list")]
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionBounds {
    #[serde(serialize_with = "big_list")]
    pub associated_graded: Vec<BigInt>,
    #[serde(serialize_with = "big_list")]
    pub maximal_extension: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionSummary {
    #[serde(serialize_with = "big_list")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(serialize_with = "big_list")]
    pub elementary_divisors: Vec<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<TorsionBounds>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssemblyReport {
    pub n: u32,
    pub degree: u32,
    pub entries: Vec<EntryReport>,
    pub verdict: Verdict,
    pub torsion: TorsionSummary,
}

impl AssemblyReport {
    /// The torsion subgroup as a group, when it is determined.
    pub fn torsion_group(&self) -> Option<FgAbGroup> {
        self.torsion
            .bounds
            .is_none()
            .then(|| FgAbGroup::from_structure(0, &self.torsion.invariant_factors))
    }
}

fn entry_report(s: u32, t: u32, g: &FgAbGroup) -> EntryReport {
    EntryReport {
        s,
        t,
        coefficients: if s == 0 { "integral" } else { "2-local" },
        free_rank: g.free_rank(),
        invariant_factors: g.invariant_factors().to_vec(),
        generators: g.labels().map(<[String]>::to_vec).unwrap_or_default(),
    }
}

/// The fixed 5-primary summand `Z/gcd(5,n)` generated by `y5_0` in degree 12.
pub fn five_primary(n: u32, degree: u32) -> Option<BigInt> {
    let g = BigInt::from(n).gcd(&BigInt::from(5));
    (degree == 12 && !g.is_one()).then_some(g)
}

/// The torsion predicted in closed form: `Z/gcd(2,n)`, plus `Z/gcd(5,n)` in degree 12.
pub fn expected_torsion(n: u32, degree: u32) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = n.is_multiple_of(2).then(|| BigInt::from(2)).into_iter().collect();
    out.extend(five_primary(n, degree));
    out
}

fn check_column_zero(n: u32, degree: u32, g: &FgAbGroup) -> Result<()> {
    let expected = if degree.is_multiple_of(2) {
        partition_count(degree / 2, 2, n)
    } else {
        0
    };
    if g.free_rank() != expected || !g.is_free() {
        return Err(Error::verification(
            n,
            "rational rank of the zeroth column",
            format!("E_inf^{{0,{degree}}} is {g}, expected Z^{expected}"),
        ));
    }
    Ok(())
}

pub fn torsion_of_h(n: u32, degree: u32, rules: &RuleTable) -> Result<AssemblyReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    if n % 2 == 1 {
        return odd_report(n, degree);
    }
    torsion_with_engine(&Engine::new(n, rules)?, degree)
}

/// For odd `n` the 2-primary part vanishes, leaving only the fixed 5-primary summand.
fn odd_report(n: u32, degree: u32) -> Result<AssemblyReport> {
    check_degree(degree)?;
    let top = e4_entry(n, 0, degree)?;
    check_column_zero(n, degree, &top)?;
    let divisors: Vec<BigInt> = five_primary(n, degree).into_iter().collect();
    Ok(AssemblyReport {
        n,
        degree,
        entries: vec![entry_report(0, degree, &top)],
        verdict: if divisors.is_empty() {
            Verdict::UnambiguousSingleEntry
        } else {
            Verdict::SplitByFreeTop
        },
        torsion: TorsionSummary {
            invariant_factors: FgAbGroup::from_structure(0, &divisors)
                .invariant_factors()
                .to_vec(),
            elementary_divisors: divisors,
            bounds: None,
        },
    })
}

fn check_degree(degree: u32) -> Result<()> {
    if !SUPPORTED_DEGREES.contains(&degree) {
        return Err(Error::OutOfRange(format!(
            "torsion is assembled in degrees 12..14, got {degree}"
        )));
    }
    Ok(())
}

pub fn torsion_with_engine(engine: &Engine<'_>, degree: u32) -> Result<AssemblyReport> {
    check_degree(degree)?;
    let n = engine.n();
    let mut entries = Vec::new();
    let mut torsion_entries = Vec::new();
    let top = engine.einf(0, degree)?;
    check_column_zero(n, degree, &top)?;
    entries.push(entry_report(0, degree, &top));
    for s in 1..=degree.min(MAX_DEGREE) {
        let t = degree - s;
        if t % 2 == 1 {
            continue;
        }
        let g = engine.einf(s, t)?;
        if s == degree && !g.is_trivial() && degree == 14 {
            return Err(Error::verification(
                n,
                "presentation in degree 14",
                format!("E_inf^{{14,0}} is {g}"),
            ));
        }
        if !g.is_trivial() {
            torsion_entries.push(g.clone());
        }
        if crate::kz3::degree_basis(s)?.is_empty() {
            continue;
        }
        entries.push(entry_report(s, t, &g));
    }

    let odd: Vec<BigInt> = five_primary(n, degree).into_iter().collect();
    let top_nonzero = !top.is_trivial();
    let (verdict, two_part, bounds) = match torsion_entries.as_slice() {
        [] => (Verdict::UnambiguousSingleEntry, Vec::new(), None),
        [g] if top_nonzero => (Verdict::SplitByFreeTop, g.elementary_divisors(), None),
        [g] => (Verdict::UnambiguousSingleEntry, g.elementary_divisors(), None),
        many => {
            let mut graded: Vec<BigInt> = many.iter().flat_map(|g| g.elementary_divisors()).collect();
            graded.sort();
            let order: BigInt = graded.iter().product();
            (
                Verdict::ExtensionAmbiguous,
                Vec::new(),
                Some(TorsionBounds {
                    associated_graded: graded,
                    maximal_extension: vec![order],
                }),
            )
        }
    };
    let mut divisors: Vec<BigInt> = two_part.into_iter().chain(odd).collect();
    divisors.sort();
    let invariant_factors = if bounds.is_some() {
        Vec::new()
    } else {
        FgAbGroup::from_structure(0, &divisors).invariant_factors().to_vec()
    };
    Ok(AssemblyReport {
        n,
        degree,
        entries,
        verdict,
        torsion: TorsionSummary {
            invariant_factors,
            elementary_divisors: if bounds.is_some() { Vec::new() } else { divisors },
            bounds,
        },
    })
}
