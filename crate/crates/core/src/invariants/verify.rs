//! Checks of the closed forms against the computed invariant lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::construct::{
    construct_e, kn_basis, kn_basis_bounded, lambda, vectors, Constants, GeneratorSequence,
    InvariantBasis, Provenance, MAX_WEIGHT,
};
use super::formulas;
use super::quotient::{quotient_k12, solve_relation, RelationWitness};
use super::ring::CoefficientRing;
use crate::abelian::lattice;
use crate::chern::{ChernMonomial, ChernPolynomial, RationalChernPolynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub n: u32,
    pub checks: Vec<FormulaCheck>,
    #[serde(serialize_with = "opt_rational")]
    pub b1: Option<BigRational>,
    #[serde(serialize_with = "opt_rational")]
    pub b2: Option<BigRational>,
    #[serde(serialize_with = "opt_rational")]
    pub b3: Option<BigRational>,
}

impl FormulaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The first failed check as an error.
    pub fn into_result(self) -> Result<Self> {
        match self.checks.iter().find(|c| !c.pass) {
            Some(c) => Err(Error::verification(self.n, c.name.clone(), c.detail.clone())),
            None => Ok(self),
        }
    }
}

struct Checks(Vec<FormulaCheck>);

impl Checks {
    fn record(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(FormulaCheck {
            name: name.into(),
            pass,
            skipped: false,
            detail: if pass { String::new() } else { detail.into() },
        });
    }

    fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.0.push(FormulaCheck {
            name: name.into(),
            pass: true,
            skipped: true,
            detail: why.into(),
        });
    }
}

fn q(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn in_ring(k: &CoefficientRing, p: &RationalChernPolynomial) -> bool {
    p.terms().all(|(_, c)| k.contains(c))
}

/// Leading coefficient of the first Hermite row, when it sits on `m`.
fn least_coefficient(k: &InvariantBasis, m: &ChernMonomial) -> Option<BigInt> {
    (k.rank() > 0 && k.monomials.first() == Some(m)).then(|| k.lattice.get(0, 0).abs())
}

/// Clears denominators so that `p` becomes an integral vector on `basis`.
fn integral_multiple(p: &RationalChernPolynomial) -> ChernPolynomial {
    let den = p.denominator();
    p.scale(&q(den))
        .to_integer()
        .expect("denominators cleared")
}

/// Whether the integral spans of `polys` and `k` agree after inverting primes outside `P`.
fn same_span_over(ring: &CoefficientRing, k: &InvariantBasis, polys: &[ChernPolynomial]) -> bool {
    let rows = vectors(&k.monomials, polys);
    let sat = if rows.rows() == 0 {
        rows
    } else {
        lattice::saturate_at_primes(&rows, ring.primes())
    };
    lattice::lattice_equal(&sat, &k.lattice)
}

/// `r / s` where `s` is the coefficient of `m` in `s_poly`.
fn ratio_on(r: &RationalChernPolynomial, s: &RationalChernPolynomial, m: &ChernMonomial) -> BigRational {
    r.coeff(m) / s.coeff(m)
}

pub fn verify_formulas(n: u32) -> Result<FormulaReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    let ring = CoefficientRing::new(n);
    let mut checks = Checks(Vec::new());
    let closed = GeneratorSequence::closed_forms(n)?;
    let constructed = construct_e(n, MAX_WEIGHT)?;

    for i in 2..=4u32 {
        let e = closed.e(i);
        let name = format!("e{i} is invariant");
        checks.record(&name, e.divergence().is_zero(), format!("∇(e{i}) = {}", e.divergence()));
    }

    // Leading coefficients are the least possible ones in the kernel lattices.
    let k4 = kn_basis(n, 2)?;
    let want = q(2 * n) / q(BigInt::from(2).gcd(&BigInt::from(n - 1)));
    let got = least_coefficient(&k4, &ChernMonomial::c(2)).map(q);
    checks.record(
        "e2 leading coefficient",
        closed.e(2).to_rational().coeff(&ChernMonomial::c(2)) == want && got == Some(want.clone()),
        format!("least c2 coefficient {got:?}, formula {want}"),
    );
    let k6 = kn_basis(n, 3)?;
    checks.record(
        "e3 spans K^6",
        k6.spanned_by(&[closed.e(3).clone()].into_iter().filter(|p| !p.is_zero()).collect::<Vec<_>>()),
        format!("e3 = {}", closed.e(3)),
    );
    let k8 = kn_basis(n, 4)?;
    if n >= 4 {
        let want = q(n) / q(BigInt::from(3).gcd(&BigInt::from(n)));
        let got = least_coefficient(&k8, &ChernMonomial::c(4)).map(q);
        checks.record(
            "e4 leading coefficient",
            closed.e(4).to_rational().coeff(&ChernMonomial::c(4)) == want && got == Some(want.clone()),
            format!("least c4 coefficient {got:?}, formula {want}"),
        );
    }
    let e2 = closed.e(2);
    let k8_span: Vec<ChernPolynomial> = [e2.pow(2), closed.e(4).clone()]
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    checks.record("e2^2, e4 span K^8", k8.spanned_by(&k8_span), "index > 1");
    let k10 = kn_basis(n, 5)?;
    let k10_span: Vec<ChernPolynomial> = [e2 * closed.e(3), constructed.e(5).clone()]
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    checks.record("e2e3, e5 span K^10", k10.spanned_by(&k10_span), "index > 1");
    checks.record(
        "constructed e2 matches the closed form",
        constructed.e(2) == e2 || *constructed.e(2) == -e2,
        format!("constructed {}", constructed.e(2)),
    );

    let beta6 = formulas::beta6(n);
    let alpha6 = formulas::alpha6(n);
    let beta_ok = in_ring(&ring, &beta6);
    let alpha_ok = in_ring(&ring, &alpha6);
    let e2r = e2.to_rational();
    let e2_cubed = e2r.pow(3);
    let c1_6 = ChernMonomial::from_parts([1; 6]);
    let c3_2 = ChernMonomial::from_parts([3, 3]);
    let c4c2 = ChernMonomial::from_parts([4, 2]);
    let (mut b1, mut b2, mut b3) = (None, None, None);
    let not_in_ring = |name: &str| format!("{name} has a denominator divisible by a prime of {:?}", ring.primes());

    let k3 = kn_basis_bounded(n, 6, 3)?;
    if beta_ok {
        checks.record("β6 is invariant", beta6.divergence().is_zero(), format!("∇(β6) = {}", beta6.divergence()));
        if n >= 3 {
            let least = least_coefficient(&k3, &c3_2).map(q);
            checks.record(
                "β6 leading coefficient",
                least.as_ref().is_some_and(|l| ring.associates(&beta6.coeff(&c3_2), l)),
                format!("c3^2 coefficient {} against least {least:?}", beta6.coeff(&c3_2)),
            );
        }
        let span: Vec<ChernPolynomial> = [integral_multiple(&beta6), e2.pow(3)]
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        checks.record(
            "β6, e2^3 span the c1..c3 invariants",
            same_span_over(&ring, &k3, &span),
            "spans differ over the coefficient ring",
        );
        let g = q(BigInt::from(3).gcd(&BigInt::from(n)));
        let lam = q(lambda(n));
        let r = &closed.e(3).to_rational().pow(2) - &beta6.scale(&(&g * &lam * &lam));
        let b = ratio_on(&r, &e2_cubed, &c1_6);
        let residual = &r - &e2_cubed.scale(&b);
        checks.record(
            "e3^2 = gcd(3,n)λ^2 β6 + b1 e2^3",
            residual.is_zero() && ring.contains(&b),
            format!("b1 = {b}, difference {residual}"),
        );
        b1 = Some(b);
    } else {
        checks.skip("β6 checks", not_in_ring("β6"));
    }

    let k4_bounded = kn_basis_bounded(n, 6, 4)?;
    if alpha_ok && beta_ok {
        checks.record("α6 is invariant", alpha6.divergence().is_zero(), format!("∇(α6) = {}", alpha6.divergence()));
        if n >= 4 {
            let least = least_coefficient(&k4_bounded, &c4c2).map(q);
            checks.record(
                "α6 leading coefficient",
                least.as_ref().is_some_and(|l| ring.associates(&alpha6.coeff(&c4c2), l)),
                format!("c4c2 coefficient {} against least {least:?}", alpha6.coeff(&c4c2)),
            );
        }
        let span: Vec<ChernPolynomial> = [integral_multiple(&alpha6), integral_multiple(&beta6), e2.pow(3)]
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        checks.record(
            "α6, β6, e2^3 span the c1..c4 invariants",
            same_span_over(&ring, &k4_bounded, &span),
            "spans differ over the coefficient ring",
        );
        let lam = q(lambda(n));
        let g = q(BigInt::from(3).gcd(&BigInt::from(n)));
        let e4e2 = (closed.e(4) * e2).to_rational();
        let r = &e4e2.scale(&(&lam / q(n))) - &alpha6.scale(&(&lam / &g));
        let x2 = if beta6.coeff(&c3_2).is_zero() {
            BigRational::zero()
        } else {
            ratio_on(&r, &beta6, &c3_2)
        };
        let r2 = &r - &beta6.scale(&x2);
        let x3 = ratio_on(&r2, &e2_cubed, &c1_6);
        let residual = &r2 - &e2_cubed.scale(&x3);
        checks.record(
            "(λ/n) e4e2 = (λ/gcd(3,n)) α6 + b2 β6 + b3 e2^3",
            residual.is_zero() && ring.contains(&x2) && ring.contains(&x3),
            format!("b2 = {x2}, b3 = {x3}, difference {residual}"),
        );
        b2 = Some(x2);
        b3 = Some(x3);
    } else if !alpha_ok {
        checks.skip("α6 checks", not_in_ring("α6"));
    }

    Ok(FormulaReport {
        n,
        checks: checks.0,
        b1,
        b2,
        b3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    #[serde(serialize_with = "big")]
    pub order: BigInt,
    pub cyclic: bool,
}

fn big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub index: u32,
    pub provenance: Provenance,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub weight: u32,
    pub rank: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub n: u32,
    pub lambda: u32,
    pub constants: Constants,
    pub weights: Vec<WeightReport>,
    pub generators: Vec<GeneratorReport>,
    pub quotient: QuotientSummary,
    pub relation: RelationWitness,
    pub formula_checks: Vec<FormulaCheck>,
}

pub fn invariants_report(n: u32, max_weight: u32) -> Result<InvariantsReport> {
    if max_weight > MAX_WEIGHT {
        return Err(Error::OutOfRange(format!("weight {max_weight} exceeds {MAX_WEIGHT}")));
    }
    let seq = construct_e(n, MAX_WEIGHT)?;
    let weights = (0..=max_weight)
        .map(|w| {
            let k = kn_basis(n, w)?;
            Ok(WeightReport {
                weight: w,
                rank: k.rank(),
                basis: k.polynomials().iter().map(|p| p.to_string()).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let generators = seq
        .generators
        .iter()
        .filter(|g| g.index <= max_weight.max(2))
        .map(|g| GeneratorReport {
            index: g.index,
            provenance: g.provenance,
            polynomial: g.poly.to_string(),
        })
        .collect();
    let quotient = quotient_k12(n)?;
    Ok(InvariantsReport {
        n,
        lambda: lambda(n),
        constants: seq.constants,
        weights,
        generators,
        quotient: QuotientSummary {
            order: quotient.order().unwrap_or_else(BigInt::one),
            cyclic: quotient.is_cyclic(),
        },
        relation: solve_relation(n)?,
        formula_checks: verify_formulas(n)?.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_hold_for_small_n() {
        for n in 2..=16 {
            let r = verify_formulas(n).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.checks.iter().find(|c| !c.pass));
        }
    }

    #[test]
    fn witness_at_five() {
        let r = verify_formulas(5).unwrap();
        assert!(r.b1.is_some());
        assert!(r.checks.iter().all(|c| !c.skipped));
    }

    #[test]
    fn report_shape() {
        let r = invariants_report(6, 6).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lambda"], 3);
        assert_eq!(v["quotient"]["order"], 27);
        assert_eq!(v["quotient"]["cyclic"], true);
        assert_eq!(v["relation"]["m"], 27);
        assert!(v["formula_checks"][0]["pass"].as_bool().unwrap());
    }
}
