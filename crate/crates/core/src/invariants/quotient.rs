//! The weight-6 quotient `K^{12}/(e2^3, e3^2, e4e2, e6)` and the relation it forces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::construct::{construct_e, kn_basis, kn_basis_bounded, lambda, vectors, GeneratorSequence, InvariantBasis};
use crate::abelian::lattice::{self, CosetReducer};
use crate::abelian::{FgAbGroup, IntMatrix, Localization, Subquotient};
use crate::chern::ChernPolynomial;
use crate::error::{Error, Result};

/// `e2^3, e3^2, e4e2, e6` with vanishing generators dropped.
fn relation_products(seq: &GeneratorSequence, with_e6: bool) -> Vec<ChernPolynomial> {
    let mut out = vec![seq.e(2).pow(3), seq.e(3).pow(2), seq.e(4) * seq.e(2)];
    if with_e6 {
        out.push(seq.e(6).clone());
    }
    out.retain(|p| !p.is_zero());
    out
}

fn quotient_of(k: &InvariantBasis, polys: &[ChernPolynomial]) -> Result<FgAbGroup> {
    let sub = vectors(&k.monomials, polys);
    let labels: Vec<String> = k.monomials.iter().map(|m| m.to_string()).collect();
    Ok(Subquotient::new(&k.lattice, &sub)?.group(Localization::Integral, Some(&labels)))
}

fn require_cyclic(n: u32, what: &str, g: FgAbGroup) -> Result<FgAbGroup> {
    if g.free_rank() > 0 || g.invariant_factors().len() > 1 {
        return Err(Error::verification(n, format!("{what} is cyclic"), format!("got {g}")));
    }
    Ok(g)
}

/// `K_n^{12}/(e2^3, e3^2, e4e2, e6)`; an error unless the result is finite cyclic.
pub fn quotient_k12(n: u32) -> Result<FgAbGroup> {
    let seq = construct_e(n, 6)?;
    let g = quotient_of(&kn_basis(n, 6)?, &relation_products(&seq, true))?;
    require_cyclic(n, "the weight-6 quotient", g)
}

/// `K'/(e2^3, e3^2, e2e4)` with `K'` the invariants in `c1, …, c4`.
pub fn quotient_l_n(n: u32) -> Result<FgAbGroup> {
    let seq = construct_e(n, 4)?;
    let g = quotient_of(&kn_basis_bounded(n, 6, 4)?, &relation_products(&seq, false))?;
    require_cyclic(n, "the quotient of the c1..c4 invariants", g)
}

fn to_i64_or_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

fn as_text<S: serde::Serializer>(p: &ChernPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// `m·α6 = b·e4e2 + c·e3^2 + d·e2^3 + f·e6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub n: u32,
    #[serde(serialize_with = "to_i64_or_string")]
    pub m: BigInt,
    #[serde(serialize_with = "to_i64_or_string")]
    pub b: BigInt,
    #[serde(serialize_with = "to_i64_or_string")]
    pub c: BigInt,
    #[serde(serialize_with = "to_i64_or_string")]
    pub d: BigInt,
    #[serde(serialize_with = "to_i64_or_string")]
    pub f: BigInt,
    #[serde(serialize_with = "as_text")]
    pub alpha6: ChernPolynomial,
    pub f_zero_achievable: bool,
}

impl RelationWitness {
    /// Checks the identity term by term.
    pub fn holds(&self, seq: &GeneratorSequence) -> bool {
        let scale = |p: &ChernPolynomial, k: &BigInt| p.scale(k);
        let lhs = scale(&self.alpha6, &self.m);
        let rhs = [
            scale(&(seq.e(4) * seq.e(2)), &self.b),
            scale(&seq.e(3).pow(2), &self.c),
            scale(&seq.e(2).pow(3), &self.d),
            scale(seq.e(6), &self.f),
        ]
        .iter()
        .fold(ChernPolynomial::zero(seq.n), |acc, p| &acc + p);
        lhs == rhs
    }
}

/// Coefficients `(b, c, d, f)` of `m·α6` in `e4e2, e3^2, e2^3, e6`, if integral ones exist.
pub fn express_relation(
    seq: &GeneratorSequence,
    m: &BigInt,
    alpha6: &ChernPolynomial,
) -> Result<Option<[BigInt; 4]>> {
    let n = seq.n;
    let k = kn_basis(n, 6)?;
    let e6 = if seq.max_index() >= 6 {
        seq.e(6).clone()
    } else {
        ChernPolynomial::zero(n)
    };
    let rows = [seq.e(4) * seq.e(2), seq.e(3).pow(2), seq.e(2).pow(3), e6];
    let target = alpha6.scale(m);
    if !target.is_supported_on(&k.monomials) {
        return Ok(None);
    }
    let basis = vectors(&k.monomials, &rows);
    Ok(lattice::express(&basis, &target.to_vector(&k.monomials)).map(|v| {
        let mut it = v.into_iter();
        std::array::from_fn(|_| it.next().expect("four coefficients"))
    }))
}

/// Picks the canonical generator of the cyclic quotient and solves for the relation.
///
/// The lift is reduced with the leading monomial pivoted first, which clears the `c6`
/// coordinate against `e6`; the remaining freedom is then used to drive `f` to zero.
pub fn solve_relation(n: u32) -> Result<RelationWitness> {
    let seq = construct_e(n, 6)?;
    let k = kn_basis(n, 6)?;
    let products = relation_products(&seq, true);
    let sub = vectors(&k.monomials, &products);
    let q = quotient_k12(n)?;
    let m = BigInt::from(lambda(n)).pow(3);
    if q.order() != Some(m.clone()) {
        return Err(Error::verification(
            n,
            "order of the weight-6 quotient",
            format!("{q}, expected Z/{m}"),
        ));
    }
    let lift = match q.representatives() {
        Some(reps) if reps.rows() == 1 => reps.row(0).to_vec(),
        _ => vec![BigInt::zero(); k.monomials.len()],
    };
    let reduced = CosetReducer::leading_first(&lattice::basis(&sub)).reduce(&lift);
    let mut alpha6 = ChernPolynomial::from_vector(n, &k.monomials, &reduced);
    if m.is_one() {
        alpha6 = ChernPolynomial::zero(n);
    }
    let solve = |a: &ChernPolynomial| -> Result<[BigInt; 4]> {
        express_relation(&seq, &m, a)?.ok_or_else(|| {
            Error::verification(n, "relation in weight 6", format!("{m}·({a}) is not in the span"))
        })
    };
    let [b, c, d, mut f] = solve(&alpha6)?;
    let (mut b, mut c, mut d) = (b, c, d);
    if !f.is_zero() && f.is_multiple_of(&m) {
        alpha6 = &alpha6 - &seq.e(6).scale(&(&f / &m));
        [b, c, d, f] = solve(&alpha6)?;
    }
    let witness = RelationWitness {
        n,
        f_zero_achievable: f.is_zero(),
        m,
        b,
        c,
        d,
        f,
        alpha6,
    };
    debug_assert!(witness.holds(&seq));
    Ok(witness)
}

/// The relation for a given `α6` against the closed-form `e2, e3, e4`.
pub fn solve_relation_with(n: u32, alpha6: &ChernPolynomial) -> Result<RelationWitness> {
    let mut seq = GeneratorSequence::closed_forms(n)?;
    let constructed = construct_e(n, 6)?;
    for i in 5..=6 {
        seq.generators.push(
            constructed
                .generators
                .iter()
                .find(|g| g.index == i)
                .expect("constructed up to 6")
                .clone(),
        );
    }
    let m = BigInt::from(lambda(n)).pow(3);
    let [b, c, d, f] = express_relation(&seq, &m, alpha6)?.ok_or_else(|| {
        Error::verification(n, "relation in weight 6", format!("{m}·({alpha6}) is not in the span"))
    })?;
    Ok(RelationWitness {
        n,
        f_zero_achievable: f.is_zero(),
        m,
        b,
        c,
        d,
        f,
        alpha6: alpha6.clone(),
    })
}

/// Matrix of the sublattice `(e2^3, e3^2, e4e2, e6)` in the basis of `K^{12}`.
pub fn relation_lattice(n: u32) -> Result<IntMatrix> {
    let seq = construct_e(n, 6)?;
    let k = kn_basis(n, 6)?;
    Ok(vectors(&k.monomials, &relation_products(&seq, true)))
}
