use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lattice::{self, CosetReducer, Localization};
use super::matrix::IntMatrix;
use super::normal_form::snf;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^g / span(relations)`, relations stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    generator_count: usize,
    relations: IntMatrix,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    labels: Option<Vec<String>>,
    representatives: Option<IntMatrix>,
}

impl FgAbGroup {
    pub fn new(generator_count: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generator_count {
            return Err(Error::Dimension(format!(
                "relations have {} columns for {generator_count} generators",
                relations.cols()
            )));
        }
        let d = snf(&relations);
        let rank = d.rank();
        Ok(Self {
            generator_count,
            relations,
            free_rank: generator_count - rank,
            invariant_factors: d.invariant_factors(),
            labels: None,
            representatives: None,
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(0, rank)).expect("consistent shape")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z^free_rank ⊕ Z/d_1 ⊕ …` presented on one generator per summand.
    pub fn from_structure(free_rank: usize, orders: &[BigInt]) -> Self {
        let torsion: Vec<&BigInt> = orders.iter().filter(|d| !d.is_one()).collect();
        let g = free_rank + torsion.len();
        let mut rel = IntMatrix::zeros(torsion.len(), g);
        for (i, d) in torsion.iter().enumerate() {
            rel.set(i, free_rank + i, d.abs());
        }
        Self::new(g, rel).expect("consistent shape")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.generator_count {
            return Err(Error::Dimension(format!(
                "{} labels for {} generators",
                labels.len(),
                self.generator_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors, each greater than one, in a divisibility chain.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn structure(&self) -> (usize, Vec<BigInt>) {
        (self.free_rank, self.invariant_factors.clone())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// For groups produced by [`homology`]: one lifted representative per generator,
    /// in the coordinates of the ambient presentation.
    pub fn representatives(&self) -> Option<&IntMatrix> {
        self.representatives.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn torsion(&self) -> FgAbGroup {
        Self::from_structure(0, &self.invariant_factors)
    }

    /// Same normalized form.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.structure() == other.structure()
    }

    /// `p`-power parts of the invariant factors, ones dropped.
    pub fn p_primary(&self, p: u64) -> Result<Vec<BigInt>> {
        p_primary(self, p)
    }

    /// Free part kept, torsion replaced by its `p`-primary part.
    pub fn localized(&self, loc: Localization) -> FgAbGroup {
        let parts: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .map(|d| loc.local_part(d))
            .collect();
        Self::from_structure(self.free_rank, &parts)
    }

    /// Prime-power decomposition of the torsion, sorted ascending.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for d in &self.invariant_factors {
            let mut rest = d.clone();
            let mut p = BigInt::from(2);
            while rest > BigInt::one() {
                if &p * &p > rest {
                    out.push(rest.clone());
                    break;
                }
                let mut q = BigInt::one();
                while rest.is_multiple_of(&p) {
                    rest /= &p;
                    q *= &p;
                }
                if !q.is_one() {
                    out.push(q);
                }
                p += 1;
            }
        }
        out.sort();
        out
    }

    /// Label of a vector in generator coordinates, e.g. `2c4c1x1 + c3c2x1`.
    pub fn render(&self, v: &[BigInt]) -> String {
        match &self.labels {
            Some(labels) => render_combination(v, labels),
            None => {
                let fallback: Vec<String> =
                    (0..self.generator_count).map(|i| format!("g{i}")).collect();
                render_combination(v, &fallback)
            }
        }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serializable summary of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
}

impl From<&FgAbGroup> for GroupSummary {
    fn from(g: &FgAbGroup) -> Self {
        // Labelled generators are only meaningful when they are the summand generators.
        let generators = match (&g.labels, &g.representatives) {
            (Some(l), Some(_)) => l.clone(),
            _ => Vec::new(),
        };
        Self {
            free_rank: g.free_rank,
            invariant_factors: g.invariant_factors.iter().map(|d| d.to_string()).collect(),
            generators,
        }
    }
}

/// Renders an integer combination of labelled basis elements.
pub fn render_combination(v: &[BigInt], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = if label == "1" {
            mag.to_string()
        } else if mag.is_one() {
            label.clone()
        } else {
            format!("{mag}{label}")
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A homomorphism given on generators: row `i` of `matrix` is the image of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupMap {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != domain.generator_count() || matrix.cols() != codomain.generator_count()
        {
            return Err(Error::Dimension(format!(
                "{}x{} matrix between groups on {} and {} generators",
                matrix.rows(),
                matrix.cols(),
                domain.generator_count(),
                codomain.generator_count()
            )));
        }
        let image_of_relations = domain
            .relations()
            .checked_mul(&matrix)
            .expect("shapes checked");
        if !lattice::is_sublattice(&image_of_relations, codomain.relations()) {
            return Err(Error::IllDefinedMap(
                "a relation of the domain maps outside the codomain relations".into(),
            ));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FgAbGroup, codomain: FgAbGroup) -> Self {
        let m = IntMatrix::zeros(domain.generator_count(), codomain.generator_count());
        Self {
            domain,
            codomain,
            matrix: m,
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Elements of the domain presentation mapping to zero in the codomain group.
    pub fn kernel_preimage(&self) -> IntMatrix {
        lattice::preimage(&self.matrix, self.codomain.relations())
    }
}

fn same_presentation(a: &FgAbGroup, b: &FgAbGroup) -> bool {
    a.generator_count() == b.generator_count()
        && lattice::lattice_equal(a.relations(), b.relations())
}

/// Basis of the integer kernel of a map between free groups, in Hermite form.
pub fn kernel_lattice(map: &GroupMap) -> Result<IntMatrix> {
    for g in [map.domain(), map.codomain()] {
        if !g.relations().is_zero() {
            return Err(Error::NotFree(format!("group {g} has relations")));
        }
    }
    Ok(lattice::kernel(map.matrix()))
}

/// `cycles / boundaries` inside a common ambient lattice `Z^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    ambient: usize,
    cycles: IntMatrix,
    boundaries: IntMatrix,
}

impl Subquotient {
    pub fn new(cycles: &IntMatrix, boundaries: &IntMatrix) -> Result<Self> {
        if cycles.cols() != boundaries.cols() {
            return Err(Error::Dimension("cycles and boundaries differ in width".into()));
        }
        let cycles = lattice::basis(cycles);
        let boundaries = lattice::basis(boundaries);
        if !lattice::is_sublattice(&boundaries, &cycles) {
            return Err(Error::NonzeroComposite(
                "boundaries are not contained in cycles".into(),
            ));
        }
        Ok(Self {
            ambient: cycles.cols(),
            cycles,
            boundaries,
        })
    }

    pub fn cycles(&self) -> &IntMatrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &IntMatrix {
        &self.boundaries
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The quotient group with canonical lifted generators. `labels` name the ambient
    /// basis and are used to render the lifts.
    pub fn group(&self, loc: Localization, labels: Option<&[String]>) -> FgAbGroup {
        let k = self.cycles.rows();
        let coords: Vec<Vec<BigInt>> = (0..self.boundaries.rows())
            .map(|r| {
                lattice::express(&self.cycles, self.boundaries.row(r))
                    .expect("boundaries lie in cycles")
            })
            .collect();
        let rel = IntMatrix::from_rows(coords, k).expect("uniform width");
        let rel = lattice::saturate_locally(&rel, loc);
        let d = snf(&rel);
        let diag = d.diagonal();

        // Generators of the summands in cycle coordinates.
        let mut gens: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
        for i in 0..k {
            let order = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if order.is_one() {
                continue;
            }
            gens.push((d.v_inverse.row(i).to_vec(), order));
        }

        let ambient_rel = if rel.rows() == 0 {
            IntMatrix::zeros(0, self.ambient)
        } else {
            &rel * &self.cycles
        };
        let reducer = CosetReducer::new(&ambient_rel);

        // Free summands first, then torsion in increasing order.
        gens.sort_by_key(|(_, o)| if o.is_zero() { 0 } else { 1 });
        let count = gens.len();
        let mut reps = Vec::with_capacity(count);
        let mut relation_rows = Vec::new();
        for (i, (w, order)) in gens.iter().enumerate() {
            let lift = self.cycles.left_apply(w);
            reps.push(reducer.reduce(&lift));
            if !order.is_zero() {
                let mut row = vec![BigInt::zero(); count];
                row[i] = order.clone();
                relation_rows.push(row);
            }
        }
        let relations = IntMatrix::from_rows(relation_rows, count).expect("uniform width");
        let mut group = FgAbGroup::new(count, relations).expect("consistent shape");
        let reps = IntMatrix::from_rows(reps, self.ambient).expect("uniform width");
        group.labels = Some(match labels {
            Some(l) => (0..count).map(|i| render_combination(reps.row(i), l)).collect(),
            None => (0..count)
                .map(|i| {
                    let names: Vec<String> = (0..self.ambient).map(|j| format!("g{j}")).collect();
                    render_combination(reps.row(i), &names)
                })
                .collect(),
        });
        group.representatives = Some(reps);
        group
    }
}

fn check_chain(d_in: &GroupMap, d_out: &GroupMap) -> Result<()> {
    if !same_presentation(d_in.codomain(), d_out.domain()) {
        return Err(Error::NotComposable(format!(
            "codomain {} vs domain {}",
            d_in.codomain(),
            d_out.domain()
        )));
    }
    let composite = d_in.matrix().checked_mul(d_out.matrix())?;
    if !lattice::is_sublattice(&composite, d_out.codomain().relations()) {
        return Err(Error::NonzeroComposite("d_out ∘ d_in ≠ 0".into()));
    }
    Ok(())
}

/// `ker(d_out) / im(d_in)` as a normalized group labelled by canonical lifts.
pub fn homology(d_in: &GroupMap, d_out: &GroupMap) -> Result<FgAbGroup> {
    homology_localized(d_in, d_out, Localization::Integral)
}

pub fn homology_localized(
    d_in: &GroupMap,
    d_out: &GroupMap,
    loc: Localization,
) -> Result<FgAbGroup> {
    Ok(homology_subquotient(d_in, d_out)?.group(loc, d_in.codomain().labels()))
}

/// The cycle and boundary lattices behind [`homology`], localized if requested.
pub fn homology_subquotient(d_in: &GroupMap, d_out: &GroupMap) -> Result<Subquotient> {
    check_chain(d_in, d_out)?;
    let middle = d_in.codomain();
    let cycles = d_out.kernel_preimage();
    let boundaries = d_in.matrix().vstack(middle.relations())?;
    Subquotient::new(&cycles, &boundaries)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn p_primary(g: &FgAbGroup, p: u64) -> Result<Vec<BigInt>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let loc = Localization::At(p);
    Ok(g.invariant_factors()
        .iter()
        .map(|d| loc.local_part(d))
        .filter(|d| !d.is_one())
        .collect())
}

/// Exponent of `p` in `d` (`d ≠ 0`).
pub fn valuation(d: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut rest = d.abs();
    let mut v = 0;
    while !rest.is_zero() && rest.is_multiple_of(&p) {
        rest /= &p;
        v += 1;
    }
    v
}


#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn structures_from_presentations() {
        assert_eq!(FgAbGroup::free(1).structure(), (1, vec![]));
        let g = FgAbGroup::new(1, IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(g.structure(), (0, vec![b(2)]));
        let g = FgAbGroup::new(3, IntMatrix::from_i64(&[&[2, 0, 0], &[0, 4, 0]])).unwrap();
        assert_eq!(g.structure(), (1, vec![b(2), b(4)]));
        assert_eq!(g.to_string(), "Z + Z/2 + Z/4");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn p_primary_parts() {
        let g = FgAbGroup::from_structure(0, &[b(12)]);
        assert_eq!(g.p_primary(2).unwrap(), vec![b(4)]);
        let g = FgAbGroup::from_structure(0, &[b(2), b(10)]);
        assert_eq!(g.p_primary(5).unwrap(), vec![b(5)]);
        assert!(matches!(g.p_primary(4), Err(Error::NotPrime(_))));
        assert_eq!(
            FgAbGroup::from_structure(0, &[b(2), b(5)]).elementary_divisors(),
            vec![b(2), b(5)]
        );
    }

    #[test]
    fn ill_defined_map_rejected() {
        let z2 = FgAbGroup::new(1, IntMatrix::from_i64(&[&[2]])).unwrap();
        let z = FgAbGroup::free(1);
        assert!(GroupMap::new(z2.clone(), z.clone(), IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(GroupMap::new(z, z2, IntMatrix::from_i64(&[&[1]])).is_ok());
    }

    #[test]
    fn homology_of_zero_maps_is_the_group() {
        let g = FgAbGroup::free(3);
        let z = FgAbGroup::trivial();
        let d_in = GroupMap::zero(z.clone(), g.clone());
        let d_out = GroupMap::zero(g.clone(), z);
        let h = homology(&d_in, &d_out).unwrap();
        assert!(h.is_isomorphic(&g));
    }

    #[test]
    fn homology_rejects_bad_pairs() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::free(2);
        let a = GroupMap::zero(z.clone(), z.clone());
        let bmap = GroupMap::zero(z2.clone(), z.clone());
        assert!(matches!(homology(&a, &bmap), Err(Error::NotComposable(_))));
        let one = GroupMap::new(z.clone(), z.clone(), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert!(matches!(homology(&one, &one), Err(Error::NonzeroComposite(_))));
    }

    #[test]
    fn homology_with_labels() {
        // Z --2--> Z --0--> 0 : homology Z/2 generated by the class of g.
        let z = FgAbGroup::free(1).with_labels(vec!["g".into()]).unwrap();
        let d_in = GroupMap::new(FgAbGroup::free(1), z.clone(), IntMatrix::from_i64(&[&[2]]))
            .unwrap();
        let d_out = GroupMap::zero(z, FgAbGroup::trivial());
        let h = homology(&d_in, &d_out).unwrap();
        assert_eq!(h.structure(), (0, vec![b(2)]));
        assert_eq!(h.labels().unwrap(), &["g".to_string()]);
        // Z --6--> Z: at p = 3 only Z/3 survives.
        let d_in6 = GroupMap::new(
            FgAbGroup::free(1),
            FgAbGroup::free(1),
            IntMatrix::from_i64(&[&[6]]),
        )
        .unwrap();
        let d_out6 = GroupMap::zero(FgAbGroup::free(1), FgAbGroup::trivial());
        let h = homology_localized(&d_in6, &d_out6, Localization::At(3)).unwrap();
        assert_eq!(h.structure(), (0, vec![b(3)]));
    }

    #[test]
    fn render_combinations() {
        let labels: Vec<String> = ["1", "a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(render_combination(&[b(3), b(-1), b(2)], &labels), "3 - a + 2b");
        assert_eq!(render_combination(&[b(0), b(0), b(-2)], &labels), "-2b");
        assert_eq!(render_combination(&[b(0), b(0), b(0)], &labels), "0");
    }
}
