//! `K_n = ker d3^{0,*}` in weights ≤ 6 and the generators `e2, …, e6`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::formulas;
use crate::abelian::{kernel_lattice, lattice, IntMatrix};
use crate::chern::{self, ChernMonomial, ChernPolynomial};
use crate::error::{Error, Result};
use crate::page::d3;

pub const MAX_WEIGHT: u32 = 6;

fn check_range(n: u32, w: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    if w > MAX_WEIGHT {
        return Err(Error::OutOfRange(format!("weight {w} exceeds {MAX_WEIGHT}")));
    }
    Ok(())
}

/// A lattice of weight-`w` polynomials, rows in Hermite form over the canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    pub n: u32,
    pub weight: u32,
    pub monomials: Vec<ChernMonomial>,
    pub lattice: IntMatrix,
}

impl InvariantBasis {
    pub fn rank(&self) -> usize {
        self.lattice.rows()
    }

    pub fn polynomials(&self) -> Vec<ChernPolynomial> {
        self.lattice
            .row_vecs()
            .iter()
            .map(|r| ChernPolynomial::from_vector(self.n, &self.monomials, r))
            .collect()
    }

    pub fn contains(&self, p: &ChernPolynomial) -> bool {
        p.is_supported_on(&self.monomials) && lattice::contains(&self.lattice, &p.to_vector(&self.monomials))
    }

    /// Whether `polys` span exactly this lattice.
    pub fn spanned_by(&self, polys: &[ChernPolynomial]) -> bool {
        let rows = vectors(&self.monomials, polys);
        lattice::lattice_equal(&rows, &self.lattice)
    }
}

/// Rows of coefficient vectors; every polynomial must live on `monomials`.
pub fn vectors(monomials: &[ChernMonomial], polys: &[ChernPolynomial]) -> IntMatrix {
    let rows = polys.iter().map(|p| {
        debug_assert!(p.is_supported_on(monomials), "{p} leaves the basis");
        p.to_vector(monomials)
    });
    IntMatrix::from_rows(rows.collect(), monomials.len()).expect("uniform width")
}

pub fn kn_basis(n: u32, w: u32) -> Result<InvariantBasis> {
    check_range(n, w)?;
    let lattice = kernel_lattice(&d3(n, 0, 2 * w)?)?;
    Ok(InvariantBasis {
        n,
        weight: w,
        monomials: chern::basis(n, w),
        lattice,
    })
}

/// The part of `K_n^{2w}` involving only `c_1, …, c_max`.
pub fn kn_basis_bounded(n: u32, w: u32, max_part: u32) -> Result<InvariantBasis> {
    let full = kn_basis(n, w)?;
    let keep: Vec<usize> = (0..full.monomials.len())
        .filter(|&i| full.monomials[i].largest_part() <= max_part)
        .collect();
    let drop: Vec<usize> = (0..full.monomials.len()).filter(|i| !keep.contains(i)).collect();
    // Combinations of the basis rows whose dropped coordinates vanish.
    let coords = lattice::kernel(&full.lattice.select_cols(&drop));
    let sub = if coords.rows() == 0 {
        IntMatrix::zeros(0, keep.len())
    } else {
        (&coords * &full.lattice).select_cols(&keep)
    };
    Ok(InvariantBasis {
        n,
        weight: w,
        monomials: keep.iter().map(|&i| full.monomials[i].clone()).collect(),
        lattice: lattice::basis(&sub),
    })
}

/// `λ_n = n`, or `n/2` when `n ≡ 2 mod 4`.
pub fn lambda(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub lambda: u32,
    pub delta: u32,
    pub mu: u32,
}

pub fn constants(n: u32) -> Constants {
    Constants {
        lambda: lambda(n),
        delta: if n % 4 == 2 { 2 } else { 1 },
        mu: match n % 8 {
            4 => 4,
            0 => 2,
            _ => 1,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Constructed,
    ClosedForm,
    /// `e_i = 0` because `i > n`.
    Vanishing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub index: u32,
    pub poly: ChernPolynomial,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSequence {
    pub n: u32,
    pub generators: Vec<Generator>,
    pub constants: Constants,
}

impl GeneratorSequence {
    /// `e_i`, zero when `i > n`. Panics if `i` was not generated.
    pub fn e(&self, i: u32) -> &ChernPolynomial {
        &self
            .generators
            .iter()
            .find(|g| g.index == i)
            .unwrap_or_else(|| panic!("e{i} not in the sequence"))
            .poly
    }

    pub fn max_index(&self) -> u32 {
        self.generators.last().map_or(1, |g| g.index)
    }

    /// All nonzero monomials of weight `w` in the generators.
    pub fn products(&self, w: u32) -> Vec<ChernPolynomial> {
        let mut out = Vec::new();
        for parts in chern::partitions(w, 2, self.max_index()) {
            let mut p = ChernPolynomial::one(self.n);
            for &i in &parts {
                p = &p * self.e(i);
            }
            if !p.is_zero() {
                out.push(p);
            }
        }
        out
    }

    /// The sequence with `e2, e3, e4` replaced by their closed forms.
    pub fn closed_forms(n: u32) -> Result<Self> {
        let mut generators = Vec::new();
        let forms = [(2, formulas::e2(n)), (3, formulas::e3(n)), (4, formulas::e4(n))];
        for (i, p) in forms {
            let poly = formulas::integral(&format!("e{i}"), n, &p)?;
            let provenance = if i > n {
                Provenance::Vanishing
            } else {
                Provenance::ClosedForm
            };
            generators.push(Generator {
                index: i,
                poly,
                provenance,
            });
        }
        Ok(Self {
            n,
            generators,
            constants: constants(n),
        })
    }
}

impl fmt::Display for GeneratorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "e{} = {}", g.index, g.poly)?;
        }
        Ok(())
    }
}

/// Runs the inductive construction: `e_i` generates the free part of `K^{2i}` modulo
/// products of earlier generators. The lift is the first Hermite row of `K^{2i}`, whose
/// `c_i` coefficient is the least positive one.
pub fn construct_e(n: u32, up_to: u32) -> Result<GeneratorSequence> {
    check_range(n, up_to)?;
    let mut seq = GeneratorSequence {
        n,
        generators: Vec::new(),
        constants: constants(n),
    };
    for i in 2..=up_to {
        if i > n {
            seq.generators.push(Generator {
                index: i,
                poly: ChernPolynomial::zero(n),
                provenance: Provenance::Vanishing,
            });
            continue;
        }
        let k = kn_basis(n, i)?;
        let decomposable = vectors(&k.monomials, &seq.products(i));
        let gap = k.rank() - lattice::rank(&decomposable);
        if gap != 1 {
            return Err(Error::verification(
                n,
                format!("free rank of the weight-{i} quotient"),
                format!("expected 1, got {gap}"),
            ));
        }
        let row = k.lattice.row(0).to_vec();
        if !row[0].is_positive() || k.monomials[0] != ChernMonomial::c(i) {
            return Err(Error::verification(
                n,
                format!("c{i} coefficient of e{i}"),
                "no invariant involves the pure monomial".to_string(),
            ));
        }
        if !lattice::content(&row).is_one() {
            return Err(Error::verification(n, format!("content of e{i}"), "not primitive"));
        }
        seq.generators.push(Generator {
            index: i,
            poly: ChernPolynomial::from_vector(n, &k.monomials, &row),
            provenance: Provenance::Constructed,
        });
    }
    Ok(seq)
}

/// `K^{2w}` modulo the products of generators; finite exactly when the sequence
/// generates rationally.
pub fn index_in_kn(seq: &GeneratorSequence, w: u32) -> Result<Option<BigInt>> {
    let k = kn_basis(seq.n, w)?;
    let sub = vectors(&k.monomials, &seq.products(w));
    if lattice::rank(&sub) != k.rank() {
        return Ok(None);
    }
    if k.rank() == 0 {
        return Ok(Some(BigInt::one()));
    }
    let coords: Vec<Vec<BigInt>> = sub
        .row_vecs()
        .iter()
        .map(|r| lattice::express(&k.lattice, r).expect("products are invariant"))
        .collect();
    let m = IntMatrix::from_rows(coords, k.rank())?;
    let d = crate::abelian::snf(&m);
    Ok(Some(
        d.diagonal()
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |a, b| a * b),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kernels() {
        let k = kn_basis(3, 2).unwrap();
        assert_eq!(k.polynomials()[0].to_string(), "3c2 - c1^2");
        assert_eq!(k.rank(), 1);
        assert_eq!(kn_basis(6, 6).unwrap().rank(), 4);
        assert_eq!(kn_basis(4, 1).unwrap().rank(), 0);
        assert_eq!(kn_basis(4, 0).unwrap().rank(), 1);
        assert!(kn_basis(4, 7).is_err());
    }

    #[test]
    fn constants_table() {
        let c = |n| {
            let k = constants(n);
            (k.lambda, k.delta, k.mu)
        };
        assert_eq!(c(6), (3, 2, 1));
        assert_eq!(c(12), (12, 1, 4));
        assert_eq!(c(5), (5, 1, 1));
        assert_eq!(c(16), (16, 1, 2));
    }

    #[test]
    fn construction_matches_closed_forms() {
        for n in 2..=12 {
            let seq = construct_e(n, 6).unwrap();
            let closed = GeneratorSequence::closed_forms(n).unwrap();
            let e2 = seq.e(2);
            assert!(e2 == closed.e(2) || *e2 == -closed.e(2), "n={n}: {e2}");
            for w in 0..=5 {
                assert_eq!(index_in_kn(&seq, w).unwrap(), Some(BigInt::one()), "n={n} w={w}");
            }
            for g in &seq.generators {
                assert_eq!(g.provenance == Provenance::Vanishing, g.index > n);
            }
        }
        let two = construct_e(2, 6).unwrap();
        assert_eq!(two.products(6).len(), 1);
    }

    #[test]
    fn bounded_kernel() {
        let k = kn_basis_bounded(6, 6, 4).unwrap();
        assert_eq!(k.rank(), 3);
        assert!(k.monomials.iter().all(|m| m.largest_part() <= 4));
    }
}
