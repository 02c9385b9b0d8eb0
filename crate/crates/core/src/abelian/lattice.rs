//! Integer lattices given as row spans: bases, membership, kernels and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{hnf, hnf_in_order, snf};

/// Where torsion is measured. `At(p)` keeps only the `p`-primary part, which is the same
/// as working over the integers localized at `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Localization {
    Integral,
    At(u64),
}

impl Localization {
    /// The part of `d` that survives; `d` must be positive.
    pub fn local_part(self, d: &BigInt) -> BigInt {
        match self {
            Localization::Integral => d.clone(),
            Localization::At(p) => {
                let p = BigInt::from(p);
                let mut rest = d.clone();
                let mut part = BigInt::one();
                while !rest.is_zero() && rest.is_multiple_of(&p) {
                    rest /= &p;
                    part *= &p;
                }
                part
            }
        }
    }
}

/// Canonical basis of the row span: the nonzero rows of the Hermite form.
pub fn basis(a: &IntMatrix) -> IntMatrix {
    hnf(a).0.nonzero_rows()
}

pub fn rank(a: &IntMatrix) -> usize {
    basis(a).rows()
}

/// Whether two matrices with the same column count span the same lattice.
pub fn lattice_equal(b1: &IntMatrix, b2: &IntMatrix) -> bool {
    b1.cols() == b2.cols() && basis(b1) == basis(b2)
}

/// Integer coefficients `c` with `c·B = v`, if any. `B` may have dependent rows.
pub fn express(b: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.cols(), v.len(), "vector length must equal column count");
    let (h, u) = hnf(b);
    let mut residual = v.to_vec();
    let mut coeffs = vec![BigInt::zero(); b.rows()];
    for (i, coeff) in coeffs.iter_mut().enumerate() {
        let Some(c) = (0..h.cols()).find(|&c| !h.get(i, c).is_zero()) else {
            break;
        };
        let (q, r) = residual[c].div_rem(h.get(i, c));
        if !r.is_zero() {
            return None;
        }
        for (x, hv) in residual.iter_mut().zip(h.row(i)) {
            *x -= &q * hv;
        }
        *coeff = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(u.left_apply(&coeffs))
}

pub fn contains(b: &IntMatrix, v: &[BigInt]) -> bool {
    express(b, v).is_some()
}

/// Whether the span of `inner` lies in the span of `outer`.
pub fn is_sublattice(inner: &IntMatrix, outer: &IntMatrix) -> bool {
    (0..inner.rows()).all(|r| contains(outer, inner.row(r)))
}

/// Basis (in Hermite form) of `{x : x·M = 0}`. The result is saturated.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&r| h.row(r).iter().all(Zero::is_zero))
        .collect();
    basis(&u.select_rows(&zero_rows))
}

/// Basis of `{x : x·M ∈ span(S)}`.
pub fn preimage(m: &IntMatrix, s: &IntMatrix) -> IntMatrix {
    let stacked = m.vstack(s).expect("codomain widths agree");
    let k = kernel(&stacked);
    let domain: Vec<usize> = (0..m.rows()).collect();
    let projected = k.transpose().select_rows(&domain).transpose();
    if projected.rows() == 0 {
        return IntMatrix::zeros(0, m.rows());
    }
    basis(&projected)
}

/// Enlarges the span of `a` to `{x : m·x ∈ span(a)}` for all `m` invertible under the
/// localization. `Integral` leaves the lattice unchanged; use [`saturate`] for the
/// rational closure.
pub fn saturate_locally(a: &IntMatrix, loc: Localization) -> IntMatrix {
    match loc {
        Localization::Integral => basis(a),
        Localization::At(_) => saturate_with(a, |d| loc.local_part(d)),
    }
}

/// Saturation with respect to every integer coprime to `primes`.
pub fn saturate_at_primes(a: &IntMatrix, primes: &[u64]) -> IntMatrix {
    saturate_with(a, |d| {
        primes
            .iter()
            .map(|&p| Localization::At(p).local_part(d))
            .product()
    })
}

/// `(span(a) ⊗ Q) ∩ Z^n`.
pub fn saturate(a: &IntMatrix) -> IntMatrix {
    saturate_with(a, |_| BigInt::one())
}

fn saturate_with(a: &IntMatrix, keep: impl Fn(&BigInt) -> BigInt) -> IntMatrix {
    let cols = a.cols();
    if a.rows() == 0 {
        return IntMatrix::zeros(0, cols);
    }
    let d = snf(a);
    let rows: Vec<Vec<BigInt>> = d
        .diagonal()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let k = keep(s);
            d.v_inverse.row(i).iter().map(|x| x * &k).collect()
        })
        .collect();
    basis(&IntMatrix::from_rows(rows, cols).expect("uniform width"))
}

/// Whether `span(a)` is saturated in its ambient lattice.
pub fn is_saturated(a: &IntMatrix) -> bool {
    snf(a).invariant_factors().is_empty()
}

/// Reduces vectors to canonical coset representatives modulo a lattice.
///
/// Pivots are taken from the last column backwards, so representatives carry their
/// weight on the earliest basis vectors and pivot coordinates land in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct CosetReducer {
    h: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

impl CosetReducer {
    pub fn new(lattice: &IntMatrix) -> Self {
        let order: Vec<usize> = (0..lattice.cols()).rev().collect();
        let (h, _, pivots) = hnf_in_order(lattice, &order);
        Self { h, pivots }
    }

    /// Same reduction with the leading column pivoted first.
    pub fn leading_first(lattice: &IntMatrix) -> Self {
        let order: Vec<usize> = (0..lattice.cols()).collect();
        let (h, _, pivots) = hnf_in_order(lattice, &order);
        Self { h, pivots }
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for &(row, col) in &self.pivots {
            let q = r[col].div_floor(self.h.get(row, col));
            if q.is_zero() {
                continue;
            }
            for (x, hv) in r.iter_mut().zip(self.h.row(row)) {
                *x -= &q * hv;
            }
        }
        r
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Content of a vector: gcd of its entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_row_map() {
        // Z^2 -> Z, (x, y) -> 2x + 6y
        let m = IntMatrix::from_i64(&[&[2], &[6]]);
        assert_eq!(kernel(&m), IntMatrix::from_i64(&[&[3, -1]]));
        let z = IntMatrix::zeros(2, 1);
        assert_eq!(kernel(&z), IntMatrix::identity(2));
    }

    #[test]
    fn express_and_contains() {
        let b = IntMatrix::from_i64(&[&[2, 0], &[1, 3]]);
        assert_eq!(express(&b, &big(&[3, 3])), Some(big(&[1, 1])));
        assert!(!contains(&b, &big(&[1, 0])));
        assert!(contains(&IntMatrix::zeros(0, 2), &big(&[0, 0])));
    }

    #[test]
    fn preimage_through_torsion_codomain() {
        // x -> x into Z/2: preimage of 0 is 2Z.
        let m = IntMatrix::from_i64(&[&[1]]);
        let s = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(preimage(&m, &s), IntMatrix::from_i64(&[&[2]]));
    }

    #[test]
    fn saturation() {
        let a = IntMatrix::from_i64(&[&[6, 0], &[0, 10]]);
        assert_eq!(saturate(&a), IntMatrix::identity(2));
        assert_eq!(
            saturate_locally(&a, Localization::At(2)),
            IntMatrix::from_i64(&[&[2, 0], &[0, 2]])
        );
        assert!(!is_saturated(&a));
        assert!(is_saturated(&IntMatrix::from_i64(&[&[3, -1]])));
    }

    #[test]
    fn coset_reduction_prefers_early_coordinates() {
        let l = IntMatrix::from_i64(&[&[0, 1, -1], &[0, 0, 4]]);
        let red = CosetReducer::new(&l);
        assert_eq!(red.reduce(&big(&[0, 0, 2])), big(&[0, 2, 0]));
        assert_eq!(red.reduce(&big(&[0, 2, 0])), big(&[0, 2, 0]));
        assert!(red.is_zero_class(&big(&[0, 4, 0])));
        let fwd = CosetReducer::leading_first(&l);
        assert_eq!(fwd.reduce(&big(&[0, 2, 0])), big(&[0, 0, 2]));
    }

    #[test]
    fn local_parts() {
        let d = BigInt::from(12);
        assert_eq!(Localization::At(2).local_part(&d), BigInt::from(4));
        assert_eq!(Localization::At(5).local_part(&d), BigInt::one());
        assert_eq!(Localization::Integral.local_part(&d), d);
    }
}
