//! Hermite and Smith normal forms with unimodular transforms.
//!
//! Both reductions use the same pivot rule: among the candidate entries, the one with
//! the smallest nonzero absolute value wins, ties broken row-major. Results are
//! therefore fully determined by the input matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal in a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inverse: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k)
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_one()).collect()
    }
}

/// Row-style Hermite normal form. Returns `(H, U)` with `U·A = H`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let order: Vec<usize> = (0..a.cols()).collect();
    let (h, u, _) = hnf_in_order(a, &order);
    (h, u)
}

/// Hermite form with pivots searched over columns in the given order. Returns the
/// reduced matrix, the transform and the list of `(row, column)` pivots.
pub(crate) fn hnf_in_order(
    a: &IntMatrix,
    order: &[usize],
) -> (IntMatrix, IntMatrix, Vec<(usize, usize)>) {
    let rows = a.rows();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let candidate = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()).then(i.cmp(&j)));
            let Some(p) = candidate else { break };
            found = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push((r, c));
        r += 1;
    }
    (h, u, pivots)
}

/// Smith normal form with transforms.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut vi = IntMatrix::identity(n);

    for k in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithDecomposition {
                    u,
                    s,
                    v,
                    v_inverse: vi,
                };
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);
            vi.swap_rows(k, pj);

            let mut dirty = false;
            for i in k + 1..m {
                if s.get(i, k).is_zero() {
                    continue;
                }
                let q = -s.get(i, k).div_floor(s.get(k, k));
                s.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                dirty |= !s.get(i, k).is_zero();
            }
            for j in k + 1..n {
                if s.get(k, j).is_zero() {
                    continue;
                }
                let q = -s.get(k, j).div_floor(s.get(k, k));
                s.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                vi.add_row_multiple(k, j, &-q);
                dirty |= !s.get(k, j).is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = s.get(k, k).clone();
            let offender = (k + 1..m).find(|&i| {
                (k + 1..n).any(|j| !s.get(i, j).mod_floor(&pivot.abs()).is_zero())
            });
            match offender {
                Some(i) => {
                    s.add_row_multiple(k, i, &BigInt::one());
                    u.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(k, k).is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithDecomposition {
        u,
        s,
        v,
        v_inverse: vi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) -> SmithDecomposition {
        let d = snf(a);
        assert_eq!(&(&d.u * a) * &d.v, d.s);
        assert!(d.u.is_unimodular() && d.v.is_unimodular());
        assert_eq!(&d.v * &d.v_inverse, IntMatrix::identity(a.cols()));
        assert!(d.s.is_diagonal());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        d
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, u) = hnf(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
        let (h, u) = hnf(&IntMatrix::zeros(2, 2));
        assert_eq!(h, IntMatrix::zeros(2, 2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_two_by_two() {
        // Elementary elimination: [[2,4],[6,8]] -> R2 -= 3 R1 -> [[2,4],[0,-4]]
        // -> negate -> [[2,4],[0,4]] -> R1 -= R2 -> [[2,0],[0,4]].
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(&u * &a, h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = IntMatrix::from_i64(&[&[1, 5, 7], &[0, 3, -1]]);
        let (h, _) = hnf(&a);
        // 5 reduced modulo pivot 3 -> 2: row1 - row2 = (1,2,8)
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 2, 8], &[0, 3, -1]]));
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(check_snf(&IntMatrix::identity(3)).s, IntMatrix::identity(3));
        let d = check_snf(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        let d = check_snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let d = check_snf(&IntMatrix::zeros(2, 3));
        assert!(d.diagonal().is_empty());
        let d = check_snf(&IntMatrix::zeros(0, 3));
        assert_eq!(d.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_rectangular() {
        let a = IntMatrix::from_i64(&[&[4, 6, 2], &[2, 4, 8]]);
        let d = check_snf(&a);
        // gcd of entries is 2; 2x2 minors: 16-12=4, 32-4=28, 24-8... gcd 4 -> (2, 2)
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
    }
}
