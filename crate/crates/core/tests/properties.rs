use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use bpu_sseq::abelian::{hnf, snf, FgAbGroup, IntMatrix};
use bpu_sseq::chern::{basis, ChernMonomial, ChernPolynomial};
use bpu_sseq::kz3::Kz3Monomial;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r).prop_map(move |rows| {
            let rows = rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
            IntMatrix::from_rows(rows, c).unwrap()
        })
    })
}

/// Random unimodular matrix built from elementary row operations.
fn unimodular(size: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..size, 0..size, -3i64..=3, any::<bool>()), 0..20).prop_map(move |ops| {
        let mut u = IntMatrix::identity(size);
        for (a, b, k, swap) in ops {
            if a == b {
                u.negate_row(a);
            } else if swap {
                u.swap_rows(a, b);
            } else {
                u.add_row_multiple(a, b, &BigInt::from(k));
            }
        }
        u
    })
}

fn polynomial(n: u32) -> impl Strategy<Value = ChernPolynomial> {
    let monomials: Vec<ChernMonomial> = (0..=4).flat_map(|w| basis(n, w)).collect();
    proptest::collection::vec((0..monomials.len(), -20i64..=20), 0..6).prop_map(move |terms| {
        ChernPolynomial::from_terms(n, terms.into_iter().map(|(i, c)| (monomials[i].clone(), BigInt::from(c))))
    })
}

proptest! {
    #[test]
    fn smith_form_invariants(a in matrix(8, 30)) {
        let d = snf(&a);
        prop_assert_eq!(&(&d.u * &a) * &d.v, d.s.clone());
        prop_assert!(d.u.is_unimodular() && d.v.is_unimodular());
        prop_assert_eq!(&d.v * &d.v_inverse, IntMatrix::identity(a.cols()));
        let diag = d.diagonal();
        prop_assert!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn hermite_form_is_echelon(a in matrix(8, 30)) {
        let (h, u) = hnf(&a);
        prop_assert_eq!(&u * &a, h.clone());
        prop_assert!(u.is_unimodular());
        let mut last = None;
        for r in 0..h.rows() {
            match (0..h.cols()).find(|&c| !h.get(r, c).is_zero()) {
                Some(c) => {
                    prop_assert!(h.get(r, c) > &BigInt::zero());
                    prop_assert!(last.is_none_or(|l| c > l));
                    last = Some(c);
                }
                None => last = Some(usize::MAX),
            }
        }
        // Same row space: the rank is unchanged.
        prop_assert_eq!(snf(&h).rank(), snf(&a).rank());
    }

    #[test]
    fn group_structure_is_basis_free((a, u, v) in matrix(6, 20).prop_flat_map(|a| {
        let (r, c) = (a.rows(), a.cols());
        (Just(a), unimodular(r), unimodular(c))
    })) {
        let c = a.cols();
        let g = FgAbGroup::new(c, a.clone()).unwrap();
        let h = FgAbGroup::new(c, &(&u * &a) * &v).unwrap();
        prop_assert!(g.is_isomorphic(&h));
        let order: BigInt = g.elementary_divisors().iter().product();
        let again: BigInt = g.invariant_factors().iter().product();
        prop_assert_eq!(order, again);
    }

    #[test]
    fn divergence_is_a_derivation((p, q) in (1u32..=7).prop_flat_map(|n| (polynomial(n), polynomial(n)))) {
        let lhs = (&p * &q).divergence();
        let rhs = &(&p.divergence() * &q) + &(&p * &q.divergence());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&p + &q).divergence(), &p.divergence() + &q.divergence());
    }

    #[test]
    fn polynomial_text_round_trip(p in (1u32..=7).prop_flat_map(polynomial)) {
        prop_assert_eq!(ChernPolynomial::parse(p.n(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn kz3_products_commute(a in 0usize..40, b in 0usize..40) {
        let all: Vec<Kz3Monomial> = (0..=15).flat_map(|s| bpu_sseq::kz3::monomials(s).unwrap()).collect();
        let (x, y) = (&all[a % all.len()], &all[b % all.len()]);
        match (x.mul(y), y.mul(x)) {
            (Ok(p), Ok(q)) => {
                prop_assert_eq!(p, q);
                prop_assert_eq!(p.degree(), x.degree() + y.degree());
                prop_assert_eq!(Kz3Monomial::parse(&p.to_string()).unwrap(), p);
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "asymmetric failure"),
        }
    }
}
