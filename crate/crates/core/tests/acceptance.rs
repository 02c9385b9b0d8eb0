//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so the lines
//! always reach the test log.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bpu_sseq::abelian::{snf, IntMatrix};
use bpu_sseq::chern::{self, divergence_via_torus, ChernPolynomial};
use bpu_sseq::cli::worked_alpha6;
use bpu_sseq::invariants::construct::{index_in_kn, vectors};
use bpu_sseq::invariants::{construct_e, formulas, kn_basis, lambda, quotient_k12, verify_formulas};
use bpu_sseq::page::entry::e3_group;
use bpu_sseq::page::{d3, e4_entry, expected_torsion, torsion_with_engine, torsion_of_h, Engine, RuleTable};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

/// The displayed matrix of d3 out of (0,12), as a function of n.
fn m2(n: i64) -> IntMatrix {
    IntMatrix::from_i64(&[
        &[n - 5, 0, 0, 0, 0, 0, 0],
        &[n, n - 4, 0, 0, 0, 0, 0],
        &[0, n - 1, n - 3, 0, 0, 0, 0],
        &[0, 0, 2 * (n - 2), 0, 0, 0, 0],
        &[0, 2 * n, 0, n - 3, 0, 0, 0],
        &[0, 0, n, n - 1, n - 2, 0, 0],
        &[0, 0, 0, 0, 3 * (n - 1), 0, 0],
        &[0, 0, 0, 3 * n, 0, n - 2, 0],
        &[0, 0, 0, 0, 2 * n, 2 * (n - 1), 0],
        &[0, 0, 0, 0, 0, 4 * n, n - 1],
        &[0, 0, 0, 0, 0, 0, 6 * n],
    ])
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn m2_reproduction() -> Check {
    let start = Instant::now();
    for n in [6u32, 8, 10, 12] {
        let got = d3(n, 0, 12).map_err(|e| e.to_string())?;
        ensure(got.matrix() == &m2(n as i64), || format!("n={n}:\n{}", got.matrix()))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))
}

fn m2_two_parts() -> Check {
    for n in [6i64, 8, 10, 12, 16, 20] {
        let diag = snf(&m2(n)).diagonal();
        let mut parts: Vec<i64> = diag
            .iter()
            .map(|d| {
                let mut p = 1;
                let mut d = d.clone();
                while (&d % 2u32).is_zero() {
                    d /= 2u32;
                    p *= 2;
                }
                p
            })
            .collect();
        parts.sort();
        let want = if n % 4 == 2 { vec![1, 1, 1, 1, 1, 2, 2] } else { vec![1, 1, 1, 1, 1, 2, 4] };
        ensure(parts == want, || format!("n={n}: {parts:?}"))?;
    }
    Ok(())
}

fn e4_entries() -> Check {
    for n in [6u32, 8, 10, 12] {
        for (s, t) in [(6, 6), (9, 4), (12, 2)] {
            let g = e4_entry(n, s, t).map_err(|e| e.to_string())?;
            ensure(g.is_trivial(), || format!("n={n} E4^({s},{t}) = {g}"))?;
        }
        let g = e4_entry(n, 6, 8).map_err(|e| e.to_string())?;
        ensure(
            g.structure() == (0, vec![b(2)]) && g.labels() == Some(&["c2^2x1^2".to_string()][..]),
            || format!("n={n} E4^(6,8) = {g} {:?}", g.labels()),
        )?;
        let g = e4_entry(n, 3, 10).map_err(|e| e.to_string())?;
        let ok = if n % 4 == 2 {
            g.is_trivial()
        } else {
            g.structure() == (0, vec![b(2)]) && g.labels() == Some(&["2c4c1x1".to_string()][..])
        };
        ensure(ok, || format!("n={n} E4^(3,10) = {g} {:?}", g.labels()))?;
    }
    Ok(())
}

fn torsion_sweep() -> Check {
    let start = Instant::now();
    let rules = RuleTable::builtin();
    for n in 2..=64u32 {
        let engine = (n % 2 == 0).then(|| Engine::new(n, &rules)).transpose().map_err(|e| e.to_string())?;
        for d in 12..=14 {
            let r = match &engine {
                Some(e) => torsion_with_engine(e, d),
                None => torsion_of_h(n, d, &rules),
            }
            .map_err(|e| format!("n={n} degree {d}: {e}"))?;
            ensure(
                r.torsion.bounds.is_none() && r.torsion.elementary_divisors == expected_torsion(n, d),
                || format!("n={n} degree {d}: {:?}", r.torsion),
            )?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))
}

fn cyclic_quotient_sweep() -> Check {
    for n in 2..=32u32 {
        let g = quotient_k12(n).map_err(|e| e.to_string())?;
        let order = BigInt::from(lambda(n)).pow(3);
        let want: Vec<BigInt> = if order.is_one() { vec![] } else { vec![order] };
        ensure(g.structure() == (0, want), || format!("n={n}: {g}"))?;
    }
    Ok(())
}

fn worked_relation() -> Check {
    let n = 5;
    let e2 = formulas::integral("e2", n, &formulas::e2(n)).map_err(|e| e.to_string())?;
    let e3 = formulas::integral("e3", n, &formulas::e3(n)).map_err(|e| e.to_string())?;
    let e4 = formulas::integral("e4", n, &formulas::e4(n)).map_err(|e| e.to_string())?;
    ensure(e2 == ChernPolynomial::parse(n, "5c2 - 2c1^2").unwrap(), || format!("e2 = {e2}"))?;
    ensure(e3 == ChernPolynomial::parse(n, "25c3 - 15c2c1 + 4c1^3").unwrap(), || format!("e3 = {e3}"))?;
    let lhs = worked_alpha6().scale(&b(125));
    let rhs = &(&(&e4 * &e2).scale(&b(25)) - &e3.pow(2).scale(&b(3))) + &e2.pow(3).scale(&b(119));
    ensure(lhs == rhs, || format!("difference {}", &lhs - &rhs))
}

fn lattice_goldens() -> Check {
    for n in 2..=32u32 {
        let seq = construct_e(n, 6).map_err(|e| e.to_string())?;
        let e2 = seq.e(2);
        let e4 = formulas::integral("e4", n, &formulas::e4(n)).map_err(|e| e.to_string())?;
        let k8 = kn_basis(n, 4).map_err(|e| e.to_string())?;
        let span8: Vec<ChernPolynomial> = [e2.pow(2), e4].into_iter().filter(|p| !p.is_zero()).collect();
        ensure(k8.spanned_by(&span8), || format!("n={n}: K^8 differs from span(e2^2, e4)"))?;
        let k10 = kn_basis(n, 5).map_err(|e| e.to_string())?;
        let span10: Vec<ChernPolynomial> =
            [e2 * seq.e(3), seq.e(5).clone()].into_iter().filter(|p| !p.is_zero()).collect();
        ensure(k10.spanned_by(&span10), || format!("n={n}: K^10 differs from span(e2e3, e5)"))?;
        for w in 0..=5 {
            let index = index_in_kn(&seq, w).map_err(|e| e.to_string())?;
            ensure(index == Some(BigInt::one()), || format!("n={n} w={w}: index {index:?}"))?;
        }
        let k12 = kn_basis(n, 6).map_err(|e| e.to_string())?;
        let sub = vectors(&k12.monomials, &seq.products(6));
        ensure(sub.rows() == k12.rank(), || format!("n={n}: products are not a full-rank basis of K^12"))?;
    }
    Ok(())
}

fn d3_squares_to_zero() -> Check {
    for n in 1..=32u32 {
        for s in 0..=9u32 {
            for t in (4..=15 - s).step_by(2) {
                let first = d3(n, s, t).map_err(|e| e.to_string())?;
                let second = d3(n, s + 3, t - 2).map_err(|e| e.to_string())?;
                let composite = first.matrix() * second.matrix();
                let target = e3_group(n, s + 6, t - 4).map_err(|e| e.to_string())?;
                let rel = target.relations();
                // Each column is killed by the annihilator of its monomial, if any.
                for r in 0..composite.rows() {
                    for c in 0..composite.cols() {
                        let x = composite.get(r, c);
                        if x.is_zero() {
                            continue;
                        }
                        let killed = (0..rel.rows()).any(|k| {
                            let a = rel.get(k, c);
                            !a.is_zero() && (x % a).is_zero()
                        });
                        ensure(killed, || format!("n={n} ({s},{t}): entry ({r},{c}) = {x}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn divergence_laws() -> Check {
    for n in 1..=8u32 {
        let monomials: Vec<(u32, chern::ChernMonomial)> = (0..=8)
            .flat_map(|w| chern::basis(n, w).into_iter().map(move |m| (w, m)))
            .collect();
        for (w, m) in &monomials {
            let p = ChernPolynomial::term(n, m.clone(), BigInt::one());
            let torus = divergence_via_torus(&p);
            ensure(torus.as_ref() == Some(&p.divergence()), || format!("n={n}: ∇({m}) oracle {torus:?}"))?;
            for (w2, m2) in &monomials {
                if w + w2 > 8 {
                    continue;
                }
                let q = ChernPolynomial::term(n, m2.clone(), BigInt::one());
                let lhs = (&p * &q).divergence();
                let rhs = &(&p.divergence() * &q) + &(&p * &q.divergence());
                ensure(lhs == rhs, || format!("n={n}: Leibniz fails on {m}·{m2}"))?;
            }
        }
    }
    Ok(())
}

fn random_smith_forms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect())
            .collect();
        let a = IntMatrix::from_rows(rows, c).unwrap();
        let d = snf(&a);
        ensure(&(&d.u * &a) * &d.v == d.s, || format!("case {i}: U·A·V ≠ S"))?;
        ensure(d.u.is_unimodular() && d.v.is_unimodular(), || format!("case {i}: not unimodular"))?;
        ensure(d.s.is_diagonal(), || format!("case {i}: S not diagonal"))?;
        let diag = d.diagonal();
        ensure(
            diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()) && diag.iter().all(|x| x > &BigInt::zero()),
            || format!("case {i}: diagonal {diag:?}"),
        )?;
    }
    Ok(())
}

fn property_suites() -> Check {
    d3_squares_to_zero()?;
    divergence_laws()?;
    random_smith_forms()
}

fn formula_verification() -> Check {
    for n in 2..=32u32 {
        let r = verify_formulas(n).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            return Err(format!("n={n}: {} ({})", c.name, c.detail));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("d3 matrix out of (0,12) at n = 6, 8, 10, 12", m2_reproduction),
        ("2-parts of its Smith invariants", m2_two_parts),
        ("E4 entries", e4_entries),
        ("torsion in degrees 12..14 for 2 <= n <= 64", torsion_sweep),
        ("weight-6 quotient cyclic of order λ^3 for 2 <= n <= 32", cyclic_quotient_sweep),
        ("125 α6 = 25 e4e2 - 3 e3^2 + 119 e2^3 at n = 5", worked_relation),
        ("lattice spans in weights 4 and 5, index 1 up to weight 5", lattice_goldens),
        ("d3∘d3 = 0, divergence laws, random Smith forms", property_suites),
        ("closed-form checks for n <= 32", formula_verification),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS [{}] {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
