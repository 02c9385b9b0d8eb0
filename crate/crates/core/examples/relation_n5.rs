//! The weight-6 relation at n = 5 for a fixed α6, and the canonical one.

use bpu_sseq::chern::ChernPolynomial;
use bpu_sseq::invariants::formulas::ALPHA6_N5;
use bpu_sseq::invariants::{solve_relation, solve_relation_with};

fn main() {
    let alpha6 = ChernPolynomial::parse(5, ALPHA6_N5).unwrap();
    let w = solve_relation_with(5, &alpha6).unwrap();
    println!("α6 = {alpha6}");
    println!("{}·α6 = {}·e4e2 + {}·e3^2 + {}·e2^3", w.m, w.b, w.c, w.d);

    let canonical = solve_relation(5).unwrap();
    println!("canonical α6 = {}", canonical.alpha6);
    println!("{}·α6 = {}·e4e2 + {}·e3^2 + {}·e2^3", canonical.m, canonical.b, canonical.c, canonical.d);
}
