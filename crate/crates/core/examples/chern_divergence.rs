//! The divergence of a Chern polynomial, checked against the torus expansion.

use bpu_sseq::chern::{divergence_via_torus, ChernPolynomial};

fn main() {
    let n = 5;
    let p = ChernPolynomial::parse(n, "5c2 - 2c1^2").unwrap();
    println!("∇({p}) = {}", p.divergence());

    let q = ChernPolynomial::parse(n, "c4c1 - 3c3c2 + 7c1^5").unwrap();
    let direct = q.divergence();
    let torus = divergence_via_torus(&q).expect("symmetric");
    println!("∇({q}) = {direct}");
    assert_eq!(direct, torus);
}
