//! Generators e2..e6 of the invariants and the weight-6 quotient.

use bpu_sseq::invariants::{construct_e, kn_basis, quotient_k12};

fn main() {
    let n: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let seq = construct_e(n, 6).unwrap();
    print!("{seq}");
    for w in 0..=6 {
        println!("rank K^{} = {}", 2 * w, kn_basis(n, w).unwrap().rank());
    }
    println!("K^12/(e2^3, e3^2, e4e2, e6) = {}", quotient_k12(n).unwrap());
}
