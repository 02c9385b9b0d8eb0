//! Integral cohomology of K(Z,3) through degree 15, as presented in the library.

use bpu_sseq::kz3;

fn main() {
    for s in 0..=kz3::MAX_DEGREE {
        let basis = kz3::degree_basis(s).unwrap();
        if basis.is_empty() {
            continue;
        }
        let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        println!("H^{s:<2} = {:<10} on {}", kz3::degree_group(s).unwrap().to_string(), names.join(", "));
    }
}
