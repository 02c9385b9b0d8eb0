//! The d3 differential out of E_3^{0,12} and the E_4 entries around it.

use bpu_sseq::page::{d3, e4_entry};

fn main() {
    let n: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let map = d3(n, 0, 12).unwrap();
    println!("d3: E3^(0,12) -> E3^(3,10) at n = {n}\n{}", map.matrix());
    for (s, t) in [(3, 10), (6, 8), (6, 6), (9, 4), (12, 2)] {
        let g = e4_entry(n, s, t).unwrap();
        let gens = g.labels().map(|l| l.join(", ")).unwrap_or_default();
        println!("E4^({s},{t}) = {g}  {gens}");
    }
}
