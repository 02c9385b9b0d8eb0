//! Torsion of H^12..H^14(BPU_n) for a range of n.

use bpu_sseq::page::{expected_torsion, torsion_of_h, RuleTable};

fn main() {
    let rules = RuleTable::builtin();
    for n in 2..=20 {
        let row: Vec<String> = (12..=14)
            .map(|d| {
                let r = torsion_of_h(n, d, &rules).unwrap();
                assert_eq!(r.torsion.elementary_divisors, expected_torsion(n, d));
                format!("{:?}", r.torsion.elementary_divisors.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            })
            .collect();
        println!("n={n:<3} {}", row.join("  "));
    }
}
