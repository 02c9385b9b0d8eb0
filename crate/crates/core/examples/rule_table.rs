//! The shipped differential rules, and E_inf entries they determine.

use bpu_sseq::page::{einf_entry, RuleTable};

fn main() {
    let rules = RuleTable::builtin();
    for r in &rules.rules {
        println!(
            "d{} ({},{})  {:<8} {} -> {}·{}",
            r.page,
            serde_json::to_string(&r.s).unwrap(),
            serde_json::to_string(&r.t).unwrap(),
            r.n_condition.to_string(),
            r.source_label,
            r.coeff_formula,
            r.target_label
        );
    }
    for n in [4, 6, 8] {
        for (s, t) in [(3, 10), (6, 8), (10, 4), (12, 0), (15, 0)] {
            println!("n={n} E_inf^({s},{t}) = {}", einf_entry(n, s, t, &rules).unwrap());
        }
    }
}
