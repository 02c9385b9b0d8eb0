//! Smith and Hermite forms of a small integer matrix, and the group it presents.

use bpu_sseq::abelian::{hnf, snf, FgAbGroup, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let (h, _) = hnf(&a);
    let d = snf(&a);
    println!("A =\n{a}");
    println!("hermite form =\n{h}");
    println!("smith diagonal = {:?}", d.diagonal());
    assert_eq!(&(&d.u * &a) * &d.v, d.s);

    let g = FgAbGroup::new(3, a).unwrap();
    println!("Z^3 / rows(A) = {g}");
}
