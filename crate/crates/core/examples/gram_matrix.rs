//! Off-diagonal Gram values of the built-in polytope and how often each occurs.

use std::collections::BTreeMap;

use racg::polytope::build_polytope_p;

fn main() -> racg::Result<()> {
    let p = build_polytope_p();
    let g = p.gram_matrix();
    let mut counts = BTreeMap::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            *counts.entry(g[(i, j)].clone()).or_insert(0usize) += 1;
        }
    }
    for (value, n) in counts {
        println!("{value:>3}  {n} pairs");
    }
    let check = racg::polytope::is_right_angled(&p);
    println!("right-angled: {}", check.right_angled);
    Ok(())
}
