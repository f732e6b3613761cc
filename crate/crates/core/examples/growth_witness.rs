//! Lower bounds on dim E_s certifying that the kernel of the exceptional
//! character is not finitely generated.
//!
//! `cargo run --example growth_witness -- [smax]`

use sigma_artin::witness::{reduce_labels, Witness};
use sigma_artin::SpokeParams;

fn main() -> sigma_artin::Result<()> {
    let smax: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    for (k, l) in [
        (vec![2, 2], vec![1]),
        (vec![2, 2, 3], vec![1, 2]),
        (vec![12, 12, 8], vec![1, 2]),
        (vec![3, 3, 5], vec![1, 1]),
    ] {
        let p = SpokeParams::new(k, l)?;
        let rp = reduce_labels(&p);
        let mut w = Witness::new(&p)?;
        println!(
            "{p} -> {} (m = {}, sum = {}, deltaR = {}, l = {}{})",
            rp.params,
            rp.m,
            w.hypothesis().sum,
            w.delta_r(),
            w.l(),
            if w.is_degenerate() { ", degenerate" } else { "" }
        );
        for s in 1..=smax {
            let d = w.dimension(s)?;
            println!(
                "  s={s}  dim {:>4}  bound {:>6}  rank {:>3}/{:<3} {}",
                d.dim,
                d.lower_bound,
                d.rank,
                d.cols,
                if d.bound_holds { "ok" } else { "VIOLATED" }
            );
        }
    }

    let bad = SpokeParams::new(vec![2, 2, 2, 2], vec![1, 1, 1])?;
    match Witness::new(&bad) {
        Err(e) => println!("{bad}: {e}"),
        Ok(_) => println!("{bad}: unexpectedly accepted"),
    }
    Ok(())
}
