//! The kernel generators x_j beyond the base range, their splitting
//! x_j = x~_j v_j, and the full check suite over the default window.
//!
//! `cargo run --example kernel_words -- [k1 k2 l]`

use sigma_artin::free_product::{Signature, SpokeFactor};
use sigma_artin::kernel::{kernel_suite, XCache};

fn main() -> sigma_artin::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (k1, k2, l) = match args[..] {
        [a, b, c] => (a, b, c),
        _ => (2, 3, 1),
    };
    let sig = Signature::new(k1, vec![SpokeFactor { spoke: 2, order: k2, width: 2 * l }])?;
    let mut cache = XCache::new(&sig, 2)?;

    for j in [-2, -1, 2 * l, 2 * l + 1] {
        let d = cache.decompose(j);
        println!("x[{j}]  = {}", cache.x_element(j));
        println!("  x~   = {}", d.xtilde);
        println!("  v    = {}", d.v);
    }

    let w = cache.default_window();
    let records = kernel_suite(&mut cache, w);
    let failed: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    println!(
        "window {}..={}: {} checks, {} failed",
        w.jmin,
        w.jmax,
        records.len(),
        failed.len()
    );
    for r in failed {
        println!("  {} j={} {}", r.check, r.j, r.detail);
    }
    Ok(())
}
