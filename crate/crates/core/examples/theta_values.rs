//! The map θ onto K * D: the scalar sequence of θ(x~_j), its period, and the
//! relation images.
//!
//! `cargo run --example theta_values -- [l]`

use sigma_artin::free_product::{Signature, SpokeFactor};
use sigma_artin::kernel::{Window, XCache};
use sigma_artin::theta::{closed_form_value, predicted_trivial, relation_image, ThetaAssignment};

fn main() -> sigma_artin::Result<()> {
    let l: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let sig = Signature::new(3, vec![SpokeFactor { spoke: 2, order: 2, width: 2 * l }])?;
    let theta = ThetaAssignment::new(&sig)?;
    let mut cache = XCache::new(&sig, 2)?;

    let w = Window { jmin: -(2 * l + 2), jmax: 6 * l + 4 };
    let seq = theta.scalar_sequence(2, w);
    println!("{:>4} {:>6} {:>6} {:>7}", "j", "theta", "closed", "trivial");
    for (j, v) in &seq {
        println!(
            "{j:>4} {v:>6} {:>6} {:>7}",
            closed_form_value(l, *j).rem_euclid(2),
            predicted_trivial(2, l, *j)
        );
    }

    for j in [2 * l, 2 * l + 1, -1] {
        let r = relation_image(&theta, &mut cache, j);
        println!("relation image j={j}: {} ({})", r.pass, r.detail);
    }
    Ok(())
}
