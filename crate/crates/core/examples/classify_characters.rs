//! Classify characters of a labeled graph with the living-subgraph criterion.
//!
//! `cargo run --example classify_characters`

use sigma_artin::character::rational;
use sigma_artin::{character_from_slice, classify, SpokeParams};

fn main() -> sigma_artin::Result<()> {
    let p = SpokeParams::new(vec![2, 2], vec![1])?;
    let g = p.graph();
    println!("{p}: {} vertices, {} edges", g.num_vertices(), g.num_edges());

    for values in [[1, 1, 1], [1, -1, -1], [-1, 1, 1], [2, 1, 1], [0, 1, 1], [1, 0, 0]] {
        let xs: Vec<_> = values.iter().map(|&v| rational(v)).collect();
        let chi = character_from_slice(&g, &xs)?;
        let v = classify(&g, &chi)?;
        let dead: Vec<String> = v.dead_edges.iter().map(|e| format!("{}-{}", e.0, e.1)).collect();
        println!(
            "chi = {:<12} criterion {:<5}  {:<26}  dead [{}]  {}",
            format!("{values:?}"),
            v.criterion_holds,
            format!("{:?}", v.membership),
            dead.join(" "),
            v.certificate,
        );
    }
    Ok(())
}
