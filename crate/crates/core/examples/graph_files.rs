//! Parse graph and character files, recognize the spoke family, print JSON.
//!
//! `cargo run --example graph_files -- [GRAPH] [CHI]`

use std::fs;

use sigma_artin::character::parse_character;
use sigma_artin::criterion::VerdictJson;
use sigma_artin::graph::format_graph;
use sigma_artin::{classify, parse_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let mut args = std::env::args().skip(1);
    let graph = args.next().unwrap_or(format!("{dir}/spoke_4_6_1.graph"));
    let chi = args.next().unwrap_or(format!("{dir}/exceptional.chi"));

    let g = parse_graph(&fs::read_to_string(&graph)?)?;
    print!("{}", format_graph(&g));
    println!("circuit rank {}", g.circuit_rank()?);
    match g.to_spoke_params() {
        Some(m) => println!("spoke family {} (hub {}, rim {:?})", m.params, m.hub, m.rim),
        None => println!("not a spoke-family graph"),
    }

    let c = parse_character(&g, &fs::read_to_string(&chi)?)?;
    let v = classify(&g, &c)?;
    println!("{}", serde_json::to_string_pretty(&VerdictJson::from(&v))?);
    Ok(())
}
