//! Σ¹ membership for Artin groups via the living-subgraph criterion, and
//! exact machinery showing that for the spoke-family groups
//! `G(k_1..k_n, l_2..l_n)` the exceptional characters `±(1, -1, .., -1)` have
//! non-finitely-generated kernels.
//!
//! Layers, bottom up:
//!
//! * [`graph`]: labeled graphs, dominance, circuit rank, spoke recognition.
//! * [`character`]: exact rational characters and their normalization.
//! * [`criterion`]: dead edges, living subgraph, the Σ¹ verdict.
//! * [`free_product`]: normal forms in free products of cyclic groups.
//! * [`kernel`]: the kernel generators `x_{j,i}` and their decomposition.
//! * [`theta`]: the map onto `K ∗ D` and its relation images.
//! * [`witness`]: the quotient dimensions `dim E_s`.
//!
//! ```
//! use sigma_artin::character::rational;
//! use sigma_artin::{character_from_slice, classify, witness_report, Membership, SpokeParams};
//!
//! let p = SpokeParams::new(vec![2, 2], vec![1]).unwrap();
//! let g = p.graph();
//! let chi = character_from_slice(&g, &[rational(1), rational(-1), rational(-1)]).unwrap();
//! assert_eq!(classify(&g, &chi).unwrap().membership, Membership::NotInSigma1);
//!
//! let report = witness_report(&p, 3).unwrap();
//! let dims: Vec<usize> = report.table.iter().map(|r| r.dim).collect();
//! assert_eq!(dims, [3, 5, 7]);
//! ```

pub mod character;
pub mod cli;
pub mod criterion;
pub mod error;
pub mod free_product;
pub mod graph;
pub mod kernel;
pub mod theta;
pub mod witness;

pub use character::{character_from_slice, validate_character, Character};
pub use criterion::{classify, living_subgraph, Membership, SigmaVerdict};
pub use error::{Error, Result};
pub use graph::{parse_graph, spoke_graph, validate_graph, ArtinGraph, RawGraph, SpokeParams};
pub use witness::{hypothesis_check, reduce_labels, witness_report};
