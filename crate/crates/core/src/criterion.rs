//! Dead edges, the living subgraph, and the Σ¹ verdict.
//!
//! Membership is decided by the living-subgraph criterion: `[χ] ∈ Σ¹(G)`
//! whenever the living subgraph is connected and dominant. The converse is
//! only certified for spoke-family graphs whose odd labels satisfy the
//! power-of-two inequality checked by [`hypothesis_check`]; anything else
//! that fails the criterion is reported as uncertified.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::graph::{ArtinGraph, EdgeKey, SpokeParams};
use crate::witness::hypothesis_check;

pub const CERT_POSITIVE: &str = "living subgraph connected and dominant";
pub const CERT_SPOKE: &str = "spoke family exceptional character";
pub const CERT_NONE: &str = "none";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    #[serde(rename = "in")]
    InSigma1,
    #[serde(rename = "out")]
    NotInSigma1,
    #[serde(rename = "uncertified")]
    CriterionFailsUncertified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVerdict {
    pub criterion_holds: bool,
    pub membership: Membership,
    pub certificate: String,
    pub living_subgraph: ArtinGraph,
    pub dead_edges: Vec<EdgeKey>,
}

/// Knobs for sabotage runs in the test-suite; the default is the real rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub ignore_dead_edges: bool,
}

/// Edges with even label `> 2` whose endpoint values are non-zero negatives
/// of each other.
pub fn dead_edges(g: &ArtinGraph, c: &Character) -> Vec<EdgeKey> {
    g.edges()
        .filter(|(_, label)| label % 2 == 0 && *label > 2)
        .filter(|(e, _)| {
            let (a, b) = (c.value(&e.0), c.value(&e.1));
            match (a, b) {
                (Some(a), Some(b)) => !num_traits::Zero::is_zero(a) && *a == -b.clone(),
                _ => false,
            }
        })
        .map(|(e, _)| e.clone())
        .collect()
}

/// Full subgraph on the support, minus dead edges.
pub fn living_subgraph(g: &ArtinGraph, c: &Character) -> ArtinGraph {
    living_subgraph_with(g, c, ClassifyOptions::default())
}

fn living_subgraph_with(g: &ArtinGraph, c: &Character, opts: ClassifyOptions) -> ArtinGraph {
    let full = g
        .induced_subgraph(&c.support())
        .expect("support vertices belong to the graph");
    if opts.ignore_dead_edges {
        return full;
    }
    full.remove_edges(&dead_edges(g, c))
        .expect("dead edges join support vertices")
}

pub fn classify(g: &ArtinGraph, c: &Character) -> Result<SigmaVerdict> {
    classify_with(g, c, ClassifyOptions::default())
}

pub fn classify_with(g: &ArtinGraph, c: &Character, opts: ClassifyOptions) -> Result<SigmaVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let living = living_subgraph_with(g, c, opts);
    assert!(
        living.num_vertices() > 0,
        "a non-zero character has non-empty support"
    );
    let criterion_holds = living.is_connected() && g.is_dominant(&living)?;
    let (membership, certificate) = if criterion_holds {
        (Membership::InSigma1, CERT_POSITIVE)
    } else {
        match g.to_spoke_params() {
            Some(m) if hypothesis_check(&m.params).holds => (Membership::NotInSigma1, CERT_SPOKE),
            _ => (Membership::CriterionFailsUncertified, CERT_NONE),
        }
    };
    let dead_edges = if opts.ignore_dead_edges {
        Vec::new()
    } else {
        dead_edges(g, c)
    };
    Ok(SigmaVerdict {
        criterion_holds,
        membership,
        certificate: certificate.to_string(),
        living_subgraph: living,
        dead_edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u64)>,
}

impl From<&ArtinGraph> for GraphJson {
    fn from(g: &ArtinGraph) -> Self {
        let raw = g.to_raw();
        GraphJson {
            vertices: raw.vertices,
            edges: raw.edges,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub criterion: bool,
    pub membership: Membership,
    pub living_subgraph: GraphJson,
    pub dead_edges: Vec<(String, String)>,
    pub certificate: String,
}

impl From<&SigmaVerdict> for VerdictJson {
    fn from(v: &SigmaVerdict) -> Self {
        VerdictJson {
            criterion: v.criterion_holds,
            membership: v.membership,
            living_subgraph: (&v.living_subgraph).into(),
            dead_edges: v
                .dead_edges
                .iter()
                .map(|e| (e.0.clone(), e.1.clone()))
                .collect(),
            certificate: v.certificate.clone(),
        }
    }
}

/// Description of the character sphere of a spoke-family group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereReport {
    pub params: SpokeParams,
    pub hypothesis_sum: String,
    /// Vertex order of the listed characters.
    pub vertices: Vec<String>,
    /// `Hom(G, R)` has these two free coordinates.
    pub coordinates: [String; 2],
    pub hom_dimension: usize,
    /// Exactly these two classes lie outside Σ¹.
    pub complement: Vec<Vec<i64>>,
    pub statement: String,
}

pub fn sphere_description(p: &SpokeParams) -> Result<SphereReport> {
    let hyp = hypothesis_check(p);
    if !hyp.holds {
        return Err(Error::HypothesisFails(hyp.sum.to_string()));
    }
    let n = p.n();
    let chi: Vec<i64> = std::iter::once(1).chain(std::iter::repeat(-1).take(n)).collect();
    let minus: Vec<i64> = chi.iter().map(|x| -x).collect();
    Ok(SphereReport {
        params: p.clone(),
        hypothesis_sum: hyp.sum.to_string(),
        vertices: p.vertex_names(),
        coordinates: ["mu(u)".into(), "mu(u1) = ... = mu(un)".into()],
        hom_dimension: 2,
        complement: vec![chi, minus],
        statement: "every class other than the two listed lies in Sigma^1".into(),
    })
}
