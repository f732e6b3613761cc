//! Labeled simplicial graphs underlying Artin groups.
//!
//! Vertices are opaque string names kept in declaration order; that order is
//! the "fixed vertex order" used by character normalization and reports.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unordered vertex pair, stored with the lexicographically smaller name first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey(pub String, pub String);

impl EdgeKey {
    pub fn new(a: &str, b: &str) -> Self {
        if a <= b {
            EdgeKey(a.to_string(), b.to_string())
        } else {
            EdgeKey(b.to_string(), a.to_string())
        }
    }

    pub fn touches(&self, v: &str) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: &str) -> Option<&str> {
        if self.0 == v {
            Some(&self.1)
        } else if self.1 == v {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Unvalidated graph data, as read from a file or assembled by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u64)>,
}

impl RawGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn edge(mut self, a: &str, b: &str, label: u64) -> Self {
        self.edges.push((a.to_string(), b.to_string(), label));
        self
    }
}

/// A finite simple graph with integer edge labels `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinGraph {
    vertices: Vec<String>,
    edges: BTreeMap<EdgeKey, u64>,
}

/// Checks the graph invariants and builds an [`ArtinGraph`].
pub fn validate_graph(raw: RawGraph) -> Result<ArtinGraph> {
    let mut seen = BTreeSet::new();
    for v in &raw.vertices {
        if !seen.insert(v.as_str()) {
            return Err(Error::DuplicateVertex(v.clone()));
        }
    }
    let mut edges = BTreeMap::new();
    for (a, b, label) in raw.edges {
        if a == b {
            return Err(Error::Loop(a));
        }
        for v in [&a, &b] {
            if !seen.contains(v.as_str()) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        if label < 2 {
            return Err(Error::LabelTooSmall(a, b, label));
        }
        let key = EdgeKey::new(&a, &b);
        if edges.insert(key, label).is_some() {
            return Err(Error::DuplicateEdge(a, b));
        }
    }
    Ok(ArtinGraph {
        vertices: raw.vertices,
        edges,
    })
}

impl ArtinGraph {
    pub fn empty() -> Self {
        ArtinGraph {
            vertices: Vec::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeKey, u64)> + '_ {
        self.edges.iter().map(|(k, &l)| (k, l))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|w| w == v)
    }

    pub fn label(&self, a: &str, b: &str) -> Option<u64> {
        self.edges.get(&EdgeKey::new(a, b)).copied()
    }

    /// Neighbors of `v` paired with the connecting label.
    pub fn neighbors<'a>(&'a self, v: &'a str) -> impl Iterator<Item = (&'a str, u64)> + 'a {
        self.edges
            .iter()
            .filter_map(move |(k, &l)| k.other(v).map(|w| (w, l)))
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|(k, &l)| (k.0.clone(), k.1.clone(), l))
                .collect(),
        }
    }

    /// Full subgraph spanned by `vs`. Vertex order follows `self`.
    pub fn induced_subgraph<S: AsRef<str>>(&self, vs: &[S]) -> Result<ArtinGraph> {
        let mut keep = BTreeSet::new();
        for v in vs {
            let v = v.as_ref();
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            keep.insert(v);
        }
        let vertices = self
            .vertices
            .iter()
            .filter(|v| keep.contains(v.as_str()))
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(k, _)| keep.contains(k.0.as_str()) && keep.contains(k.1.as_str()))
            .map(|(k, &l)| (k.clone(), l))
            .collect();
        Ok(ArtinGraph { vertices, edges })
    }

    pub fn remove_edges(&self, es: &[EdgeKey]) -> Result<ArtinGraph> {
        let mut edges = self.edges.clone();
        for e in es {
            if !self.edges.contains_key(e) {
                return Err(Error::UnknownEdge(e.0.clone(), e.1.clone()));
            }
            edges.remove(e);
        }
        Ok(ArtinGraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each listed in vertex order.
    pub fn components(&self) -> Vec<Vec<String>> {
        self.components_where(|_| true)
    }

    pub(crate) fn components_where(&self, keep_edge: impl Fn(u64) -> bool) -> Vec<Vec<String>> {
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, &l) in &self.edges {
            if keep_edge(l) {
                let (a, b) = (index[k.0.as_str()], index[k.1.as_str()]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out: Vec<Vec<String>> = Vec::new();
        for start in 0..self.vertices.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut queue = VecDeque::from([start]);
            comp[start] = id;
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members.into_iter().map(|i| self.vertices[i].clone()).collect());
        }
        out
    }

    pub fn is_subgraph_of(&self, g: &ArtinGraph) -> bool {
        self.vertices.iter().all(|v| g.has_vertex(v))
            && self.edges.iter().all(|(k, &l)| g.edges.get(k) == Some(&l))
    }

    /// Whether every vertex of `self` outside `h` has a neighbor in `h`.
    pub fn is_dominant(&self, h: &ArtinGraph) -> Result<bool> {
        if !h.is_subgraph_of(self) {
            return Err(Error::NotSubgraph(
                "candidate has a vertex or edge outside the graph".into(),
            ));
        }
        let inside: BTreeSet<&str> = h.vertices.iter().map(String::as_str).collect();
        Ok(self
            .vertices
            .iter()
            .filter(|v| !inside.contains(v.as_str()))
            .all(|v| self.neighbors(v).any(|(w, _)| inside.contains(w))))
    }

    /// `|E| - |V| + 1`, the rank of the free fundamental group.
    pub fn circuit_rank(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok((self.edges.len() + 1).saturating_sub(self.vertices.len().max(1)))
    }

    /// Recognize the spoke family: a hub joined to `u_1..u_n` by even labels
    /// `2k_i` (`k_i > 1`), and `u_1` joined to `u_2..u_n` by odd labels
    /// `2l_i + 1`, with no further edges.
    pub fn to_spoke_params(&self) -> Option<SpokeMatch> {
        let nv = self.vertices.len();
        if nv < 3 || self.edges.len() != 2 * (nv - 1) - 1 {
            return None;
        }
        for hub in &self.vertices {
            let hub_ok = self
                .vertices
                .iter()
                .filter(|v| *v != hub)
                .all(|v| matches!(self.label(hub, v), Some(l) if l % 2 == 0 && l >= 4));
            if !hub_ok {
                continue;
            }
            let rim: Vec<&String> = self.vertices.iter().filter(|v| *v != hub).collect();
            for &first in &rim {
                let others: Vec<&String> = rim.iter().copied().filter(|v| *v != first).collect();
                let mut l = Vec::with_capacity(others.len());
                for v in &others {
                    match self.label(first, v) {
                        Some(lab) if lab % 2 == 1 && lab >= 3 => l.push((lab - 1) / 2),
                        _ => break,
                    }
                }
                if l.len() != others.len() {
                    continue;
                }
                // The edge count already rules out rim-rim edges not touching `first`.
                let mut k = vec![self.label(hub, first).unwrap() / 2];
                k.extend(others.iter().map(|v| self.label(hub, v).unwrap() / 2));
                let params = SpokeParams::new(k, l).ok()?;
                return Some(SpokeMatch {
                    params,
                    hub: hub.clone(),
                    rim: std::iter::once(first)
                        .chain(others)
                        .cloned()
                        .collect(),
                });
            }
        }
        None
    }
}

/// Parameters `(k_1..k_n, l_2..l_n)` of the spoke-family Artin group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpokeParams {
    k: Vec<u64>,
    l: Vec<u64>,
}

impl SpokeParams {
    /// `k` holds `k_1..k_n`, `l` holds `l_2..l_n`.
    pub fn new(k: Vec<u64>, l: Vec<u64>) -> Result<Self> {
        if k.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "need n >= 2 spokes, got {}",
                k.len()
            )));
        }
        if l.len() + 1 != k.len() {
            return Err(Error::InvalidParams(format!(
                "expected {} odd-label parameters l_2..l_n, got {}",
                k.len() - 1,
                l.len()
            )));
        }
        if let Some(bad) = k.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidParams(format!("k_i must exceed 1, got {bad}")));
        }
        if l.contains(&0) {
            return Err(Error::InvalidParams("l_i must be positive".into()));
        }
        Ok(SpokeParams { k, l })
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// `k_i` for `1 <= i <= n`.
    pub fn k(&self, i: usize) -> u64 {
        self.k[i - 1]
    }

    /// `l_i` for `2 <= i <= n`.
    pub fn l(&self, i: usize) -> u64 {
        self.l[i - 2]
    }

    pub fn ks(&self) -> &[u64] {
        &self.k
    }

    pub fn ls(&self) -> &[u64] {
        &self.l
    }

    /// Vertex names used by [`spoke_graph`]: `u`, then `u1..un`.
    pub fn vertex_names(&self) -> Vec<String> {
        std::iter::once("u".to_string())
            .chain((1..=self.n()).map(|i| format!("u{i}")))
            .collect()
    }

    pub fn graph(&self) -> ArtinGraph {
        spoke_graph(self)
    }
}

impl fmt::Display for SpokeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| {
            xs.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "G(k={}; l={})", join(&self.k), join(&self.l))
    }
}

/// A recognized spoke-family graph together with its vertex correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpokeMatch {
    pub params: SpokeParams,
    pub hub: String,
    /// `u_1, u_2, .., u_n` in that order.
    pub rim: Vec<String>,
}

pub fn spoke_graph(p: &SpokeParams) -> ArtinGraph {
    let mut raw = RawGraph::new().vertex("u");
    for i in 1..=p.n() {
        raw = raw.vertex(&format!("u{i}"));
    }
    for i in 1..=p.n() {
        raw = raw.edge("u", &format!("u{i}"), 2 * p.k(i));
    }
    for i in 2..=p.n() {
        raw = raw.edge("u1", &format!("u{i}"), 2 * p.l(i) + 1);
    }
    validate_graph(raw).expect("spoke graph satisfies the graph invariants")
}

/// Line format: `vertex <name>` and `edge <a> <b> <label>`, `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<ArtinGraph> {
    let mut raw = RawGraph::new();
    let mut vertex_line = HashMap::new();
    let mut edge_line = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", name] => {
                vertex_line.insert(name.to_string(), line_no);
                raw.vertices.push(name.to_string());
            }
            ["edge", a, b, label] => {
                let label: u64 = label
                    .parse()
                    .map_err(|_| err(format!("invalid label `{label}`")))?;
                edge_line.insert(EdgeKey::new(a, b), line_no);
                raw.edges.push((a.to_string(), b.to_string(), label));
            }
            _ => return Err(err(format!("unrecognized line `{body}`"))),
        }
    }
    // Attach line numbers to invariant violations.
    validate_graph(raw).map_err(|e| {
        let line = match &e {
            Error::DuplicateVertex(v) => vertex_line.get(v).copied(),
            Error::Loop(v) => edge_line.get(&EdgeKey::new(v, v)).copied(),
            Error::DuplicateEdge(a, b)
            | Error::LabelTooSmall(a, b, _)
            | Error::UnknownEdge(a, b) => edge_line.get(&EdgeKey::new(a, b)).copied(),
            Error::UnknownVertex(v) => edge_line
                .iter()
                .filter(|(k, _)| k.touches(v))
                .map(|(_, &l)| l)
                .min(),
            _ => None,
        };
        match line {
            Some(line) => Error::Parse {
                line,
                msg: e.to_string(),
            },
            None => e,
        }
    })
}

pub fn format_graph(g: &ArtinGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for (k, l) in g.edges() {
        out.push_str(&format!("edge {} {} {l}\n", k.0, k.1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> ArtinGraph {
        validate_graph(
            RawGraph::new()
                .vertex("u")
                .vertex("u1")
                .vertex("u2")
                .edge("u", "u1", 4)
                .edge("u", "u2", 4)
                .edge("u1", "u2", 3),
        )
        .unwrap()
    }

    fn path_abc() -> ArtinGraph {
        validate_graph(
            RawGraph::new()
                .vertex("a")
                .vertex("b")
                .vertex("c")
                .edge("a", "b", 2)
                .edge("b", "c", 3),
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(triangle().num_edges(), 3);
        let lp = validate_graph(RawGraph::new().vertex("u").edge("u", "u", 3));
        assert_eq!(lp, Err(Error::Loop("u".into())));
        let small = validate_graph(RawGraph::new().vertex("a").vertex("b").edge("a", "b", 1));
        assert!(matches!(small, Err(Error::LabelTooSmall(_, _, 1))));
        let dup = validate_graph(
            RawGraph::new()
                .vertex("a")
                .vertex("b")
                .edge("a", "b", 2)
                .edge("b", "a", 5),
        );
        assert!(matches!(dup, Err(Error::DuplicateEdge(..))));
        let unknown = validate_graph(RawGraph::new().vertex("a").edge("a", "z", 2));
        assert_eq!(unknown, Err(Error::UnknownVertex("z".into())));
    }

    #[test]
    fn induced_subgraphs() {
        let g = triangle();
        let h = g.induced_subgraph(&["u1", "u2"]).unwrap();
        assert_eq!(h.vertices(), ["u1", "u2"]);
        assert_eq!(h.label("u1", "u2"), Some(3));
        assert_eq!(h.num_edges(), 1);
        assert_eq!(g.induced_subgraph(g.vertices()).unwrap(), g);
        let e = g.induced_subgraph::<&str>(&[]).unwrap();
        assert_eq!(e, ArtinGraph::empty());
        assert!(g.induced_subgraph(&["w"]).is_err());
    }

    #[test]
    fn edge_removal() {
        let g = triangle();
        let p = g.remove_edges(&[EdgeKey::new("u1", "u2")]).unwrap();
        assert_eq!(p.num_edges(), 2);
        assert!(p.is_connected());
        assert_eq!(p.circuit_rank().unwrap(), 0);
        assert_eq!(g.remove_edges(&[]).unwrap(), g);
        let all: Vec<EdgeKey> = g.edges().map(|(k, _)| k.clone()).collect();
        let bare = g.remove_edges(&all).unwrap();
        assert_eq!(bare.num_edges(), 0);
        assert_eq!(bare.num_vertices(), 3);
        assert!(g.remove_edges(&[EdgeKey::new("u", "w")]).is_err());
    }

    #[test]
    fn connectivity() {
        let p = SpokeParams::new(vec![2, 2], vec![1]).unwrap();
        assert!(p.graph().is_connected());
        let two = validate_graph(RawGraph::new().vertex("a").vertex("b")).unwrap();
        assert!(!two.is_connected());
        let one = validate_graph(RawGraph::new().vertex("a")).unwrap();
        assert!(one.is_connected());
        assert!(ArtinGraph::empty().is_connected());
        assert_eq!(two.circuit_rank(), Err(Error::Disconnected));
    }

    #[test]
    fn dominance() {
        let g = SpokeParams::new(vec![2, 2], vec![1]).unwrap().graph();
        let h = g.induced_subgraph(&["u1"]).unwrap();
        assert!(g.is_dominant(&h).unwrap());
        assert!(g.is_dominant(&g).unwrap());
        let p = path_abc();
        let a = p.induced_subgraph(&["a"]).unwrap();
        assert!(!p.is_dominant(&a).unwrap());
        let foreign = validate_graph(RawGraph::new().vertex("z")).unwrap();
        assert!(p.is_dominant(&foreign).is_err());
    }

    #[test]
    fn circuit_ranks() {
        assert_eq!(triangle().circuit_rank().unwrap(), 1);
        assert_eq!(path_abc().circuit_rank().unwrap(), 0);
        for n in 2..=8 {
            let p = SpokeParams::new(vec![2; n], vec![1; n - 1]).unwrap();
            let g = p.graph();
            assert_eq!(g.num_edges(), 2 * n - 1);
            assert_eq!(g.circuit_rank().unwrap(), n - 1);
        }
    }

    #[test]
    fn spoke_recognition() {
        let m = triangle().to_spoke_params().unwrap();
        assert_eq!(m.params, SpokeParams::new(vec![2, 2], vec![1]).unwrap());
        assert_eq!(m.hub, "u");

        let square = validate_graph(
            RawGraph::new()
                .vertex("a")
                .vertex("b")
                .vertex("c")
                .vertex("d")
                .edge("a", "b", 4)
                .edge("b", "c", 4)
                .edge("c", "d", 4)
                .edge("d", "a", 4),
        )
        .unwrap();
        assert_eq!(square.to_spoke_params(), None);

        let odd_hub = validate_graph(
            RawGraph::new()
                .vertex("u")
                .vertex("u1")
                .vertex("u2")
                .edge("u", "u1", 3)
                .edge("u", "u2", 4)
                .edge("u1", "u2", 3),
        )
        .unwrap();
        assert_eq!(odd_hub.to_spoke_params(), None);

        // label 2 on a hub edge means k = 1, outside the family
        let k_one = validate_graph(
            RawGraph::new()
                .vertex("u")
                .vertex("u1")
                .vertex("u2")
                .edge("u", "u1", 2)
                .edge("u", "u2", 4)
                .edge("u1", "u2", 3),
        )
        .unwrap();
        assert_eq!(k_one.to_spoke_params(), None);
    }

    #[test]
    fn recognition_with_shuffled_names() {
        let g = validate_graph(
            RawGraph::new()
                .vertex("c")
                .vertex("hub")
                .vertex("a")
                .vertex("b")
                .edge("hub", "a", 6)
                .edge("hub", "b", 8)
                .edge("hub", "c", 4)
                .edge("a", "b", 5)
                .edge("a", "c", 3),
        )
        .unwrap();
        let m = g.to_spoke_params().unwrap();
        assert_eq!(m.hub, "hub");
        assert_eq!(m.rim, ["a", "c", "b"]);
        assert_eq!(m.params.ks(), [3, 2, 4]);
        assert_eq!(m.params.ls(), [1, 2]);
    }

    #[test]
    fn text_format() {
        let text = "# spoke\nvertex u\nvertex u1\nvertex u2\nedge u u1 4\nedge u u2 4 # hub\nedge u1 u2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, triangle().induced_subgraph(&["u", "u1", "u2"]).unwrap());
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
        let bad = parse_graph("vertex a\nvertex b\nedge a b 1\n");
        assert!(matches!(bad, Err(Error::Parse { line: 3, .. })));
        let junk = parse_graph("vertex a\nedge a b x\n");
        assert!(matches!(junk, Err(Error::Parse { line: 2, .. })));
    }
}
