//! Exact rational characters `G -> R` of Artin groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::ArtinGraph;

/// A non-zero character given by its vertex values, in the graph's vertex order.
///
/// Every odd-labeled edge has equal endpoint values: the relation
/// `(uv)^l u = (vu)^l v` abelianizes to `u = v`, while even-length relations
/// abelianize trivially.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<(String, BigRational)>,
}

impl Character {
    pub fn values(&self) -> &[(String, BigRational)] {
        &self.values
    }

    pub fn value(&self, v: &str) -> Option<&BigRational> {
        self.values.iter().find(|(w, _)| w == v).map(|(_, x)| x)
    }

    /// Positive or negative rescaling; `r` must be non-zero.
    pub fn scale(&self, r: &BigRational) -> Character {
        assert!(!r.is_zero(), "scaling a character by zero");
        Character {
            values: self
                .values
                .iter()
                .map(|(v, x)| (v.clone(), x * r))
                .collect(),
        }
    }

    pub fn negate(&self) -> Character {
        self.scale(&-BigRational::from_integer(1.into()))
    }

    pub fn support(&self) -> Vec<String> {
        self.values
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Canonical representative of the positive ray: divide by the absolute
    /// value of the first non-zero coordinate.
    pub fn normalize(&self) -> Character {
        let pivot = self
            .values
            .iter()
            .map(|(_, x)| x)
            .find(|x| !x.is_zero())
            .expect("characters are non-zero")
            .abs();
        Character {
            values: self
                .values
                .iter()
                .map(|(v, x)| (v.clone(), x / &pivot))
                .collect(),
        }
    }

    /// Values as a plain map, e.g. for serialization.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|(v, x)| (v.clone(), x.to_string()))
            .collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(v, x)| format!("{v}={x}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Checks a raw vertex assignment against `g`.
pub fn validate_character(
    g: &ArtinGraph,
    raw: &HashMap<String, BigRational>,
) -> Result<Character> {
    if let Some(extra) = raw.keys().find(|v| !g.has_vertex(v)) {
        return Err(Error::UnknownVertex(extra.clone()));
    }
    let mut values = Vec::with_capacity(g.num_vertices());
    for v in g.vertices() {
        let x = raw.get(v).ok_or_else(|| Error::MissingValue(v.clone()))?;
        values.push((v.clone(), x.clone()));
    }
    if values.iter().all(|(_, x)| x.is_zero()) {
        return Err(Error::ZeroCharacter);
    }
    for (e, label) in g.edges() {
        if label % 2 == 1 && raw[&e.0] != raw[&e.1] {
            return Err(Error::OddEdgeViolation(e.0.clone(), e.1.clone()));
        }
    }
    Ok(Character { values })
}

/// Convenience wrapper taking values in the graph's vertex order.
pub fn character_from_slice(g: &ArtinGraph, xs: &[BigRational]) -> Result<Character> {
    if xs.len() != g.num_vertices() {
        return Err(Error::InvalidParams(format!(
            "expected {} values, got {}",
            g.num_vertices(),
            xs.len()
        )));
    }
    let raw = g.vertices().iter().cloned().zip(xs.iter().cloned()).collect();
    validate_character(g, &raw)
}

/// Dimension of `Hom(G, R)`: components of the graph keeping only odd edges.
pub fn character_space_dimension(g: &ArtinGraph) -> usize {
    g.components_where(|label| label % 2 == 1).len()
}

/// Line format: `chi <vertex> <rational>`, rationals as `p/q` or integers.
pub fn parse_character(g: &ArtinGraph, text: &str) -> Result<Character> {
    let mut raw = HashMap::new();
    let mut line_of = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let toks: Vec<&str> = body.split_whitespace().collect();
        let ["chi", v, x] = toks.as_slice() else {
            return Err(err(format!("unrecognized line `{body}`")));
        };
        let x: BigRational = x
            .parse()
            .map_err(|_| err(format!("invalid rational `{x}`")))?;
        if raw.insert(v.to_string(), x).is_some() {
            return Err(err(format!("vertex `{v}` assigned twice")));
        }
        line_of.insert(v.to_string(), line_no);
    }
    validate_character(g, &raw).map_err(|e| {
        let line = match &e {
            Error::UnknownVertex(v) => line_of.get(v).copied(),
            Error::OddEdgeViolation(a, b) => line_of[a].max(line_of[b]).into(),
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

pub fn format_character(c: &Character) -> String {
    c.values
        .iter()
        .map(|(v, x)| format!("chi {v} {x}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_graph, RawGraph, SpokeParams};

    fn spoke2() -> ArtinGraph {
        SpokeParams::new(vec![2, 2], vec![1]).unwrap().graph()
    }

    fn chi(g: &ArtinGraph, xs: &[i64]) -> Result<Character> {
        let xs: Vec<_> = xs.iter().map(|&x| rational(x)).collect();
        character_from_slice(g, &xs)
    }

    #[test]
    fn validation() {
        let g = spoke2();
        assert!(chi(&g, &[1, -1, -1]).is_ok());
        assert_eq!(
            chi(&g, &[0, 1, 2]),
            Err(Error::OddEdgeViolation("u1".into(), "u2".into()))
        );
        assert_eq!(chi(&g, &[0, 0, 0]), Err(Error::ZeroCharacter));
        let mut raw = HashMap::new();
        raw.insert("u".to_string(), rational(1));
        assert_eq!(
            validate_character(&g, &raw),
            Err(Error::MissingValue("u1".into()))
        );
    }

    #[test]
    fn supports() {
        let g = spoke2();
        assert_eq!(chi(&g, &[1, -1, -1]).unwrap().support(), ["u", "u1", "u2"]);
        assert_eq!(chi(&g, &[0, 1, 1]).unwrap().support(), ["u1", "u2"]);
        assert_eq!(chi(&g, &[1, 0, 0]).unwrap().support(), ["u"]);
    }

    #[test]
    fn normalization() {
        let g = spoke2();
        let n = |xs: &[i64]| chi(&g, xs).unwrap().normalize();
        assert_eq!(n(&[2, -2, -2]), chi(&g, &[1, -1, -1]).unwrap());
        assert_eq!(n(&[1, -1, -1]), chi(&g, &[1, -1, -1]).unwrap());
        assert_eq!(n(&[0, 3, 3]), chi(&g, &[0, 1, 1]).unwrap());
        assert_eq!(n(&[-4, 2, 2]), chi(&g, &[-2, 1, 1]).unwrap().normalize());
        let half = BigRational::new(1.into(), 2.into());
        let c = chi(&g, &[3, 5, 5]).unwrap();
        assert_eq!(c.scale(&half).normalize(), c.normalize());
    }

    #[test]
    fn space_dimension() {
        assert_eq!(character_space_dimension(&spoke2()), 2);
        let even = validate_graph(
            RawGraph::new()
                .vertex("a")
                .vertex("b")
                .vertex("c")
                .edge("a", "b", 4)
                .edge("b", "c", 2),
        )
        .unwrap();
        assert_eq!(character_space_dimension(&even), 3);
        let g4 = SpokeParams::new(vec![2, 3, 4, 5], vec![1, 2, 3]).unwrap().graph();
        assert_eq!(character_space_dimension(&g4), 2);
    }

    #[test]
    fn text_format() {
        let g = spoke2();
        let c = parse_character(&g, "chi u 1\nchi u1 -1/1\nchi u2 -2/2 # same\n").unwrap();
        assert_eq!(c, chi(&g, &[1, -1, -1]).unwrap());
        assert_eq!(parse_character(&g, &format_character(&c)).unwrap(), c);
        let bad = parse_character(&g, "chi u 0\nchi u1 1\nchi u2 2\n");
        assert!(matches!(bad, Err(Error::Parse { line: 3, .. })));
        let junk = parse_character(&g, "chi u one\n");
        assert!(matches!(junk, Err(Error::Parse { line: 1, .. })));
    }
}
