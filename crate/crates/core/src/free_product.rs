//! Normal forms in free products of finite cyclic groups.
//!
//! One [`Signature`] fixes the orders: every `y_j` (`j ∈ ℤ`) has order `k_1`,
//! every `x_{j,i}` (`0 <= j < 2l_i`) has order `k_i`. The ambient groups are
//!
//! * `K   = ∗_j ⟨y_j⟩`
//! * `K_i = ∗_j ⟨x_{j,i}⟩`
//! * `M_i = K ∗ K_i`, `M = K ∗ K_2 ∗ ⋯ ∗ K_n`
//! * `A   = K ∗ D` with `D = Z_{k_2} × ⋯ × Z_{k_n}` a single free factor.
//!
//! Words are stored as syllables: adjacent syllables lie in different free
//! factors and carry exponents in `1..order`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::SpokeParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `y_j`, a generator of `K`.
    Y(i64),
    /// `x_{index,spoke}`, a generator of `K_spoke`.
    X { spoke: usize, index: i64 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Y(j) => write!(f, "y[{j}]"),
            Generator::X { spoke, index } => write!(f, "x[{index},{spoke}]"),
        }
    }
}

/// Element of `D`: sorted `(spoke, exponent)` pairs with non-zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DElement(Vec<(usize, i64)>);

impl DElement {
    pub fn new(mut parts: Vec<(usize, i64)>) -> Self {
        parts.sort_unstable();
        DElement(parts)
    }

    pub fn single(spoke: usize, e: i64) -> Self {
        DElement(vec![(spoke, e)])
    }

    pub fn parts(&self) -> &[(usize, i64)] {
        &self.0
    }

    /// Exponent of the `Z_{k_spoke}` component.
    pub fn component(&self, spoke: usize) -> i64 {
        self.0
            .iter()
            .find(|(s, _)| *s == spoke)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable {
    Gen(Generator, i64),
    D(DElement),
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Syllable::Gen(g, e) => write!(f, "{g}^{e}"),
            Syllable::D(d) => {
                let toks: Vec<String> = d.0.iter().map(|(i, e)| format!("d[{i}]^{e}")).collect();
                write!(f, "{}", toks.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    K,
    Ki(usize),
    Mi(usize),
    M,
    A,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::K => write!(f, "K"),
            Ambient::Ki(i) => write!(f, "K_{i}"),
            Ambient::Mi(i) => write!(f, "M_{i}"),
            Ambient::M => write!(f, "M"),
            Ambient::A => write!(f, "A"),
        }
    }
}

impl Ambient {
    /// Whether every element of `self` is an element of `other`.
    pub fn is_subgroup_of(self, other: Ambient) -> bool {
        use Ambient::*;
        match (self, other) {
            (a, b) if a == b => true,
            (K, Mi(_) | M | A) => true,
            (Ki(i), Mi(j)) => i == j,
            (Ki(_) | Mi(_), M) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    ambient: Ambient,
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity(ambient: Ambient) -> Self {
        Word {
            ambient,
            syllables: Vec::new(),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Builds a word without normalizing it. Pass it through
    /// [`Signature::normal_form`] before using it.
    pub fn from_raw(ambient: Ambient, syllables: Vec<Syllable>) -> Self {
        Word { ambient, syllables }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self.syllables.iter().map(Syllable::to_string).collect();
        write!(f, "{}", toks.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpokeFactor {
    pub spoke: usize,
    pub order: i64,
    /// `2 l_i`: the number of free generators of `K_i`.
    pub width: i64,
}

/// Orders of all generators involved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    k1: i64,
    spokes: Vec<SpokeFactor>,
}

impl Signature {
    pub fn new(k1: i64, mut spokes: Vec<SpokeFactor>) -> Result<Self> {
        if k1 < 2 {
            return Err(Error::InvalidParams(format!("order k_1 = {k1} < 2")));
        }
        spokes.sort_by_key(|s| s.spoke);
        for w in spokes.windows(2) {
            if w[0].spoke == w[1].spoke {
                return Err(Error::InvalidParams(format!("spoke {} repeated", w[0].spoke)));
            }
        }
        for s in &spokes {
            if s.spoke < 2 || s.order < 2 || s.width < 2 || s.width % 2 != 0 {
                return Err(Error::InvalidParams(format!("bad spoke factor {s:?}")));
            }
        }
        Ok(Signature { k1, spokes })
    }

    /// Orders `k_1..k_n` and widths `2l_2..2l_n` from spoke parameters.
    pub fn from_params(p: &SpokeParams) -> Self {
        let spokes = (2..=p.n())
            .map(|i| SpokeFactor {
                spoke: i,
                order: p.k(i) as i64,
                width: 2 * p.l(i) as i64,
            })
            .collect();
        Signature::new(p.k(1) as i64, spokes).expect("spoke parameters are valid")
    }

    pub fn k1(&self) -> i64 {
        self.k1
    }

    pub fn spokes(&self) -> &[SpokeFactor] {
        &self.spokes
    }

    pub fn spoke(&self, i: usize) -> Result<&SpokeFactor> {
        self.spokes
            .iter()
            .find(|s| s.spoke == i)
            .ok_or_else(|| Error::InvalidParams(format!("no spoke {i}")))
    }

    pub fn order(&self, g: Generator) -> i64 {
        match g {
            Generator::Y(_) => self.k1,
            Generator::X { spoke, .. } => self.spoke(spoke).map_or(0, |s| s.order),
        }
    }

    fn check(&self, amb: Ambient, s: &Syllable) -> Result<()> {
        let ok = match s {
            Syllable::Gen(Generator::Y(_), _) => {
                matches!(amb, Ambient::K | Ambient::Mi(_) | Ambient::M | Ambient::A)
            }
            Syllable::Gen(Generator::X { spoke, index }, _) => {
                let fits = self
                    .spoke(*spoke)
                    .is_ok_and(|f| (0..f.width).contains(index));
                fits && match amb {
                    Ambient::Ki(i) | Ambient::Mi(i) => i == *spoke,
                    Ambient::M => true,
                    _ => false,
                }
            }
            Syllable::D(d) => {
                amb == Ambient::A && d.0.iter().all(|(i, _)| self.spoke(*i).is_ok())
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ForeignGenerator(s.to_string(), amb.to_string()))
        }
    }

    fn reduce(&self, s: Syllable) -> Option<Syllable> {
        match s {
            Syllable::Gen(g, e) => {
                let e = e.rem_euclid(self.order(g));
                (e != 0).then_some(Syllable::Gen(g, e))
            }
            Syllable::D(d) => {
                let parts: Vec<(usize, i64)> =
                    d.0.into_iter()
                        .map(|(i, e)| (i, e.rem_euclid(self.spoke(i).unwrap().order)))
                        .filter(|&(_, e)| e != 0)
                        .collect();
                (!parts.is_empty()).then_some(Syllable::D(DElement(parts)))
            }
        }
    }

    fn combine(&self, a: &Syllable, b: &Syllable) -> Option<Option<Syllable>> {
        match (a, b) {
            (Syllable::Gen(g, e), Syllable::Gen(h, f)) if g == h => {
                Some(self.reduce(Syllable::Gen(*g, e + f)))
            }
            (Syllable::D(x), Syllable::D(y)) => {
                let mut parts = x.0.clone();
                for &(i, e) in &y.0 {
                    match parts.iter_mut().find(|(j, _)| *j == i) {
                        Some(p) => p.1 += e,
                        None => parts.push((i, e)),
                    }
                }
                parts.sort_unstable();
                Some(self.reduce(Syllable::D(DElement(parts))))
            }
            _ => None,
        }
    }

    /// Appends one syllable to a normal-form stack.
    fn push(&self, stack: &mut Vec<Syllable>, s: Syllable) {
        let Some(s) = self.reduce(s) else { return };
        if let Some(top) = stack.last() {
            if let Some(merged) = self.combine(top, &s) {
                stack.pop();
                if let Some(m) = merged {
                    stack.push(m);
                }
                return;
            }
        }
        stack.push(s);
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        let mut stack = Vec::with_capacity(w.syllables.len());
        for s in &w.syllables {
            self.check(w.ambient, s)?;
            self.push(&mut stack, s.clone());
        }
        Ok(Word {
            ambient: w.ambient,
            syllables: stack,
        })
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.normal_form(w).is_ok_and(|n| n == *w)
    }

    pub fn word(&self, ambient: Ambient, syllables: Vec<Syllable>) -> Result<Word> {
        self.normal_form(&Word { ambient, syllables })
    }

    pub fn y(&self, ambient: Ambient, j: i64, e: i64) -> Result<Word> {
        self.word(ambient, vec![Syllable::Gen(Generator::Y(j), e)])
    }

    pub fn x(&self, ambient: Ambient, spoke: usize, index: i64, e: i64) -> Result<Word> {
        self.word(
            ambient,
            vec![Syllable::Gen(Generator::X { spoke, index }, e)],
        )
    }

    pub fn d(&self, spoke: usize, e: i64) -> Result<Word> {
        self.word(Ambient::A, vec![Syllable::D(DElement::single(spoke, e))])
    }

    /// Lifts `w` into a larger ambient.
    pub fn embed(&self, w: &Word, ambient: Ambient) -> Result<Word> {
        if !w.ambient.is_subgroup_of(ambient) {
            return Err(Error::AmbientMismatch(w.ambient.to_string(), ambient.to_string()));
        }
        Ok(Word {
            ambient,
            syllables: w.syllables.clone(),
        })
    }

    fn same_ambient(&self, a: &Word, b: &Word) -> Result<()> {
        if a.ambient != b.ambient {
            return Err(Error::AmbientMismatch(a.ambient.to_string(), b.ambient.to_string()));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Result<Word> {
        self.same_ambient(a, b)?;
        let mut stack = a.syllables.clone();
        for s in &b.syllables {
            self.push(&mut stack, s.clone());
        }
        Ok(Word {
            ambient: a.ambient,
            syllables: stack,
        })
    }

    /// Product of several words in one ambient.
    pub fn product<'a>(&self, ambient: Ambient, words: impl IntoIterator<Item = &'a Word>) -> Result<Word> {
        let mut stack = Vec::new();
        for w in words {
            if w.ambient != ambient {
                return Err(Error::AmbientMismatch(w.ambient.to_string(), ambient.to_string()));
            }
            for s in &w.syllables {
                self.push(&mut stack, s.clone());
            }
        }
        Ok(Word {
            ambient,
            syllables: stack,
        })
    }

    pub fn invert(&self, a: &Word) -> Word {
        let syllables = a
            .syllables
            .iter()
            .rev()
            .map(|s| match s {
                Syllable::Gen(g, e) => Syllable::Gen(*g, (-e).rem_euclid(self.order(*g))),
                Syllable::D(d) => Syllable::D(DElement(
                    d.0.iter()
                        .map(|&(i, e)| (i, (-e).rem_euclid(self.spoke(i).unwrap().order)))
                        .collect(),
                )),
            })
            .collect();
        Word {
            ambient: a.ambient,
            syllables,
        }
    }

    /// `g⁻¹ a g`.
    pub fn conjugate(&self, a: &Word, g: &Word) -> Result<Word> {
        self.same_ambient(a, g)?;
        let gi = self.invert(g);
        self.product(a.ambient, [&gi, a, g])
    }

    pub fn power(&self, a: &Word, e: i64) -> Word {
        let base = if e < 0 { self.invert(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Word::identity(a.ambient);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &sq).unwrap();
            }
            e >>= 1;
            if e > 0 {
                sq = self.multiply(&sq, &sq).unwrap();
            }
        }
        acc
    }

    /// Retraction `M_i -> K_i` killing every `y_j`.
    pub fn project_to_factor(&self, w: &Word, spoke: usize) -> Result<Word> {
        if w.ambient != Ambient::Mi(spoke) {
            return Err(Error::AmbientMismatch(
                w.ambient.to_string(),
                Ambient::Mi(spoke).to_string(),
            ));
        }
        let mut stack = Vec::new();
        for s in &w.syllables {
            if matches!(s, Syllable::Gen(Generator::X { .. }, _)) {
                self.push(&mut stack, s.clone());
            }
        }
        Ok(Word {
            ambient: Ambient::Ki(spoke),
            syllables: stack,
        })
    }

    /// Rewrites an element of the kernel of `M_i -> K_i` as a product of
    /// conjugates `c⁻¹ y_j^e c` with `c ∈ K_i`.
    pub fn kurosh_letters(&self, w: &Word) -> Result<Vec<KuroshLetter>> {
        let Ambient::Mi(spoke) = w.ambient else {
            return Err(Error::AmbientMismatch(w.ambient.to_string(), "M_i".into()));
        };
        let mut prefix = Prefix::default();
        let mut letters = Vec::new();
        for s in &w.syllables {
            match s {
                Syllable::Gen(Generator::Y(j), e) => letters.push(KuroshLetter {
                    index: *j,
                    exponent: *e,
                    spoke,
                    prefix: prefix.clone(),
                }),
                _ => prefix = prefix.push(self, s.clone()),
            }
        }
        if prefix.head.is_some() {
            return Err(Error::NotInKernel(spoke));
        }
        Ok(letters)
    }

    /// Inverse of [`Signature::kurosh_letters`].
    pub fn assemble_letters(&self, spoke: usize, letters: &[KuroshLetter]) -> Word {
        let amb = Ambient::Mi(spoke);
        let mut stack = Vec::new();
        for l in letters {
            let p = l.prefix.to_vec();
            for s in &p {
                self.push(&mut stack, s.clone());
            }
            self.push(&mut stack, Syllable::Gen(Generator::Y(l.index), l.exponent));
            let pi = self.invert(&Word::from_raw(amb, p));
            for s in pi.syllables {
                self.push(&mut stack, s);
            }
        }
        Word {
            ambient: amb,
            syllables: stack,
        }
    }
}

/// Persistent normal-form stack; letters share the prefixes they were emitted under.
#[derive(Debug, Clone, Default)]
struct Prefix {
    head: Option<Arc<PrefixNode>>,
}

#[derive(Debug)]
struct PrefixNode {
    syllable: Syllable,
    parent: Option<Arc<PrefixNode>>,
}

impl Prefix {
    fn push(&self, sig: &Signature, s: Syllable) -> Prefix {
        let Some(s) = sig.reduce(s) else {
            return self.clone();
        };
        if let Some(top) = &self.head {
            if let Some(merged) = sig.combine(&top.syllable, &s) {
                return match merged {
                    None => Prefix {
                        head: top.parent.clone(),
                    },
                    Some(m) => Prefix {
                        head: Some(Arc::new(PrefixNode {
                            syllable: m,
                            parent: top.parent.clone(),
                        })),
                    },
                };
            }
        }
        Prefix {
            head: Some(Arc::new(PrefixNode {
                syllable: s,
                parent: self.head.clone(),
            })),
        }
    }

    fn to_vec(&self) -> Vec<Syllable> {
        let mut out = Vec::new();
        let mut cur = self.head.as_ref();
        while let Some(node) = cur {
            out.push(node.syllable.clone());
            cur = node.parent.as_ref();
        }
        out.reverse();
        out
    }

    fn same_as(&self, other: &Prefix) -> bool {
        match (&self.head, &other.head) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || self.to_vec() == other.to_vec(),
            _ => false,
        }
    }
}

/// The conjugate `c⁻¹ y_index^exponent c` with `c` in `K_spoke`.
#[derive(Debug, Clone)]
pub struct KuroshLetter {
    pub index: i64,
    pub exponent: i64,
    spoke: usize,
    /// Running `K_i`-prefix `p` at emission; the conjugator is `p⁻¹`.
    prefix: Prefix,
}

impl KuroshLetter {
    pub fn conjugator(&self, sig: &Signature) -> Word {
        sig.invert(&Word::from_raw(Ambient::Ki(self.spoke), self.prefix.to_vec()))
    }

    /// Whether two adjacent letters could be merged into one.
    pub fn mergeable_with(&self, other: &KuroshLetter) -> bool {
        self.index == other.index && self.prefix.same_as(&other.prefix)
    }
}

pub fn letters_reduced(letters: &[KuroshLetter]) -> bool {
    letters.windows(2).all(|w| !w[0].mergeable_with(&w[1]))
}

/// Reads `y[j]^e`, `x[j,i]^e` and `d[i]^e` tokens; `1` or nothing is the identity.
pub fn parse_word(sig: &Signature, ambient: Ambient, text: &str) -> Result<Word> {
    let mut syllables = Vec::new();
    for (n, tok) in text.split_whitespace().enumerate() {
        if tok == "1" {
            continue;
        }
        let err = || Error::Parse {
            line: 1,
            msg: format!("token {}: cannot read `{tok}`", n + 1),
        };
        let (head, exp) = match tok.split_once('^') {
            Some((h, e)) => (h, e.parse::<i64>().map_err(|_| err())?),
            None => (tok, 1),
        };
        let inner = |prefix: &str| -> Option<&str> {
            head.strip_prefix(prefix)?.strip_suffix(']')
        };
        let s = if let Some(j) = inner("y[") {
            Syllable::Gen(Generator::Y(j.parse().map_err(|_| err())?), exp)
        } else if let Some(ji) = inner("x[") {
            let (j, i) = ji.split_once(',').ok_or_else(err)?;
            Syllable::Gen(
                Generator::X {
                    spoke: i.trim().parse().map_err(|_| err())?,
                    index: j.trim().parse().map_err(|_| err())?,
                },
                exp,
            )
        } else if let Some(i) = inner("d[") {
            Syllable::D(DElement::single(i.parse().map_err(|_| err())?, exp))
        } else {
            return Err(err());
        };
        syllables.push(s);
    }
    sig.word(ambient, syllables)
}
