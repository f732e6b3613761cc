//! The elements `x_{j,i} ∈ M_i = K ∗ K_i` for all `j ∈ ℤ`.
//!
//! With `x_{j,i} = u^{-j} (u u_i) u^j` and `y_j = x_{j,1}`, the odd-label
//! relation `(u_1 u_i)^{l} u_1 = (u_i u_1)^{l} u_i` expresses `x_{j,i}` through
//! the `2l` previous indices (forward) or the `2l` following ones (backward).
//! Starting from the free generators `x_{0,i}, .., x_{2l-1,i}` this defines every
//! `x_{j,i}` as a word in `M_i`. Each such word splits uniquely as
//! `x̃_{j,i} · v_{j,i}` with `x̃ ∈ K_i` and `v` in the normal closure of `K`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_product::{Ambient, KuroshLetter, Signature, Word};

/// A factor of a recurrence: `y_k^{±1}` or `x_{k,i}^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Y(i64, i64),
    X(i64, i64),
}

/// Right-hand side expressing `x_{j,i}` through `x_{j-2l..j-1}`:
///
/// `y_{j-1}⁻¹ x_{j-2}⁻¹ ⋯ y_{j-2l+1}⁻¹ x_{j-2l}⁻¹ · y_{j-2l} x_{j-2l+1} ⋯ x_{j-1} y_j`
pub fn forward_terms(j: i64, l: i64) -> Vec<Term> {
    let mut t = Vec::with_capacity(4 * l as usize + 1);
    for s in 1..=l {
        t.push(Term::Y(j - 2 * s + 1, -1));
        t.push(Term::X(j - 2 * s, -1));
    }
    for s in 0..l {
        t.push(Term::Y(j - 2 * l + 2 * s, 1));
        t.push(Term::X(j - 2 * l + 2 * s + 1, 1));
    }
    t.push(Term::Y(j, 1));
    t
}

/// Right-hand side expressing `x_{j,i}` through `x_{j+1..j+2l}`:
///
/// `y_j x_{j+1} ⋯ x_{j+2l-1} y_{j+2l} · x_{j+2l}⁻¹ y_{j+2l-1}⁻¹ ⋯ x_{j+2}⁻¹ y_{j+1}⁻¹`
pub fn backward_terms(j: i64, l: i64) -> Vec<Term> {
    let mut t = Vec::with_capacity(4 * l as usize + 1);
    for s in 0..l {
        t.push(Term::Y(j + 2 * s, 1));
        t.push(Term::X(j + 2 * s + 1, 1));
    }
    t.push(Term::Y(j + 2 * l, 1));
    t.push(Term::X(j + 2 * l, -1));
    for s in (1..l).rev() {
        t.push(Term::Y(j + 2 * s + 1, -1));
        t.push(Term::X(j + 2 * s, -1));
    }
    t.push(Term::Y(j + 1, -1));
    t
}

/// Inclusive index window `jmin..=jmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub jmin: i64,
    pub jmax: i64,
}

impl Window {
    /// `-(2l+2) ..= 6l+4`, one full θ-period beyond the base range on each side.
    pub fn default_for(l: i64) -> Self {
        Window {
            jmin: -(2 * l + 2),
            jmax: 6 * l + 4,
        }
    }

    pub fn contains(&self, j: i64) -> bool {
        (self.jmin..=self.jmax).contains(&j)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.jmin..=self.jmax
    }
}

/// Memo of `x_{j,i}` for one spoke `i`.
#[derive(Debug, Clone)]
pub struct XCache {
    sig: Signature,
    spoke: usize,
    l: i64,
    memo: BTreeMap<i64, Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `x̃_{j,i} ∈ K_i`.
    pub xtilde: Word,
    /// `v_{j,i} ∈ M_i`, in the kernel of the retraction onto `K_i`.
    pub v: Word,
}

impl XCache {
    pub fn new(sig: &Signature, spoke: usize) -> Result<Self> {
        let f = *sig.spoke(spoke)?;
        let amb = Ambient::Mi(spoke);
        let memo = (0..f.width)
            .map(|j| Ok((j, sig.x(amb, spoke, j, 1)?)))
            .collect::<Result<_>>()?;
        Ok(XCache {
            sig: sig.clone(),
            spoke,
            l: f.width / 2,
            memo,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn spoke(&self) -> usize {
        self.spoke
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn base_range(&self) -> std::ops::Range<i64> {
        0..2 * self.l
    }

    pub fn default_window(&self) -> Window {
        Window::default_for(self.l)
    }

    fn ambient(&self) -> Ambient {
        Ambient::Mi(self.spoke)
    }

    /// Evaluates a term list with `X` terms drawn from `lookup`.
    pub fn eval_terms(&self, terms: &[Term], lookup: impl Fn(i64) -> Word) -> Word {
        let amb = self.ambient();
        let mut acc = Word::identity(amb);
        for &t in terms {
            let w = match t {
                Term::Y(k, e) => self.sig.y(amb, k, e).unwrap(),
                Term::X(k, e) => self.sig.power(&lookup(k), e),
            };
            acc = self.sig.multiply(&acc, &w).unwrap();
        }
        acc
    }

    /// Same evaluation with `x̃` values in `K_i`; `Y` terms are dropped.
    pub fn eval_xtilde_terms(&self, terms: &[Term], lookup: impl Fn(i64) -> Word) -> Word {
        let mut acc = Word::identity(Ambient::Ki(self.spoke));
        for &t in terms {
            if let Term::X(k, e) = t {
                acc = self.sig.multiply(&acc, &self.sig.power(&lookup(k), e)).unwrap();
            }
        }
        acc
    }

    fn compute(&self, j: i64) -> Word {
        let terms = if j >= 2 * self.l {
            forward_terms(j, self.l)
        } else {
            backward_terms(j, self.l)
        };
        self.eval_terms(&terms, |k| self.memo[&k].clone())
    }

    /// `x_{j,i}` as a normal-form word in `M_i`.
    pub fn x_element(&mut self, j: i64) -> &Word {
        self.ensure(j);
        &self.memo[&j]
    }

    /// Already-computed `x_{j,i}`.
    pub fn get(&self, j: i64) -> Option<&Word> {
        self.memo.get(&j)
    }

    pub fn ensure(&mut self, j: i64) {
        if self.memo.contains_key(&j) {
            return;
        }
        if j >= 2 * self.l {
            let top = *self.memo.keys().next_back().unwrap();
            for t in top + 1..=j {
                let w = self.compute(t);
                self.memo.insert(t, w);
            }
        } else {
            let bottom = *self.memo.keys().next().unwrap();
            for t in (j..bottom).rev() {
                let w = self.compute(t);
                self.memo.insert(t, w);
            }
        }
    }

    pub fn fill(&mut self, w: Window) {
        self.ensure(w.jmin);
        self.ensure(w.jmax);
    }

    /// Splits `x_{j,i} = x̃_{j,i} v_{j,i}`.
    pub fn decompose(&mut self, j: i64) -> Decomposition {
        self.ensure(j);
        self.decompose_cached(j).unwrap()
    }

    /// Read-only variant of [`XCache::decompose`].
    pub fn decompose_cached(&self, j: i64) -> Option<Decomposition> {
        let x = self.memo.get(&j)?;
        let xtilde = self.sig.project_to_factor(x, self.spoke).unwrap();
        let lifted = self.sig.embed(&xtilde, self.ambient()).unwrap();
        let v = self.sig.multiply(&self.sig.invert(&lifted), x).unwrap();
        Some(Decomposition { xtilde, v })
    }

    pub fn xtilde(&mut self, j: i64) -> Word {
        self.decompose(j).xtilde
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub j: i64,
    pub i: usize,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(j: i64, i: usize, check: &str, pass: bool, detail: impl Into<String>) -> Self {
        CheckRecord {
            j,
            i,
            check: check.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// `x = x̃ v` with `x̃ ∈ K_i` and `v` killed by the retraction.
pub fn decomposition_check(cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    cache.fill(w);
    let sig = cache.sig.clone();
    let amb = cache.ambient();
    w.iter()
        .map(|j| {
            let d = cache.decompose(j);
            let lifted = sig.embed(&d.xtilde, amb).unwrap();
            let rebuilt = sig.multiply(&lifted, &d.v).unwrap();
            let in_kernel = sig.project_to_factor(&d.v, cache.spoke).unwrap().is_identity();
            let base_ok = !cache.base_range().contains(&j) || d.v.is_identity();
            let pass = rebuilt == *cache.get(j).unwrap() && in_kernel && base_ok;
            CheckRecord::new(
                j,
                cache.spoke,
                "decomposition",
                pass,
                if pass {
                    String::new()
                } else {
                    format!("x̃ = {}, v = {}", d.xtilde, d.v)
                },
            )
        })
        .collect()
}

/// Both `x̃` recurrences over the window: forward where `j-2l..j-1` are
/// available, backward where `j+1..j+2l` are.
pub fn xtilde_recurrence_check(cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    cache.fill(w);
    let l = cache.l;
    let xt: BTreeMap<i64, Word> = w.iter().map(|j| (j, cache.xtilde(j))).collect();
    let mut out = Vec::new();
    for j in w.iter() {
        if w.contains(j - 2 * l) {
            let rhs = cache.eval_xtilde_terms(&forward_terms(j, l), |k| xt[&k].clone());
            let pass = rhs == xt[&j];
            out.push(CheckRecord::new(
                j,
                cache.spoke,
                "xtilde forward recurrence",
                pass,
                if pass { String::new() } else { format!("expected {}, recurrence gives {rhs}", xt[&j]) },
            ));
        }
        if w.contains(j + 2 * l) {
            let rhs = cache.eval_xtilde_terms(&backward_terms(j, l), |k| xt[&k].clone());
            let pass = rhs == xt[&j];
            out.push(CheckRecord::new(
                j,
                cache.spoke,
                "xtilde backward recurrence",
                pass,
                if pass { String::new() } else { format!("expected {}, recurrence gives {rhs}", xt[&j]) },
            ));
        }
    }
    out
}

/// Re-derives `x_{j,i}` from the recurrence of the opposite direction, for
/// every `j` whose inputs lie in the window.
pub fn consistency_check(cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    cache.fill(w);
    let l = cache.l;
    let mut out = Vec::new();
    for j in w.iter() {
        let x = cache.get(j).unwrap().clone();
        let (terms, name) = if j >= 0 && w.contains(j + 2 * l) {
            (backward_terms(j, l), "backward recurrence at j >= 0")
        } else if j < 2 * l && w.contains(j - 2 * l) {
            (forward_terms(j, l), "forward recurrence at j < 2l")
        } else {
            continue;
        };
        let rhs = cache.eval_terms(&terms, |k| cache.get(k).unwrap().clone());
        out.push(CheckRecord::new(j, cache.spoke, name, rhs == x, ""));
    }
    out
}

fn letter_summary(sig: &Signature, l: &KuroshLetter) -> String {
    format!("y[{}]^{} conjugated by {}", l.index, l.exponent, l.conjugator(sig))
}

/// Membership of `v_{j,i}` in the subgroup generated by conjugates of the
/// `y_k` with `k` in the expected index range: `0 <= k < j` after removing
/// `y_j` when `j >= 2l`, and `j < k < 2l` after removing `y_j^{x̃_j}` when `j < 0`.
pub fn membership_check(cache: &mut XCache, j: i64) -> Result<CheckRecord> {
    if cache.base_range().contains(&j) {
        return Err(Error::BaseRange(j));
    }
    let sig = cache.sig.clone();
    let amb = cache.ambient();
    let d = cache.decompose(j);
    let l2 = 2 * cache.l;
    let (residue, range, name) = if j >= l2 {
        let yinv = sig.y(amb, j, -1).unwrap();
        (sig.multiply(&d.v, &yinv).unwrap(), 0..j, "membership j >= 2l")
    } else {
        let y = sig.y(amb, j, 1).unwrap();
        let xt = sig.embed(&d.xtilde, amb).unwrap();
        let conj = sig.conjugate(&y, &xt).unwrap();
        (
            sig.multiply(&sig.invert(&d.v), &conj).unwrap(),
            j + 1..l2,
            "membership j < 0",
        )
    };
    let letters = sig.kurosh_letters(&residue)?;
    let bad = letters.iter().find(|l| !range.contains(&l.index));
    Ok(CheckRecord::new(
        j,
        cache.spoke,
        name,
        bad.is_none(),
        match bad {
            None => format!("{} letters, indices in {range:?}", letters.len()),
            Some(l) => format!("offending letter {}", letter_summary(&sig, l)),
        },
    ))
}

/// Decomposition, recurrence, consistency and membership checks over a window.
pub fn kernel_suite(cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    let mut out = decomposition_check(cache, w);
    out.extend(xtilde_recurrence_check(cache, w));
    out.extend(consistency_check(cache, w));
    let base = cache.base_range();
    for j in w.iter().filter(|j| !base.contains(j)) {
        out.push(membership_check(cache, j).expect("j outside base range"));
    }
    out
}
