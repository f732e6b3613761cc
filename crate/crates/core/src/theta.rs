//! The epimorphism `θ: M -> A = K ∗ D`.
//!
//! `θ` is the identity on `K` and sends `K_i` onto the `Z_{k_i}` factor of `D`:
//! `x_{j,i} ↦ 1` for `0 <= j <= 2l_i - 2` and `x_{2l_i-1,i} ↦ 2`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::free_product::{Ambient, DElement, Generator, Signature, Syllable, Word};
use crate::kernel::{CheckRecord, Window, XCache};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaAssignment {
    sig: Signature,
    base: BTreeMap<usize, Vec<i64>>,
}

impl ThetaAssignment {
    /// Requires every order in `sig` to be prime.
    pub fn new(sig: &Signature) -> Result<Self> {
        let mut orders = vec![sig.k1()];
        orders.extend(sig.spokes().iter().map(|s| s.order));
        if let Some(bad) = orders.iter().find(|&&k| !is_prime(k as u64)) {
            return Err(Error::NotReduced(format!("order {bad} is not prime")));
        }
        let base = sig
            .spokes()
            .iter()
            .map(|s| {
                let mut vals = vec![1; s.width as usize];
                *vals.last_mut().unwrap() = 2;
                (s.spoke, vals)
            })
            .collect();
        Ok(ThetaAssignment {
            sig: sig.clone(),
            base,
        })
    }

    /// Replaces one base value. Only meant for negative controls.
    pub fn with_base_override(mut self, spoke: usize, j: usize, value: i64) -> Self {
        self.base.get_mut(&spoke).expect("known spoke")[j] = value;
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn base_value(&self, spoke: usize, j: i64) -> i64 {
        self.base[&spoke][j as usize]
    }

    fn order(&self, spoke: usize) -> i64 {
        self.sig.spoke(spoke).unwrap().order
    }

    /// Homomorphic extension to words of `K`, `K_i`, `M_i` or `M`.
    pub fn theta_of_word(&self, w: &Word) -> Result<Word> {
        if w.ambient() == Ambient::A {
            return Err(Error::AmbientMismatch("A".into(), "M".into()));
        }
        let syllables = w
            .syllables()
            .iter()
            .map(|s| match s {
                Syllable::Gen(Generator::X { spoke, index }, e) => Syllable::D(DElement::single(
                    *spoke,
                    e * self.base_value(*spoke, *index),
                )),
                other => other.clone(),
            })
            .collect();
        self.sig.word(Ambient::A, syllables)
    }

    /// `θ` of a `K_i` word as an element of `Z_{k_i}`.
    pub fn theta_scalar(&self, spoke: usize, w: &Word) -> i64 {
        let mut acc = 0;
        for s in w.syllables() {
            if let Syllable::Gen(Generator::X { spoke: sp, index }, e) = s {
                if *sp == spoke {
                    acc += e * self.base_value(spoke, *index);
                }
            }
        }
        acc.rem_euclid(self.order(spoke))
    }

    /// `θ(x̃_{j,i})` for `j` in the window from the linear recurrence
    /// `θ(x̃_{j+2l}) = -θ(x̃_j) + θ(x̃_{j+1}) - ⋯ + θ(x̃_{j+2l-1})`,
    /// run forward and backward from the base values.
    pub fn scalar_sequence(&self, spoke: usize, w: Window) -> BTreeMap<i64, i64> {
        let k = self.order(spoke);
        let width = self.base[&spoke].len() as i64;
        let mut seq: BTreeMap<i64, i64> = (0..width)
            .map(|j| (j, self.base_value(spoke, j).rem_euclid(k)))
            .collect();
        let sign = |t: i64| if t % 2 == 0 { -1 } else { 1 };
        for j in width..=w.jmax {
            let v: i64 = (0..width).map(|t| sign(t) * seq[&(j - width + t)]).sum();
            seq.insert(j, v.rem_euclid(k));
        }
        for j in (w.jmin..0).rev() {
            // solve the same identity at index j + 2l for θ(x̃_j)
            let rest: i64 = (1..width).map(|t| sign(t) * seq[&(j + t)]).sum();
            seq.insert(j, (rest - seq[&(j + width)]).rem_euclid(k));
        }
        seq.retain(|j, _| w.contains(*j));
        seq
    }

    /// `θ(x̃_{j,i})` computed from the word and from the scalar recurrence;
    /// a disagreement is an error.
    pub fn theta_xtilde(&self, cache: &mut XCache, j: i64) -> Result<i64> {
        let spoke = cache.spoke();
        let word_value = self.theta_scalar(spoke, &cache.xtilde(j));
        let w = Window {
            jmin: j.min(0),
            jmax: j.max(0),
        };
        let rec_value = self.scalar_sequence(spoke, w)[&j];
        if word_value != rec_value {
            return Err(Error::CheckFailed(format!(
                "θ(x̃[{j},{spoke}]): word gives {word_value}, recurrence gives {rec_value}"
            )));
        }
        Ok(word_value)
    }
}

/// Closed-form `θ(x̃_{j,i})` as an integer, before reduction mod `k_i`.
/// Period `4l+2`: `1` on `0..=2l-2`, `2` at `2l-1`, `1` at `2l`,
/// `-1` on `2l+1..=4l-1`, `-2` at `4l`, `-1` at `4l+1`.
pub fn closed_form_value(l: i64, j: i64) -> i64 {
    let r = j.rem_euclid(4 * l + 2);
    match r {
        r if r <= 2 * l - 2 => 1,
        r if r == 2 * l - 1 => 2,
        r if r == 2 * l => 1,
        r if r < 4 * l => -1,
        r if r == 4 * l => -2,
        _ => -1,
    }
}

/// For `k_i = 2`, `θ(x̃_{j,i})` is trivial exactly when `j ≡ -2 (mod 2l+1)`.
pub fn predicted_trivial(order: i64, l: i64, j: i64) -> bool {
    order == 2 && (j + 2).rem_euclid(2 * l + 1) == 0
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Values over one full period against the closed form, plus the `k = 2`
/// trivial-value characterization over the whole window.
pub fn value_check(t: &ThetaAssignment, cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    let spoke = cache.spoke();
    let l = cache.l();
    let k = t.order(spoke);
    let mut out = Vec::new();
    let period = 0..(4 * l + 2).min(w.jmax + 1);
    for j in period {
        let expected = closed_form_value(l, j).rem_euclid(k);
        let got = t.theta_xtilde(cache, j);
        let pass = got.as_ref() == Ok(&expected);
        out.push(CheckRecord::new(
            j,
            spoke,
            "theta value",
            pass,
            format!("expected {expected}, got {}", show(&got)),
        ));
    }
    for j in w.iter() {
        let got = t.theta_xtilde(cache, j);
        let pass = match got {
            Ok(0) => predicted_trivial(k, l, j),
            Ok(v) => !predicted_trivial(k, l, j) && gcd(v, k) == 1,
            Err(_) => false,
        };
        out.push(CheckRecord::new(
            j,
            spoke,
            "theta trivial-value pattern",
            pass,
            show(&got),
        ));
    }
    out
}

/// `θ(x̃_{j+4l+2,i}) = θ(x̃_{j,i})` wherever both indices lie in the window.
pub fn periodicity_check(t: &ThetaAssignment, cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    let spoke = cache.spoke();
    let p = 4 * cache.l() + 2;
    let mut out = Vec::new();
    for j in w.jmin..=w.jmax - p {
        let a = t.theta_scalar(spoke, &cache.xtilde(j));
        let b = t.theta_scalar(spoke, &cache.xtilde(j + p));
        out.push(CheckRecord::new(
            j,
            spoke,
            "theta periodicity",
            a == b,
            format!("{a} vs {b}"),
        ));
    }
    out
}

/// `θ(x_{j,i})^{k_i}` computed directly and as the product of the conjugates
/// of `θ(v_{j,i})` by the powers of `θ(x̃_{j,i})`.
pub fn relation_image(t: &ThetaAssignment, cache: &mut XCache, j: i64) -> CheckRecord {
    let sig = t.signature();
    let spoke = cache.spoke();
    let l = cache.l();
    let k = t.order(spoke);
    let x = cache.x_element(j).clone();
    let dec = cache.decompose(j);
    let lhs = sig.power(&t.theta_of_word(&x).unwrap(), k);
    let v = t.theta_of_word(&dec.v).unwrap();
    let a = t.theta_scalar(spoke, &dec.xtilde);
    let d = sig.d(spoke, a).unwrap();

    let mut rhs = Word::identity(Ambient::A);
    let mut exponents = Vec::with_capacity(k as usize);
    for s in (0..k).rev() {
        let conj = sig.conjugate(&v, &sig.power(&d, s)).unwrap();
        rhs = sig.multiply(&rhs, &conj).unwrap();
        exponents.push((a * s).rem_euclid(k));
    }
    let identity_equal = lhs == rhs;
    let (shape_ok, shape) = if a == 0 {
        let degenerate = sig.power(&v, k);
        (
            predicted_trivial(k, l, j) && lhs == degenerate,
            "θ(x̃) trivial: θ(x)^k = θ(v)^k",
        )
    } else {
        exponents.sort_unstable();
        let full = exponents == (0..k).collect::<Vec<_>>();
        (
            full && !predicted_trivial(k, l, j),
            "conjugating exponents form all of Z_k",
        )
    };
    let pass = identity_equal && shape_ok;
    CheckRecord::new(
        j,
        spoke,
        "relation image",
        pass,
        if pass {
            shape.to_string()
        } else {
            format!("identity {identity_equal}, {shape}: {shape_ok} (θ(x̃) = {a})")
        },
    )
}

fn show(v: &Result<i64>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Every θ check for one spoke over a window.
pub fn theta_suite(t: &ThetaAssignment, cache: &mut XCache, w: Window) -> Vec<CheckRecord> {
    cache.fill(w);
    let mut out = value_check(t, cache, w);
    out.extend(periodicity_check(t, cache, w));
    out.extend(w.iter().map(|j| relation_image(t, cache, j)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_product::SpokeFactor;

    fn setup(k1: i64, ki: i64, l: i64) -> (ThetaAssignment, XCache) {
        let sig = Signature::new(
            k1,
            vec![SpokeFactor {
                spoke: 2,
                order: ki,
                width: 2 * l,
            }],
        )
        .unwrap();
        (ThetaAssignment::new(&sig).unwrap(), XCache::new(&sig, 2).unwrap())
    }

    #[test]
    fn refuses_unreduced() {
        let sig = Signature::new(4, vec![SpokeFactor { spoke: 2, order: 3, width: 2 }]).unwrap();
        assert!(matches!(ThetaAssignment::new(&sig), Err(Error::NotReduced(_))));
    }

    #[test]
    fn word_images() {
        let (t, _) = setup(3, 2, 1);
        let sig = t.signature().clone();
        let y = sig.y(Ambient::K, 4, 1).unwrap();
        let img = t.theta_of_word(&y).unwrap();
        assert_eq!(img.syllables(), y.syllables());
        let x0 = sig.x(Ambient::Ki(2), 2, 0, 1).unwrap();
        assert_eq!(t.theta_of_word(&x0).unwrap(), sig.d(2, 1).unwrap());
        let x1 = sig.x(Ambient::Ki(2), 2, 1, 1).unwrap();
        assert!(t.theta_of_word(&x1).unwrap().is_identity());
    }

    #[test]
    fn closed_form_period() {
        // l = 1: 1, 2, 1, -1, -2, -1
        let vals: Vec<i64> = (0..6).map(|j| closed_form_value(1, j)).collect();
        assert_eq!(vals, [1, 2, 1, -1, -2, -1]);
        let vals: Vec<i64> = (0..10).map(|j| closed_form_value(2, j)).collect();
        assert_eq!(vals, [1, 1, 1, 2, 1, -1, -1, -1, -2, -1]);
    }

    #[test]
    fn dual_routes_agree() {
        let (t, mut c) = setup(2, 3, 1);
        assert_eq!(t.theta_xtilde(&mut c, 2).unwrap(), 1);
        assert_eq!(t.theta_xtilde(&mut c, 4).unwrap(), 1); // -2 mod 3
        let (t, mut c) = setup(2, 2, 1);
        assert_eq!(t.theta_xtilde(&mut c, 4).unwrap(), 0);
        assert_eq!(t.theta_xtilde(&mut c, -3).unwrap(), 1);
    }

    #[test]
    fn relation_images() {
        let (t, mut c) = setup(2, 2, 1);
        for j in [0, 1, 4, -2] {
            assert!(relation_image(&t, &mut c, j).pass, "j = {j}");
        }
        let (t, mut c) = setup(2, 3, 1);
        assert!(relation_image(&t, &mut c, 2).pass);
    }

    #[test]
    fn corrupted_base_is_caught() {
        let (t, mut c) = setup(2, 3, 1);
        let bad = t.with_base_override(2, 1, 0);
        assert!(!relation_image(&bad, &mut c, 1).pass);
    }
}
