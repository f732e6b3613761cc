//! Finite-dimensional quotients certifying that `ker χ` is not finitely
//! generated for the spoke family.
//!
//! After reducing every `k_i` to a prime, the abelianized images `v̂_{j,i}` of
//! the kernel elements `v_{j,i}` are vectors in `⊕_j ê_j R`. For the window
//! `Λ_s = {0, .., sl-1}` the quotient
//!
//! `E_s = (⊕_{j∈Λ_s} ê_j R) / ⟨ v̂_{j,i} R : j ∈ Λ_s, j ≡ -2 mod 2l_i+1, k_i = 2 ⟩`
//!
//! has dimension at least `dim R · s · l · (1 - Σ 1/(2l_i+1))`, which grows
//! without bound in `s`.

pub mod linalg;
pub mod ring;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_product::{DElement, Signature};
use crate::graph::SpokeParams;
use crate::kernel::XCache;
use crate::theta::ThetaAssignment;

use linalg::{rank_mod_p, Matrix};
use ring::{RElem, RingR};

pub const VERDICT_CERTIFIED: &str =
    "ker(chi) not finitely generated: certified by unbounded quotient dimension";
pub const DEGENERATE_NOTE: &str = "degenerate branch: no dead-relation generators";

/// Columns up to which the rank is recomputed on the transpose.
pub const CROSS_CHECK_COLUMNS: usize = 200;

pub fn is_power_of_two(k: u64) -> bool {
    k.is_power_of_two()
}

fn smallest_odd_prime_factor(mut k: u64) -> u64 {
    while k % 2 == 0 {
        k /= 2;
    }
    (2..)
        .take_while(|d| d * d <= k)
        .find(|d| k % d == 0)
        .unwrap_or(k)
}

/// Prime replacing a label: `2` for powers of two, otherwise the smallest
/// odd prime factor.
pub fn reduce_label(k: u64) -> u64 {
    if is_power_of_two(k) {
        2
    } else {
        smallest_odd_prime_factor(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelReduction {
    pub i: usize,
    pub from: u64,
    pub to: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub original: SpokeParams,
    /// Prime labels with the power-of-two spokes moved to `2..=m+1`.
    pub params: SpokeParams,
    pub m: usize,
    /// `spoke_origin[t]` is the original index of reduced spoke `t + 2`.
    pub spoke_origin: Vec<usize>,
    pub reductions: Vec<LabelReduction>,
}

pub fn reduce_labels(p: &SpokeParams) -> ReducedParams {
    let n = p.n();
    let mut reductions = Vec::new();
    let mut reduce = |i: usize, k: u64, to: u64| {
        if to != k {
            reductions.push(LabelReduction { i, from: k, to });
        }
        to
    };
    let k1 = reduce(1, p.k(1), reduce_label(p.k(1)));
    let mut spokes: Vec<(usize, u64, u64)> = (2..=n)
        .map(|i| (i, reduce(i, p.k(i), reduce_label(p.k(i))), p.l(i)))
        .collect();
    spokes.sort_by_key(|&(_, k, _)| k != 2);
    let m = spokes.iter().filter(|s| s.1 == 2).count();
    let params = SpokeParams::new(
        std::iter::once(k1).chain(spokes.iter().map(|s| s.1)).collect(),
        spokes.iter().map(|s| s.2).collect(),
    )
    .expect("reduced labels stay valid");
    ReducedParams {
        original: p.clone(),
        params,
        m,
        spoke_origin: spokes.iter().map(|s| s.0).collect(),
        reductions,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub sum: BigRational,
    pub holds: bool,
}

/// `Σ 1/(2l_i+1)` over spokes `i >= 2` whose `k_i` is a power of two, and
/// whether it is `< 1`.
pub fn hypothesis_check(p: &SpokeParams) -> Hypothesis {
    let sum = (2..=p.n())
        .filter(|&i| is_power_of_two(p.k(i)))
        .map(|i| BigRational::new(BigInt::one(), BigInt::from(2 * p.l(i) + 1)))
        .fold(BigRational::zero(), |a, b| a + b);
    let holds = sum < BigRational::one();
    Hypothesis { sum, holds }
}

/// Rows contributed by generator `(i, j)`.
type Block = ((usize, i64), Vec<Vec<u64>>);

/// Finitely supported map `(j, basis index of R) -> Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleVector {
    p: u64,
    coeffs: BTreeMap<(i64, usize), u64>,
}

impl ModuleVector {
    pub fn zero(p: u64) -> Self {
        ModuleVector {
            p,
            coeffs: BTreeMap::new(),
        }
    }

    /// Adds `c · ê_j · r`.
    pub fn add_term(&mut self, j: i64, r: &RElem, c: u64) {
        for (b, &x) in r.iter().enumerate() {
            let add = x * (c % self.p) % self.p;
            if add == 0 {
                continue;
            }
            let e = self.coeffs.entry((j, b)).or_insert(0);
            *e = (*e + add) % self.p;
            if *e == 0 {
                self.coeffs.remove(&(j, b));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<(i64, usize), u64> {
        &self.coeffs
    }

    /// Component along `ê_j`, as an element of `R`.
    pub fn component(&self, ring: &RingR, j: i64) -> RElem {
        let mut r = ring.zero();
        for (&(k, b), &c) in self.coeffs.range((j, 0)..=(j, usize::MAX)) {
            debug_assert_eq!(k, j);
            r[b] = c;
        }
        r
    }

    /// Sorted distinct indices `j` with a non-zero component.
    pub fn indices(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.coeffs.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (&(j, b), &c) in &other.coeffs {
            let mut r = vec![0; b + 1];
            r[b] = 1;
            out.add_term(j, &r, self.p - c);
        }
        out
    }

    /// Right action of `r ∈ R`.
    pub fn mul_ring(&self, ring: &RingR, r: &RElem) -> ModuleVector {
        let mut out = ModuleVector::zero(self.p);
        for j in self.indices() {
            let prod = ring.mul(&self.component(ring, j), r);
            out.add_term(j, &prod, 1);
        }
        out
    }
}

/// Everything needed to evaluate `v̂_{j,i}` and `dim E_s` for one parameter set.
#[derive(Debug, Clone)]
pub struct Witness {
    rp: ReducedParams,
    sig: Signature,
    theta: ThetaAssignment,
    ring: RingR,
    caches: BTreeMap<usize, XCache>,
    vhat_memo: HashMap<(usize, i64), ModuleVector>,
    hypothesis: Hypothesis,
    l: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EsDimension {
    pub s: u64,
    pub dim: usize,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub lower_bound: String,
    pub bound_holds: bool,
    pub support_confined: bool,
    /// Rank recomputed on the transpose; `None` above [`CROSS_CHECK_COLUMNS`].
    pub rank_cross_check: Option<bool>,
    /// Generators `(j, i, d)` whose span `v̂_{j,i} R` has dimension `d < dim R`.
    pub span_deficits: Vec<(i64, usize, usize)>,
}

impl Witness {
    /// Refuses parameters failing the power-of-two inequality.
    pub fn new(p: &SpokeParams) -> Result<Self> {
        let hypothesis = hypothesis_check(p);
        if !hypothesis.holds {
            return Err(Error::HypothesisFails(hypothesis.sum.to_string()));
        }
        let rp = reduce_labels(p);
        let sig = Signature::from_params(&rp.params);
        let theta = ThetaAssignment::new(&sig)?;
        let q = &rp.params;
        let minus_one: Vec<usize> = (2..=rp.m + 1).collect();
        let vars: Vec<(usize, u64)> = (rp.m + 2..=q.n()).map(|i| (i, q.k(i))).collect();
        let ring = RingR::new(q.k(1), minus_one.clone(), vars.clone());
        for &(i, k) in &vars {
            if ring.p_value(i, k).iter().any(|&c| c != 0) {
                return Err(Error::CheckFailed(format!("p_{k}(x_{i}) does not vanish in R")));
            }
        }
        for &i in &minus_one {
            if ring.p_value(i, 2).iter().any(|&c| c != 0) {
                return Err(Error::CheckFailed(format!("1 + x_{i} does not vanish in R")));
            }
        }
        let l = (2..=rp.m + 1)
            .map(|i| 2 * q.l(i) + 1)
            .fold(1u64, |a, b| a.lcm(&b));
        let caches = (2..=rp.m + 1)
            .map(|i| Ok((i, XCache::new(&sig, i)?)))
            .collect::<Result<_>>()?;
        Ok(Witness {
            rp,
            sig,
            theta,
            ring,
            caches,
            vhat_memo: HashMap::new(),
            hypothesis,
            l,
        })
    }

    pub fn reduced(&self) -> &ReducedParams {
        &self.rp
    }

    pub fn ring(&self) -> &RingR {
        &self.ring
    }

    pub fn hypothesis(&self) -> &Hypothesis {
        &self.hypothesis
    }

    /// `lcm(2l_i + 1)` over the power-of-two spokes; `1` when there are none.
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn delta_r(&self) -> usize {
        self.ring.dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.rp.m == 0
    }

    /// Sum in the lower bound, restricted to the reduced power-of-two spokes.
    pub fn dead_sum(&self) -> BigRational {
        (2..=self.rp.m + 1)
            .map(|i| BigRational::new(BigInt::one(), BigInt::from(2 * self.rp.params.l(i) + 1)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn lower_bound(&self, s: u64) -> BigRational {
        let full = BigInt::from(self.delta_r() as u64 * s * self.l);
        BigRational::from_integer(full) * (BigRational::one() - self.dead_sum())
    }

    /// Cache for a power-of-two spoke `i ∈ 2..=m+1` (reduced numbering).
    pub fn cache(&mut self, i: usize) -> Result<&mut XCache> {
        if !self.caches.contains_key(&i) {
            let c = XCache::new(&self.sig, i)?;
            self.caches.insert(i, c);
        }
        Ok(self.caches.get_mut(&i).unwrap())
    }

    pub fn vhat(&mut self, i: usize, j: i64) -> Result<ModuleVector> {
        if let Some(v) = self.vhat_memo.get(&(i, j)) {
            return Ok(v.clone());
        }
        let theta = self.theta.clone();
        let ring = self.ring.clone();
        let cache = self.cache(i)?;
        let v = vhat_image(&ring, &theta, cache, j)?;
        self.vhat_memo.insert((i, j), v.clone());
        Ok(v)
    }

    /// `θ(x̃_{j,i})` mapped into `R`.
    pub fn xhat(&mut self, i: usize, j: i64) -> Result<RElem> {
        let theta = self.theta.clone();
        let a = {
            let cache = self.cache(i)?;
            let xt = cache.xtilde(j);
            theta.theta_scalar(i, &xt)
        };
        Ok(self.ring.monomial(&DElement::single(i, a)))
    }

    /// Generator indices `(i, j)` for `Λ_s`.
    pub fn generators(&self, s: u64) -> Vec<(usize, i64)> {
        let top = (s * self.l) as i64;
        let mut g = Vec::new();
        for i in 2..=self.rp.m + 1 {
            let period = 2 * self.rp.params.l(i) as i64 + 1;
            for j in 0..top {
                if (j + 2).rem_euclid(period) == 0 {
                    g.push((i, j));
                }
            }
        }
        g
    }

    /// Rows `v̂_{j,i} · b` over the basis `b` of `R`, one block per generator
    /// whose support lies in `Λ_s`. The flag is false if some support does not.
    fn blocks(&mut self, s: u64) -> Result<(Vec<Block>, bool)> {
        let delta = self.delta_r();
        let top = (s * self.l) as i64;
        let cols = top as usize * delta;
        let mut out = Vec::new();
        let mut confined = true;
        for (i, j) in self.generators(s) {
            let v = self.vhat(i, j)?;
            if v.indices().iter().any(|&k| !(0..top).contains(&k)) {
                confined = false;
                continue;
            }
            let block = (0..delta)
                .map(|b| {
                    let vb = v.mul_ring(&self.ring, &self.ring.basis_elem(b));
                    let mut row = vec![0u64; cols];
                    for (&(k, c), &x) in vb.coeffs() {
                        row[k as usize * delta + c] = x;
                    }
                    row
                })
                .collect();
            out.push(((i, j), block));
        }
        Ok((out, confined))
    }

    pub fn dimension(&mut self, s: u64) -> Result<EsDimension> {
        if s == 0 {
            return Err(Error::Precondition("s must be at least 1".into()));
        }
        let delta = self.delta_r();
        let cols = (s * self.l) as usize * delta;
        let p = self.ring.characteristic();
        let (blocks, support_confined) = self.blocks(s)?;
        let mut rows = Vec::new();
        let mut span_deficits = Vec::new();
        for ((i, j), block) in blocks {
            let span = rank_mod_p(&Matrix::from_rows(cols, block.clone()), p);
            if span < delta {
                span_deficits.push((j, i, span));
            }
            rows.extend(block);
        }
        let m = Matrix::from_rows(cols, rows);
        let rank = rank_mod_p(&m, p);
        let rank_cross_check = (cols <= CROSS_CHECK_COLUMNS).then(|| rank_mod_p(&m.transpose(), p) == rank);
        let dim = cols - rank;
        let bound = self.lower_bound(s);
        Ok(EsDimension {
            s,
            dim,
            rank,
            rows: m.rows(),
            cols,
            bound_holds: BigRational::from_integer(BigInt::from(dim)) >= bound,
            lower_bound: bound.to_string(),
            support_confined,
            rank_cross_check,
            span_deficits,
        })
    }

    /// The generator matrix of `Λ_s`.
    pub fn matrix(&mut self, s: u64) -> Result<Matrix> {
        let cols = (s * self.l) as usize * self.delta_r();
        let (blocks, _) = self.blocks(s)?;
        Ok(Matrix::from_rows(cols, blocks.into_iter().flat_map(|(_, b)| b).collect()))
    }
}

/// `v̂_{j,i}`: each Kurosh letter `c⁻¹ y_k^e c` of `v_{j,i}` contributes
/// `e · ê_k ∘ θ(c)`, with `θ(c) ∈ D` read in `R`.
pub fn vhat_image(
    ring: &RingR,
    theta: &ThetaAssignment,
    cache: &mut XCache,
    j: i64,
) -> Result<ModuleVector> {
    let sig = cache.signature().clone();
    let spoke = cache.spoke();
    let d = cache.decompose(j);
    let letters = sig.kurosh_letters(&d.v)?;
    let mut out = ModuleVector::zero(ring.characteristic());
    for l in &letters {
        let a = theta.theta_scalar(spoke, &l.conjugator(&sig));
        let mono = ring.monomial(&DElement::single(spoke, a));
        out.add_term(l.index, &mono, l.exponent as u64);
    }
    Ok(out)
}

/// `dim E_s` for one `s`.
pub fn e_s_dimension(p: &SpokeParams, s: u64) -> Result<EsDimension> {
    Witness::new(p)?.dimension(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub s: u64,
    pub dim: usize,
    pub lower_bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub params: SpokeParams,
    pub reduced_params: ReducedParams,
    pub hypothesis_sum: String,
    pub l: u64,
    #[serde(rename = "deltaR")]
    pub delta_r: usize,
    pub degenerate: bool,
    pub table: Vec<TableRow>,
    pub details: Vec<EsDimension>,
    pub bounds_hold: bool,
    pub strictly_increasing: bool,
    pub verdict: String,
}

pub fn witness_report(p: &SpokeParams, s_max: u64) -> Result<WitnessReport> {
    if s_max == 0 {
        return Err(Error::Precondition("s_max must be at least 1".into()));
    }
    let mut w = Witness::new(p)?;
    let details = (1..=s_max)
        .map(|s| w.dimension(s))
        .collect::<Result<Vec<_>>>()?;
    let bounds_hold = details
        .iter()
        .all(|d| d.bound_holds && d.support_confined && d.rank_cross_check != Some(false));
    let strictly_increasing = details.windows(2).all(|p| p[0].dim < p[1].dim);
    let verdict = if bounds_hold && strictly_increasing {
        if w.is_degenerate() {
            format!("{VERDICT_CERTIFIED} ({DEGENERATE_NOTE})")
        } else {
            VERDICT_CERTIFIED.to_string()
        }
    } else {
        "not certified: a sampled dimension violates the growth bound".to_string()
    };
    Ok(WitnessReport {
        params: p.clone(),
        reduced_params: w.reduced().clone(),
        hypothesis_sum: w.hypothesis().sum.to_string(),
        l: w.l(),
        delta_r: w.delta_r(),
        degenerate: w.is_degenerate(),
        table: details
            .iter()
            .map(|d| TableRow {
                s: d.s,
                dim: d.dim,
                lower_bound: d.lower_bound.clone(),
            })
            .collect(),
        details,
        bounds_hold,
        strictly_increasing,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: &[u64], l: &[u64]) -> SpokeParams {
        SpokeParams::new(k.to_vec(), l.to_vec()).unwrap()
    }

    #[test]
    fn label_reduction() {
        assert_eq!(reduce_label(8), 2);
        assert_eq!(reduce_label(12), 3);
        assert_eq!(reduce_label(7), 7);
        assert_eq!(reduce_label(2), 2);
        assert_eq!(reduce_label(20), 5);
        let rp = reduce_labels(&params(&[12, 12, 8], &[1, 2]));
        assert_eq!(rp.params.ks(), [3, 2, 3]);
        assert_eq!(rp.params.ls(), [2, 1]);
        assert_eq!(rp.m, 1);
        assert_eq!(rp.spoke_origin, [3, 2]);
        let rp = reduce_labels(&params(&[12, 8], &[1]));
        assert_eq!(rp.params.ks(), [3, 2]);
    }

    #[test]
    fn hypothesis_sums() {
        let h = hypothesis_check(&params(&[2, 2], &[1]));
        assert!(h.holds);
        assert_eq!(h.sum, BigRational::new(1.into(), 3.into()));
        let h = hypothesis_check(&params(&[2, 2, 2, 2], &[1, 1, 1]));
        assert!(!h.holds);
        assert_eq!(h.sum, BigRational::one());
        let h = hypothesis_check(&params(&[2, 3, 5], &[1, 1]));
        assert!(h.holds);
        assert!(h.sum.is_zero());
    }

    #[test]
    fn vhat_shapes() {
        let mut w = Witness::new(&params(&[2, 2], &[1])).unwrap();
        assert!(w.vhat(2, 0).unwrap().is_zero());
        assert!(w.vhat(2, 1).unwrap().is_zero());
        for j in 2..8 {
            let v = w.vhat(2, j).unwrap();
            let idx = v.indices();
            assert_eq!(idx.last(), Some(&j), "top index of v̂_{j}");
            assert!(idx.iter().all(|&k| k >= 0));
            assert_eq!(v.component(w.ring(), j), w.ring().one());
        }
    }

    #[test]
    fn first_dimensions() {
        let d = e_s_dimension(&params(&[2, 2], &[1]), 1).unwrap();
        assert_eq!(d.dim, 3);
        assert!(d.bound_holds);
        assert_eq!(
            e_s_dimension(&params(&[2, 2], &[1]), 0),
            Err(Error::Precondition("s must be at least 1".into()))
        );
    }

    #[test]
    fn refuses_failing_hypothesis() {
        let r = witness_report(&params(&[2, 2, 2, 2], &[1, 1, 1]), 2);
        assert_eq!(r, Err(Error::HypothesisFails("1".into())));
    }

    #[test]
    fn degenerate_branch() {
        let r = witness_report(&params(&[3, 3, 5], &[1, 1]), 3).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.delta_r, 2 * 4);
        assert_eq!(r.table.iter().map(|t| t.dim).collect::<Vec<_>>(), [8, 16, 24]);
        assert!(r.verdict.contains(DEGENERATE_NOTE));
    }
}
