//! The quotient ring `R = Z_p[x_{m+2}, .., x_n] / (p_{k_i}(x_i))`.
//!
//! `p_k(a) = 1 + a + ⋯ + a^{k-1}`. A basis is given by the monomials with
//! every exponent of `x_i` in `0..=k_i-2`, so `dim R = ∏ (k_i - 1)`. The
//! variables `x_2, .., x_{m+1}` act as `-1`.

use crate::free_product::DElement;

/// Dense coordinates over the monomial basis, entries in `0..p`.
pub type RElem = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingR {
    p: u64,
    minus_one: Vec<usize>,
    vars: Vec<(usize, u64)>,
    basis: Vec<Vec<u64>>,
}

impl RingR {
    /// `minus_one` lists spokes whose variable is `-1`; `vars` lists
    /// `(spoke, k_spoke)` for the genuine variables.
    pub fn new(p: u64, minus_one: Vec<usize>, vars: Vec<(usize, u64)>) -> Self {
        let mut basis = vec![vec![]];
        for &(_, k) in &vars {
            basis = basis
                .into_iter()
                .flat_map(|m: Vec<u64>| {
                    (0..k - 1).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        RingR {
            p,
            minus_one,
            vars,
            basis,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exponent vectors in lexicographic order.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn variables(&self) -> &[(usize, u64)] {
        &self.vars
    }

    pub fn zero(&self) -> RElem {
        vec![0; self.dim()]
    }

    pub fn basis_elem(&self, idx: usize) -> RElem {
        let mut e = self.zero();
        e[idx] = 1;
        e
    }

    pub fn one(&self) -> RElem {
        self.basis_elem(0)
    }

    fn index(&self, exps: &[u64]) -> usize {
        exps.iter()
            .zip(&self.vars)
            .fold(0, |acc, (&e, &(_, k))| acc * (k as usize - 1) + e as usize)
    }

    /// `x^a` for a variable of order `k`, as `(exponent, coefficient)` pairs.
    fn reduce_power(&self, k: u64, a: i64) -> Vec<(u64, u64)> {
        let a = a.rem_euclid(k as i64) as u64;
        if a + 1 < k {
            vec![(a, 1)]
        } else {
            (0..k - 1).map(|t| (t, self.p - 1)).collect()
        }
    }

    fn expand_factors(&self, scalar: u64, factors: &[Vec<(u64, u64)>]) -> RElem {
        let mut out = self.zero();
        let mut terms: Vec<(Vec<u64>, u64)> = vec![(vec![], scalar % self.p)];
        for f in factors {
            terms = terms
                .into_iter()
                .flat_map(|(m, c)| {
                    f.iter().map(move |&(e, d)| {
                        let mut m = m.clone();
                        m.push(e);
                        (m, c * d % self.p)
                    })
                })
                .collect();
        }
        for (m, c) in terms {
            let i = self.index(&m);
            out[i] = (out[i] + c) % self.p;
        }
        out
    }

    /// Image of a `D`-element `∏ x_i^{e_i}` in `R`.
    pub fn monomial(&self, d: &DElement) -> RElem {
        let mut minus = 0;
        for &(spoke, e) in d.parts() {
            if self.minus_one.contains(&spoke) {
                minus += e.rem_euclid(2);
            } else {
                assert!(
                    self.vars.iter().any(|&(s, _)| s == spoke),
                    "spoke {spoke} not in R"
                );
            }
        }
        let scalar = if minus % 2 == 0 { 1 } else { self.p - 1 };
        let factors: Vec<Vec<(u64, u64)>> = self
            .vars
            .iter()
            .map(|&(s, k)| self.reduce_power(k, d.component(s)))
            .collect();
        self.expand_factors(scalar, &factors)
    }

    pub fn add(&self, a: &RElem, b: &RElem) -> RElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, a: &RElem, c: u64) -> RElem {
        a.iter().map(|x| x * (c % self.p) % self.p).collect()
    }

    pub fn mul(&self, a: &RElem, b: &RElem) -> RElem {
        let mut out = self.zero();
        for (i, &ca) in a.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, &cb) in b.iter().enumerate().filter(|(_, c)| **c != 0) {
                let factors: Vec<Vec<(u64, u64)>> = self
                    .vars
                    .iter()
                    .enumerate()
                    .map(|(v, &(_, k))| {
                        self.reduce_power(k, (self.basis[i][v] + self.basis[j][v]) as i64)
                    })
                    .collect();
                let prod = self.expand_factors(ca * cb % self.p, &factors);
                out = self.add(&out, &prod);
            }
        }
        out
    }

    /// `p_k(x_spoke)` evaluated in `R`; zero for every spoke.
    pub fn p_value(&self, spoke: usize, k: u64) -> RElem {
        let mut acc = self.zero();
        for e in 0..k as i64 {
            acc = self.add(&acc, &self.monomial(&DElement::single(spoke, e)));
        }
        acc
    }
}
