//! Oracles and helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::test_runner::{Config, RngSeed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sigma_artin::free_product::{Ambient, DElement, Generator, Signature, SpokeFactor, Syllable};
use sigma_artin::witness::linalg::Matrix;

pub const DEFAULT_SEED: u64 = 0x5167_a371;

pub fn seed() -> u64 {
    std::env::var("SIGMA_ARTIN_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> StdRng {
    StdRng::seed_from_u64(seed())
}

pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn signature(k1: i64, spokes: &[(usize, i64, i64)]) -> Signature {
    let spokes = spokes
        .iter()
        .map(|&(spoke, order, l)| SpokeFactor { spoke, order, width: 2 * l })
        .collect();
    Signature::new(k1, spokes).unwrap()
}

#[derive(Debug, Clone, PartialEq)]
enum Block {
    Gen(Generator, i64),
    D(BTreeMap<usize, i64>),
}

/// Normal form by repeatedly merging the leftmost adjacent pair of letters
/// from the same factor, starting from one letter per unit exponent.
pub fn naive_normal_form(sig: &Signature, syllables: &[Syllable]) -> Vec<Syllable> {
    let order = |g: Generator| match g {
        Generator::Y(_) => sig.k1(),
        Generator::X { spoke, .. } => sig.spoke(spoke).unwrap().order,
    };
    let d_order = |i: usize| sig.spoke(i).unwrap().order;

    let mut word: Vec<Block> = Vec::new();
    for s in syllables {
        match s {
            Syllable::Gen(g, e) => {
                for _ in 0..e.rem_euclid(order(*g)) {
                    word.push(Block::Gen(*g, 1));
                }
            }
            Syllable::D(d) => {
                for &(i, e) in d.parts() {
                    for _ in 0..e.rem_euclid(d_order(i)) {
                        word.push(Block::D(BTreeMap::from([(i, 1)])));
                    }
                }
            }
        }
    }

    'rewrite: loop {
        for i in 0..word.len().saturating_sub(1) {
            let merged = match (&word[i], &word[i + 1]) {
                (Block::Gen(g, a), Block::Gen(h, b)) if g == h => {
                    let e = (a + b) % order(*g);
                    Some((e != 0).then_some(Block::Gen(*g, e)))
                }
                (Block::D(a), Block::D(b)) => {
                    let mut m = a.clone();
                    for (&k, &e) in b {
                        *m.entry(k).or_insert(0) += e;
                    }
                    m.retain(|&k, e| {
                        *e %= d_order(k);
                        *e != 0
                    });
                    Some((!m.is_empty()).then_some(Block::D(m)))
                }
                _ => None,
            };
            if let Some(replacement) = merged {
                word.splice(i..i + 2, replacement);
                continue 'rewrite;
            }
        }
        break;
    }

    word.into_iter()
        .map(|b| match b {
            Block::Gen(g, e) => Syllable::Gen(g, e),
            Block::D(m) => Syllable::D(DElement::new(m.into_iter().collect())),
        })
        .collect()
}

/// Random raw syllables for `ambient`, with exponents that may be zero,
/// negative or exceed the order.
pub fn random_syllables(rng: &mut impl Rng, sig: &Signature, ambient: Ambient, len: usize) -> Vec<Syllable> {
    let spokes: Vec<&SpokeFactor> = match ambient {
        Ambient::Ki(i) | Ambient::Mi(i) => vec![sig.spoke(i).unwrap()],
        Ambient::M | Ambient::A => sig.spokes().iter().collect(),
        Ambient::K => vec![],
    };
    let allow_y = !matches!(ambient, Ambient::Ki(_));
    let allow_x = !matches!(ambient, Ambient::K | Ambient::A);
    let allow_d = ambient == Ambient::A;
    (0..len)
        .map(|_| {
            let e = rng.gen_range(-6..=6);
            loop {
                match rng.gen_range(0..3) {
                    0 if allow_y => return Syllable::Gen(Generator::Y(rng.gen_range(-2..=2)), e),
                    1 if allow_x => {
                        let f = spokes[rng.gen_range(0..spokes.len())];
                        let index = rng.gen_range(0..f.width.min(3));
                        return Syllable::Gen(Generator::X { spoke: f.spoke, index }, e);
                    }
                    2 if allow_d => {
                        let mut parts = Vec::new();
                        for f in &spokes {
                            if rng.gen_bool(0.7) {
                                parts.push((f.spoke, rng.gen_range(-4..=4)));
                            }
                        }
                        return Syllable::D(DElement::new(parts));
                    }
                    _ => {}
                }
            }
        })
        .collect()
}

/// Rank over `Z_p` eliminating columns right to left on a row-major copy.
pub fn rank_right_to_left(m: &Matrix, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in (0..m.cols()).rev() {
        let Some(piv) = (rank..rows.len()).rev().find(|&r| rows[r][c] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][c], p - 2);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|v| v * inv % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] % p != 0 {
                let f = row[c] % p;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Exponent sums of `y_0..y_{top-1}` in `x_j` for `0 <= j < top`, from the
/// abelianized forward recurrence with `x_j` trivial in `0..2l`.
pub fn y_exponent_sums(l: i64, top: i64) -> Vec<Vec<i64>> {
    let n = top.max(0) as usize;
    let mut sums: Vec<Vec<i64>> = vec![vec![0; n]; n];
    for j in 2 * l..top {
        let mut v = vec![0i64; n];
        for s in 1..=l {
            v[(j - 2 * s + 1) as usize] -= 1;
            for (a, b) in v.iter_mut().zip(&sums[(j - 2 * s) as usize]) {
                *a -= b;
            }
        }
        for s in 0..l {
            v[(j - 2 * l + 2 * s) as usize] += 1;
            for (a, b) in v.iter_mut().zip(&sums[(j - 2 * l + 2 * s + 1) as usize]) {
                *a += b;
            }
        }
        v[j as usize] += 1;
        sums[j as usize] = v;
    }
    sums
}

/// `dim E_s` when `k_1 = 2` and exactly one power-of-two spoke with
/// parameter `l` is present, so the module action is trivial mod 2.
pub fn dim_e_s_mod2(l: i64, delta_r: usize, s: i64) -> usize {
    let top = s * (2 * l + 1);
    let sums = y_exponent_sums(l, top);
    let rows: Vec<Vec<u64>> = (0..top)
        .filter(|j| (j + 2) % (2 * l + 1) == 0)
        .map(|j| sums[j as usize].iter().map(|e| e.rem_euclid(2) as u64).collect())
        .collect();
    let rank = rank_right_to_left(&Matrix::from_rows(top as usize, rows), 2);
    delta_r * (top as usize - rank)
}
