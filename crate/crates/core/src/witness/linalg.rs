//! Dense matrices over a prime field `Z_p`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank over `Z_p` by row reduction, pivoting left to right.
pub fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let mut a = m.clone();
    for v in &mut a.data {
        *v %= p;
    }
    let mut rank = 0;
    for c in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(pivot) = (rank..a.rows).find(|&r| a.get(r, c) != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..a.cols {
                a.data.swap(pivot * a.cols + k, rank * a.cols + k);
            }
        }
        let inv = inv_mod(a.get(rank, c), p);
        for k in c..a.cols {
            let v = a.get(rank, k) * inv % p;
            a.set(rank, k, v);
        }
        for r in rank + 1..a.rows {
            let f = a.get(r, c);
            if f == 0 {
                continue;
            }
            for k in c..a.cols {
                let v = (a.get(r, k) + p - f * a.get(rank, k) % p) % p;
                a.set(r, k, v);
            }
        }
        rank += 1;
    }
    rank
}
