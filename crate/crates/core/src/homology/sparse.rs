//! Sparse integer matrices and their invariant factors.
//!
//! Unit entries are eliminated first (each contributes a factor 1 and is
//! removed with its row and column by a unimodular Schur complement); the
//! remainder goes to the dense Smith normal form.

use super::snf::{smith_normal_form, DenseMatrix};
use num_bigint::BigInt;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Column-compressed integer matrix with small entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// For each column, `(row, value)` sorted by row with no zero values.
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a column from unsorted entries, summing repeats.
    pub fn set_column(&mut self, j: usize, entries: impl IntoIterator<Item = (usize, i64)>) {
        let mut v: Vec<(u32, i64)> = entries.into_iter().map(|(r, x)| (r as u32, x)).collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(v.len());
        for (r, x) in v {
            match out.last_mut() {
                Some(last) if last.0 == r => last.1 += x,
                _ => out.push((r, x)),
            }
        }
        out.retain(|e| e.1 != 0);
        self.columns[j] = out;
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.columns[j]
            .binary_search_by_key(&(i as u32), |e| e.0)
            .map_or(0, |k| self.columns[j][k].1)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                *m.get_mut(i as usize, j) = BigInt::from(x);
            }
        }
        m
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: Vec<(usize, i64)> = Vec::new();
            for &(k, y) in col {
                for &(i, x) in &self.columns[k as usize] {
                    acc.push((i as usize, x * y));
                }
            }
            out.set_column(j, acc);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Keeps the listed rows and columns, renumbered in order.
    pub fn restrict(&self, keep_rows: &[bool], keep_cols: &[bool]) -> SparseMatrix {
        let mut rmap = vec![u32::MAX; self.rows];
        let mut nr = 0;
        for (i, &k) in keep_rows.iter().enumerate() {
            if k {
                rmap[i] = nr;
                nr += 1;
            }
        }
        let columns: Vec<Vec<(u32, i64)>> = self
            .columns
            .iter()
            .zip(keep_cols)
            .filter(|(_, &k)| k)
            .map(|(col, _)| {
                col.iter()
                    .filter(|e| rmap[e.0 as usize] != u32::MAX)
                    .map(|&(i, x)| (rmap[i as usize], x))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: nr as usize,
            cols: columns.len(),
            columns,
        }
    }
}

/// Rank and invariant factors (all of them, including ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    /// Factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Matrices with fewer columns than this skip the sparse phase.
const DENSE_BELOW: usize = 64;

pub fn invariants(m: &SparseMatrix) -> Invariants {
    if m.cols < DENSE_BELOW {
        return from_dense(&m.to_dense(), 0);
    }
    if let Some(r) = eliminate::<i64>(m) {
        return r;
    }
    eliminate::<BigInt>(m).expect("arbitrary precision elimination cannot overflow")
}

fn from_dense(d: &DenseMatrix, units: usize) -> Invariants {
    let s = smith_normal_form(d, false);
    let torsion: Vec<BigInt> = s.factors.iter().filter(|f| !f.is_one()).cloned().collect();
    Invariants {
        rank: units + s.factors.len(),
        torsion,
    }
}

trait Entry: Clone + Zero + One + CheckedMul + CheckedSub + Signed + PartialEq {
    fn from_i64(x: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Unit-pivot elimination; `None` on overflow.
fn eliminate<T: Entry>(m: &SparseMatrix) -> Option<Invariants> {
    let mut cols: Vec<Vec<(u32, T)>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|&(i, x)| (i, T::from_i64(x))).collect())
        .collect();
    let mut row_count = vec![0usize; m.rows];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &(i, _) in c {
            row_count[i as usize] += 1;
            row_cols[i as usize].push(j as u32);
        }
    }
    let mut col_alive = vec![true; m.cols];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| Reverse((c.len(), j as u32)))
        .collect();
    let mut units = 0usize;
    let mut scratch: Vec<(u32, T)> = Vec::new();
    while let Some(Reverse((len, j))) = heap.pop() {
        let j = j as usize;
        if !col_alive[j] || cols[j].len() != len {
            continue;
        }
        if cols[j].is_empty() {
            col_alive[j] = false;
            continue;
        }
        // unit entry of the column whose row is sparsest
        let Some(&(pr, ref pv)) = cols[j]
            .iter()
            .filter(|e| e.1.abs().is_one())
            .min_by_key(|e| (row_count[e.0 as usize], e.0))
        else {
            continue;
        };
        let pr = pr as usize;
        let pv = pv.clone();
        units += 1;
        col_alive[j] = false;
        let pivot_col = std::mem::take(&mut cols[j]);
        for &(i, _) in &pivot_col {
            row_count[i as usize] -= 1;
        }
        let mut others = std::mem::take(&mut row_cols[pr]);
        others.sort_unstable();
        others.dedup();
        for &c in &others {
            let c = c as usize;
            if !col_alive[c] {
                continue;
            }
            let Ok(k) = cols[c].binary_search_by_key(&(pr as u32), |e| e.0) else {
                continue;
            };
            // col_c -= (a_{pr,c} / pv) * pivot_col, which clears row pr
            let q = if pv.is_positive() {
                cols[c][k].1.clone()
            } else {
                -cols[c][k].1.clone()
            };
            scratch.clear();
            let old = std::mem::take(&mut cols[c]);
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < pivot_col.len() {
                let ra = old.get(a).map_or(u32::MAX, |e| e.0);
                let rb = pivot_col.get(b).map_or(u32::MAX, |e| e.0);
                if ra < rb {
                    scratch.push(old[a].clone());
                    a += 1;
                } else {
                    let delta = q.checked_mul(&pivot_col[b].1)?;
                    let v = if ra == rb {
                        let v = old[a].1.checked_sub(&delta)?;
                        a += 1;
                        v
                    } else {
                        T::zero().checked_sub(&delta)?
                    };
                    if ra != rb {
                        row_count[rb as usize] += 1;
                        row_cols[rb as usize].push(c as u32);
                    }
                    if v.is_zero() {
                        if ra == rb {
                            row_count[rb as usize] -= 1;
                        }
                    } else {
                        scratch.push((rb, v));
                    }
                    b += 1;
                }
            }
            // row pr no longer appears anywhere
            scratch.retain(|e| e.0 as usize != pr);
            cols[c] = scratch.clone();
            heap.push(Reverse((cols[c].len(), c as u32)));
        }
        row_count[pr] = 0;
    }
    let live: Vec<usize> = (0..m.cols)
        .filter(|&j| col_alive[j] && !cols[j].is_empty())
        .collect();
    if live.is_empty() {
        return Some(Invariants {
            rank: units,
            torsion: Vec::new(),
        });
    }
    let mut rows: Vec<u32> = live
        .iter()
        .flat_map(|&j| cols[j].iter().map(|e| e.0))
        .collect();
    rows.sort_unstable();
    rows.dedup();
    let mut d = DenseMatrix::zeros(rows.len(), live.len());
    for (jj, &j) in live.iter().enumerate() {
        for (i, x) in &cols[j] {
            let ii = rows.binary_search(i).unwrap();
            *d.get_mut(ii, jj) = x.to_big();
        }
    }
    Some(from_dense(&d, units))
}

/// Sparse copy of a row-major matrix.
pub fn from_dense_i64(rows: &[Vec<i64>]) -> SparseMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut m = SparseMatrix::new(r, c);
    for j in 0..c {
        m.set_column(j, (0..r).map(|i| (i, rows[i][j])));
    }
    m
}
