//! Dense Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> DenseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = DenseMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = x.into();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]` from column `from` on.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for j in from..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] -= q * s;
            }
        }
    }

    /// `col[dst] -= q * col[src]` from row `from` on.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for i in from..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] -= q * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = -x;
        }
    }
}

/// Diagonal form with optional transforms: `u * m * v = diag(factors)`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Non-zero invariant factors, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub u: Option<DenseMatrix>,
    pub v: Option<DenseMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Smith normal form. Pivots are chosen as an entry of smallest non-zero
/// magnitude, lowest row then column on ties.
pub fn smith_normal_form(m: &DenseMatrix, transforms: bool) -> Smith {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut u = transforms.then(|| DenseMatrix::identity(r));
    let mut v = transforms.then(|| DenseMatrix::identity(c));
    let mut factors = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = smallest_entry(&a, t, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut changed = false;
            // clear column t below the pivot
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.row_axpy(i, t, &q, t);
                if let Some(u) = u.as_mut() {
                    u.row_axpy(i, t, &q, 0);
                }
                if !a.get(i, t).is_zero() {
                    changed = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.col_axpy(j, t, &q, t);
                if let Some(v) = v.as_mut() {
                    v.col_axpy(j, t, &q, 0);
                }
                if !a.get(t, j).is_zero() {
                    changed = true;
                }
            }
            if changed {
                // a smaller remainder appeared in row or column t; move it to the pivot
                let (bi, bj) = smallest_in_cross(&a, t);
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(t, bi);
                }
                if let Some(v) = v.as_mut() {
                    v.swap_cols(t, bj);
                }
                continue;
            }
            // divisibility: fold a row with a non-multiple into row t
            let p = a.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.row_axpy(t, i, &minus_one, t);
                    if let Some(u) = u.as_mut() {
                        u.row_axpy(t, i, &minus_one, 0);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        factors.push(a.get(t, t).clone());
        t += 1;
    }
    Smith { factors, u, v }
}

fn smallest_entry(a: &DenseMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..a.rows {
        for j in c0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.magnitude() < a.get(bi, bj).magnitude(),
            };
            if better {
                best = Some((i, j));
                if x.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn smallest_in_cross(a: &DenseMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut cand: Vec<(usize, usize)> = (t..a.rows).map(|i| (i, t)).collect();
    cand.extend((t + 1..a.cols).map(|j| (t, j)));
    cand.sort_unstable();
    for (i, j) in cand {
        let x = a.get(i, j);
        if !x.is_zero()
            && (a.get(best.0, best.1).is_zero()
                || x.magnitude() < a.get(best.0, best.1).magnitude())
        {
            best = (i, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &DenseMatrix, s: &Smith) {
        let u = s.u.as_ref().unwrap();
        let v = s.v.as_ref().unwrap();
        let d = u.mul(m).mul(v);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let expect = if i == j && i < s.factors.len() {
                    s.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &expect, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn two_by_two() {
        let m = DenseMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m, true);
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(4)]);
        check(&m, &s);
    }

    #[test]
    fn identity_and_zero() {
        let s = smith_normal_form(&DenseMatrix::identity(4), false);
        assert_eq!(s.factors, vec![BigInt::one(); 4]);
        let z = smith_normal_form(&DenseMatrix::zeros(3, 5), true);
        assert!(z.factors.is_empty());
    }

    #[test]
    fn needs_divisibility_fix() {
        let m = DenseMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m, true);
        assert_eq!(s.factors, vec![BigInt::one(), BigInt::from(6)]);
        check(&m, &s);
    }
}
