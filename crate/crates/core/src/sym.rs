//! Signed coordinate maps between standard cubes.
//!
//! Cubes are parametrised by `[-1, 1]^d`. A [`Sym`] with length `e` maps a
//! point of `[-1, 1]^d` to `[-1, 1]^e` by setting target coordinate `k` to
//! `±x[p]`. When every source coordinate is used exactly once the map is a
//! symmetry of the cube; otherwise it is a coordinate projection followed by
//! a symmetry (a collapse).

use std::fmt;

/// Largest number of target coordinates a [`Sym`] can carry.
pub const MAX_DIM: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sym {
    len: u8,
    // entry k holds ±(p + 1): target coordinate k is ±(source coordinate p)
    map: [i8; MAX_DIM],
}

impl Sym {
    pub fn identity(n: usize) -> Sym {
        assert!(n <= MAX_DIM, "dimension {n} exceeds MAX_DIM");
        let mut map = [0i8; MAX_DIM];
        for (k, m) in map.iter_mut().enumerate().take(n) {
            *m = (k + 1) as i8;
        }
        Sym { len: n as u8, map }
    }

    /// The map into a point (length zero).
    pub fn collapse() -> Sym {
        Sym {
            len: 0,
            map: [0; MAX_DIM],
        }
    }

    /// Builds from 1-based signed entries; `src_dim` bounds the entries.
    pub fn from_signed(entries: &[i32], src_dim: usize) -> Option<Sym> {
        if entries.len() > MAX_DIM {
            return None;
        }
        let mut map = [0i8; MAX_DIM];
        let mut used = [false; MAX_DIM + 1];
        for (k, &e) in entries.iter().enumerate() {
            let p = e.unsigned_abs() as usize;
            if p == 0 || p > src_dim || p > MAX_DIM || used[p] {
                return None;
            }
            used[p] = true;
            map[k] = e as i8;
        }
        Some(Sym {
            len: entries.len() as u8,
            map,
        })
    }

    pub(crate) fn from_raw(raw: &[i8]) -> Sym {
        let mut map = [0i8; MAX_DIM];
        map[..raw.len()].copy_from_slice(raw);
        Sym {
            len: raw.len() as u8,
            map,
        }
    }

    /// Reflection of a single coordinate line: `x -> -x` when `neg`.
    pub fn line(neg: bool) -> Sym {
        let mut map = [0i8; MAX_DIM];
        map[0] = if neg { -1 } else { 1 };
        Sym { len: 1, map }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn entries(&self) -> Vec<i32> {
        self.map[..self.len()].iter().map(|&e| e as i32).collect()
    }

    /// Source coordinate and reflection flag for target coordinate `k`.
    #[inline]
    pub fn get(&self, k: usize) -> (usize, bool) {
        let e = self.map[k];
        ((e.unsigned_abs() - 1) as usize, e < 0)
    }

    /// Target coordinate receiving source coordinate `p`, if any.
    pub fn target_of(&self, p: usize) -> Option<(usize, bool)> {
        (0..self.len()).find_map(|k| {
            let (q, neg) = self.get(k);
            (q == p).then_some((k, neg))
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Sym) -> Sym {
        let mut map = [0i8; MAX_DIM];
        for (k, m) in map.iter_mut().enumerate().take(self.len()) {
            let (q, n1) = self.get(k);
            let (p, n2) = inner.get(q);
            let v = (p + 1) as i8;
            *m = if n1 ^ n2 { -v } else { v };
        }
        Sym { len: self.len, map }
    }

    /// True when this is a bijection from a cube of dimension `src_dim`.
    pub fn is_bijective(&self, src_dim: usize) -> bool {
        self.len() == src_dim
    }

    pub fn is_identity(&self) -> bool {
        (0..self.len()).all(|k| self.map[k] == (k + 1) as i8)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Sym {
        let mut map = [0i8; MAX_DIM];
        for k in 0..self.len() {
            let (p, neg) = self.get(k);
            let v = (k + 1) as i8;
            map[p] = if neg { -v } else { v };
        }
        Sym { len: self.len, map }
    }

    /// Orientation sign of a bijective map.
    pub fn det(&self) -> i32 {
        let n = self.len();
        let mut perm = [0usize; MAX_DIM];
        let mut sign = 1;
        for (k, slot) in perm.iter_mut().enumerate().take(n) {
            let (p, neg) = self.get(k);
            *slot = p;
            if neg {
                sign = -sign;
            }
        }
        let mut seen = [false; MAX_DIM];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Direct sum: `self` on the first coordinates, `other` shifted after.
    pub fn direct_sum(&self, src_a: usize, other: &Sym) -> Sym {
        let mut map = self.map;
        let n = self.len();
        assert!(n + other.len() <= MAX_DIM, "direct sum exceeds MAX_DIM");
        for k in 0..other.len() {
            let (p, neg) = other.get(k);
            let v = (p + src_a + 1) as i8;
            map[n + k] = if neg { -v } else { v };
        }
        Sym {
            len: (n + other.len()) as u8,
            map,
        }
    }

    /// Image of a face code (entries in {-1, 0, 1}) under the map.
    pub fn apply_code(&self, code: &[i8]) -> Vec<i8> {
        (0..self.len())
            .map(|k| {
                let (p, neg) = self.get(k);
                if neg {
                    -code[p]
                } else {
                    code[p]
                }
            })
            .collect()
    }

    /// Image of a point with coordinates in `[-1, 1]`.
    pub fn apply_point(&self, x: &[i64]) -> Vec<i64> {
        (0..self.len())
            .map(|k| {
                let (p, neg) = self.get(k);
                if neg {
                    -x[p]
                } else {
                    x[p]
                }
            })
            .collect()
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries())
    }
}
