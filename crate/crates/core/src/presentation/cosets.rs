//! Bounded coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing).

use super::{generator_of, Presentation};

/// Enumerations stop after defining this many cosets.
pub const COSET_LIMIT: usize = 10_000;

const NONE: u32 = u32::MAX;

/// Completed coset table: `action[c][2g]` is `c·g`, `action[c][2g+1]` is `c·g⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub action: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Group order (the index of the trivial subgroup).
    pub fn index(&self) -> usize {
        self.action.len()
    }
}

fn column(x: i32) -> usize {
    2 * generator_of(x) + usize::from(x < 0)
}

struct Enumerator {
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    cols: usize,
    limit: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn define(&mut self, c: u32, x: usize) -> Option<u32> {
        if self.table.len() >= self.limit {
            return None;
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c as usize][x] = d;
        self.table[d as usize][x ^ 1] = c;
        Some(d)
    }

    fn rep(&mut self, mut k: u32) -> u32 {
        let mut root = k;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (m, n) = (k.min(l), k.max(l));
        self.parent[n as usize] = m;
        self.queue.push(n);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e as usize][x];
                if f == NONE {
                    continue;
                }
                self.table[f as usize][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.table[e1 as usize][x];
                let fx = self.table[f1 as usize][x ^ 1];
                if ex != NONE {
                    self.merge(f1, ex);
                } else if fx != NONE {
                    self.merge(e1, fx);
                } else {
                    self.table[e1 as usize][x] = f1;
                    self.table[f1 as usize][x ^ 1] = e1;
                }
            }
        }
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    /// Traces `w` from `c` forwards and backwards, defining cosets to close the gap.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Option<()> {
        if w.is_empty() {
            return Some(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Some(());
            }
            while j >= i as isize && self.table[b as usize][w[j as usize] ^ 1] != NONE {
                b = self.table[b as usize][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][w[i] ^ 1] = f;
                return Some(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. `None` when more than
/// `limit` cosets would be needed.
pub fn coset_enumeration(p: &Presentation, limit: usize) -> Option<CosetTable> {
    let cols = 2 * p.n_generators;
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|&x| column(x)).collect())
        .collect();
    let mut e = Enumerator {
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        cols,
        limit,
        queue: Vec::new(),
    };
    let mut c = 0u32;
    while (c as usize) < e.table.len() {
        if e.live(c) {
            for r in &rels {
                if !e.live(c) {
                    break;
                }
                e.scan_and_fill(c, r)?;
            }
            for x in 0..cols {
                if !e.live(c) {
                    break;
                }
                if e.table[c as usize][x] == NONE {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    // compact the live cosets
    let live: Vec<u32> = (0..e.table.len() as u32).filter(|&k| e.live(k)).collect();
    let mut new_id = vec![NONE; e.table.len()];
    for (k, &c) in live.iter().enumerate() {
        new_id[c as usize] = k as u32;
    }
    let action = live
        .iter()
        .map(|&c| {
            e.table[c as usize]
                .iter()
                .map(|&d| new_id[d as usize])
                .collect()
        })
        .collect();
    Some(CosetTable { action })
}
