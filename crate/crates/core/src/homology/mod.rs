//! Integral cellular homology.

pub mod snf;
pub mod sparse;

use crate::complex::{CubeComplex, DeltaComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::presentation::{free_reduce, generator_of, Presentation};
use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use sparse::{invariants, SparseMatrix};
use std::fmt;

pub use snf::{smith_normal_form, DenseMatrix, Smith};

/// Cellular chains: `boundary[k]` is `∂_k : C_k → C_{k-1}` (rows are
/// `(k-1)`-cells, columns `k`-cells); `boundary[0]` is the empty map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundary: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    /// Whether `∂_{k-1} ∂_k = 0` in every degree.
    pub fn is_valid(&self) -> bool {
        (2..self.boundary.len()).all(|k| self.boundary[k - 1].mul(&self.boundary[k]).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Quotient by the cells in `drop` (given per degree).
    pub fn quotient(&self, drop: &[Vec<bool>]) -> ChainComplex {
        let keep: Vec<Vec<bool>> = drop
            .iter()
            .map(|d| d.iter().map(|x| !x).collect())
            .collect();
        let ranks: Vec<usize> = keep
            .iter()
            .map(|k| k.iter().filter(|&&x| x).count())
            .collect();
        let mut boundary = vec![SparseMatrix::new(0, ranks.first().copied().unwrap_or(0))];
        for k in 1..self.boundary.len() {
            boundary.push(self.boundary[k].restrict(&keep[k - 1], &keep[k]));
        }
        ChainComplex { ranks, boundary }
    }
}

/// Position of each cell within its degree.
fn degree_index(dims: impl Iterator<Item = usize>) -> (Vec<usize>, Vec<usize>) {
    let mut counts: Vec<usize> = Vec::new();
    let pos = dims
        .map(|d| {
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
            counts[d] - 1
        })
        .collect();
    (pos, counts)
}

/// Cubical chains with orientations from the standard cube:
/// `∂Q = Σ_i (-1)^i (Q_{i,+} - Q_{i,-})`, each face taken with the sign of its
/// identifying symmetry. Collapsed faces contribute nothing.
pub fn cube_chain_complex(c: &CubeComplex) -> ChainComplex {
    let (pos, ranks) = degree_index(c.cells().map(|q| c.dim(q)));
    let mut boundary: Vec<SparseMatrix> = Vec::with_capacity(ranks.len());
    boundary.push(SparseMatrix::new(0, ranks.first().copied().unwrap_or(0)));
    for k in 1..ranks.len() {
        boundary.push(SparseMatrix::new(ranks[k - 1], ranks[k]));
    }
    for q in c.cells() {
        let d = c.dim(q);
        if d == 0 {
            continue;
        }
        let mut entries = Vec::with_capacity(2 * d);
        for i in 0..d {
            for plus in [false, true] {
                let f = c.face(q, i, plus);
                if c.dim(f.cell()) + 1 != d {
                    continue;
                }
                let alt = if i % 2 == 0 { 1 } else { -1 };
                let side = if plus { 1 } else { -1 };
                entries.push((pos[f.cell()], (alt * side * f.sym.det()) as i64));
            }
        }
        boundary[d].set_column(pos[q], entries);
    }
    ChainComplex { ranks, boundary }
}

/// Simplicial chains of a Δ-complex: `∂σ = Σ (-1)^i d_i σ`.
pub fn delta_chain_complex(x: &DeltaComplex) -> ChainComplex {
    let (pos, ranks) = degree_index(x.simplices().map(|s| x.dim(s)));
    let mut boundary: Vec<SparseMatrix> = Vec::with_capacity(ranks.len());
    boundary.push(SparseMatrix::new(0, ranks.first().copied().unwrap_or(0)));
    for k in 1..ranks.len() {
        boundary.push(SparseMatrix::new(ranks[k - 1], ranks[k]));
    }
    for s in x.simplices() {
        let d = x.dim(s);
        if d == 0 {
            continue;
        }
        let entries = x
            .faces(s)
            .iter()
            .enumerate()
            .map(|(i, &f)| (pos[f], if i % 2 == 0 { 1 } else { -1 }));
        boundary[d].set_column(pos[s], entries);
    }
    ChainComplex { ranks, boundary }
}

pub fn simplicial_chain_complex(s: &SimplicialComplex) -> ChainComplex {
    delta_chain_complex(&DeltaComplex::from_simplicial(s))
}

/// One homology group: free rank plus torsion invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroups {
    pub groups: Vec<Group>,
}

impl HomologyGroups {
    pub fn degree(&self, k: usize) -> Group {
        self.groups.get(k).cloned().unwrap_or(Group {
            betti: 0,
            torsion: Vec::new(),
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(Group::is_zero)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                if k % 2 == 0 {
                    g.betti as i64
                } else {
                    -(g.betti as i64)
                }
            })
            .sum()
    }

    /// Lines of the form `H_1 = Z^2 + Z/2`.
    pub fn lines(&self) -> Vec<String> {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| format!("H_{k} = {g}"))
            .collect()
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lines().join("\n"))
    }
}

#[derive(Serialize)]
struct GroupJson<'a> {
    degree: usize,
    betti: usize,
    #[serde(serialize_with = "torsion_json")]
    torsion: &'a [BigInt],
}

fn torsion_json<S: Serializer>(t: &&[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for x in t.iter() {
        match x.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl HomologyGroups {
    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<GroupJson> = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| GroupJson {
                degree: k,
                betti: g.betti,
                torsion: &g.torsion,
            })
            .collect();
        serde_json::to_value(v).expect("homology serialises")
    }
}

pub fn homology(cc: &ChainComplex) -> HomologyGroups {
    let n = cc.ranks.len();
    let inv: Vec<sparse::Invariants> = (0..n)
        .map(|k| {
            if k == 0 {
                sparse::Invariants {
                    rank: 0,
                    torsion: Vec::new(),
                }
            } else {
                invariants(&cc.boundary[k])
            }
        })
        .collect();
    let groups = (0..n)
        .map(|k| {
            let next = inv.get(k + 1);
            let rank_next = next.map_or(0, |i| i.rank);
            Group {
                betti: cc.ranks[k] - inv[k].rank - rank_next,
                torsion: next.map_or(Vec::new(), |i| i.torsion.clone()),
            }
        })
        .collect();
    HomologyGroups { groups }
}

/// Homology of the augmented complex.
pub fn reduced_homology(cc: &ChainComplex) -> HomologyGroups {
    let mut h = homology(cc);
    if let Some(g) = h.groups.first_mut() {
        if cc.ranks[0] > 0 {
            g.betti -= 1;
        }
    }
    h
}

pub fn cube_homology(c: &CubeComplex) -> HomologyGroups {
    homology(&cube_chain_complex(c))
}

pub fn cube_reduced_homology(c: &CubeComplex) -> HomologyGroups {
    reduced_homology(&cube_chain_complex(c))
}

pub fn is_acyclic(c: &CubeComplex) -> bool {
    !c.is_empty() && cube_reduced_homology(c).is_trivial()
}

pub fn delta_homology(x: &DeltaComplex) -> HomologyGroups {
    homology(&delta_chain_complex(x))
}

pub fn simplicial_homology(s: &SimplicialComplex) -> HomologyGroups {
    homology(&simplicial_chain_complex(s))
}

/// Homology of `c` relative to the subcomplex marked in `sub`.
pub fn relative_homology(c: &CubeComplex, sub: &[bool]) -> Result<HomologyGroups> {
    if let Some(q) = c
        .cells()
        .find(|&q| sub[q] && c.faces(q).iter().any(|f| !sub[f.cell()]))
    {
        return Err(Error::NotSubcomplex(q));
    }
    let cc = cube_chain_complex(c);
    let mut drop: Vec<Vec<bool>> = cc.ranks.iter().map(|&n| Vec::with_capacity(n)).collect();
    for q in c.cells() {
        drop[c.dim(q)].push(sub[q]);
    }
    Ok(homology(&cc.quotient(&drop)))
}

/// Homology of a Δ-complex relative to the subcomplex marked in `sub`.
pub fn delta_relative_homology(x: &DeltaComplex, sub: &[bool]) -> Result<HomologyGroups> {
    if let Some(s) = x
        .simplices()
        .find(|&s| sub[s] && x.faces(s).iter().any(|&f| !sub[f]))
    {
        return Err(Error::NotSubcomplex(s));
    }
    let cc = delta_chain_complex(x);
    let mut drop: Vec<Vec<bool>> = cc.ranks.iter().map(|&n| Vec::with_capacity(n)).collect();
    for s in x.simplices() {
        drop[x.dim(s)].push(sub[s]);
    }
    Ok(homology(&cc.quotient(&drop)))
}

/// Homology in degrees 0 to 2 of the one-vertex presentation complex.
pub fn presentation_h1_h2(p: &Presentation) -> HomologyGroups {
    let n = p.n_generators;
    let r = p.relators.len();
    let mut d2 = SparseMatrix::new(n, r);
    let m = p.exponent_matrix();
    for j in 0..r {
        d2.set_column(j, (0..n).map(|g| (g, m[g][j])));
    }
    let cc = ChainComplex {
        ranks: vec![1, n, r],
        boundary: vec![SparseMatrix::new(0, 1), SparseMatrix::new(1, n), d2],
    };
    homology(&cc)
}

/// Sufficient check for a trivial fundamental group: after free reduction
/// every relator is a single letter, and every generator is such a relator.
pub fn trivializing_reduction_check(p: &Presentation) -> bool {
    let mut killed = vec![false; p.n_generators];
    for r in &p.relators {
        match free_reduce(r).as_slice() {
            [x] => killed[generator_of(*x)] = true,
            _ => return false,
        }
    }
    killed.iter().all(|&k| k)
}
