//! Acyclic kits: the pair `(A′, A)` with its involution and base loop.

use crate::complex::ops::identify_vertices;
use crate::complex::{
    descend, glue, interval_flip, mapping_torus, product_map, CellRef, CubeComplex, CubeMap,
    Involution,
};
use crate::error::{Error, Result};
use crate::presentation::{acyctwo, Acyctwo};
use crate::sym::Sym;

/// `A ⊆ A′` with an involution `τ` of `A′` fixing `A`, a fixed vertex `a0`
/// of `A` and a closed edge loop `j` of `A` based at `a0`.
#[derive(Clone, Debug)]
pub struct AcyclicKit {
    pub aprime: CubeComplex,
    pub a_mask: Vec<bool>,
    pub tau: Involution,
    pub a0: usize,
    /// Edges of `A′` in order; `Sym::line(true)` marks an edge run backwards.
    /// Empty for the constant loop.
    pub j: Vec<CellRef>,
}

/// Length of the base loop of a genuine kit.
pub const LOOP_LENGTH: usize = 4;

impl AcyclicKit {
    /// `A` as a complex, with the id in `A′` of each of its cells.
    pub fn a(&self) -> (CubeComplex, Vec<usize>) {
        let (a, map) = self.aprime.subcomplex(&self.a_mask).expect("validated kit");
        let mut back = vec![0; a.len()];
        for (old, new) in map.iter().enumerate() {
            if let Some(n) = new {
                back[*n] = old;
            }
        }
        (a, back)
    }

    /// Vertex of `A′` where the `k`-th step of `j` starts.
    pub fn loop_vertex(&self, k: usize) -> usize {
        let e = self.j[k];
        let (tail, head) = self.aprime.edge_ends(e.cell());
        if e.sym.get(0).1 {
            head
        } else {
            tail
        }
    }

    /// Structural checks; acyclicity is left to [`check_acyclic`](Self::check_acyclic).
    pub fn validate(&self) -> Result<()> {
        let c = &self.aprime;
        if self.a_mask.len() != c.len() || !c.is_subcomplex(&self.a_mask) {
            return Err(Error::InvalidKit("A is not a subcomplex of A′".into()));
        }
        let fixed = self.tau.fixed_mask(c)?;
        if let Some(q) = c.cells().find(|&q| self.a_mask[q] && !fixed[q]) {
            return Err(Error::InvalidKit(format!("cell {q} of A is moved by τ")));
        }
        if self.a0 >= c.len() || c.dim(self.a0) != 0 || !self.a_mask[self.a0] {
            return Err(Error::InvalidKit("a0 is not a vertex of A".into()));
        }
        if self.j.is_empty() {
            return Ok(());
        }
        if self.j.len() != LOOP_LENGTH {
            return Err(Error::InvalidKit(format!(
                "loop has {} edges",
                self.j.len()
            )));
        }
        for (k, e) in self.j.iter().enumerate() {
            if c.dim(e.cell()) != 1 || !self.a_mask[e.cell()] || e.sym.len() != 1 {
                return Err(Error::InvalidKit(format!(
                    "loop step {k} is not an edge of A"
                )));
            }
            let (tail, head) = c.edge_ends(e.cell());
            let end = if e.sym.get(0).1 { tail } else { head };
            let next = if k + 1 == self.j.len() {
                self.a0
            } else {
                self.loop_vertex(k + 1)
            };
            if end != next {
                return Err(Error::InvalidKit(format!("loop breaks after step {k}")));
            }
            let prev = self.j[(k + self.j.len() - 1) % self.j.len()];
            if prev.cell() == e.cell() && prev.sym != e.sym {
                return Err(Error::InvalidKit(format!("loop backtracks at step {k}")));
            }
        }
        if self.loop_vertex(0) != self.a0 {
            return Err(Error::InvalidKit("loop does not start at a0".into()));
        }
        Ok(())
    }

    /// `A`, `A′` and `A′/τ` are all acyclic.
    pub fn check_acyclic(&self) -> Result<bool> {
        use crate::complex::quotient_by_involution;
        use crate::homology::is_acyclic;
        let (a, _) = self.a();
        let (q, _) = quotient_by_involution(&self.aprime, &self.tau)?;
        Ok(is_acyclic(&a) && is_acyclic(&self.aprime) && is_acyclic(&q))
    }

    pub fn dims(&self) -> (usize, usize) {
        let (a, _) = self.a();
        (
            a.dimension().unwrap_or(0),
            self.aprime.dimension().unwrap_or(0),
        )
    }
}

/// The point kit: `A = A′` a single vertex, trivial involution, constant loop.
pub fn mock_kit() -> AcyclicKit {
    let mut c = CubeComplex::new();
    c.push_vertex();
    let tau = Involution::identity(&c);
    AcyclicKit {
        aprime: c,
        a_mask: vec![true],
        tau,
        a0: 0,
        j: Vec::new(),
    }
}

/// Every stage of the construction of the genuine kit from the octagon
/// complex `Y` and its involution `τ′`.
#[derive(Clone, Debug)]
pub struct AaPipeline {
    pub y: Acyctwo,
    /// Mapping torus of `τ′` over a path of 8 edges; `Y` occupies the first
    /// ids and is the slice at both ends of the path.
    pub x1: CubeComplex,
    pub tau1: Involution,
    /// `x1` with the centre of the slice at the middle of the path
    /// identified with the centre of `Y`.
    pub x2: CubeComplex,
    pub tau2: Involution,
    pub kit: AcyclicKit,
    /// `x2` into `A′`.
    pub x2_to_a: CubeMap,
    /// `Y` onto the fixed set `A` of the kit.
    pub y_to_a: CubeMap,
}

/// Length of the interval in the mapping torus.
const TORUS_LENGTH: usize = 8;

/// Generators whose petals form the rose glued to the circle direction.
const ROSE_GENERATORS: [usize; 2] = [1, 3];

/// Builds the genuine kit. The circle direction of `x2` is a two-petalled
/// rose: the half `[4, 8]` of the path goes forwards along the petal of
/// generator 1 and the half `[0, 4]` backwards along generator 3 (swapped
/// when `swap_petals`). Both choices commute with the involutions.
pub fn aa_pipeline(swap_petals: bool) -> Result<AaPipeline> {
    let y = acyctwo()?;
    let yc = &y.complex.complex;
    let tau_y = &y.tau.map;
    let n = TORUS_LENGTH;
    let half = n / 2;

    let torus = mapping_torus(yc, tau_y, n);
    let x1 = torus.complex;
    let flip = interval_flip(n);
    let iv = crate::complex::interval(n);
    let prod_tau = product_map(tau_y, yc, &flip, &iv);
    let m = iv.len();
    let mut images: Vec<CellRef> = yc
        .cells()
        .map(|q| CellRef::new(q, Sym::identity(yc.dim(q))))
        .collect();
    images.resize(x1.len(), CellRef::vertex(0));
    for p in yc.cells() {
        for q in 0..m {
            let own = torus.cells[p][q];
            if own.cell() < yc.len() {
                continue;
            }
            let t = prod_tau.images[p * m + q];
            let (tp, tq) = (t.cell() / m, t.cell() % m);
            images[own.cell()] = torus.cells[tp][tq].after(&t.sym);
        }
    }
    let tau1 = Involution::new(&x1, CubeMap { images })?;

    let centre = y.complex.centre();
    let mid = torus.cells[centre][half].cell();
    let mut rep: Vec<usize> = x1.cells().collect();
    rep[mid] = centre;
    let (x2, pi) = identify_vertices(&x1, &rep)?;
    let tau2 = Involution::new(&x2, descend(x2.len(), &[(&pi.images, &tau1.map)])?)?;

    // the rose in x2 and its image in Y
    let [g_plus, g_minus] = if swap_petals {
        [ROSE_GENERATORS[1], ROSE_GENERATORS[0]]
    } else {
        ROSE_GENERATORS
    };
    let pv = &y.complex.petal_vertices;
    let pe = &y.complex.petal_edges;
    let mut phi: Vec<Option<CellRef>> = vec![None; x2.len()];
    let through = |r: CellRef| pi.images[r.cell()].after(&r.sym);
    for k in 0..=n {
        let v = through(torus.cells[centre][k]).cell();
        let target = if k == 0 || k == half || k == n {
            centre
        } else if k > half {
            pv[g_plus][k - half]
        } else {
            pv[g_minus][half - k]
        };
        phi[v] = Some(CellRef::vertex(target));
    }
    for k in 0..n {
        let e = through(torus.cells[centre][n + 1 + k]);
        let target = if k >= half {
            CellRef::new(pe[g_plus][k - half], Sym::line(false))
        } else {
            CellRef::new(pe[g_minus][half - 1 - k], Sym::line(true))
        };
        phi[e.cell()] = Some(target.after(&e.sym.inverse()));
    }
    let glued = glue(&x2, yc, &phi)?;
    let aprime = glued.complex;
    let tau = Involution::new(
        &aprime,
        descend(
            aprime.len(),
            &[(&glued.from_b, tau_y), (&glued.from_a, &tau2.map)],
        )?,
    )?;

    // Y sits in A′ as the slice at the ends of the path
    let y_to_a = CubeMap {
        images: yc
            .cells()
            .map(|q| glued.from_a[pi.images[q].cell()].after(&pi.images[q].sym))
            .collect(),
    };
    let a_mask = tau.fixed_mask(&aprime)?;
    let a0 = y_to_a.images[centre].cell();
    let j = (0..LOOP_LENGTH)
        .map(|k| y_to_a.images[pe[ROSE_GENERATORS[0]][k]])
        .collect();
    let kit = AcyclicKit {
        aprime,
        a_mask,
        tau,
        a0,
        j,
    };
    kit.validate()?;
    let x2_to_a = CubeMap {
        images: glued.from_a,
    };
    Ok(AaPipeline {
        y,
        x1,
        tau1,
        x2,
        tau2,
        kit,
        x2_to_a,
        y_to_a,
    })
}

/// The genuine kit with the pinned rose identification.
pub fn build_aa_pair() -> Result<AcyclicKit> {
    Ok(aa_pipeline(false)?.kit)
}
