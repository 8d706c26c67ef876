//! The functor `X ↦ T_X`, built one simplex at a time.
//!
//! Along with `T_X` the construction carries an acyclic complex `U_X`, a
//! map `i: T_X → U_X` and involutions on both. A vertex `x` gives a vertex of
//! `T`; an edge gives a path of four edges in `T` and a copy of `A′` in `U`
//! wedged at the base point, with `i` running along the loop `j`. A simplex
//! `σ` of dimension at least two adds to `T` a fresh copy of `U′ = U_∂σ` and
//! the cylinder `T′ × [0, 4]` on the fixed set `T′` of `T_∂σ`, attached at
//! level 0 to `T′` and at level 4 through `i`. It adds to `U` a copy of `A′`
//! and `T′ × A`, glued along `T′ × {a0}` through `i` and along `{w0} × A`
//! to the new `A`, where `w0` is the vertex of the first vertex of `σ`.

use super::kit::AcyclicKit;
use crate::complex::delta::DeltaMap;
use crate::complex::{
    fixed_subcomplex, import, interval, product, quotient_by_involution, CellRef, CubeComplex,
    CubeMap, DeltaComplex, Involution,
};
use crate::error::{Error, Result};
use crate::homology::{cube_homology, delta_homology, relative_homology, HomologyGroups};
use crate::sym::Sym;
use std::collections::HashMap;

/// Edges in the path of an edge and in the cylinder direction.
pub const PATH_LENGTH: usize = 4;

/// How a cell of `T` arose. Cell ids refer to the same result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TOrigin {
    Vertex(u32),
    /// Cell `q` of the 4-edge path of an edge.
    Path(u32, u8),
    /// Copy of a cell of `U` made at a simplex.
    UCopy(u32, u32),
    /// `(c, q)` in the cylinder of a simplex, `c` a cell of `T`.
    Cylinder(u32, u32, u8),
}

/// How a cell of `U` arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UOrigin {
    Base,
    /// Cell of `A′` in the copy made at a simplex.
    Aprime(u32, u32),
    /// `(c, a)` in `T′ × A` at a simplex, `c` a cell of `T`, `a` a cell of `A`.
    Product(u32, u32, u32),
}

/// `U_X` with its involution and `i_X`.
#[derive(Clone, Debug)]
pub struct UPart {
    pub complex: CubeComplex,
    pub tau: Involution,
    /// Creating simplex; `None` for the base point, which lies in every `U_W`.
    pub owner: Vec<Option<usize>>,
    pub i: CubeMap,
}

#[derive(Clone, Debug)]
pub struct KtResult {
    pub t: CubeComplex,
    pub tau: Involution,
    /// Creating simplex of each cell; `T_W` is the set of cells owned by `W`.
    pub t_owner: Vec<usize>,
    pub t_origin: Vec<TOrigin>,
    /// Origins of the cells of `U` built during the construction (all of
    /// `U_X` when it was kept).
    pub u_origin: Vec<UOrigin>,
    pub u: Option<UPart>,
    /// Simplices of `X` in processing order.
    pub order: Vec<usize>,
}

impl KtResult {
    /// `T_W` for a subcomplex `W` of `X` given as a mask.
    pub fn t_mask(&self, w: &[bool]) -> Vec<bool> {
        self.t_owner.iter().map(|&s| w[s]).collect()
    }

    pub fn u_mask(&self, w: &[bool]) -> Option<Vec<bool>> {
        self.u
            .as_ref()
            .map(|u| u.owner.iter().map(|o| o.is_none_or(|s| w[s])).collect())
    }

    /// `(dim T, dim U)`; the second is `None` when `U` was not kept.
    pub fn dims(&self) -> (Option<usize>, Option<usize>) {
        (
            self.t.dimension(),
            self.u.as_ref().and_then(|u| u.complex.dimension()),
        )
    }
}

/// `dim T_X` for the genuine kit.
pub fn t_dimension_law(dim_x: usize) -> usize {
    if dim_x == 2 {
        3
    } else {
        dim_x
    }
}

/// `dim U_X` for the genuine kit.
pub fn u_dimension_law(dim_x: usize) -> usize {
    match dim_x {
        0 => 0,
        1 => 3,
        d => d + 1,
    }
}

/// Simplices by dimension, then id.
pub fn processing_order(x: &DeltaComplex) -> Vec<usize> {
    let mut order: Vec<usize> = x.simplices().collect();
    order.sort_by_key(|&s| (x.dim(s), s));
    order
}

struct Builder<'a> {
    x: &'a DeltaComplex,
    kit: &'a AcyclicKit,
    a: CubeComplex,
    a_ids: Vec<usize>,
    a0: usize,
    j_cells: Vec<CellRef>,
    j_vertices: Vec<usize>,
    t: CubeComplex,
    t_tau: Vec<CellRef>,
    t_owner: Vec<usize>,
    t_origin: Vec<TOrigin>,
    i: Vec<Option<CellRef>>,
    t_vertex: Vec<usize>,
    u: CubeComplex,
    u_tau: Vec<CellRef>,
    u_owner: Vec<Option<usize>>,
    u_origin: Vec<UOrigin>,
}

fn identity_ref(c: &CubeComplex, q: usize) -> CellRef {
    CellRef::new(q, Sym::identity(c.dim(q)))
}

impl<'a> Builder<'a> {
    fn new(x: &'a DeltaComplex, kit: &'a AcyclicKit) -> Builder<'a> {
        let (a, a_ids) = kit.a();
        let mut a_index = vec![usize::MAX; kit.aprime.len()];
        for (k, &q) in a_ids.iter().enumerate() {
            a_index[q] = k;
        }
        let a0 = a_index[kit.a0];
        let j_cells = kit
            .j
            .iter()
            .map(|e| CellRef::new(a_index[e.cell()], e.sym))
            .collect();
        let j_vertices = (0..=kit.j.len())
            .map(|k| {
                if k == kit.j.len() {
                    a0
                } else {
                    a_index[kit.loop_vertex(k)]
                }
            })
            .collect();
        let mut b = Builder {
            x,
            kit,
            a,
            a_ids,
            a0,
            j_cells,
            j_vertices,
            t: CubeComplex::new(),
            t_tau: Vec::new(),
            t_owner: Vec::new(),
            t_origin: Vec::new(),
            i: Vec::new(),
            t_vertex: vec![usize::MAX; x.len()],
            u: CubeComplex::new(),
            u_tau: Vec::new(),
            u_owner: Vec::new(),
            u_origin: Vec::new(),
        };
        if !x.is_empty() {
            b.u.push_vertex();
            b.u_tau.push(CellRef::vertex(0));
            b.u_owner.push(None);
            b.u_origin.push(UOrigin::Base);
        }
        b
    }

    /// Records cells pushed to `T` since `from`.
    fn note_t(
        &mut self,
        from: usize,
        owner: usize,
        origin: impl Fn(usize) -> TOrigin,
        tau: impl Fn(usize) -> CellRef,
    ) {
        for q in from..self.t.len() {
            self.t_owner.push(owner);
            self.t_origin.push(origin(q));
            self.t_tau.push(tau(q));
            self.i.push(None);
        }
    }

    fn note_u(
        &mut self,
        from: usize,
        owner: usize,
        origin: impl Fn(usize) -> UOrigin,
        tau: impl Fn(usize) -> CellRef,
    ) {
        for q in from..self.u.len() {
            self.u_owner.push(Some(owner));
            self.u_origin.push(origin(q));
            self.u_tau.push(tau(q));
        }
    }

    fn vertex(&mut self, s: usize) {
        let v = self.t.push_vertex();
        self.t_vertex[s] = v;
        self.note_t(v, s, |_| TOrigin::Vertex(s as u32), CellRef::vertex);
        self.i[v] = Some(CellRef::vertex(0));
    }

    /// A copy of `A′` in `U`, wedged at the base point; returns the image of
    /// every cell of `A′`.
    fn aprime_copy(&mut self, s: usize) -> Vec<CellRef> {
        let from = self.u.len();
        let a0 = self.kit.a0;
        let copy = import(&mut self.u, &self.kit.aprime, |q, _| {
            (q == a0).then(|| CellRef::vertex(0))
        });
        let mut origin = vec![0u32; self.u.len() - from];
        for (q, r) in copy.iter().enumerate() {
            if r.cell() >= from {
                origin[r.cell() - from] = q as u32;
            }
        }
        let tau = &self.kit.tau;
        let taus: Vec<CellRef> = (from..self.u.len())
            .map(|c| {
                let q = origin[c - from] as usize;
                let t = tau.image(q);
                copy[t.cell()].after(&t.sym)
            })
            .collect();
        self.note_u(
            from,
            s,
            |c| UOrigin::Aprime(s as u32, origin[c - from]),
            |c| taus[c - from],
        );
        copy
    }

    fn edge(&mut self, e: usize, with_u: bool) {
        let (x0, x1) = (
            self.t_vertex[self.x.vertex(e, 0)],
            self.t_vertex[self.x.vertex(e, 1)],
        );
        let path = interval(PATH_LENGTH);
        let from = self.t.len();
        let img = import(&mut self.t, &path, |q, _| match q {
            0 => Some(CellRef::vertex(x0)),
            q if q == PATH_LENGTH => Some(CellRef::vertex(x1)),
            _ => None,
        });
        let mut origin = vec![0u8; self.t.len() - from];
        for (q, r) in img.iter().enumerate() {
            if r.cell() >= from {
                origin[r.cell() - from] = q as u8;
            }
        }
        self.note_t(
            from,
            e,
            |c| TOrigin::Path(e as u32, origin[c - from]),
            |c| CellRef::new(c, Sym::identity(path.dim(origin[c - from] as usize))),
        );
        if !with_u {
            return;
        }
        let copy = self.aprime_copy(e);
        for (q, r) in img.iter().enumerate() {
            if r.cell() < from {
                continue;
            }
            let target = if self.kit.j.is_empty() {
                CellRef::vertex(0)
            } else if q <= PATH_LENGTH {
                copy[self.a_ids[self.j_vertices[q]]]
            } else {
                let step = self.kit.j[q - PATH_LENGTH - 1];
                copy[step.cell()].after(&step.sym)
            };
            self.i[r.cell()] = Some(target);
        }
    }

    fn higher(&mut self, s: usize, with_u: bool) -> Result<()> {
        let bd = self.x.closure_mask(self.x.faces(s).iter().copied());
        let t_prime: Vec<bool> = (0..self.t.len())
            .map(|c| bd[self.t_owner[c]] && self.t_tau[c] == identity_ref(&self.t, c))
            .collect();
        let u_prime: Vec<bool> = self
            .u_owner
            .iter()
            .map(|o| o.is_none_or(|w| bd[w]))
            .collect();
        let (tp, tp_map) = self.t.subcomplex(&t_prime)?;
        let mut tp_ids = vec![0usize; tp.len()];
        for (old, new) in tp_map.iter().enumerate() {
            if let Some(n) = new {
                tp_ids[*n] = old;
            }
        }
        let w0 = self.t_vertex[self.x.vertex(s, 0)];
        let w0_sub =
            tp_map[w0].ok_or_else(|| Error::InvalidKit("initial vertex is not fixed".into()))?;

        // fresh copy of U′ inside T
        let from = self.t.len();
        let ucopy = import(&mut self.t, &self.u, |q, _| {
            (!u_prime[q]).then(|| CellRef::vertex(0))
        });
        let n_u = self.u.len();
        let mut copied = vec![0u32; self.t.len() - from];
        for q in 0..n_u {
            if u_prime[q] {
                copied[ucopy[q].cell() - from] = q as u32;
            }
        }
        let u_tau = &self.u_tau;
        let taus: Vec<CellRef> = copied
            .iter()
            .map(|&q| {
                let t = u_tau[q as usize];
                ucopy[t.cell()].after(&t.sym)
            })
            .collect();
        self.note_t(
            from,
            s,
            |c| TOrigin::UCopy(s as u32, copied[c - from]),
            |c| taus[c - from],
        );
        for (k, &q) in copied.iter().enumerate() {
            self.i[from + k] = Some(identity_ref(&self.u, q as usize));
        }

        // the cylinder T′ × [0, 4]
        let iv = interval(PATH_LENGTH);
        let m = iv.len();
        let cyl = product(&tp, &iv);
        let from = self.t.len();
        let i_prev = &self.i;
        let cyl_img = import(&mut self.t, &cyl, |pc, _| {
            let (c, q) = (pc / m, pc % m);
            let old = tp_ids[c];
            if q == 0 {
                Some(CellRef::new(old, Sym::identity(tp.dim(c))))
            } else if q == PATH_LENGTH {
                let r = i_prev[old].expect("i is defined on the boundary");
                Some(ucopy[r.cell()].after(&r.sym))
            } else {
                None
            }
        });
        let mut cyl_origin = vec![(0u32, 0u8); self.t.len() - from];
        for (pc, r) in cyl_img.iter().enumerate() {
            if r.cell() >= from {
                cyl_origin[r.cell() - from] = (tp_ids[pc / m] as u32, (pc % m) as u8);
            }
        }
        let t_len = self.t.len();
        let dims: Vec<usize> = (from..t_len).map(|c| self.t.dim(c)).collect();
        self.note_t(
            from,
            s,
            |c| TOrigin::Cylinder(s as u32, cyl_origin[c - from].0, cyl_origin[c - from].1),
            |c| CellRef::new(c, Sym::identity(dims[c - from])),
        );
        if !with_u {
            return Ok(());
        }

        // U grows by a copy of A′ and T′ × A
        let acopy = self.aprime_copy(s);
        let na = self.a.len();
        let prod = product(&tp, &self.a);
        let from_u = self.u.len();
        let (a0, a_ids, i_prev) = (self.a0, &self.a_ids, &self.i);
        let prod_img = import(&mut self.u, &prod, |pc, _| {
            let (c, a) = (pc / na, pc % na);
            if a == a0 {
                Some(i_prev[tp_ids[c]].expect("i is defined on the boundary"))
            } else if c == w0_sub {
                Some(acopy[a_ids[a]])
            } else {
                None
            }
        });
        let mut prod_origin = vec![(0u32, 0u32); self.u.len() - from_u];
        for (pc, r) in prod_img.iter().enumerate() {
            if r.cell() >= from_u {
                prod_origin[r.cell() - from_u] = (tp_ids[pc / na] as u32, (pc % na) as u32);
            }
        }
        let u_len = self.u.len();
        let udims: Vec<usize> = (from_u..u_len).map(|c| self.u.dim(c)).collect();
        self.note_u(
            from_u,
            s,
            |c| {
                UOrigin::Product(
                    s as u32,
                    prod_origin[c - from_u].0,
                    prod_origin[c - from_u].1,
                )
            },
            |c| CellRef::new(c, Sym::identity(udims[c - from_u])),
        );

        // i on the cylinder: (c, s) ↦ (c, j(s))
        for (pc, r) in cyl_img.iter().enumerate() {
            if r.cell() < from {
                continue;
            }
            let (c, q) = (pc / m, pc % m);
            let dc = tp.dim(c);
            let (jq, jsym) = if self.j_cells.is_empty() {
                (self.a0, Sym::collapse())
            } else if q <= PATH_LENGTH {
                (self.j_vertices[q], Sym::collapse())
            } else {
                let e = self.j_cells[q - PATH_LENGTH - 1];
                (e.cell(), e.sym)
            };
            let sym = Sym::identity(dc).direct_sum(dc, &jsym);
            self.i[r.cell()] = Some(prod_img[c * na + jq].after(&sym));
        }
        Ok(())
    }
}

/// Builds `T_X` (and `U_X` when `keep_u`). Without `keep_u`, `U` is only
/// grown for simplices lying in the boundary of a higher simplex.
pub fn kt_build_with(kit: &AcyclicKit, x: &DeltaComplex, keep_u: bool) -> Result<KtResult> {
    x.require_category_c()?;
    kit.validate()?;
    let mut needed = vec![keep_u; x.len()];
    if !keep_u {
        let higher: Vec<usize> = x.simplices().filter(|&s| x.dim(s) >= 2).collect();
        for &s in &higher {
            let bd = x.closure_mask(x.faces(s).iter().copied());
            for (w, b) in bd.iter().enumerate() {
                needed[w] |= *b;
            }
        }
    }
    let order = processing_order(x);
    let mut b = Builder::new(x, kit);
    for &s in &order {
        match x.dim(s) {
            0 => b.vertex(s),
            1 => b.edge(s, needed[s]),
            _ => b.higher(s, needed[s])?,
        }
    }
    let tau = Involution::new(&b.t, CubeMap { images: b.t_tau })?;
    let u = if keep_u {
        let i = CubeMap {
            images: b
                .i
                .into_iter()
                .map(|r| r.expect("i is defined everywhere when U is kept"))
                .collect(),
        };
        let utau = Involution::new(&b.u, CubeMap { images: b.u_tau })?;
        Some(UPart {
            complex: b.u,
            tau: utau,
            owner: b.u_owner,
            i,
        })
    } else {
        None
    };
    Ok(KtResult {
        t: b.t,
        tau,
        t_owner: b.t_owner,
        t_origin: b.t_origin,
        u_origin: b.u_origin,
        u,
        order,
    })
}

/// Builds `T_X` and `U_X`.
pub fn kt_build(kit: &AcyclicKit, x: &DeltaComplex) -> Result<KtResult> {
    kt_build_with(kit, x, true)
}

/// The fixed set `T_X^τ`.
pub fn kt_fixed(r: &KtResult) -> Result<CubeComplex> {
    Ok(fixed_subcomplex(&r.t, &r.tau)?.0)
}

/// The orbit space `T_X/τ`.
pub fn kt_quotient(r: &KtResult) -> Result<CubeComplex> {
    Ok(quotient_by_involution(&r.t, &r.tau)?.0)
}

/// The cubical map `T_f: T_X → T_Y` of a Δ-map injective on every simplex.
/// Both results must come from the same kit.
pub fn kt_map(
    f: &DeltaMap,
    x: &DeltaComplex,
    rx: &KtResult,
    y: &DeltaComplex,
    ry: &KtResult,
) -> Result<CubeMap> {
    f.check(x, y)?;
    if !f.is_injective_on_simplices(x) {
        return Err(Error::InvalidMap(
            "map is not injective on some simplex".into(),
        ));
    }
    let t_index: HashMap<TOrigin, usize> = ry
        .t_origin
        .iter()
        .enumerate()
        .map(|(c, o)| (*o, c))
        .collect();
    let u_index: HashMap<UOrigin, usize> = ry
        .u_origin
        .iter()
        .enumerate()
        .map(|(c, o)| (*o, c))
        .collect();
    let fs = |s: u32| f.images[s as usize] as u32;
    let mut position = vec![0usize; x.len()];
    for (p, &s) in rx.order.iter().enumerate() {
        position[s] = p;
    }
    let u_step = |o: &UOrigin| match *o {
        UOrigin::Base => None,
        UOrigin::Aprime(s, _) | UOrigin::Product(s, _, _) => Some(position[s as usize]),
    };
    let missing = |what: &str| {
        Error::InvalidMap(format!(
            "no image for {what}; were both built with the same kit?"
        ))
    };
    let mut tf = vec![usize::MAX; rx.t.len()];
    let mut uf: Vec<Option<usize>> = vec![None; rx.u_origin.len()];
    let (mut tc, mut uc) = (0usize, 0usize);
    for p in 0..=rx.order.len() {
        while uc < rx.u_origin.len() && u_step(&rx.u_origin[uc]).is_none_or(|q| q < p) {
            let o = match rx.u_origin[uc] {
                UOrigin::Base => UOrigin::Base,
                UOrigin::Aprime(s, a) => UOrigin::Aprime(fs(s), a),
                UOrigin::Product(s, c, a) => UOrigin::Product(fs(s), tf[c as usize] as u32, a),
            };
            uf[uc] = u_index.get(&o).copied();
            uc += 1;
        }
        while tc < rx.t.len() && position[rx.t_owner[tc]] < p {
            let o = match rx.t_origin[tc] {
                TOrigin::Vertex(s) => TOrigin::Vertex(fs(s)),
                TOrigin::Path(s, q) => TOrigin::Path(fs(s), q),
                TOrigin::UCopy(s, u) => TOrigin::UCopy(
                    fs(s),
                    uf[u as usize].ok_or_else(|| missing("a cell of U"))? as u32,
                ),
                TOrigin::Cylinder(s, c, q) => TOrigin::Cylinder(fs(s), tf[c as usize] as u32, q),
            };
            tf[tc] = *t_index.get(&o).ok_or_else(|| missing("a cell of T"))?;
            tc += 1;
        }
    }
    let map = CubeMap {
        images: (0..rx.t.len())
            .map(|c| identity_ref(&ry.t, tf[c]))
            .collect(),
    };
    map.check(&rx.t, &ry.t)?;
    Ok(map)
}

/// Iterated mapping cylinder of the skeleton inclusions
/// `T_{X^0} ⊆ T_{X^1} ⊆ … ⊆ T_{X^n}`: the part of `T_X × [0, n + 1]` where
/// `T_{X^k}` sits over `[k, k + 1]`.
pub fn t_prime_build(r: &KtResult, x: &DeltaComplex) -> Result<CubeComplex> {
    let n = x.dimension().unwrap_or(0);
    let iv = interval(n + 1);
    let m = iv.len();
    let prod = product(&r.t, &iv);
    let keep: Vec<bool> = prod
        .cells()
        .map(|pc| {
            let (c, q) = (pc / m, pc % m);
            let level = if q <= n + 1 { q } else { q - (n + 2) };
            x.dim(r.t_owner[c]) <= level
        })
        .collect();
    Ok(prod.subcomplex(&keep)?.0)
}

/// Relative homology of one skeleton pair.
#[derive(Clone, Debug)]
pub struct FiltrationLevel {
    pub k: usize,
    pub simplices: usize,
    pub relative: HomologyGroups,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub levels: Vec<FiltrationLevel>,
    pub homology_t: HomologyGroups,
    pub homology_x: HomologyGroups,
    pub homology_match: bool,
    /// Every `T_W` for `W` the closure of a simplex or a skeleton is a subcomplex.
    pub labels_ok: bool,
    pub pass: bool,
}

fn skeleton(x: &DeltaComplex, k: Option<usize>) -> Vec<bool> {
    x.simplices()
        .map(|s| k.is_some_and(|k| x.dim(s) <= k))
        .collect()
}

/// Checks `H_*(T_{X^k}, T_{X^{k-1}})` against `H_*(X^k, X^{k-1})` for every
/// `k`, and `H_*(T_X)` against `H_*(X)`.
pub fn filtration_check(r: &KtResult, x: &DeltaComplex) -> Result<FiltrationReport> {
    let n = x.dimension().unwrap_or(0);
    let mut levels = Vec::new();
    for k in 0..=n {
        let upper = r.t_mask(&skeleton(x, Some(k)));
        let lower = r.t_mask(&skeleton(x, k.checked_sub(1)));
        let (sub, ids) = r.t.subcomplex(&upper)?;
        let mut inner = vec![false; sub.len()];
        for (old, new) in ids.iter().enumerate() {
            if let Some(nw) = new {
                inner[*nw] = lower[old];
            }
        }
        let relative = relative_homology(&sub, &inner)?;
        let simplices = x.simplices_of_dim(k).count();
        let top = relative.groups.len().max(k + 1);
        let pass = (0..top).all(|d| {
            let g = relative.degree(d);
            g.torsion.is_empty() && g.betti == if d == k { simplices } else { 0 }
        });
        levels.push(FiltrationLevel {
            k,
            simplices,
            relative,
            pass,
        });
    }
    let homology_t = cube_homology(&r.t);
    let homology_x = delta_homology(x);
    let top = homology_t.groups.len().max(homology_x.groups.len());
    let homology_match = (0..top).all(|d| homology_t.degree(d) == homology_x.degree(d));
    let mut labels_ok = true;
    for s in x.simplices() {
        labels_ok &= r.t.is_subcomplex(&r.t_mask(&x.closure_mask([s])));
    }
    for k in 0..=n {
        labels_ok &= r.t.is_subcomplex(&r.t_mask(&skeleton(x, Some(k))));
    }
    let pass = levels.iter().all(|l| l.pass) && homology_match && labels_ok;
    Ok(FiltrationReport {
        levels,
        homology_t,
        homology_x,
        homology_match,
        labels_ok,
        pass,
    })
}
