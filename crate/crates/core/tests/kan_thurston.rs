use cubecx::complex::ops::{interval, mapping_cylinder};
use cubecx::complex::{
    barycentric_subdivision, fixed_subcomplex, gromov_check, is_combinatorially_convex,
    mapping_torus, CellRef, CubeComplex, CubeMap, DeltaComplex, DeltaMap, Involution,
    SimplicialComplex,
};
use cubecx::homology::{
    cube_homology, cube_reduced_homology, delta_homology, is_acyclic, HomologyGroups,
};
use cubecx::kan_thurston::*;
use cubecx::Sym;
use proptest::prelude::*;
use std::collections::{BTreeSet, HashSet};

fn cycle_delta(n: usize) -> DeltaComplex {
    let mut x = DeltaComplex::new();
    for _ in 0..n {
        x.push_vertex();
    }
    for i in 0..n {
        x.push_simplex(&[(i + 1) % n, i]).unwrap();
    }
    x
}

/// Δ-map of complexes built by `from_simplicial`, given on vertices.
fn vertex_map(x: &DeltaComplex, y: &DeltaComplex, fv: impl Fn(usize) -> usize) -> DeltaMap {
    let key = |c: &DeltaComplex, s: usize| c.vertices_of(s);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        y.simplices().map(|s| (key(y, s), s)).collect();
    DeltaMap {
        images: x
            .simplices()
            .map(|s| index[&key(x, s).into_iter().map(&fv).collect::<Vec<_>>()])
            .collect(),
    }
}

/// Homology equality up to trailing zero groups.
fn same_homology(a: &HomologyGroups, b: &HomologyGroups) -> bool {
    let n = a.groups.len().max(b.groups.len());
    (0..n).all(|k| a.degree(k) == b.degree(k))
}

fn corpus() -> Vec<(&'static str, DeltaComplex)> {
    vec![
        ("point", DeltaComplex::standard_simplex(0)),
        ("edge", DeltaComplex::standard_simplex(1)),
        ("circle", DeltaComplex::simplex_boundary(1)),
        ("triangle", DeltaComplex::standard_simplex(2)),
        ("sphere", DeltaComplex::simplex_boundary(2)),
    ]
}

/// Cell counts of `T_X` for the point kit, by recursion over the simplices:
/// an edge adds 3 vertices and 4 edges; a higher simplex adds the apex and
/// 3 + 4 cells over each cell of `T_∂σ`.
fn mock_count_oracle(x: &DeltaComplex) -> Vec<usize> {
    let order = processing_order(x);
    let mut created: Vec<Vec<usize>> = vec![Vec::new(); x.len()];
    for &s in &order {
        created[s] = match x.dim(s) {
            0 => vec![1],
            1 => vec![3, 4],
            _ => {
                let bd = x.closure_mask(x.faces(s).iter().copied());
                let mut t_bd = [0usize; 8];
                for w in x.simplices().filter(|&w| bd[w]) {
                    for (d, n) in created[w].iter().enumerate() {
                        t_bd[d] += n;
                    }
                }
                let mut out = vec![0usize; 9];
                out[0] += 1;
                for d in 0..8 {
                    out[d] += 3 * t_bd[d];
                    out[d + 1] += 4 * t_bd[d];
                }
                out
            }
        };
    }
    let mut total = vec![0usize; 9];
    for c in &created {
        for (d, n) in c.iter().enumerate() {
            total[d] += n;
        }
    }
    while total.len() > 1 && total.last() == Some(&0) {
        total.pop();
    }
    total
}

/// Simplex counts of the barycentric subdivision from chains of faces.
fn flag_counts(s: &SimplicialComplex) -> Vec<usize> {
    let faces: Vec<BTreeSet<usize>> = s.faces().map(|f| f.iter().copied().collect()).collect();
    let mut counts = vec![faces.len()];
    let mut chains: Vec<Vec<usize>> = (0..faces.len()).map(|i| vec![i]).collect();
    loop {
        let mut next = Vec::new();
        for ch in &chains {
            let top = &faces[*ch.last().unwrap()];
            for (k, f) in faces.iter().enumerate() {
                if f.len() > top.len() && top.is_subset(f) {
                    let mut c = ch.clone();
                    c.push(k);
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        counts.push(next.len());
        chains = next;
    }
    counts
}

#[test]
fn mapping_constructions() {
    // Y = point: the torus is a circle of 8 edges
    let mut pt = CubeComplex::new();
    pt.push_vertex();
    let torus = mapping_torus(&pt, &CubeMap::identity(&pt), 8).complex;
    assert_eq!(torus.counts(), vec![8, 8]);
    assert_eq!(cube_homology(&torus).betti(), vec![1, 1]);

    // identity cylinder is the product
    let c = cubecx::complex::ops::cycle(5);
    let cyl = mapping_cylinder(&c, &c, &CubeMap::identity(&c), 3).complex;
    assert_eq!(cyl.counts(), vec![5 * 4, 5 * 3 + 5 * 4, 5 * 3]);
    // constant map: a cone
    let to_pt = CubeMap {
        images: c.cells().map(|_| CellRef::vertex(0)).collect(),
    };
    to_pt.check(&c, &pt).unwrap();
    let cone = mapping_cylinder(&c, &pt, &to_pt, 4).complex;
    assert!(is_acyclic(&cone));

    // the 2-fold cover of a circle
    let c6 = cubecx::complex::ops::cycle(6);
    let c3 = cubecx::complex::ops::cycle(3);
    let wrap = CubeMap {
        images: c6
            .cells()
            .map(|q| {
                if q < 6 {
                    CellRef::vertex(q % 3)
                } else {
                    CellRef::new(3 + (q - 6) % 3, Sym::line(false))
                }
            })
            .collect(),
    };
    wrap.check(&c6, &c3).unwrap();
    let m = mapping_cylinder(&c6, &c3, &wrap, 2).complex;
    assert!(same_homology(&cube_homology(&m), &cube_homology(&c3)));
    assert_eq!(interval(3).counts(), vec![4, 3]);
}

#[test]
fn mock_kit_corpus() {
    let kit = mock_kit();
    kit.validate().unwrap();
    let expected_betti = [
        vec![1],
        vec![1, 0],
        vec![1, 1],
        vec![1, 0, 0],
        vec![1, 0, 1],
    ];
    for ((name, x), betti) in corpus().iter().zip(expected_betti) {
        let r = kt_build(&kit, x).unwrap();
        let h = cube_homology(&r.t);
        let mut b = h.betti();
        b.resize(betti.len().max(b.len()), 0);
        let mut want = betti.clone();
        want.resize(b.len(), 0);
        assert_eq!(b, want, "{name}");
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
        assert_eq!(r.t.counts(), mock_count_oracle(x), "{name}");
        let report = filtration_check(&r, x).unwrap();
        assert!(report.pass, "{name}");
        // τ is trivial, so T^τ = T
        assert_eq!(kt_fixed(&r).unwrap(), r.t);
        assert_eq!(r.u.as_ref().unwrap().complex.counts(), vec![1]);
        // the point kit never raises dimension
        assert_eq!(r.t.dimension(), x.dimension());
    }
    // single vertex and edge give a vertex and a 4-path
    let r0 = kt_build(&kit, &DeltaComplex::standard_simplex(0)).unwrap();
    assert_eq!(r0.t.counts(), vec![1]);
    let r1 = kt_build(&kit, &DeltaComplex::standard_simplex(1)).unwrap();
    assert_eq!(r1.t.counts(), vec![5, 4]);
}

#[test]
fn barycentric_sphere_ranks() {
    let s = SimplicialComplex::from_facets(
        4,
        &[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
    )
    .unwrap();
    let x = barycentric_subdivision(&DeltaComplex::from_simplicial(&s));
    assert_eq!(flag_counts(&s), vec![14, 36, 24]);
    let start = std::time::Instant::now();
    let r = kt_build(&mock_kit(), &x).unwrap();
    assert!(start.elapsed().as_secs_f64() < 1.0);
    let report = filtration_check(&r, &x).unwrap();
    let ranks: Vec<usize> = report
        .levels
        .iter()
        .map(|l| l.relative.degree(l.k).betti)
        .collect();
    assert_eq!(ranks, flag_counts(&s));
    assert!(report.pass);
    assert_eq!(report.homology_t.betti(), vec![1, 0, 1]);
    assert_eq!(r.t.counts(), mock_count_oracle(&x));
}

#[test]
fn union_and_labels() {
    let kit = mock_kit();
    let x = DeltaComplex::simplex_boundary(2);
    let r = kt_build(&kit, &x).unwrap();
    let tri: Vec<usize> = x.simplices_of_dim(2).collect();
    let x1 = x.closure_mask(tri[..2].iter().copied());
    let x2 = x.closure_mask(tri[2..].iter().copied());
    let both: Vec<bool> = x1.iter().zip(&x2).map(|(a, b)| *a && *b).collect();
    let (m1, m2, m12) = (r.t_mask(&x1), r.t_mask(&x2), r.t_mask(&both));
    let all = r.t_mask(&vec![true; x.len()]);
    for c in r.t.cells() {
        assert_eq!(m1[c] || m2[c], all[c]);
        assert_eq!(m1[c] && m2[c], m12[c]);
    }
    for m in [&m1, &m2, &m12] {
        assert!(r.t.is_subcomplex(m));
    }
    // T_W built on its own is the labelled piece
    for w in [&x1, &x2, &both] {
        let (wx, ids) = x.subcomplex(w).unwrap();
        let incl = DeltaMap {
            images: {
                let mut back = vec![0; wx.len()];
                for (old, new) in ids.iter().enumerate() {
                    if let Some(n) = new {
                        back[*n] = old;
                    }
                }
                back
            },
        };
        let rw = kt_build(&kit, &wx).unwrap();
        let map = kt_map(&incl, &wx, &rw, &x, &r).unwrap();
        let image: HashSet<usize> = map.images.iter().map(|c| c.cell()).collect();
        assert_eq!(image.len(), rw.t.len());
        let want: HashSet<usize> = r
            .t_mask(w)
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(c, _)| c)
            .collect();
        assert_eq!(image, want);
    }
}

#[test]
fn functoriality() {
    let kit = mock_kit();
    // vertex inclusions into an edge
    let pt = DeltaComplex::standard_simplex(0);
    let e = DeltaComplex::standard_simplex(1);
    let (rp, re) = (kt_build(&kit, &pt).unwrap(), kt_build(&kit, &e).unwrap());
    let ends: Vec<usize> = (0..2)
        .map(|v| {
            kt_map(&DeltaMap { images: vec![v] }, &pt, &rp, &e, &re)
                .unwrap()
                .images[0]
                .cell()
        })
        .collect();
    assert_ne!(ends[0], ends[1]);
    for v in &ends {
        let deg = re.t.cells_of_dim(1).filter(|&q| {
            let (a, b) = re.t.edge_ends(q);
            a == *v || b == *v
        });
        assert_eq!(deg.count(), 1);
    }

    // identity
    let x = DeltaComplex::standard_simplex(2);
    let rx = kt_build(&kit, &x).unwrap();
    assert_eq!(
        kt_map(&DeltaMap::identity(&x), &x, &rx, &x, &rx).unwrap(),
        CubeMap::identity(&rx.t)
    );

    // coverings of circles compose
    let (c12, c6, c3) = (cycle_delta(12), cycle_delta(6), cycle_delta(3));
    let wrap = |from: usize, to: usize| DeltaMap {
        images: (0..2 * from)
            .map(|s| {
                if s < from {
                    s % to
                } else {
                    to + (s - from) % to
                }
            })
            .collect(),
    };
    let (f, g) = (wrap(12, 6), wrap(6, 3));
    f.check(&c12, &c6).unwrap();
    g.check(&c6, &c3).unwrap();
    let (r12, r6, r3) = (
        kt_build(&kit, &c12).unwrap(),
        kt_build(&kit, &c6).unwrap(),
        kt_build(&kit, &c3).unwrap(),
    );
    let tf = kt_map(&f, &c12, &r12, &c6, &r6).unwrap();
    let tg = kt_map(&g, &c6, &r6, &c3, &r3).unwrap();
    let tgf = kt_map(&g.compose(&f), &c12, &r12, &c3, &r3).unwrap();
    assert_eq!(tg.compose(&tf), tgf);

    // folding two triangles onto one, then including as a face of Δ³
    let two = DeltaComplex::from_simplicial(
        &SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap(),
    );
    let tri = DeltaComplex::standard_simplex(2);
    let tet = DeltaComplex::standard_simplex(3);
    let fold = vertex_map(&two, &tri, |v| v.min(2));
    let incl = vertex_map(&tri, &tet, |v| v);
    fold.check(&two, &tri).unwrap();
    incl.check(&tri, &tet).unwrap();
    let (r2, rt, r4) = (
        kt_build(&kit, &two).unwrap(),
        kt_build(&kit, &tri).unwrap(),
        kt_build(&kit, &tet).unwrap(),
    );
    let t_fold = kt_map(&fold, &two, &r2, &tri, &rt).unwrap();
    let t_incl = kt_map(&incl, &tri, &rt, &tet, &r4).unwrap();
    assert_eq!(
        t_incl.compose(&t_fold),
        kt_map(&incl.compose(&fold), &two, &r2, &tet, &r4).unwrap()
    );
    // equivariance
    assert_eq!(t_fold.compose(&r2.tau.map), rt.tau.map.compose(&t_fold));

    // not injective on a simplex
    let squash = DeltaMap {
        images: vec![0, 0, 0],
    };
    assert!(kt_map(&squash, &e, &re, &pt, &rp).is_err());
}

#[test]
fn iterated_cylinder() {
    let kit = mock_kit();
    let mut xs: Vec<DeltaComplex> = corpus().into_iter().map(|(_, x)| x).collect();
    xs.push(DeltaComplex::standard_simplex(3));
    xs.push(cycle_delta(4));
    xs.push(barycentric_subdivision(&DeltaComplex::standard_simplex(2)));
    xs.push(DeltaComplex::from_simplicial(
        &SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![2, 3]]).unwrap(),
    ));
    xs.push(DeltaComplex::from_simplicial(
        &SimplicialComplex::from_facets(3, &[vec![0, 1], vec![2]]).unwrap(),
    ));
    assert_eq!(xs.len(), 10);
    for x in &xs {
        let r = kt_build(&kit, x).unwrap();
        let tp = t_prime_build(&r, x).unwrap();
        assert!(same_homology(&cube_homology(&tp), &cube_homology(&r.t)));
        if x.dimension().unwrap() >= 1 {
            assert_eq!(tp.dimension().unwrap(), r.t.dimension().unwrap() + 1);
        }
    }
    // an edge: two points over [0, 1], the 4-path over [1, 2]
    let e = DeltaComplex::standard_simplex(1);
    let tp = t_prime_build(&kt_build(&kit, &e).unwrap(), &e).unwrap();
    assert_eq!(tp.counts(), vec![2 + 2 * 5, 2 + 5 + 2 * 4, 4]);
}

#[test]
fn rejects_outside_category() {
    // a 2-simplex whose three edges are one loop
    let mut x = DeltaComplex::new();
    let v = x.push_vertex();
    let e = x.push_simplex(&[v, v]).unwrap();
    x.push_simplex(&[e, e, e]).unwrap();
    assert!(kt_build(&mock_kit(), &x).is_err());
}

#[test]
fn genuine_kit() {
    let p = aa_pipeline(false).unwrap();
    let kit = &p.kit;
    assert_eq!(kit.dims(), (2, 3));
    assert!(kit.check_acyclic().unwrap());
    assert_eq!(cube_homology(&p.x1).betti(), vec![1, 1, 0, 0]);
    assert!(cube_homology(&p.x1)
        .groups
        .iter()
        .all(|g| g.torsion.is_empty()));
    // τ₁ descends from the product and fixes the end slice
    let yc = &p.y.complex.complex;
    for q in yc.cells() {
        assert_eq!(p.tau1.image(q), CellRef::new(q, Sym::identity(yc.dim(q))));
    }
    // Y maps isomorphically onto the fixed set
    p.y_to_a.check(yc, &kit.aprime).unwrap();
    let image: HashSet<usize> = p.y_to_a.images.iter().map(|r| r.cell()).collect();
    assert_eq!(image.len(), yc.len());
    let fixed: HashSet<usize> = kit
        .a_mask
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(c, _)| c)
        .collect();
    assert_eq!(image, fixed);
    assert!(p.y_to_a.images.iter().all(|r| r.sym.is_identity()));
    assert!(gromov_check(&kit.aprime).pass);
    assert!(gromov_check(&p.x2).pass);
    assert_eq!(
        fixed_subcomplex(&p.x2, &p.tau2).unwrap().0.counts(),
        yc.counts()
    );

    // the other petal assignment: τ₂ on the x2 part and the identity on Y
    // give an equivariant isomorphism of pairs
    let q = aa_pipeline(true).unwrap();
    assert_eq!(q.kit.aprime.counts(), kit.aprime.counts());
    let mut images: Vec<Option<CellRef>> = vec![None; kit.aprime.len()];
    for c in yc.cells() {
        images[c] = Some(CellRef::new(c, Sym::identity(yc.dim(c))));
    }
    for c in p.x2.cells() {
        let r = p.x2_to_a.images[c];
        if r.sym.is_identity() && images[r.cell()].is_none() {
            let t = p.tau2.image(c);
            images[r.cell()] = Some(q.x2_to_a.images[t.cell()].after(&t.sym));
        }
    }
    let psi = CubeMap {
        images: images.into_iter().map(Option::unwrap).collect(),
    };
    psi.check(&kit.aprime, &q.kit.aprime).unwrap();
    let targets: HashSet<usize> = psi.images.iter().map(|r| r.cell()).collect();
    assert_eq!(targets.len(), kit.aprime.len());
    assert!(kit
        .aprime
        .cells()
        .all(|c| psi.images[c].sym.is_bijective(kit.aprime.dim(c))));
    assert_eq!(psi.compose(&kit.tau.map), q.kit.tau.map.compose(&psi));
    assert!(kit
        .aprime
        .cells()
        .all(|c| kit.a_mask[c] == q.kit.a_mask[psi.images[c].cell()]));

    // j runs along a petal of A based at a0
    assert_eq!(kit.j.len(), LOOP_LENGTH);
    assert_eq!(kit.loop_vertex(0), kit.a0);
}

#[test]
fn genuine_edge_and_triangle() {
    let kit = build_aa_pair().unwrap();
    let e = DeltaComplex::standard_simplex(1);
    let r = kt_build(&kit, &e).unwrap();
    assert_eq!(r.t.counts(), vec![5, 4]);
    assert_eq!(kt_fixed(&r).unwrap(), r.t);
    let u = r.u.as_ref().unwrap();
    assert_eq!(u.complex.dimension(), Some(u_dimension_law(1)));
    u.i.check(&r.t, &u.complex).unwrap();
    assert!(filtration_check(&r, &e).unwrap().pass);

    let x = DeltaComplex::standard_simplex(2);
    let r = kt_build_with(&kit, &x, false).unwrap();
    assert_eq!(r.t.dimension(), Some(t_dimension_law(2)));
    let fixed = kt_fixed(&r).unwrap();
    assert_eq!(fixed.dimension(), Some(2));
    assert!(cube_reduced_homology(&fixed).is_trivial());
    let bd = x.closure_mask(x.faces(6).iter().copied());
    assert!(is_combinatorially_convex(&r.t, &r.t_mask(&bd)).unwrap());
    let _: &Involution = &r.tau;
}

fn random_complex() -> impl Strategy<Value = DeltaComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..5, 1..4), 1..5).prop_map(|facets| {
        let facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect();
        DeltaComplex::from_simplicial(&SimplicialComplex::from_facets(5, &facets).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn mock_functor_preserves_homology(x in random_complex()) {
        let r = kt_build(&mock_kit(), &x).unwrap();
        let report = filtration_check(&r, &x).unwrap();
        prop_assert!(report.pass);
        prop_assert!(same_homology(&cube_homology(&r.t), &delta_homology(&x)));
        prop_assert_eq!(r.t.counts(), mock_count_oracle(&x));
        // deterministic
        let again = kt_build(&mock_kit(), &x).unwrap();
        prop_assert_eq!(&again.t, &r.t);
        prop_assert_eq!(kt_quotient(&r).unwrap(), r.t.clone());
    }
}
