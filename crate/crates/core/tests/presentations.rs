use cubecx::complex::{
    fixed_subcomplex, gromov_check, is_combinatorially_convex, quotient_by_involution, CubeMap,
    LinkDefect,
};
use cubecx::homology::{
    cube_reduced_homology, is_acyclic, presentation_h1_h2, trivializing_reduction_check,
};
use cubecx::polygon::rectangle;
use cubecx::presentation::*;
use cubecx::Error;
use proptest::prelude::*;
use std::collections::{BTreeSet, HashMap};

/// Fraction-free determinant, used as an independent acyclicity oracle for
/// square exponent matrices: `|det| = 1` iff `H_1 = H_2 = 0`.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn exponent_det(p: &Presentation) -> i128 {
    bareiss_det(
        p.exponent_matrix()
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect(),
    )
}

fn h12_trivial(p: &Presentation) -> bool {
    let h = presentation_h1_h2(p);
    h.degree(1).is_zero() && h.degree(2).is_zero()
}

#[test]
fn words() {
    assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
    assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
    assert!(is_cyclically_reduced(&[1, 2]));
    assert!(!is_cyclically_reduced(&[1, 2, -1]));
    assert_eq!(
        letter_runs(&[1, 1, -2, 3, 3]),
        vec![vec![1, 1], vec![-2], vec![3, 3]]
    );
    assert!(Presentation::new(2, vec![vec![3]]).is_err());
}

#[test]
fn presentation_homology() {
    assert!(h12_trivial(&acycone_presentation()));
    assert_eq!(exponent_det(&acycone_presentation()).abs(), 1);

    let torus = Presentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap();
    let h = presentation_h1_h2(&torus);
    assert_eq!(h.degree(1).betti, 2);
    assert_eq!(h.degree(2).betti, 1);
    assert_eq!(h.lines()[1], "H_1 = Z^2");

    let rp2 = Presentation::new(1, vec![vec![1, 1]]).unwrap();
    assert_eq!(presentation_h1_h2(&rp2).lines()[1], "H_1 = Z/2");

    for n in 5..13 {
        let p = y_n_presentation(n).unwrap();
        assert!(h12_trivial(&p));
        assert_eq!(exponent_det(&p).abs(), 1);
    }
    for nn in 1..4 {
        let p = fewquot_presentation(nn).unwrap();
        assert!(h12_trivial(&p));
        assert_eq!(exponent_det(&p).abs(), 1);
    }
    assert!(h12_trivial(&acyctwo_presentation()));
    assert_eq!(exponent_det(&acyctwo_presentation()).abs(), 1);
}

#[test]
fn trivializing_examples() {
    assert!(!trivializing_reduction_check(
        &Presentation::new(1, vec![vec![1, 1]]).unwrap()
    ));
    assert!(trivializing_reduction_check(
        &Presentation::new(0, vec![]).unwrap()
    ));
    assert!(trivializing_reduction_check(
        &Presentation::new(2, vec![vec![1, 2, -2], vec![-2]]).unwrap()
    ));
    assert!(!trivializing_reduction_check(
        &Presentation::new(2, vec![vec![1]]).unwrap()
    ));
}

#[test]
fn smoke_complex() {
    // a single relator a⁴ on a petal of length 2, realized by the 2×2 square
    let p = Presentation::new(1, vec![vec![1; 4]]).unwrap();
    let spec = ComplexSpec {
        presentation: p.clone(),
        petal_length: 2,
        cells: vec![CellRecipe {
            side_letters: vec![1; 4],
            polygon: rectangle(2, 2).unwrap(),
        }],
    };
    let c = presentation_complex(&spec).unwrap();
    assert_eq!(c.complex.counts(), vec![2 + 1, 2 + 4, 4]);
    let h = cube_reduced_homology(&c.complex);
    assert_eq!(h.lines()[1], "H_1 = Z/4");

    // one letter cannot fill a perimeter of 4 with a 4-gon
    let bad = ComplexSpec {
        presentation: Presentation::new(1, vec![vec![1]]).unwrap(),
        petal_length: 4,
        cells: vec![CellRecipe {
            side_letters: vec![1],
            polygon: rectangle(1, 1).unwrap(),
        }],
    };
    assert!(presentation_complex(&bad).is_err());
    let odd = ComplexSpec {
        petal_length: 3,
        ..spec.clone()
    };
    assert!(matches!(
        presentation_complex(&odd),
        Err(Error::InvalidPresentation(_))
    ));
    let unreduced = ComplexSpec {
        presentation: Presentation::new(1, vec![vec![1, 1, -1, 1]]).unwrap(),
        ..spec.clone()
    };
    assert!(presentation_complex(&unreduced).is_err());
}

fn check_perimeters(spec: &ComplexSpec) {
    for (r, cell) in spec.presentation.relators.iter().zip(&spec.cells) {
        assert_eq!(cell.polygon.perimeter(), spec.petal_length * r.len());
    }
}

/// Centre link with the chains through interior polygon edges contracted:
/// one entry per arc between petal ends, labels `(generator, inward)`.
fn centre_arcs(c: &PresentationComplex) -> Vec<((usize, bool), (usize, bool))> {
    let link = c.centre_link().unwrap();
    let mut label = HashMap::new();
    for g in 0..c.n_generators() {
        for inward in [false, true] {
            label.insert(c.petal_end(g, inward), (g, inward));
        }
    }
    let nv = link.vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for s in link.simplices.iter().filter(|s| s.vertices.len() == 2) {
        adj[s.vertices[0]].push(s.vertices[1]);
        adj[s.vertices[1]].push(s.vertices[0]);
    }
    let is_end = |v: usize| label.contains_key(&link.vertices[v]);
    let mut arcs = Vec::new();
    for v in (0..nv).filter(|&v| is_end(v)) {
        for &first in &adj[v] {
            let (mut prev, mut cur) = (v, first);
            while !is_end(cur) {
                assert_eq!(adj[cur].len(), 2, "interior edges lie in two squares");
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
            }
            let (a, b) = (label[&link.vertices[v]], label[&link.vertices[cur]]);
            if a < b {
                arcs.push((a, b));
            }
        }
    }
    arcs.sort_unstable();
    arcs
}

/// Arcs of length one between petal ends.
fn labelled_centre_link(c: &PresentationComplex) -> BTreeSet<((usize, bool), (usize, bool))> {
    let link = c.centre_link().unwrap();
    let mut label = HashMap::new();
    for g in 0..c.n_generators() {
        for inward in [false, true] {
            label.insert(c.petal_end(g, inward), (g, inward));
        }
    }
    link.simplices
        .iter()
        .filter(|s| s.vertices.len() == 2)
        .filter_map(|s| {
            let a = *label.get(&link.vertices[s.vertices[0]])?;
            let b = *label.get(&link.vertices[s.vertices[1]])?;
            Some((a.min(b), a.max(b)))
        })
        .collect()
}

#[test]
fn y_n_complexes() {
    let y8 = y_n(8, 4).unwrap();
    assert_eq!(y8.complex.counts()[2], 8 * 20);
    assert!(gromov_check(&y8.complex).pass);
    check_perimeters(&y_n_spec(8, 4).unwrap());

    let y7 = y_n(7, 4).unwrap();
    let report = gromov_check(&y7.complex);
    assert!(!report.pass);
    let f = &report.failures[0];
    assert_eq!(f.vertex, y7.centre());
    match &f.defect {
        LinkDefect::MissingSimplex(vs) => assert_eq!(vs.len(), 3),
        d => panic!("unexpected defect {d:?}"),
    }

    for n in 7..13 {
        let y = y_n(n, 4).unwrap();
        let built = labelled_centre_link(&y);
        let graph = link_graph_yn(n).unwrap();
        // vertex 2i is the inward end of a_i, 2i+1 the outward end
        let from_rule: BTreeSet<_> = graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                let a = (u / 2, u % 2 == 0);
                let b = (v / 2, v % 2 == 0);
                (a.min(b), a.max(b))
            })
            .collect();
        assert_eq!(built, from_rule, "n = {n}");
        assert_eq!(graph.n_vertices(), 2 * n);
        assert_eq!(graph.edges().len(), 5 * n);
        if n >= 8 {
            assert!(graph.girth().unwrap() >= 4);
            assert!(cube_reduced_homology(&y.complex).is_trivial());
            assert!(gromov_check(&y.complex).pass);
        } else {
            assert_eq!(graph.girth(), Some(3));
        }
    }
    // the triangle a_1^(o), a_4^(i), a_6^(o) for n = 7
    let g7 = link_graph_yn(7).unwrap();
    let (o1, i4, o6) = (3, 8, 13);
    for (u, v) in [(o1, i4), (i4, o6), (o1, o6)] {
        assert!(g7.contains(&[u.min(v), u.max(v)]));
    }
    // petal length 2 still builds
    assert!(y_n(8, 2).is_ok());
    assert!(y_n(4, 4).is_err());
}

#[test]
fn acycone_complex() {
    let spec = acycone_spec(4).unwrap();
    check_perimeters(&spec);
    let patterns: BTreeSet<Vec<usize>> = spec
        .cells
        .iter()
        .map(|c| {
            let l = c.polygon.side_lengths();
            (0..6)
                .map(|k| (0..6).map(|j| l[(j + k) % 6]).collect::<Vec<_>>())
                .min()
                .unwrap()
        })
        .collect();
    let expected: BTreeSet<Vec<usize>> = [
        vec![4, 4, 4, 4, 4, 4],
        vec![4, 4, 4, 8, 4, 8],
        vec![4, 8, 4, 8, 4, 8],
    ]
    .into_iter()
    .collect();
    assert_eq!(patterns, expected);
    let c = presentation_complex(&spec).unwrap();
    assert!(gromov_check(&c.complex).pass);
    assert!(is_acyclic(&c.complex));
    // a = 0, c = 2, e = 4
    assert!(is_combinatorially_convex(&c.complex, &c.rose_mask(&[0, 2, 4])).unwrap());
    assert!(is_combinatorially_convex(&c.complex, &c.rose_mask(&[1, 3, 5])).unwrap());
    let is_a = [true, false, true, false, true, false];
    let sides: Vec<Vec<Word>> = (0..6).map(|j| spec.sides(j)).collect();
    assert!(meeting_points_distinct(&sides, &is_a).unwrap());
}

/// Corner arcs at the centre join an a-end to a b-end, each pair exactly once.
fn short_edges_complete_bipartite(c: &PresentationComplex, is_a: &[bool]) {
    let arcs = centre_arcs(c);
    let mixed: Vec<_> = arcs
        .iter()
        .filter(|(x, y)| is_a[x.0] != is_a[y.0])
        .collect();
    let distinct: BTreeSet<_> = mixed.iter().collect();
    let na = is_a.iter().filter(|&&a| a).count();
    let nb = is_a.len() - na;
    assert_eq!(mixed.len(), (2 * na) * (2 * nb));
    assert_eq!(distinct.len(), mixed.len());
    // no arc returns to its starting end
    assert!(arcs.iter().all(|(x, y)| x != y));
}

fn power_of(m: &CubeMap, k: usize) -> CubeMap {
    let mut out = m.clone();
    for _ in 1..k {
        out = out.compose(m);
    }
    out
}

#[test]
fn acyctwo_complex() {
    let a = acyctwo().unwrap();
    check_perimeters(&a.spec);
    for cell in &a.spec.cells {
        assert_eq!(
            cell.polygon.side_lengths(),
            vec![28, 24, 24, 24, 24, 24, 24, 24]
        );
    }
    let y = &a.complex.complex;
    assert!(is_acyclic(y));
    let (fixed, _) = fixed_subcomplex(y, &a.tau).unwrap();
    assert_eq!(fixed.counts(), vec![1]);
    let (q, _) = quotient_by_involution(y, &a.tau).unwrap();
    assert!(is_acyclic(&q));
    let qp = a.quotient_presentation().unwrap();
    assert_eq!(qp.n_generators, 4);
    assert_eq!(qp.relators.len(), 4);
    assert!(trivializing_reduction_check(&qp));

    let r4 = power_of(&a.rotation, 4);
    assert_eq!(r4, CubeMap::identity(y));
    assert_ne!(power_of(&a.rotation, 2), CubeMap::identity(y));

    let is_a: Vec<bool> = (0..8).map(|g| g < 4).collect();
    assert!(meeting_points_distinct(&acyctwo_side_words(), &is_a).unwrap());
    short_edges_complete_bipartite(&a.complex, &is_a);
    assert!(gromov_check(y).pass);
    assert!(is_combinatorially_convex(y, &a.complex.rose_mask(&[0, 1, 2, 3])).unwrap());
}

#[test]
fn fewquot_family() {
    let sides = fewquot_side_words(1).unwrap();
    for s in &sides {
        assert_eq!(
            s.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![5, 4, 4, 4, 4, 4]
        );
    }
    let spec = fewquot_spec(1, 4).unwrap();
    for c in &spec.cells {
        assert_eq!(c.polygon.side_lengths(), vec![20, 16, 16, 16, 16, 16]);
    }
    let is_a: Vec<bool> = (0..6).map(|g| g < 3).collect();
    for nn in 1..4 {
        let p = fewquot_presentation(nn).unwrap();
        assert!(h12_trivial(&p));
        let enlarged = p.with_powers(nn);
        assert!(presentation_h1_h2(&enlarged).degree(1).is_zero());
        let table = coset_enumeration(&enlarged, COSET_LIMIT).expect("enumeration within bound");
        assert_eq!(table.index(), 1);
        assert!(meeting_points_distinct(&fewquot_side_words(nn).unwrap(), &is_a).unwrap());
        let c = presentation_complex(&fewquot_spec(nn, 4).unwrap()).unwrap();
        assert!(gromov_check(&c.complex).pass);
        short_edges_complete_bipartite(&c, &is_a);
    }
    assert!(fewquot_presentation(0).is_err());
}

#[test]
fn meeting_point_counterexample() {
    // two relators sharing the corner a b
    let rels = vec![vec![vec![1], vec![2]], vec![vec![1], vec![2]]];
    assert!(!meeting_points_distinct(&rels, &[true, false]).unwrap());
    // b⁻¹a⁻¹ has the corner b⁻¹ a⁻¹, the inverse of a b
    let rels = vec![vec![vec![1], vec![2]], vec![vec![-2], vec![-1]]];
    assert!(!meeting_points_distinct(&rels, &[true, false]).unwrap());
    let rels = vec![vec![vec![1], vec![2]], vec![vec![1], vec![-2]]];
    assert!(meeting_points_distinct(&rels, &[true, false]).unwrap());
    assert!(meeting_points_distinct(&[vec![vec![1, 1], vec![2]]], &[true, false]).unwrap());
    assert!(meeting_points_distinct(&[vec![vec![1], vec![1]]], &[true, false]).is_err());
}

/// Every relator must fix every coset in a completed table.
fn table_satisfies(p: &Presentation, t: &CosetTable) -> bool {
    (0..t.index()).all(|c| {
        p.relators.iter().all(|r| {
            let mut x = c as u32;
            for &l in r {
                let col = 2 * generator_of(l) + usize::from(l < 0);
                x = t.action[x as usize][col];
            }
            x as usize == c
        })
    })
}

#[test]
fn coset_enumeration_orders() {
    let cases: Vec<(Presentation, usize)> = vec![
        (Presentation::new(1, vec![vec![1; 5]]).unwrap(), 5),
        (
            Presentation::new(2, vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]]).unwrap(),
            6,
        ),
        (
            Presentation::new(2, vec![vec![1, 1], vec![2, 2, 2], [1, 2].repeat(5)]).unwrap(),
            60,
        ),
        (
            Presentation::new(2, vec![vec![1, 2, -1, -2], vec![1; 3], vec![2; 4]]).unwrap(),
            12,
        ),
    ];
    for (p, order) in cases {
        let t = coset_enumeration(&p, COSET_LIMIT).unwrap();
        assert_eq!(t.index(), order);
        assert!(table_satisfies(&p, &t));
    }
    // Z is infinite: the bound is hit
    assert!(coset_enumeration(&Presentation::new(1, vec![]).unwrap(), 100).is_none());
}

fn word_strategy() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 0..20)
}

proptest! {
    #[test]
    fn reduction_properties(w in word_strategy(), v in word_strategy()) {
        let r = free_reduce(&w);
        prop_assert!(is_reduced(&r));
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert_eq!(invert(&invert(&w)), w.clone());
        prop_assert!(free_reduce(&concat(&[&w, &invert(&w)])).is_empty());
        prop_assert_eq!(free_reduce(&concat(&[&w, &v])), free_reduce(&concat(&[&r, &free_reduce(&v)])));
        prop_assert!(is_cyclically_reduced(&cyclic_reduce(&w)));
    }

    #[test]
    fn h1_matches_determinant(rels in prop::collection::vec(prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 1..8), 3)) {
        let p = Presentation::new(3, rels).unwrap();
        let det = exponent_det(&p).abs();
        let h = presentation_h1_h2(&p);
        let order: Option<num_bigint::BigInt> = (h.degree(1).betti == 0)
            .then(|| h.degree(1).torsion.iter().product());
        match det {
            0 => prop_assert!(h.degree(1).betti > 0 && h.degree(2).betti > 0),
            d => prop_assert_eq!(order, Some(num_bigint::BigInt::from(d))),
        }
    }
}
