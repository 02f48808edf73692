use std::collections::BTreeSet;

use projfill::complex::*;
use projfill::exactnum::{rat, Rational};
use projfill::family::{cartan_at, t_three};
use projfill::vinberg::{reference_poset, ReferenceKind};
use projfill::Exec;
use proptest::prelude::*;

fn x_prime() -> GluedComplex {
    build_xprime(&default_k6(), &default_k6())
}

fn x() -> GluedComplex {
    orientation_double_cover(&x_prime()).unwrap()
}

type Matching = Vec<(usize, usize)>;

/// All 1-factorizations of K6 as sets of five matchings, by brute force.
fn all_one_factorizations() -> Vec<Vec<Vec<(usize, usize)>>> {
    fn matchings(free: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
        let Some((&u, rest)) = free.split_first() else {
            return vec![vec![]];
        };
        let mut out = Vec::new();
        for (k, &v) in rest.iter().enumerate() {
            let mut left = rest.to_vec();
            left.remove(k);
            for mut m in matchings(left) {
                m.insert(0, (u, v));
                out.push(m);
            }
        }
        out
    }
    let all = matchings((0..6).collect());
    assert_eq!(all.len(), 15);
    let disjoint =
        |a: &Vec<(usize, usize)>, b: &Vec<(usize, usize)>| a.iter().all(|e| !b.contains(e));
    let mut out = Vec::new();
    fn extend(
        all: &[Matching],
        from: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Matching>>,
        disjoint: &dyn Fn(&Matching, &Matching) -> bool,
    ) {
        if chosen.len() == 5 {
            out.push(chosen.iter().map(|&k| all[k].clone()).collect());
            return;
        }
        for k in from..all.len() {
            if chosen.iter().all(|&c| disjoint(&all[c], &all[k])) {
                chosen.push(k);
                extend(all, k + 1, chosen, out, disjoint);
                chosen.pop();
            }
        }
    }
    extend(&all, 0, &mut Vec::new(), &mut out, &disjoint);
    out
}

fn coloring(factors: &[Vec<(usize, usize)>]) -> EdgeLabeledK6 {
    let edges: Vec<(usize, usize, u8)> = factors
        .iter()
        .enumerate()
        .flat_map(|(l, m)| m.iter().map(move |&(u, v)| (u, v, l as u8 + 1)))
        .collect();
    EdgeLabeledK6::from_edges(&edges).unwrap()
}

#[test]
fn default_k6_matchings_and_cycles() {
    let g = default_k6();
    for l in 1..=5u8 {
        let m = g.matching(l);
        assert_eq!(m.len(), 3);
        let covered: BTreeSet<usize> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
        assert_eq!(covered.len(), 6);
    }
    for u in 0..6 {
        let labels: BTreeSet<u8> = (0..6).filter(|&v| v != u).map(|v| g.label(u, v)).collect();
        assert_eq!(labels.len(), 5);
    }
    for i in 1..=5 {
        for j in i + 1..=5 {
            assert_eq!(pair_union_cycles(&g, i, j).unwrap(), vec![6]);
        }
    }
    assert_eq!(pair_union_cycles(&g, 2, 2), Err(ComplexError::SameLabel(2)));
}

#[test]
fn every_one_factorization_is_perfect() {
    let all = all_one_factorizations();
    assert_eq!(all.len(), 6);
    for f in &all {
        assert!(coloring(f).is_perfect());
    }
}

#[test]
fn invalid_colorings_are_rejected() {
    let mut edges: Vec<(usize, usize, u8)> = default_k6().edges();
    edges[0].2 = edges[1].2;
    assert!(EdgeLabeledK6::from_edges(&edges).is_err());
    edges.pop();
    assert!(EdgeLabeledK6::from_edges(&edges).is_err());
    assert!(matches!(
        parse_k6("0 1\n"),
        Err(ComplexError::Parse { line: 1, .. })
    ));
}

#[test]
fn block_gluing() {
    let b = build_block(&default_k6());
    assert_eq!(b.cell_count(), 6);
    assert_eq!(b.rules().len(), 15);
    let unglued = b.unglued_sides();
    assert_eq!(unglued.len(), 30);
    assert!(
        unglued.iter().all(|&(_, s)| s < 5),
        "only primed facets stay free"
    );
    for cell in 0..6 {
        assert_eq!(b.glued_mask(cell), 0b11111 << 5);
    }
    assert!(!b.is_orientable());
}

#[test]
fn block_boundary_components() {
    let g = default_k6();
    let b = build_block(&g);
    let comps = boundary_components(&b);
    assert_eq!(comps.len(), 5);
    for (i, comp) in comps.iter().enumerate() {
        assert_eq!(comp.sides.len(), 6);
        assert_eq!(comp.facets, vec![format!("{}'", i + 1)]);
        // oracle: the labels other than i connect all six nodes
        let mut reach = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(u) = frontier.pop() {
            for v in 0..6 {
                if v != u && g.label(u, v) as usize != i + 1 && reach.insert(v) {
                    frontier.push(v);
                }
            }
        }
        assert_eq!(reach.len(), 6);
        let degree = (0..6)
            .filter(|&v| v != 0 && g.label(0, v) as usize != i + 1)
            .count();
        assert_eq!(degree, 4);
    }
}

#[test]
fn single_cell_complex() {
    let c = GluedComplex::new(vec![CellTag::default()], vec![]).unwrap();
    // f-vector oracle: 30 − 60 + 40 − 10 + 1
    let f = reference_poset(ReferenceKind::Bitruncated).f_vector();
    let chi = f[0] as i64 - f[1] as i64 + f[2] as i64 - f[3] as i64 + 1;
    assert_eq!(chi, 1);
    assert_eq!(euler_characteristic(&c), chi);
    assert_eq!(boundary_components(&c).len(), 10);
    assert!(matches!(
        orientation_double_cover(&c),
        Err(ComplexError::NotClosed(10))
    ));
}

#[test]
fn bad_rules_are_rejected() {
    let cells = vec![CellTag::default(); 3];
    let twice = vec![
        Rule {
            a: 0,
            b: 1,
            facet: 5,
        },
        Rule {
            a: 0,
            b: 2,
            facet: 5,
        },
    ];
    assert!(matches!(
        GluedComplex::new(cells.clone(), twice),
        Err(ComplexError::DoubleGlued { cell: 0, .. })
    ));
    assert!(GluedComplex::new(
        cells.clone(),
        vec![Rule {
            a: 1,
            b: 1,
            facet: 0
        }]
    )
    .is_err());
    assert!(GluedComplex::new(
        cells,
        vec![Rule {
            a: 0,
            b: 7,
            facet: 0
        }]
    )
    .is_err());
}

#[test]
fn x_prime_is_closed_and_non_orientable() {
    let xp = x_prime();
    assert_eq!(xp.cell_count(), 36);
    assert!(xp.is_closed());
    assert!(xp.is_connected());
    assert!(!xp.is_orientable());
    assert_eq!(euler_characteristic(&xp), 6);
    // every facet side is in exactly one rule
    assert_eq!(2 * xp.rules().len(), 36 * 10);
}

#[test]
fn x_is_orientable_double_cover() {
    let x = x();
    assert_eq!(x.cell_count(), 72);
    assert!(x.is_closed());
    assert!(x.is_connected());
    assert!(x.is_orientable());
    assert_eq!(euler_characteristic(&x), 12);
    assert_eq!(
        euler_characteristic(&x),
        2 * euler_characteristic(&x_prime())
    );
    assert!(x.notes().iter().all(|n| !n.contains("disjoint")));
}

#[test]
fn cover_of_orientable_complex_splits() {
    let xx = orientation_double_cover(&x()).unwrap();
    assert_eq!(xx.component_count(), 2);
    assert!(xx.notes().iter().any(|n| n.contains("disjoint")));
}

#[test]
fn ridge_incidences_and_angle_sums() {
    let report = ridge_report(&x(), &RidgeAngles::with_filling(3)).unwrap();
    assert_eq!(report.incidences[&RidgeKind::Filling], BTreeSet::from([6]));
    assert_eq!(report.incidences[&RidgeKind::Unprimed], BTreeSet::from([6]));
    assert_eq!(report.incidences[&RidgeKind::Mixed], BTreeSet::from([4]));
    assert_eq!(report.all_full_turn, Some(true));

    let at_four = ridge_report(&x(), &RidgeAngles::with_filling(4)).unwrap();
    assert_eq!(at_four.all_full_turn, Some(false));
    let filling = at_four
        .records
        .iter()
        .find(|r| r.kind == RidgeKind::Filling)
        .unwrap();
    assert_eq!(filling.angle_sum, Some(rat(3, 2)));
}

#[test]
fn ridge_angles_read_off_the_cartan_matrix() {
    let a = cartan_at(&t_three()).unwrap();
    assert_eq!(RidgeAngles::from_cartan(&a), RidgeAngles::with_filling(3));
    let generic = RidgeAngles::from_cartan(&cartan_at(&rat(1, 2)).unwrap());
    assert_eq!(generic.filling, None);
    assert_eq!(generic.mixed, Some(rat(1, 2)));
}

#[test]
fn surfaces_in_x_are_tori() {
    let x = x();
    let sigma = sigma_analysis(&x, Exec::Parallel).unwrap();
    let tprime = tprime_analysis(&x, Exec::Parallel).unwrap();
    for set in [&sigma, &tprime] {
        assert_eq!(set.len(), 10);
        for s in set.iter() {
            assert_eq!(s.classification, SurfaceClass::Torus);
            assert_eq!((s.triangles, s.edges, s.vertices), (12, 18, 6));
            assert_eq!(s.triangle_incidences, 72);
        }
    }
    assert_eq!(
        sigma.iter().map(|s| s.triangle_incidences).sum::<usize>(),
        720
    );
    let a: BTreeSet<&String> = sigma.iter().flat_map(|s| &s.faces).collect();
    let b: BTreeSet<&String> = tprime.iter().flat_map(|s| &s.faces).collect();
    assert!(a.is_disjoint(&b));
}

#[test]
fn surfaces_in_x_prime_are_klein_bottles() {
    let sigma = sigma_analysis(&x_prime(), Exec::Sequential).unwrap();
    assert_eq!(sigma.len(), 10);
    for s in &sigma {
        assert_eq!(s.classification, SurfaceClass::KleinBottle);
        assert_eq!(s.euler, 0);
        assert!(!s.orientable);
    }
}

#[test]
fn mixed_ridges_do_not_form_closed_surfaces() {
    assert!(matches!(
        surface_analysis(&x(), RidgeKind::Mixed, Exec::Parallel),
        Err(ComplexError::NonClosedSurface { .. })
    ));
}

#[test]
fn vertex_links() {
    let cert = vertex_link_check(&x(), false, Exec::Parallel).unwrap();
    assert_eq!(cert.closed, 60);
    assert_eq!(cert.with_boundary, 0);

    let block = vertex_link_check(&build_block(&default_k6()), true, Exec::Sequential).unwrap();
    assert_eq!(block.closed, 0);
    assert!(block.links.iter().all(|l| l.shape == LinkShape::Ball));
    assert!(vertex_link_check(&build_block(&default_k6()), false, Exec::Sequential).is_err());
}

#[test]
fn removing_a_rule_breaks_the_links() {
    let x = x();
    let mut rules = x.rules().to_vec();
    rules.remove(17);
    let broken = GluedComplex::new(x.cells().to_vec(), rules).unwrap();
    assert!(!broken.is_closed());
    assert!(matches!(
        vertex_link_check(&broken, false, Exec::Parallel),
        Err(ComplexError::LinkFailure { .. })
    ));
}

#[test]
fn covering_consistency_examples() {
    let sixth: Rational = rat(1, 6);
    assert!(covering_consistency(&x(), &sixth, 72));
    assert!(covering_consistency(&x_prime(), &sixth, 36));
    assert!(!covering_consistency(&x(), &sixth, 71));
}

#[test]
fn sequential_and_parallel_agree() {
    let x = x();
    assert_eq!(
        sigma_analysis(&x, Exec::Sequential).unwrap(),
        sigma_analysis(&x, Exec::Parallel).unwrap()
    );
    assert_eq!(
        vertex_link_check(&x, false, Exec::Sequential).unwrap(),
        vertex_link_check(&x, false, Exec::Parallel).unwrap()
    );
}

fn summary(c: &GluedComplex) -> ([usize; 4], i64, bool, usize, usize) {
    let sigma = sigma_analysis(c, Exec::Parallel).unwrap_or_default();
    let klein = sigma
        .iter()
        .filter(|s| s.classification == SurfaceClass::KleinBottle)
        .count();
    (
        c.class_counts(),
        euler_characteristic(c),
        c.is_orientable(),
        sigma.len(),
        klein,
    )
}

fn label_perm() -> impl Strategy<Value = [u8; 5]> {
    Just(vec![1u8, 2, 3, 4, 5])
        .prop_shuffle()
        .prop_map(|v| [v[0], v[1], v[2], v[3], v[4]])
}

fn node_perm() -> impl Strategy<Value = [usize; 6]> {
    Just((0..6).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| [v[0], v[1], v[2], v[3], v[4], v[5]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn counts_invariant_under_relabeling(outer in label_perm(), inner in label_perm()) {
        let g = default_k6();
        let base = summary(&build_xprime(&g, &g));
        let moved = build_xprime(&g.relabeled(&outer), &g.relabeled(&inner));
        prop_assert_eq!(summary(&moved), base);
        prop_assert_eq!(boundary_components(&build_block(&g.relabeled(&inner))).len(), 5);
    }

    #[test]
    fn counts_invariant_under_renumbering(outer in node_perm(), inner in node_perm()) {
        let g = default_k6();
        let base = summary(&build_xprime(&g, &g));
        let moved = build_xprime(&g.renumbered(&outer), &g.renumbered(&inner));
        prop_assert!(moved.is_closed());
        prop_assert_eq!(summary(&moved), base);
    }

    #[test]
    fn cover_doubles_euler_characteristic(inner in label_perm()) {
        let g = default_k6();
        let xp = build_xprime(&g, &g.relabeled(&inner));
        let cover = orientation_double_cover(&xp).unwrap();
        prop_assert!(cover.is_orientable());
        prop_assert_eq!(euler_characteristic(&cover), 2 * euler_characteristic(&xp));
    }
}
