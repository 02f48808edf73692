use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use projfill::coxeter::{
    caprace_check, classify_component, orbifold_euler, parse_coxeter, spherical_order,
    t_collection, w_hyperbolic, w_p, write_coxeter, AffineType, CapraceVerdict, Classification,
    CoxeterSystem, Label, SphericalType,
};
use projfill::exactnum::{int, rat, Rational};
use projfill::family::{primed, unprimed};
use projfill::matrix::Matrix;
use projfill::vinberg::{bits, mask_of, reference_poset, FacePoset, ReferenceKind};
use projfill::Exec;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

fn system(n: usize, label: impl Fn(usize, usize) -> Label) -> CoxeterSystem {
    CoxeterSystem::from_fn(names(n), label)
}

// ---- Gram-matrix oracle -------------------------------------------------

/// `⌊√(k)·10^40⌋ / 10^40`.
fn sqrt_40(k: u32) -> Rational {
    let scale = BigUint::from(10u32).pow(40);
    let root = (BigUint::from(k) * &scale * &scale).sqrt();
    Rational::new(BigInt::from(root), BigInt::from(scale))
}

/// `cos(π/m)` to 40 digits for the labels under test.
fn cos_pi_over(l: Label) -> Rational {
    match l {
        Label::Finite(2) => int(0),
        Label::Finite(3) => rat(1, 2),
        Label::Finite(4) => sqrt_40(2) / int(2),
        Label::Finite(5) => (int(1) + sqrt_40(5)) / int(4),
        Label::Finite(6) => sqrt_40(3) / int(2),
        Label::Infinity => int(1),
        other => panic!("no oracle for {other}"),
    }
}

#[derive(Debug, PartialEq)]
enum OracleKind {
    Spherical,
    Affine,
    Other,
}

fn gram_oracle(sys: &CoxeterSystem, cos: &[(Label, Rational)]) -> OracleKind {
    let n = sys.size();
    let lookup = |l: Label| {
        cos.iter()
            .find(|(k, _)| *k == l)
            .expect("label in table")
            .1
            .clone()
    };
    let g = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            int(1)
        } else {
            -lookup(sys.label(i, j))
        }
    });
    let tol = Rational::new(BigInt::from(1), BigInt::from(10u32).pow(20));
    let minors = g.leading_principal_minors();
    let proper = minors[..n - 1].iter().all(|m| *m > tol);
    let last = &minors[n - 1];
    match (proper, last) {
        (true, d) if *d > tol => OracleKind::Spherical,
        (true, d) if d.abs() < tol => OracleKind::Affine,
        _ => OracleKind::Other,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn classification_agrees_with_gram_oracle() {
    let alphabet = [2, 3, 4, 5, 6, 0].map(|m| {
        if m == 0 {
            Label::Infinity
        } else {
            Label::Finite(m)
        }
    });
    let cos: Vec<(Label, Rational)> = alphabet.iter().map(|&l| (l, cos_pi_over(l))).collect();
    let mut checked = 0;
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let total = alphabet.len().pow(pairs.len() as u32);
        let cases: Vec<usize> = (0..total).collect();
        let results = Exec::Parallel.map(&cases, |&code| {
            let mut c = code;
            let mut labels = vec![Label::Finite(2); pairs.len()];
            for l in labels.iter_mut() {
                *l = alphabet[c % alphabet.len()];
                c /= alphabet.len();
            }
            let at = |i: usize, j: usize| {
                labels[pairs
                    .iter()
                    .position(|&p| p == (i.min(j), i.max(j)))
                    .unwrap()]
            };
            // one representative per isomorphism class: the lexicographically
            // smallest relabeling of the label vector
            let canonical = permutations(n).iter().all(|perm| {
                let relabeled: Vec<Label> =
                    pairs.iter().map(|&(i, j)| at(perm[i], perm[j])).collect();
                relabeled >= labels
            });
            let sys = system(n, at);
            if !canonical || !sys.is_irreducible() {
                return None;
            }
            let ours = classify_component(&sys).unwrap();
            let oracle = gram_oracle(&sys, &cos);
            let agree = match ours {
                Classification::Spherical(_) => oracle == OracleKind::Spherical,
                Classification::Affine(_) => oracle == OracleKind::Affine,
                Classification::Other => oracle == OracleKind::Other,
            };
            Some((agree, format!("{labels:?}: {ours} vs {oracle:?}")))
        });
        for (agree, msg) in results.into_iter().flatten() {
            assert!(agree, "{msg}");
            checked += 1;
        }
    }
    assert!(checked > 1_000, "{checked} classes");
}

// ---- classification examples --------------------------------------------

#[test]
fn small_diagrams() {
    assert_eq!(
        classify_component(&system(1, |_, _| Label::Finite(2))).unwrap(),
        Classification::Spherical(SphericalType::A(1))
    );
    assert_eq!(
        classify_component(&system(3, |_, _| Label::Finite(3))).unwrap(),
        Classification::Affine(AffineType::A(2))
    );
    for p in [5, 7, 12] {
        assert_eq!(
            classify_component(&system(2, |_, _| Label::Finite(p))).unwrap(),
            Classification::Spherical(SphericalType::I2(p))
        );
    }
    assert_eq!(
        classify_component(&system(2, |_, _| Label::Infinity)).unwrap(),
        Classification::Affine(AffineType::A1)
    );
    assert!(classify_component(&system(2, |_, _| Label::Finite(2))).is_err());
}

fn star(arms: &[usize]) -> CoxeterSystem {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    system(next, |i, j| {
        if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
            Label::Finite(3)
        } else {
            Label::Finite(2)
        }
    })
}

#[test]
fn exceptional_and_branched_diagrams() {
    let kind = |s: &CoxeterSystem| classify_component(s).unwrap();
    assert_eq!(
        kind(&star(&[1, 2, 2])),
        Classification::Spherical(SphericalType::E6)
    );
    assert_eq!(
        kind(&star(&[1, 2, 3])),
        Classification::Spherical(SphericalType::E7)
    );
    assert_eq!(
        kind(&star(&[1, 2, 4])),
        Classification::Spherical(SphericalType::E8)
    );
    assert_eq!(
        kind(&star(&[2, 2, 2])),
        Classification::Affine(AffineType::E6)
    );
    assert_eq!(
        kind(&star(&[1, 3, 3])),
        Classification::Affine(AffineType::E7)
    );
    assert_eq!(
        kind(&star(&[1, 2, 5])),
        Classification::Affine(AffineType::E8)
    );
    assert_eq!(
        kind(&star(&[1, 1, 4])),
        Classification::Spherical(SphericalType::D(7))
    );
    assert_eq!(
        kind(&star(&[1, 1, 1, 1])),
        Classification::Affine(AffineType::D(4))
    );
    assert_eq!(kind(&star(&[2, 2, 3])), Classification::Other);
}

#[test]
fn finite_group_orders() {
    let a1 = system(1, |_, _| Label::Finite(2));
    assert_eq!(spherical_order(&a1).unwrap(), BigUint::from(2u32));
    let a2_a1 = system(3, |i, j| {
        if (i, j) == (0, 1) {
            Label::Finite(3)
        } else {
            Label::Finite(2)
        }
    });
    assert_eq!(spherical_order(&a2_a1).unwrap(), BigUint::from(12u32));
    assert_eq!(
        spherical_order(&star(&[1, 2, 4])).unwrap(),
        BigUint::from(696729600u32)
    );
    assert!(spherical_order(&system(3, |_, _| Label::Finite(3))).is_err());
}

#[test]
fn brute_force_orders_for_rank_two() {
    // dihedral group of order 2m as words in two involutions
    for m in 3..10u32 {
        let sys = system(2, |_, _| Label::Finite(m));
        assert_eq!(spherical_order(&sys).unwrap(), BigUint::from(2 * m));
    }
}

// ---- W_p and its subgroups ----------------------------------------------

#[test]
fn w_p_labels() {
    let w3 = w_p(3).unwrap();
    assert_eq!(w3.size(), 10);
    assert_eq!(w3.label(primed(1), primed(2)), Label::Finite(3));
    assert_eq!(w3.label(unprimed(1), unprimed(2)), Label::Finite(3));
    assert_eq!(w3.label(primed(1), unprimed(1)), Label::Infinity);
    assert_eq!(w3.label(primed(1), unprimed(2)), Label::Finite(2));
    assert_eq!(
        w_p(4).unwrap().label(primed(3), primed(5)),
        Label::Finite(4)
    );
    assert!(w_p(2).is_err());
}

#[test]
fn w_p_subgroups() {
    let w3 = w_p(3).unwrap();
    let sub = w3.subgroup(&[primed(1), primed(2), unprimed(3), unprimed(4)]);
    let kinds: Vec<Classification> = sub.classify().into_iter().map(|(_, k)| k).collect();
    assert_eq!(
        kinds,
        vec![Classification::Spherical(SphericalType::A(2)); 2]
    );

    let w5 = w_p(5).unwrap();
    let sub = w5.subgroup(&[primed(1), primed(2), unprimed(3), unprimed(4), unprimed(5)]);
    let kinds: Vec<Classification> = sub.classify().into_iter().map(|(_, k)| k).collect();
    assert_eq!(
        kinds,
        vec![
            Classification::Spherical(SphericalType::I2(5)),
            Classification::Affine(AffineType::A(2))
        ]
    );
    assert_eq!(w5.subgroup(&[]).size(), 0);

    for p in 3..9 {
        let w = w_p(p).unwrap();
        let v = w.subgroup(&[primed(2), primed(4), unprimed(1), unprimed(5)]);
        assert_eq!(spherical_order(&v).unwrap(), BigUint::from(12 * p));
    }
}

#[test]
fn collection_sizes_and_shape() {
    assert_eq!(t_collection(3).unwrap().len(), 20);
    for p in 4..9 {
        let coll = t_collection(p).unwrap();
        assert_eq!(coll.len(), 10);
        let w = w_p(p).unwrap();
        for &t in &coll {
            let kinds: Vec<Classification> = w
                .subgroup_mask(t)
                .classify()
                .into_iter()
                .map(|(_, k)| k)
                .collect();
            assert!(kinds.contains(&Classification::Affine(AffineType::A(2))));
            assert!(kinds.contains(&Classification::Spherical(if p == 4 {
                SphericalType::B(2)
            } else {
                SphericalType::I2(p)
            })));
        }
    }
}

#[test]
fn collection_members_nonspherical_with_spherical_intersections() {
    for p in 3..7 {
        let w = w_p(p).unwrap();
        let coll = t_collection(p).unwrap();
        for (a, &t) in coll.iter().enumerate() {
            assert!(!w.subgroup_mask(t).is_spherical());
            for &u in &coll[a + 1..] {
                assert!(w.subgroup_mask(t & u).is_spherical());
            }
        }
    }
}

// ---- relative hyperbolicity ---------------------------------------------

#[test]
fn caprace_ok_for_small_p() {
    for p in 3..=6 {
        let start = std::time::Instant::now();
        let v = caprace_check(&w_p(p).unwrap(), &t_collection(p).unwrap(), Exec::Parallel).unwrap();
        assert_eq!(v, CapraceVerdict::Ok, "p = {p}");
        assert!(start.elapsed().as_secs() < 5);
    }
}

#[test]
fn caprace_empty_collection_violates_first_condition() {
    let w = w_p(4).unwrap();
    match caprace_check(&w, &[], Exec::Sequential).unwrap() {
        CapraceVerdict::Violation {
            condition,
            witnesses,
        } => {
            assert_eq!(condition, 1);
            let u = witnesses[0];
            assert_eq!(u.count_ones(), 3);
            // an unprimed triangle or, equally, a primed one is impossible
            // for p = 4, so the witness is unprimed
            assert!(bits(u).all(|i| i >= 5), "{}", w.describe(u));
        }
        CapraceVerdict::Ok => panic!("empty collection accepted"),
    }
}

#[test]
fn caprace_detects_bad_intersection() {
    // doubling a member yields a non-spherical pairwise intersection
    let w = w_p(4).unwrap();
    let mut coll = t_collection(4).unwrap();
    coll.push(coll[0]);
    match caprace_check(&w, &coll, Exec::Sequential).unwrap() {
        CapraceVerdict::Violation { condition, .. } => assert_eq!(condition, 3),
        CapraceVerdict::Ok => panic!("duplicate member accepted"),
    }
}

#[test]
fn caprace_rejects_too_many_generators() {
    let big = system(17, |_, _| Label::Finite(2));
    assert!(caprace_check(&big, &[], Exec::Sequential).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn caprace_is_permutation_invariant(seed in any::<u64>(), p in 3u32..6) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..10).collect();
        perm.shuffle(&mut rng);
        let w = w_p(p).unwrap();
        let coll = t_collection(p).unwrap();
        let permuted: Vec<u32> = coll.iter().map(|&t| projfill::vinberg::permute_mask(t, &perm)).collect();
        let a = caprace_check(&w, &coll, Exec::Parallel).unwrap();
        let b = caprace_check(&w.permuted(&perm), &permuted, Exec::Parallel).unwrap();
        prop_assert_eq!(a == CapraceVerdict::Ok, b == CapraceVerdict::Ok);

        let trimmed = &coll[1..];
        let permuted_trimmed: Vec<u32> = trimmed.iter().map(|&t| projfill::vinberg::permute_mask(t, &perm)).collect();
        let a = caprace_check(&w, trimmed, Exec::Parallel).unwrap();
        let b = caprace_check(&w.permuted(&perm), &permuted_trimmed, Exec::Parallel).unwrap();
        let cond = |v: &CapraceVerdict| match v { CapraceVerdict::Violation { condition, .. } => *condition, _ => 0 };
        prop_assert_eq!(cond(&a), cond(&b));
    }
}

// ---- orbifold Euler characteristic --------------------------------------

#[test]
fn orbifold_euler_bitruncated_is_p_independent() {
    let bit = reference_poset(ReferenceKind::Bitruncated);
    for p in 3..=12u32 {
        // face-sum oracle: 1 − 10/2 + (10/2p + 10/6 + 20/4) − (30/4p + 30/12) + 30/12p
        let q = int(p as i64);
        let oracle = int(1) - int(5) + (int(5) / q.clone() + rat(5, 3) + int(5))
            - (rat(15, 2) / q.clone() + rat(5, 2))
            + rat(5, 2) / q;
        let chi = orbifold_euler(&bit, &w_p(p).unwrap());
        assert_eq!(chi, oracle);
        assert_eq!(chi, rat(1, 6), "p = {p}");
    }
}

#[test]
fn orbifold_euler_rectified_hyperbolic() {
    let rect = reference_poset(ReferenceKind::Rectified);
    assert!(!rect.contains(mask_of(&[primed(1), primed(2)])));
    assert_eq!(orbifold_euler(&rect, &w_hyperbolic()), rat(1, 6));
}

#[test]
fn orbifold_euler_segment() {
    let seg = FacePoset::from_faces(1, names(2), [(0b01, 0), (0b10, 0)]);
    let sys = system(2, |_, _| Label::Infinity);
    assert!(orbifold_euler(&seg, &sys).is_zero());
}

// ---- file format --------------------------------------------------------

#[test]
fn file_round_trip() {
    let w = w_p(5).unwrap();
    let text = write_coxeter(&w);
    assert!(text.contains("inf"));
    assert_eq!(parse_coxeter(&text).unwrap(), w);
}

#[test]
fn file_errors_carry_lines() {
    let err = parse_coxeter("generators a b c\n3 2\n# comment\nbogus\n").unwrap_err();
    assert!(err.to_string().contains("line 4"), "{err}");
    assert!(parse_coxeter("a b\n").is_err());
    assert!(parse_coxeter("generators a b\n1\n").is_err());
}
