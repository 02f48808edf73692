//! Coxeter systems: recognition of spherical and affine diagrams, orders of
//! finite Coxeter groups, the `W_p` family on ten generators, a brute-force
//! checker for the Moussong–Caprace relative hyperbolicity criterion, and
//! orbifold Euler characteristics of Coxeter polytopes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{int, Rational};
use crate::family;
use crate::par::Exec;
use crate::vinberg::{bits, describe_mask, FacePoset};

/// Largest generator set the subset scans accept.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoxeterError {
    #[error("p must be at least 3, got {0}")]
    PTooSmall(u32),
    #[error("{0} generators exceed the enumeration limit of {MAX_GENERATORS}")]
    TooLarge(usize),
    #[error("diagram on {0} is not connected")]
    Disconnected(String),
    #[error("component {0} is not spherical")]
    NotSpherical(String),
    #[error("invalid label '{0}'")]
    InvalidLabel(String),
    #[error("label matrix is malformed: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Order of the product of two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn is_commuting(self) -> bool {
        self == Label::Finite(2)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Label {
    type Err = CoxeterError;
    fn from_str(s: &str) -> Result<Self, CoxeterError> {
        match s {
            "inf" | "∞" => Ok(Label::Infinity),
            _ => match s.parse::<u32>() {
                Ok(m) if m >= 1 => Ok(Label::Finite(m)),
                _ => Err(CoxeterError::InvalidLabel(s.to_string())),
            },
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A symmetric label matrix with 1 on the diagonal and labels ≥ 2 off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterSystem {
    names: Vec<String>,
    labels: Vec<Vec<Label>>,
}

impl CoxeterSystem {
    pub fn new(names: Vec<String>, labels: Vec<Vec<Label>>) -> Result<Self, CoxeterError> {
        let n = names.len();
        if labels.len() != n || labels.iter().any(|r| r.len() != n) {
            return Err(CoxeterError::Malformed(format!(
                "expected a {n}x{n} matrix"
            )));
        }
        for i in 0..n {
            if labels[i][i] != Label::Finite(1) {
                return Err(CoxeterError::Malformed(format!(
                    "diagonal entry {i} is not 1"
                )));
            }
            for j in 0..n {
                if labels[i][j] != labels[j][i] {
                    return Err(CoxeterError::Malformed(format!(
                        "not symmetric at ({i},{j})"
                    )));
                }
                if i != j && labels[i][j] == Label::Finite(1) {
                    return Err(CoxeterError::Malformed(format!(
                        "label 1 off the diagonal at ({i},{j})"
                    )));
                }
            }
        }
        Ok(CoxeterSystem { names, labels })
    }

    /// Builds a system from `label(i, j)` for `i < j`.
    pub fn from_fn(names: Vec<String>, label: impl Fn(usize, usize) -> Label) -> Self {
        let n = names.len();
        let labels = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => Label::Finite(1),
                        std::cmp::Ordering::Less => label(i, j),
                        std::cmp::Ordering::Greater => label(j, i),
                    })
                    .collect()
            })
            .collect();
        CoxeterSystem { names, labels }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i][j]
    }

    /// Restriction to the generators in `idx`, in that order.
    pub fn subgroup(&self, idx: &[usize]) -> CoxeterSystem {
        CoxeterSystem {
            names: idx.iter().map(|&i| self.names[i].clone()).collect(),
            labels: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.labels[i][j]).collect())
                .collect(),
        }
    }

    pub fn subgroup_mask(&self, mask: u32) -> CoxeterSystem {
        self.subgroup(&bits(mask).collect::<Vec<_>>())
    }

    /// Relabels generators: new index `perm[i]` holds old `i`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterSystem {
        let n = self.size();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        CoxeterSystem {
            names: (0..n).map(|k| self.names[inv[k]].clone()).collect(),
            labels: (0..n)
                .map(|a| (0..n).map(|b| self.labels[inv[a]][inv[b]]).collect())
                .collect(),
        }
    }

    /// Connected components of the diagram (edges where the label is not 2).
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_in(self, full_mask(self.size()))
            .into_iter()
            .map(|m| bits(m).collect())
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.size() > 0 && self.components().len() == 1
    }

    /// Classification of each component, in [`CoxeterSystem::components`] order.
    pub fn classify(&self) -> Vec<(Vec<usize>, Classification)> {
        self.components()
            .into_iter()
            .map(|c| {
                let kind =
                    classify_component(&self.subgroup(&c)).expect("components are connected");
                (c, kind)
            })
            .collect()
    }

    pub fn is_spherical(&self) -> bool {
        self.classify().iter().all(|(_, k)| k.is_spherical())
    }

    /// `T ⊥ U`: disjoint and every label between them is 2.
    pub fn orthogonal(&self, t: u32, u: u32) -> bool {
        t & u == 0 && bits(t).all(|i| bits(u).all(|j| self.labels[i][j].is_commuting()))
    }

    /// Generators outside `u` commuting with all of `u`.
    pub fn perp(&self, u: u32) -> u32 {
        (0..self.size())
            .filter(|&s| u >> s & 1 == 0 && bits(u).all(|j| self.labels[s][j].is_commuting()))
            .fold(0, |m, s| m | 1 << s)
    }

    pub fn describe(&self, mask: u32) -> String {
        describe_mask(mask, &self.names)
    }
}

fn full_mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

/// Components of the diagram restricted to `mask`, as masks.
fn components_in(sys: &CoxeterSystem, mask: u32) -> Vec<u32> {
    let mut left = mask;
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u32 << start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in bits(mask & !comp) {
                if !sys.labels[i][j].is_commuting() {
                    comp |= 1 << j;
                    stack.push(j);
                }
            }
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// Irreducible spherical diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SphericalType {
    A(usize),
    B(usize),
    D(usize),
    I2(u32),
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

/// Irreducible affine diagrams; the parameter is the rank, one less than
/// the number of nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineType {
    A1,
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    B2,
    G2,
    F4,
    E6,
    E7,
    E8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Spherical(SphericalType),
    Affine(AffineType),
    Other,
}

impl Classification {
    pub fn is_spherical(self) -> bool {
        matches!(self, Classification::Spherical(_))
    }

    pub fn is_affine(self) -> bool {
        matches!(self, Classification::Affine(_))
    }
}

impl SphericalType {
    pub fn nodes(self) -> usize {
        match self {
            SphericalType::A(n) | SphericalType::B(n) | SphericalType::D(n) => n,
            SphericalType::I2(_) => 2,
            SphericalType::H3 => 3,
            SphericalType::H4 | SphericalType::F4 => 4,
            SphericalType::E6 => 6,
            SphericalType::E7 => 7,
            SphericalType::E8 => 8,
        }
    }

    /// Order of the finite Coxeter group.
    pub fn order(self) -> BigUint {
        let fact = |n: usize| (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k);
        let pow2 = |n: usize| BigUint::one() << n;
        match self {
            SphericalType::A(n) => fact(n + 1),
            SphericalType::B(n) => pow2(n) * fact(n),
            SphericalType::D(n) => pow2(n - 1) * fact(n),
            SphericalType::I2(p) => BigUint::from(2 * p),
            SphericalType::H3 => 120u32.into(),
            SphericalType::H4 => 14400u32.into(),
            SphericalType::F4 => 1152u32.into(),
            SphericalType::E6 => 51840u32.into(),
            SphericalType::E7 => 2903040u32.into(),
            SphericalType::E8 => 696729600u32.into(),
        }
    }
}

impl AffineType {
    pub fn nodes(self) -> usize {
        match self {
            AffineType::A1 => 2,
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n + 1,
            AffineType::B2 | AffineType::G2 => 3,
            AffineType::F4 => 5,
            AffineType::E6 => 7,
            AffineType::E7 => 8,
            AffineType::E8 => 9,
        }
    }
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphericalType::A(n) => write!(f, "A{n}"),
            SphericalType::B(n) => write!(f, "B{n}"),
            SphericalType::D(n) => write!(f, "D{n}"),
            SphericalType::I2(p) => write!(f, "I2({p})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A1 => f.write_str("~A1"),
            AffineType::A(n) => write!(f, "~A{n}"),
            AffineType::B(n) => write!(f, "~B{n}"),
            AffineType::C(n) => write!(f, "~C{n}"),
            AffineType::D(n) => write!(f, "~D{n}"),
            other => write!(f, "~{other:?}"),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Spherical(s) => write!(f, "spherical {s}"),
            Classification::Affine(a) => write!(f, "affine {a}"),
            Classification::Other => f.write_str("other"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A template diagram: node count and its non-commuting edges.
struct Template {
    nodes: usize,
    edges: Vec<(usize, usize, Label)>,
}

fn path(nodes: usize, labels: &[u32]) -> Vec<(usize, usize, Label)> {
    (0..nodes - 1)
        .map(|i| (i, i + 1, Label::Finite(*labels.get(i).unwrap_or(&3))))
        .collect()
}

/// Tree with a center and three arms of the given lengths.
fn star(arms: [usize; 3]) -> Template {
    let mut edges = Vec::new();
    let mut next = 1;
    for len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next, Label::Finite(3)));
            prev = next;
            next += 1;
        }
    }
    Template { nodes: next, edges }
}

fn spherical_templates(k: usize) -> Vec<(SphericalType, Template)> {
    let mut out = vec![(
        SphericalType::A(k),
        Template {
            nodes: k,
            edges: if k > 1 { path(k, &[]) } else { vec![] },
        },
    )];
    if k >= 3 {
        let mut labels = vec![3; k - 1];
        labels[0] = 4;
        out.push((
            SphericalType::B(k),
            Template {
                nodes: k,
                edges: path(k, &labels),
            },
        ));
    }
    if k >= 4 {
        out.push((SphericalType::D(k), star([1, 1, k - 3])));
    }
    match k {
        3 => out.push((
            SphericalType::H3,
            Template {
                nodes: 3,
                edges: path(3, &[5, 3]),
            },
        )),
        4 => {
            out.push((
                SphericalType::H4,
                Template {
                    nodes: 4,
                    edges: path(4, &[5, 3, 3]),
                },
            ));
            out.push((
                SphericalType::F4,
                Template {
                    nodes: 4,
                    edges: path(4, &[3, 4, 3]),
                },
            ));
        }
        6 => out.push((SphericalType::E6, star([1, 2, 2]))),
        7 => out.push((SphericalType::E7, star([1, 2, 3]))),
        8 => out.push((SphericalType::E8, star([1, 2, 4]))),
        _ => {}
    }
    out
}

fn affine_templates(k: usize) -> Vec<(AffineType, Template)> {
    let n = k - 1;
    let mut out = Vec::new();
    if k >= 3 {
        let mut edges = path(k, &[]);
        edges.push((k - 1, 0, Label::Finite(3)));
        out.push((AffineType::A(n), Template { nodes: k, edges }));
    }
    if k >= 4 {
        // fork at one end, a 4 at the other
        let mut t = star([1, 1, k - 3]);
        let last = t.edges.len() - 1;
        t.edges[last].2 = Label::Finite(4);
        out.push((AffineType::B(n), t));
        let mut labels = vec![3; k - 1];
        labels[0] = 4;
        labels[k - 2] = 4;
        out.push((
            AffineType::C(n),
            Template {
                nodes: k,
                edges: path(k, &labels),
            },
        ));
    }
    if k >= 5 {
        // forks at both ends: a path with a leaf on its second and
        // second-to-last nodes
        let mut edges = path(k - 2, &[]);
        edges.push((1, k - 2, Label::Finite(3)));
        edges.push((k - 4, k - 1, Label::Finite(3)));
        out.push((AffineType::D(n), Template { nodes: k, edges }));
    }
    match k {
        3 => {
            out.push((
                AffineType::B2,
                Template {
                    nodes: 3,
                    edges: path(3, &[4, 4]),
                },
            ));
            out.push((
                AffineType::G2,
                Template {
                    nodes: 3,
                    edges: path(3, &[6, 3]),
                },
            ));
        }
        5 => out.push((
            AffineType::F4,
            Template {
                nodes: 5,
                edges: path(5, &[3, 3, 4, 3]),
            },
        )),
        7 => out.push((AffineType::E6, star([2, 2, 2]))),
        8 => out.push((AffineType::E7, star([1, 3, 3]))),
        9 => out.push((AffineType::E8, star([1, 2, 5]))),
        _ => {}
    }
    out
}

fn template_matrix(t: &Template) -> Vec<Vec<Label>> {
    let mut m = vec![vec![Label::Finite(2); t.nodes]; t.nodes];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Label::Finite(1);
    }
    for &(a, b, l) in &t.edges {
        m[a][b] = l;
        m[b][a] = l;
    }
    m
}

/// Sorted off-diagonal labels per node: an isomorphism invariant.
fn node_profiles(m: &[Vec<Label>]) -> Vec<Vec<Label>> {
    (0..m.len())
        .map(|i| {
            let mut r: Vec<Label> = (0..m.len())
                .filter(|&j| j != i && !m[i][j].is_commuting())
                .map(|j| m[i][j])
                .collect();
            r.sort();
            r
        })
        .collect()
}

/// Labeled-graph isomorphism by backtracking with profile pruning.
pub fn labels_isomorphic(a: &[Vec<Label>], b: &[Vec<Label>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let (pa, pb) = (node_profiles(a), node_profiles(b));
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    fn go(
        i: usize,
        a: &[Vec<Label>],
        b: &[Vec<Label>],
        pa: &[Vec<Label>],
        pb: &[Vec<Label>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || pa[i] != pb[j] {
                continue;
            }
            if (0..i).all(|k| a[i][k] == b[j][map[k]]) {
                used[j] = true;
                map.push(j);
                if go(i + 1, a, b, pa, pb, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(
        0,
        a,
        b,
        &pa,
        &pb,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
    )
}

/// Recognizes a connected diagram against the spherical and affine lists.
pub fn classify_component(sys: &CoxeterSystem) -> Result<Classification, CoxeterError> {
    let k = sys.size();
    if !sys.is_irreducible() {
        return Err(CoxeterError::Disconnected(format!("{:?}", sys.names)));
    }
    if k == 2 {
        return Ok(match sys.label(0, 1) {
            Label::Infinity => Classification::Affine(AffineType::A1),
            Label::Finite(3) => Classification::Spherical(SphericalType::A(2)),
            Label::Finite(4) => Classification::Spherical(SphericalType::B(2)),
            Label::Finite(p) => Classification::Spherical(SphericalType::I2(p)),
        });
    }
    if sys.labels.iter().flatten().any(|&l| l == Label::Infinity) {
        return Ok(Classification::Other);
    }
    for (tag, t) in spherical_templates(k) {
        if labels_isomorphic(&sys.labels, &template_matrix(&t)) {
            return Ok(Classification::Spherical(tag));
        }
    }
    for (tag, t) in affine_templates(k) {
        if labels_isomorphic(&sys.labels, &template_matrix(&t)) {
            return Ok(Classification::Affine(tag));
        }
    }
    Ok(Classification::Other)
}

/// Order of a finite Coxeter group: the product of its component orders.
pub fn spherical_order(sys: &CoxeterSystem) -> Result<BigUint, CoxeterError> {
    let mut order = BigUint::one();
    for (c, kind) in sys.classify() {
        match kind {
            Classification::Spherical(s) => order *= s.order(),
            _ => {
                return Err(CoxeterError::NotSpherical(
                    sys.describe(c.iter().fold(0, |m, &i| m | 1 << i)),
                ))
            }
        }
    }
    Ok(order)
}

/// The ten-generator diagram on `1′..5′, 1..5`: primed pairs labeled `p`,
/// unprimed pairs 3, `i′–i` labeled ∞, all else 2.
pub fn w_p(p: u32) -> Result<CoxeterSystem, CoxeterError> {
    if p < 3 {
        return Err(CoxeterError::PTooSmall(p));
    }
    Ok(ten_generator_system(Label::Finite(p)))
}

/// The same diagram with primed pairs labeled ∞: the reflection group of
/// the ideal rectified 4-simplex.
pub fn w_hyperbolic() -> CoxeterSystem {
    ten_generator_system(Label::Infinity)
}

fn ten_generator_system(primed_label: Label) -> CoxeterSystem {
    CoxeterSystem::from_fn(family::labels(), |a, b| {
        let same = family::facet_number(a) == family::facet_number(b);
        match (family::is_primed(a), family::is_primed(b)) {
            (true, true) => primed_label,
            (false, false) => Label::Finite(3),
            _ if same => Label::Infinity,
            _ => Label::Finite(2),
        }
    })
}

/// The peripheral collection: all `{i′,j′,k,l,m}` with `{i,j,k,l,m}` the
/// five indices, plus all `{i′,j′,k′,l,m}` when `p = 3`.
pub fn t_collection(p: u32) -> Result<Vec<u32>, CoxeterError> {
    if p < 3 {
        return Err(CoxeterError::PTooSmall(p));
    }
    let mut out = Vec::new();
    let primed_count = if p == 3 { vec![2, 3] } else { vec![2] };
    for mask in 0u32..1 << 5 {
        if primed_count.contains(&mask.count_ones()) {
            // primed indices from `mask`, unprimed from the complement
            let t = bits(mask).fold(0, |m, i| m | 1 << family::primed(i + 1))
                | bits(!mask & 0b11111).fold(0, |m, i| m | 1 << family::unprimed(i + 1));
            out.push(t);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Outcome of the relative hyperbolicity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum CapraceVerdict {
    Ok,
    Violation { condition: u8, witnesses: Vec<u32> },
}

/// Per-subset data shared by the four conditions.
struct SubsetTable {
    irreducible: Vec<bool>,
    spherical: Vec<bool>,
    affine: Vec<bool>,
}

fn subset_table(sys: &CoxeterSystem, exec: Exec) -> SubsetTable {
    let n = sys.size();
    let rows = exec.map_range(0..1 << n, |m| {
        let mask = m as u32;
        let comps = components_in(sys, mask);
        let kinds: Vec<Classification> = comps
            .iter()
            .map(|&c| classify_component(&sys.subgroup_mask(c)).expect("connected"))
            .collect();
        let irreducible = comps.len() == 1;
        (
            irreducible,
            kinds.iter().all(|k| k.is_spherical()),
            irreducible && kinds[0].is_affine(),
        )
    });
    SubsetTable {
        irreducible: rows.iter().map(|r| r.0).collect(),
        spherical: rows.iter().map(|r| r.1).collect(),
        affine: rows.iter().map(|r| r.2).collect(),
    }
}

/// Brute-force check of the four diagram conditions for `W` to be
/// hyperbolic relative to the subgroups `W_T`, `T ∈ collection`:
///
/// 1. every irreducible affine `U` with `|U| ≥ 3` lies in some `T`;
/// 2. for irreducible non-spherical `S₁ ⊥ S₂`, `S₁ ∪ S₂` lies in some `T`;
/// 3. distinct members intersect in spherical subsets;
/// 4. `U^⊥ ⊆ T` for every irreducible non-spherical `U ⊆ T`.
///
/// Returns the first violation found, in condition order.
pub fn caprace_check(
    sys: &CoxeterSystem,
    collection: &[u32],
    exec: Exec,
) -> Result<CapraceVerdict, CoxeterError> {
    let n = sys.size();
    if n > MAX_GENERATORS {
        return Err(CoxeterError::TooLarge(n));
    }
    let table = subset_table(sys, exec);
    let covered = |u: u32| collection.iter().any(|&t| t & u == u);
    let all = 0..1usize << n;

    let bad = exec.filter_map_range(all.clone(), |m| {
        let u = m as u32;
        (table.affine[m] && u.count_ones() >= 3 && !covered(u)).then_some(u)
    });
    if let Some(&u) = bad.first() {
        return Ok(CapraceVerdict::Violation {
            condition: 1,
            witnesses: vec![u],
        });
    }

    let wild: Vec<u32> = all
        .clone()
        .filter(|&m| m != 0 && table.irreducible[m] && !table.spherical[m])
        .map(|m| m as u32)
        .collect();
    let bad = exec.map(&wild, |&s1| {
        wild.iter()
            .find(|&&s2| s1 < s2 && sys.orthogonal(s1, s2) && !covered(s1 | s2))
            .map(|&s2| (s1, s2))
    });
    if let Some((s1, s2)) = bad.into_iter().flatten().next() {
        return Ok(CapraceVerdict::Violation {
            condition: 2,
            witnesses: vec![s1, s2],
        });
    }

    for (a, &t) in collection.iter().enumerate() {
        for &u in &collection[a + 1..] {
            if !table.spherical[(t & u) as usize] {
                return Ok(CapraceVerdict::Violation {
                    condition: 3,
                    witnesses: vec![t, u],
                });
            }
        }
    }

    for &t in collection {
        for &u in &wild {
            if u & t == u {
                let perp = sys.perp(u);
                if perp & t != perp {
                    return Ok(CapraceVerdict::Violation {
                        condition: 4,
                        witnesses: vec![t, u, perp],
                    });
                }
            }
        }
    }
    Ok(CapraceVerdict::Ok)
}

/// Σ over faces `f` whose group `W_{σ(f)}` is finite of
/// `(−1)^{dim f} / |W_{σ(f)}|`; faces with infinite groups (ideal vertices)
/// are left out.
pub fn orbifold_euler(poset: &FacePoset, sys: &CoxeterSystem) -> Rational {
    let mut total = int(0);
    for (mask, dim) in poset.faces() {
        let sub = sys.subgroup_mask(mask);
        if let Ok(order) = spherical_order(&sub) {
            let sign = if dim % 2 == 0 { 1 } else { -1 };
            let order = num_bigint::BigInt::from(order);
            total += Rational::new(sign.into(), order);
        }
    }
    total
}

/// Text format: a `generators` line of names, then the strict upper
/// triangle of labels row by row (`inf` for ∞). `#` starts a comment.
pub fn parse_coxeter(text: &str) -> Result<CoxeterSystem, CoxeterError> {
    let mut names: Option<Vec<String>> = None;
    let mut values: Vec<(usize, Label)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        if names.is_none() {
            if tokens.next() != Some("generators") {
                return Err(CoxeterError::Parse {
                    line: k + 1,
                    message: "expected 'generators'".into(),
                });
            }
            names = Some(tokens.map(str::to_string).collect());
            continue;
        }
        for tok in tokens {
            let l = tok.parse::<Label>().map_err(|e| CoxeterError::Parse {
                line: k + 1,
                message: e.to_string(),
            })?;
            values.push((k + 1, l));
        }
    }
    let names = names.ok_or(CoxeterError::Parse {
        line: 0,
        message: "missing 'generators' line".into(),
    })?;
    let n = names.len();
    let expected = n * n.saturating_sub(1) / 2;
    if values.len() != expected {
        return Err(CoxeterError::Parse {
            line: values.last().map_or(0, |v| v.0),
            message: format!("expected {expected} labels, found {}", values.len()),
        });
    }
    let mut labels = vec![vec![Label::Finite(1); n]; n];
    let mut it = values.into_iter();
    for i in 0..n {
        for j in i + 1..n {
            let (line, l) = it.next().expect("count checked");
            if l == Label::Finite(1) {
                return Err(CoxeterError::Parse {
                    line,
                    message: "off-diagonal label 1".into(),
                });
            }
            labels[i][j] = l;
            labels[j][i] = l;
        }
    }
    CoxeterSystem::new(names, labels)
}

pub fn write_coxeter(sys: &CoxeterSystem) -> String {
    let mut out = format!("generators {}\n", sys.names.join(" "));
    for i in 0..sys.size() {
        let row: Vec<String> = (i + 1..sys.size())
            .map(|j| sys.labels[i][j].to_string())
            .collect();
        if !row.is_empty() {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(labels: &[u32]) -> CoxeterSystem {
        let n = labels.len() + 1;
        CoxeterSystem::from_fn((0..n).map(|i| i.to_string()).collect(), |i, j| {
            if j == i + 1 {
                Label::Finite(labels[i])
            } else {
                Label::Finite(2)
            }
        })
    }

    #[test]
    fn templates_have_stated_sizes() {
        for k in 1..=10 {
            for (tag, t) in spherical_templates(k) {
                assert_eq!(tag.nodes(), t.nodes, "{tag}");
                assert_eq!(t.edges.len(), k - 1, "{tag} is a tree");
            }
        }
        for k in 3..=10 {
            for (tag, t) in affine_templates(k) {
                assert_eq!(tag.nodes(), t.nodes, "{tag}");
            }
        }
    }

    #[test]
    fn linear_diagrams() {
        assert_eq!(
            classify_component(&linear(&[3, 3])).unwrap(),
            Classification::Spherical(SphericalType::A(3))
        );
        assert_eq!(
            classify_component(&linear(&[5, 3, 3])).unwrap(),
            Classification::Spherical(SphericalType::H4)
        );
        assert_eq!(
            classify_component(&linear(&[3, 5, 3])).unwrap(),
            Classification::Other
        );
        assert_eq!(
            classify_component(&linear(&[4, 3, 4])).unwrap(),
            Classification::Affine(AffineType::C(3))
        );
        assert_eq!(
            classify_component(&linear(&[6, 3])).unwrap(),
            Classification::Affine(AffineType::G2)
        );
    }

    #[test]
    fn label_round_trip() {
        for s in ["2", "3", "12", "inf"] {
            assert_eq!(s.parse::<Label>().unwrap().to_string(), s);
        }
        assert!("0".parse::<Label>().is_err());
        assert!("x".parse::<Label>().is_err());
    }
}
