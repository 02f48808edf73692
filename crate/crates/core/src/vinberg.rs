//! Face posets of mirror polytopes read off a Cartan matrix, the reference
//! posets of the truncated, rectified and bitruncated 4-simplex, graded
//! poset isomorphism, and dihedral angles.
//!
//! A face is recorded dually, as the set of facets containing it, encoded
//! as a bitmask over facet indices. The top cell is the empty set.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanError, CartanMatrix, CartanType};
use crate::exactnum::{rat, OrderedField, Rational, Sign};
use crate::family;
use crate::par::Exec;

/// Posets are limited to this many facets so masks fit in a `u32`.
pub const MAX_FACETS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VinbergError {
    #[error("rank {found} does not match dimension {dim} (expected {})", dim + 1)]
    RankMismatch { dim: usize, found: usize },
    #[error("subset {0} is of positive type but has more than {1} elements")]
    Inconsistent(String, usize),
    #[error("{0} facets exceed the supported maximum of {MAX_FACETS}")]
    TooManyFacets(usize),
    #[error("the Cartan matrix is not irreducible")]
    Reducible,
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// Iterates the indices set in `mask`.
pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_of(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

/// A graded poset of facet subsets, ordered by reverse inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    dim: usize,
    labels: Vec<String>,
    faces: BTreeMap<u32, usize>,
}

/// Serializable view: faces grouped by dimension.
#[derive(Clone, Debug, Serialize)]
pub struct PosetExport {
    pub dimension: usize,
    pub facets: Vec<String>,
    pub f_vector: Vec<usize>,
    /// `faces[d]` lists the faces of dimension `d` by their facet labels.
    pub faces: Vec<Vec<Vec<String>>>,
}

impl FacePoset {
    /// Assembles a poset from `(mask, dimension)` pairs, adding the top cell.
    pub fn from_faces(
        dim: usize,
        labels: Vec<String>,
        faces: impl IntoIterator<Item = (u32, usize)>,
    ) -> Self {
        let mut faces: BTreeMap<u32, usize> = faces.into_iter().collect();
        faces.insert(0, dim);
        FacePoset { dim, labels, faces }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(mask, dimension)` for every face including the top cell.
    pub fn faces(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.faces.iter().map(|(&m, &d)| (m, d))
    }

    pub fn dim_of(&self, mask: u32) -> Option<usize> {
        self.faces.get(&mask).copied()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.faces.contains_key(&mask)
    }

    pub fn faces_of_dim(&self, d: usize) -> Vec<u32> {
        self.faces()
            .filter(|&(_, e)| e == d)
            .map(|(m, _)| m)
            .collect()
    }

    /// Cover relations `(larger face, smaller face)`: the smaller face has a
    /// strictly larger facet set and dimension one less.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (&a, &da) in &self.faces {
            for (&b, &db) in &self.faces {
                if db + 1 == da && a & b == a && a != b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Checks that each face strictly contained in a face of dimension `d`
    /// (as a geometric subset) has dimension below `d`, and that every
    /// face of positive dimension covers at least one face.
    pub fn is_graded(&self) -> bool {
        let covers = self.covers();
        let has_cover: HashSet<u32> = covers.iter().map(|&(a, _)| a).collect();
        self.faces.iter().all(|(&a, &da)| {
            let ordered = self
                .faces
                .iter()
                .all(|(&b, &db)| !(a & b == a && a != b) || db < da);
            ordered && (da == 0 || has_cover.contains(&a))
        })
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim];
        for (_, d) in self.faces() {
            if d < self.dim {
                f[d] += 1;
            }
        }
        f
    }

    /// True when relabeling facets by `perm` (old `i` becomes `perm[i]`)
    /// maps the face set onto itself with dimensions preserved.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.facet_count()
            && self
                .faces()
                .all(|(m, d)| self.dim_of(permute_mask(m, perm)) == Some(d))
    }

    pub fn export(&self) -> PosetExport {
        let mut faces = vec![Vec::new(); self.dim + 1];
        for (m, d) in self.faces() {
            faces[d].push(bits(m).map(|i| self.labels[i].clone()).collect());
        }
        PosetExport {
            dimension: self.dim,
            facets: self.labels.clone(),
            f_vector: self.f_vector(),
            faces,
        }
    }

    /// Label list of a face, e.g. `{1',2',3,4}`.
    pub fn describe(&self, mask: u32) -> String {
        describe_mask(mask, &self.labels)
    }
}

pub fn describe_mask(mask: u32, labels: &[String]) -> String {
    let parts: Vec<&str> = bits(mask).map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    bits(mask).fold(0, |acc, i| acc | 1 << perm[i])
}

/// Face poset of the mirror polytope of an irreducible negative-type
/// Cartan matrix of rank `dim + 1`.
///
/// A proper subset `T` is a face of dimension `dim − |T|` when every
/// component of `A_T` is of positive type, and a vertex when every
/// component is of zero type and `A_T` has rank `dim − 1`.
pub fn face_poset<F: OrderedField>(
    a: &CartanMatrix<F>,
    dim: usize,
    exec: Exec,
) -> Result<FacePoset, VinbergError> {
    let n = a.size();
    if n > MAX_FACETS {
        return Err(VinbergError::TooManyFacets(n));
    }
    if !a.is_irreducible() {
        return Err(VinbergError::Reducible);
    }
    let rank = a.rank();
    if rank != dim + 1 {
        return Err(VinbergError::RankMismatch { dim, found: rank });
    }
    let full = (1u32 << n) - 1;
    let found = exec.filter_map_range(0..full as usize, |m| {
        let mask = m as u32;
        let sub = a.restrict_mask(mask);
        let types = sub.component_types();
        let size = mask.count_ones() as usize;
        if types.iter().all(|(_, k)| *k == CartanType::Positive) {
            if size > dim {
                return Some(Err(VinbergError::Inconsistent(
                    describe_mask(mask, a.labels()),
                    dim,
                )));
            }
            return Some(Ok((mask, dim - size)));
        }
        if types.iter().all(|(_, k)| *k == CartanType::Zero) && sub.rank() + 1 == dim {
            return Some(Ok((mask, 0)));
        }
        None
    });
    let faces = found.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(FacePoset::from_faces(dim, a.labels().to_vec(), faces))
}

/// The three uniform truncations of the 4-simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceKind {
    Truncated,
    Rectified,
    Bitruncated,
}

impl std::str::FromStr for ReferenceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "truncated" => Ok(ReferenceKind::Truncated),
            "rectified" => Ok(ReferenceKind::Rectified),
            "bitruncated" => Ok(ReferenceKind::Bitruncated),
            other => Err(format!("unknown reference polytope '{other}'")),
        }
    }
}

impl fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReferenceKind::Truncated => "truncated",
            ReferenceKind::Rectified => "rectified",
            ReferenceKind::Bitruncated => "bitruncated",
        };
        f.write_str(s)
    }
}

/// Vertex facet-sets of the reference polytope on `1′..5′, 1..5`.
pub fn reference_vertices(kind: ReferenceKind) -> Vec<u32> {
    let p = |i: usize| 1u32 << family::primed(i);
    let u = |i: usize| 1u32 << family::unprimed(i);
    let mut out = Vec::new();
    for i in 1..=5 {
        for j in 1..=5 {
            if j == i {
                continue;
            }
            let others: Vec<usize> = (1..=5).filter(|&k| k != i && k != j).collect();
            match kind {
                ReferenceKind::Bitruncated if i < j => {
                    for (x, &k) in others.iter().enumerate() {
                        for &l in &others[x + 1..] {
                            out.push(p(i) | p(j) | u(k) | u(l));
                        }
                    }
                }
                ReferenceKind::Rectified if i < j => {
                    out.push(p(i) | p(j) | others.iter().fold(0, |m, &k| m | u(k)));
                }
                _ => {}
            }
        }
        if kind == ReferenceKind::Truncated {
            let others: Vec<usize> = (1..=5).filter(|&k| k != i).collect();
            for skip in &others {
                let m = others
                    .iter()
                    .filter(|&k| k != skip)
                    .fold(p(i), |m, &k| m | u(k));
                out.push(m);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Face poset of a 4-polytope given by its vertex facet-sets.
///
/// Faces are the closed sets of the vertex/facet incidence: `T` is a face
/// when the vertices containing `T` exist and their common facets are
/// exactly `T`. A face's dimension is the length of the longest chain of
/// faces from it down to a vertex.
pub fn poset_from_vertices(dim: usize, labels: Vec<String>, vertices: &[u32]) -> FacePoset {
    let n = labels.len();
    let mut closed: Vec<u32> = (1u32..(1 << n))
        .filter(|&t| {
            let common = vertices
                .iter()
                .filter(|&&v| v & t == t)
                .fold(u32::MAX, |acc, &v| acc & v);
            common == t
        })
        .collect();
    // larger facet sets are lower faces; process them first
    closed.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut dims: HashMap<u32, usize> = HashMap::new();
    for &t in &closed {
        let d = closed
            .iter()
            .filter(|&&s| s & t == t && s != t)
            .filter_map(|s| dims.get(s))
            .map(|d| d + 1)
            .max()
            .unwrap_or(0);
        dims.insert(t, d);
    }
    FacePoset::from_faces(dim, labels, dims)
}

pub fn reference_poset(kind: ReferenceKind) -> FacePoset {
    poset_from_vertices(4, family::labels(), &reference_vertices(kind))
}

/// Result of an isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub isomorphic: bool,
    /// `bijection[i]` is the facet of the second poset matched to facet `i`.
    pub bijection: Option<Vec<usize>>,
}

/// Per-facet invariant: number of faces of each dimension containing it.
fn facet_profile(p: &FacePoset, i: usize) -> Vec<usize> {
    let mut prof = vec![0; p.dim + 1];
    for (m, d) in p.faces() {
        if m >> i & 1 == 1 {
            prof[d] += 1;
        }
    }
    prof
}

/// Decides graded isomorphism by backtracking over facet bijections.
///
/// Faces are determined by their facet sets, so an isomorphism is a facet
/// bijection carrying faces to faces of equal dimension. Candidates are
/// pruned by facet profiles, and each partial assignment is checked on the
/// faces it fully determines.
pub fn poset_isomorphic(p: &FacePoset, q: &FacePoset) -> Isomorphism {
    let no = Isomorphism {
        isomorphic: false,
        bijection: None,
    };
    let n = p.facet_count();
    if n != q.facet_count()
        || p.dim != q.dim
        || p.faces.len() != q.faces.len()
        || p.f_vector() != q.f_vector()
    {
        return no;
    }
    let pp: Vec<Vec<usize>> = (0..n).map(|i| facet_profile(p, i)).collect();
    let qp: Vec<Vec<usize>> = (0..n).map(|i| facet_profile(q, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| pp[i] == qp[j]).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return no;
    }
    // faces indexed by their highest facet so each is checked once, as
    // soon as all its facets are assigned
    let mut by_last: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n];
    for (m, d) in p.faces() {
        if m != 0 {
            by_last[31 - m.leading_zeros() as usize].push((m, d));
        }
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(0, &candidates, &by_last, q, &mut perm, &mut used) {
        Isomorphism {
            isomorphic: true,
            bijection: Some(perm),
        }
    } else {
        no
    }
}

fn search(
    i: usize,
    candidates: &[Vec<usize>],
    by_last: &[Vec<(u32, usize)>],
    q: &FacePoset,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == perm.len() {
        return true;
    }
    for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        perm[i] = j;
        used[j] = true;
        let ok = by_last[i]
            .iter()
            .all(|&(m, d)| q.dim_of(permute_mask(m, perm)) == Some(d));
        if ok && search(i + 1, candidates, by_last, q, perm, used) {
            return true;
        }
        used[j] = false;
    }
    perm[i] = usize::MAX;
    false
}

/// Dihedral data of a pair of facets.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle<F> {
    /// `cos²θ = A_ij A_ji / 4`, with `m` set when `θ = π/m` is recognized.
    Finite { cos_sq: F, pi_over: Option<u32> },
    /// `A_ij A_ji ≥ 4`: the facets do not meet at a ridge.
    Infinite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleRecord<F> {
    pub pair: (usize, usize),
    pub angle: Angle<F>,
}

/// `m` with `cos²(π/m) = c` for the rational values of `cos²(π/m)`.
pub fn recognize_pi_over(c: &Rational) -> Option<u32> {
    [
        (rat(0, 1), 2),
        (rat(1, 4), 3),
        (rat(1, 2), 4),
        (rat(3, 4), 6),
    ]
    .into_iter()
    .find(|(v, _)| v == c)
    .map(|(_, m)| m)
}

/// One record per unordered pair `i < j`.
pub fn dihedral_angles<F: OrderedField>(a: &CartanMatrix<F>) -> Vec<AngleRecord<F>> {
    let n = a.size();
    let four = F::from_int(4);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let prod = a.entry(i, j).clone() * a.entry(j, i);
            let angle = if (prod.clone() - &four).sign() != Sign::Negative {
                Angle::Infinite
            } else {
                let cos_sq = prod.div(&four).expect("four is invertible");
                let pi_over = [0i64, 1, 2, 3]
                    .into_iter()
                    .find(|&k| cos_sq == F::from_rational(&rat(k, 4)))
                    .and_then(|k| recognize_pi_over(&rat(k, 4)));
                Angle::Finite { cos_sq, pi_over }
            };
            out.push(AngleRecord {
                pair: (i, j),
                angle,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_f_vectors() {
        assert_eq!(
            reference_poset(ReferenceKind::Bitruncated).f_vector(),
            vec![30, 60, 40, 10]
        );
        assert_eq!(
            reference_poset(ReferenceKind::Rectified).f_vector(),
            vec![10, 30, 30, 10]
        );
        assert_eq!(
            reference_poset(ReferenceKind::Truncated).f_vector(),
            vec![20, 40, 30, 10]
        );
    }

    #[test]
    fn mask_helpers_round_trip() {
        let m = mask_of(&[0, 3, 7]);
        assert_eq!(bits(m).collect::<Vec<_>>(), vec![0, 3, 7]);
        assert_eq!(
            permute_mask(m, &[1, 0, 2, 4, 3, 5, 6, 8, 7, 9]),
            mask_of(&[1, 4, 8])
        );
    }
}
