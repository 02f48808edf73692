//! Analyses of a glued complex: boundary components, ridge cone angles,
//! the surfaces swept out by one kind of ridge, and vertex links.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::glue::{facets_of, mask_label, reference_faces, GluedComplex};
use super::ComplexError;
use crate::cartan::CartanMatrix;
use crate::exactnum::{int, rat, OrderedField, Rational};
use crate::family::{is_primed, primed, unprimed};
use crate::par::Exec;
use crate::vinberg::{dihedral_angles, Angle};

fn ser_opt<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// A maximal set of unglued facet sides joined across ridges where exactly
/// one of the two facets is unglued.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    /// `(cell, facet label)`.
    pub sides: Vec<(usize, String)>,
    /// Distinct facet labels among the sides.
    pub facets: Vec<String>,
}

pub fn boundary_components(c: &GluedComplex) -> Vec<BoundaryComponent> {
    let sides = c.unglued_sides();
    let index: HashMap<(usize, usize), usize> =
        sides.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut uf = UnionFind::<usize>::new(sides.len());
    for id in c.classes_of_dim(2) {
        let class = c.class(id);
        let members: Vec<usize> = class
            .cells
            .iter()
            .filter_map(|&cell| {
                let free = class.mask & !c.glued_mask(cell);
                (free.count_ones() == 1).then(|| index[&(cell, free.trailing_zeros() as usize)])
            })
            .collect();
        for w in members.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let labels = c.facet_labels();
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, &side) in sides.iter().enumerate() {
        groups.entry(uf.find(k)).or_default().push(side);
    }
    let mut out: Vec<BoundaryComponent> = groups
        .into_values()
        .map(|g| {
            let facets: BTreeSet<usize> = g.iter().map(|&(_, s)| s).collect();
            BoundaryComponent {
                sides: g
                    .iter()
                    .map(|&(cell, s)| (cell, labels[s].clone()))
                    .collect(),
                facets: facets.into_iter().map(|s| labels[s].clone()).collect(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.sides.cmp(&b.sides));
    out
}

/// Which facets bound a ridge `{x, y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RidgeKind {
    /// `{i′, j′}`: the triangles collapsed by the filling.
    Filling,
    /// `{i, j}`.
    Unprimed,
    /// `{i′, j}`.
    Mixed,
}

impl RidgeKind {
    pub fn of(mask: u32) -> Option<RidgeKind> {
        if mask.count_ones() != 2 {
            return None;
        }
        let primed = facets_of(mask).filter(|&s| is_primed(s)).count();
        Some(match primed {
            2 => RidgeKind::Filling,
            0 => RidgeKind::Unprimed,
            _ => RidgeKind::Mixed,
        })
    }
}

/// Dihedral angles of the three ridge kinds, as multiples of `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeAngles {
    pub filling: Option<Rational>,
    pub unprimed: Option<Rational>,
    pub mixed: Option<Rational>,
}

impl RidgeAngles {
    /// `π/p` at filling ridges, `π/3` at unprimed and `π/2` at mixed ones.
    pub fn with_filling(p: u32) -> Self {
        RidgeAngles {
            filling: Some(rat(1, p as i64)),
            unprimed: Some(rat(1, 3)),
            mixed: Some(rat(1, 2)),
        }
    }

    /// Reads the angles off a Cartan matrix of the family; an angle that is
    /// not of the form `π/m` is left unknown.
    pub fn from_cartan<F: OrderedField>(a: &CartanMatrix<F>) -> Self {
        let records = dihedral_angles(a);
        let angle = |i: usize, j: usize| {
            let (i, j) = (i.min(j), i.max(j));
            records
                .iter()
                .find(|r| r.pair == (i, j))
                .and_then(|r| match r.angle {
                    Angle::Finite {
                        pi_over: Some(m), ..
                    } => Some(rat(1, m as i64)),
                    _ => None,
                })
        };
        RidgeAngles {
            filling: angle(primed(1), primed(2)),
            unprimed: angle(unprimed(1), unprimed(2)),
            mixed: angle(primed(1), unprimed(2)),
        }
    }

    fn of(&self, kind: RidgeKind) -> Option<&Rational> {
        match kind {
            RidgeKind::Filling => self.filling.as_ref(),
            RidgeKind::Unprimed => self.unprimed.as_ref(),
            RidgeKind::Mixed => self.mixed.as_ref(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeRecord {
    pub class: usize,
    pub face: String,
    pub kind: RidgeKind,
    /// Number of `(cell, ridge)` pairs in the class.
    pub incidence: usize,
    /// Cone angle around the ridge as a multiple of `π`.
    #[serde(serialize_with = "ser_opt")]
    pub angle_sum: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeReport {
    pub records: Vec<RidgeRecord>,
    /// Distinct incidence counts per kind.
    pub incidences: BTreeMap<RidgeKind, BTreeSet<usize>>,
    /// Whether every cone angle is `2π`; `None` when some angle is unknown.
    pub all_full_turn: Option<bool>,
}

pub fn ridge_report(c: &GluedComplex, angles: &RidgeAngles) -> Result<RidgeReport, ComplexError> {
    if !c.is_closed() {
        return Err(ComplexError::NotClosed(c.unglued_sides().len()));
    }
    let mut incidences: BTreeMap<RidgeKind, BTreeSet<usize>> = BTreeMap::new();
    let records: Vec<RidgeRecord> = c
        .classes_of_dim(2)
        .into_iter()
        .map(|id| {
            let class = c.class(id);
            let kind = RidgeKind::of(class.mask).expect("2-faces are ridges of two facets");
            let incidence = class.cells.len();
            incidences.entry(kind).or_default().insert(incidence);
            RidgeRecord {
                class: id,
                face: mask_label(class.mask),
                kind,
                incidence,
                angle_sum: angles
                    .of(kind)
                    .map(|a| a * Rational::from_integer(incidence.into())),
            }
        })
        .collect();
    let all_full_turn = records
        .iter()
        .map(|r| r.angle_sum.as_ref().map(|s| *s == int(2)))
        .collect::<Option<Vec<bool>>>()
        .map(|v| v.into_iter().all(|b| b));
    Ok(RidgeReport {
        records,
        incidences,
        all_full_turn,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceClass {
    Torus,
    KleinBottle,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub orbit: usize,
    pub faces: Vec<String>,
    /// Ridge classes in the orbit.
    pub triangles: usize,
    /// `(cell, ridge)` pairs over all those classes.
    pub triangle_incidences: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler: i64,
    pub orientable: bool,
    pub classification: SurfaceClass,
}

/// Boundary cycle of a reference ridge: for each edge, `+1` when the
/// canonical traversal runs from its smaller vertex mask to its larger one.
fn ridge_cycle(ridge: u32) -> Vec<(u32, i8)> {
    let edges: Vec<(u32, [u32; 2])> = faces_of_dim(1)
        .filter(|&e| e & ridge == ridge)
        .map(|e| {
            let ends = reference_vertices_of(e);
            (e, [ends[0].min(ends[1]), ends[0].max(ends[1])])
        })
        .collect();
    let start = edges
        .iter()
        .map(|(_, v)| v[0])
        .min()
        .expect("ridge has vertices");
    let mut out = Vec::new();
    let mut at = start;
    let mut used = vec![false; edges.len()];
    loop {
        // from the start vertex, leave towards the smaller neighbor
        let next = (0..edges.len())
            .filter(|&k| !used[k] && edges[k].1.contains(&at))
            .min_by_key(|&k| edges[k].1.iter().copied().find(|&v| v != at))
            .map(|k| {
                (
                    k,
                    edges[k]
                        .1
                        .iter()
                        .copied()
                        .find(|&v| v != at)
                        .expect("distinct ends"),
                )
            });
        let Some((k, to)) = next else { break };
        used[k] = true;
        out.push((edges[k].0, if at < to { 1 } else { -1 }));
        at = to;
    }
    out
}

/// Surfaces swept out by ridges of one kind: orbits of ridge classes under
/// sharing an edge class.
pub fn surface_analysis(
    c: &GluedComplex,
    kind: RidgeKind,
    exec: Exec,
) -> Result<Vec<SurfaceReport>, ComplexError> {
    if !c.is_closed() {
        return Err(ComplexError::NotClosed(c.unglued_sides().len()));
    }
    let tris: Vec<usize> = c
        .classes_of_dim(2)
        .into_iter()
        .filter(|&id| RidgeKind::of(c.class(id).mask) == Some(kind))
        .collect();
    let mut cycles: HashMap<u32, Vec<(u32, i8)>> = HashMap::new();
    // edge class -> [(triangle position, direction)]
    let mut sides: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
    for (k, &id) in tris.iter().enumerate() {
        let class = c.class(id);
        let cycle = cycles
            .entry(class.mask)
            .or_insert_with(|| ridge_cycle(class.mask));
        for &(e, dir) in cycle.iter() {
            let edge = c
                .class_of(class.cells[0], e)
                .expect("ridge edges are faces");
            sides.entry(edge).or_default().push((k, dir));
        }
    }
    for (&edge, list) in &sides {
        if list.len() != 2 {
            return Err(ComplexError::NonClosedSurface {
                edge: format!("{} (class {edge})", c.describe_class(edge)),
                triangles: list.len(),
            });
        }
    }
    let mut uf = UnionFind::<usize>::new(tris.len());
    for list in sides.values() {
        uf.union(list[0].0, list[1].0);
    }
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..tris.len() {
        orbits.entry(uf.find(k)).or_default().push(k);
    }
    let mut orbits: Vec<Vec<usize>> = orbits.into_values().collect();
    orbits.sort();

    // per triangle: its edge sides
    let mut tri_edges: Vec<Vec<(usize, i8)>> = vec![Vec::new(); tris.len()];
    for (&edge, list) in &sides {
        for &(k, dir) in list {
            tri_edges[k].push((edge, dir));
        }
    }

    let reports = exec.map(&orbits, |orbit| {
        let edges: BTreeSet<usize> = orbit
            .iter()
            .flat_map(|&k| tri_edges[k].iter().map(|e| e.0))
            .collect();
        let vertices: BTreeSet<usize> = orbit
            .iter()
            .flat_map(|&k| {
                let class = c.class(tris[k]);
                cycles[&class.mask]
                    .iter()
                    .flat_map(|&(e, _)| reference_vertices_of(e))
                    .map(|v| c.class_of(class.cells[0], v).expect("vertices are faces"))
                    .collect::<Vec<_>>()
            })
            .collect();
        let orientable = orient(orbit, &tri_edges, &sides);
        let euler = vertices.len() as i64 - edges.len() as i64 + orbit.len() as i64;
        let faces: BTreeSet<String> = orbit.iter().map(|&k| c.describe_class(tris[k])).collect();
        let classification = match (euler, orientable) {
            (0, true) => SurfaceClass::Torus,
            (0, false) => SurfaceClass::KleinBottle,
            _ => SurfaceClass::Other,
        };
        SurfaceReport {
            orbit: 0,
            faces: faces.into_iter().collect(),
            triangles: orbit.len(),
            triangle_incidences: orbit.iter().map(|&k| c.class(tris[k]).cells.len()).sum(),
            edges: edges.len(),
            vertices: vertices.len(),
            euler,
            orientable,
            classification,
        }
    });
    Ok(reports
        .into_iter()
        .enumerate()
        .map(|(k, r)| SurfaceReport { orbit: k, ..r })
        .collect())
}

fn faces_of_dim(d: usize) -> impl Iterator<Item = u32> {
    reference_faces()
        .iter()
        .filter(move |f| f.1 == d)
        .map(|f| f.0)
}

fn reference_vertices_of(face: u32) -> Vec<u32> {
    faces_of_dim(0).filter(|&v| v & face == face).collect()
}

/// Sign propagation: across a shared edge the induced directions of two
/// consistently oriented triangles are opposite.
fn orient(
    orbit: &[usize],
    tri_edges: &[Vec<(usize, i8)>],
    sides: &BTreeMap<usize, Vec<(usize, i8)>>,
) -> bool {
    let mut sign: HashMap<usize, i8> = HashMap::new();
    let mut stack = vec![orbit[0]];
    sign.insert(orbit[0], 1);
    while let Some(k) = stack.pop() {
        let sk = sign[&k];
        for &(edge, dir) in &tri_edges[k] {
            let list = &sides[&edge];
            // the other side; a triangle may meet itself along an edge
            let mine = list
                .iter()
                .position(|&(t, d)| t == k && d == dir)
                .expect("side present");
            let (other, odir) = list[1 - mine];
            let want = -sk * dir * odir;
            match sign.get(&other) {
                None => {
                    sign.insert(other, want);
                    stack.push(other);
                }
                Some(&s) if s != want => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// Surfaces made of filling ridges `{i′, j′}`.
pub fn sigma_analysis(c: &GluedComplex, exec: Exec) -> Result<Vec<SurfaceReport>, ComplexError> {
    surface_analysis(c, RidgeKind::Filling, exec)
}

/// Surfaces made of unprimed ridges `{i, j}`.
pub fn tprime_analysis(c: &GluedComplex, exec: Exec) -> Result<Vec<SurfaceReport>, ComplexError> {
    surface_analysis(c, RidgeKind::Unprimed, exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkShape {
    /// Closed connected 3-pseudomanifold whose vertex links are 2-spheres.
    Closed,
    /// Has boundary; vertex links are discs along it and spheres inside.
    Ball,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    pub class: usize,
    pub face: String,
    pub tetrahedra: usize,
    pub shape: LinkShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkCertificate {
    pub links: Vec<VertexLink>,
    pub closed: usize,
    pub with_boundary: usize,
}

/// Checks the link of every vertex class. A link tetrahedron per incident
/// cell corner; its faces of codimension `k` are the `k`-subsets of the
/// vertex's four facets. With `allow_boundary`, link triangles on unglued
/// facets are accepted and the link is reported as a ball.
pub fn vertex_link_check(
    c: &GluedComplex,
    allow_boundary: bool,
    exec: Exec,
) -> Result<LinkCertificate, ComplexError> {
    let mut partner: HashMap<(usize, usize), usize> = HashMap::new();
    for r in c.rules() {
        partner.insert((r.a, r.facet), r.b);
        partner.insert((r.b, r.facet), r.a);
    }
    let vertices = c.classes_of_dim(0);
    let links = exec.map(&vertices, |&id| link_of(c, id, &partner, allow_boundary));
    let links = links.into_iter().collect::<Result<Vec<_>, _>>()?;
    let closed = links
        .iter()
        .filter(|l| l.shape == LinkShape::Closed)
        .count();
    Ok(LinkCertificate {
        with_boundary: links.len() - closed,
        closed,
        links,
    })
}

fn link_of(
    c: &GluedComplex,
    id: usize,
    partner: &HashMap<(usize, usize), usize>,
    allow_boundary: bool,
) -> Result<VertexLink, ComplexError> {
    let class = c.class(id);
    let facets: Vec<usize> = facets_of(class.mask).collect();
    let fail = |reason: String| ComplexError::LinkFailure {
        vertex: format!("{} (class {id})", mask_label(class.mask)),
        reason,
    };
    if facets.len() != 4 {
        return Err(fail(format!(
            "vertex lies on {} facets, expected 4",
            facets.len()
        )));
    }
    let pos: HashMap<usize, usize> = class
        .cells
        .iter()
        .enumerate()
        .map(|(k, &cell)| (cell, k))
        .collect();
    let n = class.cells.len();
    // element (p, X) for X a subset of the four local facets
    let el = |p: usize, x: usize| p * 16 + x;
    let mut uf = UnionFind::<usize>::new(n * 16);
    let mut tets = UnionFind::<usize>::new(n);
    for (p, &cell) in class.cells.iter().enumerate() {
        for (k, &s) in facets.iter().enumerate() {
            let Some(&other) = partner.get(&(cell, s)) else {
                continue;
            };
            let q = *pos.get(&other).ok_or_else(|| {
                fail(format!(
                    "cell {other} glued across {} misses the vertex",
                    c.facet_labels()[s]
                ))
            })?;
            tets.union(p, q);
            for x in 0..16 {
                if x >> k & 1 == 1 {
                    uf.union(el(p, x), el(q, x));
                }
            }
        }
    }

    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for p in 0..n {
        for x in 1..16usize {
            members.entry(uf.find(el(p, x))).or_default().push(p);
        }
    }
    let mut boundary_triangles = BTreeSet::new();
    for p in 0..n {
        for k in 0..4 {
            let root = uf.find(el(p, 1 << k));
            match members[&root].len() {
                2 => {}
                1 if allow_boundary => {
                    boundary_triangles.insert(root);
                }
                m => {
                    return Err(fail(format!(
                        "link triangle {} of cell {} lies in {m} tetrahedra",
                        c.facet_labels()[facets[k]],
                        class.cells[p]
                    )))
                }
            }
        }
    }
    if (0..n).any(|p| tets.find(p) != tets.find(0)) {
        return Err(fail("link is disconnected".into()));
    }

    // link of each link vertex: the 3-subsets X
    let mut seen = BTreeSet::new();
    for p in 0..n {
        for x in (0..16usize).filter(|x| x.count_ones() == 3) {
            let root = uf.find(el(p, x));
            if !seen.insert(root) {
                continue;
            }
            let corners: Vec<usize> = (0..n).filter(|&q| uf.find(el(q, x)) == root).collect();
            let mut edges = BTreeSet::new();
            let mut verts = BTreeSet::new();
            let mut local = UnionFind::<usize>::new(corners.len());
            let mut by_edge: HashMap<usize, usize> = HashMap::new();
            let mut on_boundary = false;
            for (k, &q) in corners.iter().enumerate() {
                for y in (1..16usize).filter(|y| y & x == *y) {
                    let r = uf.find(el(q, y));
                    match y.count_ones() {
                        1 => {
                            edges.insert(r);
                            on_boundary |= boundary_triangles.contains(&r);
                            if let Some(&j) = by_edge.get(&r) {
                                local.union(j, k);
                            } else {
                                by_edge.insert(r, k);
                            }
                        }
                        2 => {
                            verts.insert(r);
                        }
                        _ => {}
                    }
                }
            }
            if (0..corners.len()).any(|k| local.find(k) != local.find(0)) {
                return Err(fail("a link vertex has a disconnected link".into()));
            }
            let chi = verts.len() as i64 - edges.len() as i64 + corners.len() as i64;
            let want = if on_boundary { 1 } else { 2 };
            if chi != want {
                return Err(fail(format!(
                    "link of a link vertex has Euler characteristic {chi}, expected {want}"
                )));
            }
        }
    }
    Ok(VertexLink {
        class: id,
        face: mask_label(class.mask),
        tetrahedra: n,
        shape: if boundary_triangles.is_empty() {
            LinkShape::Closed
        } else {
            LinkShape::Ball
        },
    })
}

/// `χ(C) = degree · χ^orb`.
pub fn covering_consistency(c: &GluedComplex, chi_orb: &Rational, degree: u64) -> bool {
    Rational::from_integer(super::euler_characteristic(c).into())
        == chi_orb * Rational::from_integer(degree.into())
}
