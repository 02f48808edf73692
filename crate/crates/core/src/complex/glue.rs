//! Identity gluings of bitruncated cells and the face classes they induce.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::k6::{EdgeLabeledK6, NODES};
use super::ComplexError;
use crate::family::{self, primed, unprimed};
use crate::vinberg::{bits, describe_mask, reference_poset, ReferenceKind};

/// Proper faces of the bitruncated reference: masks, dimensions, and for
/// each facet the indices of the faces it contains.
struct FaceTable {
    faces: Vec<(u32, usize)>,
    index: HashMap<u32, usize>,
    containing: Vec<Vec<usize>>,
    labels: Vec<String>,
}

fn table() -> &'static FaceTable {
    static TABLE: OnceLock<FaceTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let poset = reference_poset(ReferenceKind::Bitruncated);
        let faces: Vec<(u32, usize)> = poset.faces().filter(|&(m, _)| m != 0).collect();
        let index = faces
            .iter()
            .enumerate()
            .map(|(k, &(m, _))| (m, k))
            .collect();
        let containing = (0..family::N)
            .map(|s| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, (m, _))| m >> s & 1 == 1)
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        FaceTable {
            faces,
            index,
            containing,
            labels: poset.labels().to_vec(),
        }
    })
}

/// Number of proper faces of one cell.
pub(crate) fn faces_per_cell() -> usize {
    table().faces.len()
}

/// `(mask, dimension)` of every proper face of the reference cell.
pub(crate) fn reference_faces() -> &'static [(u32, usize)] {
    &table().faces
}

pub(crate) fn face_index(mask: u32) -> Option<usize> {
    table().index.get(&mask).copied()
}

pub(crate) fn mask_label(mask: u32) -> String {
    describe_mask(mask, &table().labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sheet {
    Plus,
    Minus,
}

/// Where a cell comes from: its node in the outer and inner `K6` and its
/// sheet in an orientation cover.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellTag {
    pub outer: Option<usize>,
    pub inner: Option<usize>,
    pub sheet: Option<Sheet>,
}

/// Facet `facet` of cell `a` is glued to facet `facet` of cell `b` by the
/// identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub a: usize,
    pub b: usize,
    pub facet: usize,
}

/// An equivalence class of `(cell, face)` pairs. Identity gluings never
/// change the face, so every member shares `mask`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceClass {
    pub mask: u32,
    pub dim: usize,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GluedComplex {
    cells: Vec<CellTag>,
    rules: Vec<Rule>,
    glued: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<FaceClass>,
    notes: Vec<String>,
}

impl GluedComplex {
    /// Validates the rules and closes the face identifications.
    pub fn new(cells: Vec<CellTag>, rules: Vec<Rule>) -> Result<Self, ComplexError> {
        let n = cells.len();
        let mut glued = vec![0u32; n];
        for (k, r) in rules.iter().enumerate() {
            if r.a >= n || r.b >= n {
                return Err(ComplexError::BadRule(
                    k,
                    format!("cell out of range 0..{n}"),
                ));
            }
            if r.a == r.b {
                return Err(ComplexError::BadRule(k, "a cell glued to itself".into()));
            }
            if r.facet >= family::N {
                return Err(ComplexError::BadRule(k, format!("facet index {}", r.facet)));
            }
            for c in [r.a, r.b] {
                if glued[c] >> r.facet & 1 == 1 {
                    return Err(ComplexError::DoubleGlued {
                        cell: c,
                        facet: table().labels[r.facet].clone(),
                    });
                }
                glued[c] |= 1 << r.facet;
            }
        }

        let t = table();
        let per = t.faces.len();
        let mut uf = UnionFind::<usize>::new(n * per);
        for r in &rules {
            for &f in &t.containing[r.facet] {
                uf.union(r.a * per + f, r.b * per + f);
            }
        }
        let mut id_of_root = HashMap::new();
        let mut classes: Vec<FaceClass> = Vec::new();
        let mut class_of = vec![0; n * per];
        for cell in 0..n {
            for (f, &(mask, dim)) in t.faces.iter().enumerate() {
                let root = uf.find(cell * per + f);
                let id = *id_of_root.entry(root).or_insert_with(|| {
                    classes.push(FaceClass {
                        mask,
                        dim,
                        cells: Vec::new(),
                    });
                    classes.len() - 1
                });
                classes[id].cells.push(cell);
                class_of[cell * per + f] = id;
            }
        }
        Ok(GluedComplex {
            cells,
            rules,
            glued,
            class_of,
            classes,
            notes: Vec::new(),
        })
    }

    pub fn cells(&self) -> &[CellTag] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn add_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn classes(&self) -> &[FaceClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &FaceClass {
        &self.classes[id]
    }

    /// Class id of face `mask` of `cell`, if `mask` is a proper face.
    pub fn class_of(&self, cell: usize, mask: u32) -> Option<usize> {
        face_index(mask).map(|f| self.class_of[cell * faces_per_cell() + f])
    }

    /// Ids of the classes of dimension `d`.
    pub fn classes_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&k| self.classes[k].dim == d)
            .collect()
    }

    /// Class counts by dimension `0..=3`.
    pub fn class_counts(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for c in &self.classes {
            out[c.dim] += 1;
        }
        out
    }

    /// Bitmask of the glued facets of `cell`.
    pub fn glued_mask(&self, cell: usize) -> u32 {
        self.glued[cell]
    }

    /// `(cell, facet)` sides not covered by any rule.
    pub fn unglued_sides(&self) -> Vec<(usize, usize)> {
        (0..self.cells.len())
            .flat_map(|c| {
                (0..family::N)
                    .filter(move |&s| self.glued[c] >> s & 1 == 0)
                    .map(move |s| (c, s))
            })
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.glued.iter().all(|&g| g == (1 << family::N) - 1)
    }

    /// Number of connected components of the cell-adjacency graph.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.cells.len());
        for r in &self.rules {
            uf.union(r.a, r.b);
        }
        let mut roots = uf.into_labeling();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// A 2-coloring of the cell-adjacency multigraph, if one exists.
    ///
    /// Each identity gluing joins two mirror-image copies, so a consistent
    /// orientation must flip sign across every rule.
    pub fn sign_assignment(&self) -> Option<Vec<bool>> {
        let n = self.cells.len();
        let mut adj = vec![Vec::new(); n];
        for r in &self.rules {
            adj[r.a].push(r.b);
            adj[r.b].push(r.a);
        }
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued cells are colored");
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(
            color
                .into_iter()
                .map(|c| c.expect("all cells visited"))
                .collect(),
        )
    }

    pub fn is_orientable(&self) -> bool {
        self.sign_assignment().is_some()
    }

    /// Human-readable face of a class, e.g. `{1',2'}`.
    pub fn describe_class(&self, id: usize) -> String {
        mask_label(self.classes[id].mask)
    }

    /// Facet labels of the reference cell.
    pub fn facet_labels(&self) -> &'static [String] {
        &table().labels
    }
}

/// `Σ (−1)^d · #classes of dimension d`, the cells counting in degree 4.
pub fn euler_characteristic(c: &GluedComplex) -> i64 {
    let counts = c.class_counts();
    let faces: i64 = counts
        .iter()
        .enumerate()
        .map(|(d, &k)| if d % 2 == 0 { k as i64 } else { -(k as i64) })
        .sum();
    faces + c.cell_count() as i64
}

/// Six cells on the nodes of `g`; an edge `(u, v)` of label `i` glues the
/// unprimed facets `i` of cells `u` and `v`.
pub fn build_block(g: &EdgeLabeledK6) -> GluedComplex {
    let cells = (0..NODES)
        .map(|u| CellTag {
            inner: Some(u),
            ..CellTag::default()
        })
        .collect();
    let rules = g
        .edges()
        .into_iter()
        .map(|(a, b, l)| Rule {
            a,
            b,
            facet: unprimed(l as usize),
        })
        .collect();
    let mut c = GluedComplex::new(cells, rules).expect("a proper coloring glues each facet once");
    c.add_note(format!("inner K6 labeling: {}", edge_summary(g)));
    c
}

/// Thirty-six cells `(U, c)`, one block per outer node `U`. An outer edge
/// `(U, V)` of label `i` glues the boundary components `∂_i` of blocks `U`
/// and `V` by the identity, matching cells with equal inner node along
/// their primed facets `i′`.
pub fn build_xprime(outer: &EdgeLabeledK6, inner: &EdgeLabeledK6) -> GluedComplex {
    let id = |u: usize, c: usize| u * NODES + c;
    let cells = (0..NODES)
        .flat_map(|u| {
            (0..NODES).map(move |c| CellTag {
                outer: Some(u),
                inner: Some(c),
                sheet: None,
            })
        })
        .collect();
    let mut rules = Vec::new();
    for u in 0..NODES {
        for (c, d, l) in inner.edges() {
            rules.push(Rule {
                a: id(u, c),
                b: id(u, d),
                facet: unprimed(l as usize),
            });
        }
    }
    for (u, v, l) in outer.edges() {
        for c in 0..NODES {
            rules.push(Rule {
                a: id(u, c),
                b: id(v, c),
                facet: primed(l as usize),
            });
        }
    }
    let mut x = GluedComplex::new(cells, rules).expect("proper colorings glue each facet once");
    x.add_note(format!("outer K6 labeling: {}", edge_summary(outer)));
    x.add_note(format!("inner K6 labeling: {}", edge_summary(inner)));
    x
}

/// Cells `2k` (sheet +) and `2k + 1` (sheet −) over cell `k`; every rule
/// joins opposite sheets.
pub fn orientation_double_cover(c: &GluedComplex) -> Result<GluedComplex, ComplexError> {
    if !c.is_closed() {
        return Err(ComplexError::NotClosed(c.unglued_sides().len()));
    }
    let cells = c
        .cells()
        .iter()
        .flat_map(|t| {
            [Sheet::Plus, Sheet::Minus].map(|s| CellTag {
                sheet: Some(s),
                ..*t
            })
        })
        .collect();
    let rules = c
        .rules()
        .iter()
        .flat_map(|r| {
            [
                Rule {
                    a: 2 * r.a,
                    b: 2 * r.b + 1,
                    facet: r.facet,
                },
                Rule {
                    a: 2 * r.a + 1,
                    b: 2 * r.b,
                    facet: r.facet,
                },
            ]
        })
        .collect();
    let mut cover = GluedComplex::new(cells, rules)?;
    for note in c.notes() {
        cover.add_note(note.clone());
    }
    if c.is_orientable() {
        cover.add_note("base is already orientable: the cover is two disjoint copies");
    }
    Ok(cover)
}

fn edge_summary(g: &EdgeLabeledK6) -> String {
    g.edges()
        .iter()
        .map(|(u, v, l)| format!("{u}-{v}:{l}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Facets of `mask`, as indices.
pub(crate) fn facets_of(mask: u32) -> impl Iterator<Item = usize> {
    bits(mask)
}
