//! Edge-labeled complete graphs on six nodes whose label classes are the
//! five perfect matchings of a 1-factorization.

use std::fmt;

use serde::Serialize;

use super::ComplexError;

pub const NODES: usize = 6;
pub const LABELS: usize = 5;

/// A proper 5-edge-coloring of `K6`, labels `1..=5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLabeledK6 {
    /// `label[u][v]` for `u ≠ v`; 0 on the diagonal.
    label: [[u8; NODES]; NODES],
}

impl EdgeLabeledK6 {
    /// Validates that every edge is labeled once and labels at each node
    /// are distinct.
    pub fn from_edges(edges: &[(usize, usize, u8)]) -> Result<Self, ComplexError> {
        let mut label = [[0u8; NODES]; NODES];
        for &(u, v, l) in edges {
            if u >= NODES || v >= NODES || u == v {
                return Err(ComplexError::InvalidK6(format!("bad edge ({u}, {v})")));
            }
            if !(1..=LABELS as u8).contains(&l) {
                return Err(ComplexError::InvalidK6(format!("label {l} outside 1..=5")));
            }
            if label[u][v] != 0 {
                return Err(ComplexError::InvalidK6(format!(
                    "edge ({u}, {v}) listed twice"
                )));
            }
            label[u][v] = l;
            label[v][u] = l;
        }
        for (u, row) in label.iter().enumerate() {
            let mut seen = [false; LABELS + 1];
            for (v, &l) in row.iter().enumerate() {
                if u == v {
                    continue;
                }
                if l == 0 {
                    return Err(ComplexError::InvalidK6(format!("edge ({u}, {v}) missing")));
                }
                if seen[l as usize] {
                    return Err(ComplexError::InvalidK6(format!(
                        "label {l} repeats at node {u}"
                    )));
                }
                seen[l as usize] = true;
            }
        }
        Ok(EdgeLabeledK6 { label })
    }

    pub fn label(&self, u: usize, v: usize) -> u8 {
        self.label[u][v]
    }

    /// The 15 edges `(u, v, label)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        (0..NODES)
            .flat_map(|u| (u + 1..NODES).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, self.label[u][v]))
            .collect()
    }

    /// The three edges with label `l`.
    pub fn matching(&self, l: u8) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|e| e.2 == l)
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// Neighbor of `u` along label `l`.
    pub fn partner(&self, u: usize, l: u8) -> usize {
        (0..NODES)
            .find(|&v| v != u && self.label[u][v] == l)
            .expect("every node meets every label")
    }

    /// Relabels edges: label `l` becomes `perm[l - 1]`.
    pub fn relabeled(&self, perm: &[u8; LABELS]) -> Self {
        let mut label = self.label;
        for row in label.iter_mut() {
            for l in row.iter_mut() {
                if *l != 0 {
                    *l = perm[*l as usize - 1];
                }
            }
        }
        EdgeLabeledK6 { label }
    }

    /// Moves node `u` to `perm[u]`.
    pub fn renumbered(&self, perm: &[usize; NODES]) -> Self {
        let mut label = [[0u8; NODES]; NODES];
        for u in 0..NODES {
            for v in 0..NODES {
                label[perm[u]][perm[v]] = self.label[u][v];
            }
        }
        EdgeLabeledK6 { label }
    }

    /// True when every two matchings union to a Hamiltonian cycle.
    pub fn is_perfect(&self) -> bool {
        (1..=LABELS as u8).all(|i| {
            (i + 1..=LABELS as u8).all(|j| pair_union_cycles(self, i, j) == Ok(vec![NODES]))
        })
    }
}

impl fmt::Display for EdgeLabeledK6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v, l) in self.edges() {
            writeln!(f, "{u} {v} {l}")?;
        }
        Ok(())
    }
}

/// The standard perfect 1-factorization `GK6`: nodes `0..5` are `Z/5` and
/// node 5 is a point at infinity; label `i` matches `5` with `k = i − 1`
/// and pairs `k ± 1`, `k ± 2`.
pub fn default_k6() -> EdgeLabeledK6 {
    let mut edges = Vec::new();
    for k in 0..LABELS {
        let l = k as u8 + 1;
        edges.push((5, k, l));
        for d in 1..=2 {
            edges.push(((k + LABELS - d) % LABELS, (k + d) % LABELS, l));
        }
    }
    let g = EdgeLabeledK6::from_edges(&edges).expect("GK6 is a proper coloring");
    debug_assert!(g.is_perfect());
    g
}

/// Cycle lengths of the union of matchings `i` and `j`, sorted.
pub fn pair_union_cycles(g: &EdgeLabeledK6, i: u8, j: u8) -> Result<Vec<usize>, ComplexError> {
    if i == j {
        return Err(ComplexError::SameLabel(i));
    }
    let mut seen = [false; NODES];
    let mut lengths = Vec::new();
    for start in 0..NODES {
        if seen[start] {
            continue;
        }
        let (mut u, mut len, mut use_i) = (start, 0, true);
        loop {
            seen[u] = true;
            u = g.partner(u, if use_i { i } else { j });
            use_i = !use_i;
            len += 1;
            if u == start && use_i {
                break;
            }
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    Ok(lengths)
}

/// Text format: 15 lines `u v label`, nodes `0..5`; `#` starts a comment.
pub fn parse_k6(text: &str) -> Result<EdgeLabeledK6, ComplexError> {
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        match nums {
            Ok(v) if v.len() == 3 && v[2] <= u8::MAX as usize => {
                edges.push((v[0], v[1], v[2] as u8))
            }
            _ => {
                return Err(ComplexError::Parse {
                    line: k + 1,
                    message: format!("expected 'u v label', got '{line}'"),
                })
            }
        }
    }
    if edges.len() != 15 {
        return Err(ComplexError::InvalidK6(format!(
            "expected 15 edges, found {}",
            edges.len()
        )));
    }
    EdgeLabeledK6::from_edges(&edges)
}
