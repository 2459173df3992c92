use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generate::ArPrefix;
use crate::word::Word;

use super::factors::FactorSet;
use super::stabilize;

/// Vertex labels longer than this are written as `len=N@offset`.
const DOT_LABEL_MAX: usize = 32;

/// The Rauzy graph of order `n`: vertices are the length-`n` factors, edges
/// the length-`n+1` factors, each joining its prefix to its suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RauzyGraph {
    n: usize,
    vertices: Vec<Word>,
    vertex_offsets: Vec<usize>,
    /// `(from, to, label)` sorted by label.
    edges: Vec<(usize, usize, Word)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl RauzyGraph {
    pub fn from_buffer(buffer: &[u8], d: usize, n: usize) -> Result<Self> {
        if n + 1 > buffer.len() {
            return Err(Error::Domain(format!(
                "Rauzy graph of order {n} needs more than {} symbols",
                buffer.len()
            )));
        }
        let vs = FactorSet::build(buffer, d, n)?;
        let es = FactorSet::build(buffer, d, n + 1)?;
        let vertices = vs.words();
        let vertex_offsets: Vec<usize> = vs.factors().iter().map(|f| f.offset).collect();
        let index_of = |w: &[u8]| -> usize {
            vertices
                .binary_search_by(|v| v.as_slice().cmp(w))
                .expect("every edge endpoint is a factor")
        };
        let mut out_adj = vec![Vec::new(); vertices.len()];
        let mut in_adj = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::with_capacity(es.len());
        for f in es.factors() {
            let e = es.slice(f);
            let from = index_of(&e[..n]);
            let to = index_of(&e[1..]);
            out_adj[from].push(to);
            in_adj[to].push(from);
            edges.push((from, to, es.word(f)));
        }
        Ok(RauzyGraph { n, vertices, vertex_offsets, edges, out_adj, in_adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, Word)] {
        &self.edges
    }

    pub fn vertex_index(&self, w: &[u8]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(w)).ok()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// `N_+(w)`.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// `N_-(w)`.
    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn is_left_special(&self, v: usize) -> bool {
        self.in_degree(v) >= 2
    }

    pub fn is_right_special(&self, v: usize) -> bool {
        self.out_degree(v) >= 2
    }

    /// For a graph with a single branching vertex `β`, the number of vertices
    /// on each cycle leaving `β` (one entry per out-edge, in edge order).
    /// `None` if the graph does not have that shape.
    pub fn branch_cycle_lengths(&self) -> Option<Vec<usize>> {
        let branching: Vec<usize> =
            (0..self.vertices.len()).filter(|&v| self.out_degree(v) > 1).collect();
        let beta = match branching.as_slice() {
            [b] => *b,
            _ => return None,
        };
        let mut lengths = Vec::new();
        for &start in self.successors(beta) {
            let mut v = start;
            let mut count = 1;
            while v != beta {
                if self.out_degree(v) != 1 || count > self.vertices.len() {
                    return None;
                }
                v = self.out_adj[v][0];
                count += 1;
            }
            lengths.push(count);
        }
        Some(lengths)
    }

    fn label(&self, v: usize) -> String {
        let w = &self.vertices[v];
        if w.len() > DOT_LABEL_MAX {
            format!("len={}@{}", w.len(), self.vertex_offsets[v])
        } else if w.is_empty() {
            "ε".to_string()
        } else {
            w.to_string()
        }
    }

    /// Graphviz form. Special vertices carry `xlabel` `L`, `R` or `B`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph rauzy_{} {{", self.n).unwrap();
        writeln!(out, "  // order {}: {} vertices, {} edges", self.n, self.vertices.len(), self.edges.len())
            .unwrap();
        for v in 0..self.vertices.len() {
            let mark = match (self.is_left_special(v), self.is_right_special(v)) {
                (true, true) => Some("B"),
                (true, false) => Some("L"),
                (false, true) => Some("R"),
                (false, false) => None,
            };
            match mark {
                Some(m) => writeln!(out, "  v{v} [label=\"{}\", xlabel=\"{m}\"];", self.label(v)),
                None => writeln!(out, "  v{v} [label=\"{}\"];", self.label(v)),
            }
            .unwrap();
        }
        for (from, to, w) in &self.edges {
            let label = if w.len() > DOT_LABEL_MAX {
                format!("len={}", w.len())
            } else {
                w.to_string()
            };
            writeln!(out, "  v{from} -> v{to} [label=\"{label}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The Rauzy graph of order `n`, growing the prefix until it stabilizes.
pub fn rauzy_graph(prefix: &ArPrefix, n: usize) -> Result<RauzyGraph> {
    let stable = stabilize(prefix, n + 2, "Rauzy graph", |p| {
        RauzyGraph::from_buffer(p.symbols(), p.d(), n)
    })?;
    Ok(stable.value)
}

/// The values the Rauzy-graph property needs from a non-repetitive
/// complexity computation: `nrC(n)`, `C(n)` and the two window endpoints
/// (the right special factor before the window and the left special factor
/// after it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NrcWindow {
    pub nrc: usize,
    pub complexity: usize,
    pub right_endpoint: Word,
    pub left_endpoint: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RauzyCheck {
    Pass,
    Fail { witnesses: Vec<String> },
    Inapplicable(String),
}

/// When `nrC(n) = C(n)`: every `w` other than the right endpoint has at least
/// `#N_+(w) - 1` left special successors, and every `w` other than the left
/// endpoint has at least `#N_-(w) - 1` right special predecessors.
pub fn check_rauzy_special_property(
    prefix: &ArPrefix,
    n: usize,
    window: &NrcWindow,
) -> Result<RauzyCheck> {
    if window.nrc != window.complexity {
        return Ok(RauzyCheck::Inapplicable(format!(
            "nrC({n}) = {} differs from C({n}) = {}",
            window.nrc, window.complexity
        )));
    }
    let g = rauzy_graph(prefix, n)?;
    let mut witnesses = Vec::new();
    for v in 0..g.vertices().len() {
        let w = &g.vertices()[v];
        if w != &window.right_endpoint {
            let succ = g.successors(v);
            let left = succ.iter().filter(|&&s| g.is_left_special(s)).count();
            if left + 1 < succ.len() {
                witnesses.push(format!(
                    "N+({w}) has {} vertices but only {left} left special",
                    succ.len()
                ));
            }
        }
        if w != &window.left_endpoint {
            let pred = g.predecessors(v);
            let right = pred.iter().filter(|&&s| g.is_right_special(s)).count();
            if right + 1 < pred.len() {
                witnesses.push(format!(
                    "N-({w}) has {} vertices but only {right} right special",
                    pred.len()
                ));
            }
        }
    }
    Ok(if witnesses.is_empty() { RauzyCheck::Pass } else { RauzyCheck::Fail { witnesses } })
}
