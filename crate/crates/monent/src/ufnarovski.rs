//! The Ufnarovski graph of a monomial presentation and its spectral data.
//!
//! Vertices are the legal words of length l, edges the legal words of
//! length l+1; an edge runs from its length-l prefix to its length-l
//! suffix and is labeled by its first letter. For free presentations
//! (l = 0) this construction returns the quiver itself: vertices are the
//! trivial paths and edges the arrows.
//!
//! The spectral radius is computed per strongly connected component by
//! power iteration on A + I; the unit shift makes irreducible blocks
//! primitive, so the iteration converges even for periodic components,
//! and the shift is subtracted from the Rayleigh estimate at the end.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::language::{count_legal_series, enumerate_legal_capped, LogValue};
use crate::presentation::Presentation;
use crate::quiver::Word;

/// An edge of the Ufnarovski graph: a legal word of length l+1 with its
/// endpoint vertex indices and its label (an arrow index of the base
/// quiver).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UfnEdge {
    pub word: Word,
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

/// The Ufnarovski graph. Vertex and edge lists are in lexicographic
/// order by arrow-index sequence, which makes every derived artifact
/// (adjacency matrix, DOT output) byte-stable across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UfnarovskiGraph {
    pub vertices: Vec<Word>,
    pub edges: Vec<UfnEdge>,
    pub l: usize,
}

/// Builds the Ufnarovski graph from a normalized presentation.
pub fn build_ufnarovski(p: &Presentation) -> UfnarovskiGraph {
    let l = p.l();
    let vertices = enumerate_legal_capped(p, l, usize::MAX).expect("uncapped");
    let edge_words = enumerate_legal_capped(p, l + 1, usize::MAX).expect("uncapped");
    let index_of = |w: &Word| -> usize {
        vertices
            .binary_search(w)
            .expect("prefix/suffix of a legal word is legal")
    };
    let edges = edge_words
        .into_iter()
        .map(|word| {
            let source = index_of(&word.prefix(l, p.quiver()));
            let target = index_of(&word.suffix(l, p.quiver()));
            let label = word.first_arrow().expect("edge words are nonempty");
            UfnEdge { word, source, target, label }
        })
        .collect();
    UfnarovskiGraph { vertices, edges, l }
}

impl UfnarovskiGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Integer adjacency matrix: entry\[u\]\[v\] = number of edges u -> v.
/// Entries exceed 1 only in the multigraph case l = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<BigUint>, // row-major
}

impl AdjacencyMatrix {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entry(&self, u: usize, v: usize) -> &BigUint {
        &self.entries[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[BigUint] {
        &self.entries[u * self.n..(u + 1) * self.n]
    }

    /// One multiplication step: returns A · vec.
    pub fn apply(&self, vec: &[BigUint]) -> Vec<BigUint> {
        (0..self.n)
            .map(|u| {
                let mut acc = BigUint::zero();
                for v in 0..self.n {
                    let e = self.entry(u, v);
                    if !e.is_zero() && !vec[v].is_zero() {
                        acc += e * &vec[v];
                    }
                }
                acc
            })
            .collect()
    }

    /// Per-vertex path counts (A^m row sums) for every m = 0..=m_max.
    pub fn path_count_vectors(&self, m_max: usize) -> Vec<Vec<BigUint>> {
        let mut out = Vec::with_capacity(m_max + 1);
        let mut cur = vec![BigUint::from(1u32); self.n];
        out.push(cur.clone());
        for _ in 0..m_max {
            cur = self.apply(&cur);
            out.push(cur.clone());
        }
        out
    }
}

impl Serialize for AdjacencyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(
            (0..self.n).map(|u| self.row(u).iter().map(|e| e.to_string()).collect::<Vec<_>>()),
        )
    }
}

pub fn adjacency(g: &UfnarovskiGraph) -> AdjacencyMatrix {
    let n = g.vertex_count();
    let mut entries = vec![BigUint::zero(); n * n];
    for e in &g.edges {
        entries[e.source * n + e.target] += 1u32;
    }
    AdjacencyMatrix { n, entries }
}

/// Per-start-vertex and total counts of length-n paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCounts {
    pub per_vertex: Vec<BigUint>,
    pub total: BigUint,
}

pub fn path_counts(m: &AdjacencyMatrix, n: usize) -> PathCounts {
    let per_vertex = m.path_count_vectors(n).pop().expect("nonempty");
    let total = per_vertex.iter().sum();
    PathCounts { per_vertex, total }
}

/// Total path counts b_0..b_N as a growth sequence.
pub fn path_count_series(m: &AdjacencyMatrix, n_max: usize) -> crate::language::GrowthSequence {
    let totals = m
        .path_count_vectors(n_max)
        .iter()
        .map(|v| v.iter().sum())
        .collect();
    crate::language::GrowthSequence::new(totals)
}

// ---------------------------------------------------------------------------
// Spectral radius
// ---------------------------------------------------------------------------

pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-10;
pub const SPECTRAL_ITERATION_CAP: usize = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub scc_count: usize,
    pub per_scc: Vec<f64>,
    pub iterations: usize,
    pub tolerance: f64,
    pub converged: bool,
}

/// Strongly connected components (Tarjan, iterative), sorted by smallest
/// member for deterministic output.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut child)) = call.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&mut (parent, _)) = call.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Spectral radius via SCC condensation and shifted power iteration.
pub fn spectral_radius(m: &AdjacencyMatrix, tol: f64) -> SpectralResult {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = m.dimension();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| !m.entry(u, v).is_zero()).collect())
        .collect();
    let comps = strongly_connected_components(&adj);

    let mut per_scc = Vec::with_capacity(comps.len());
    let mut iterations = 0usize;
    let mut converged = true;
    for comp in &comps {
        if comp.len() == 1 {
            let v = comp[0];
            // A single vertex is a cycle only through its own loops.
            per_scc.push(m.entry(v, v).to_f64().unwrap_or(f64::INFINITY));
            continue;
        }
        let k = comp.len();
        // Shifted block B = A_scc + I, in f64 (entries are small counts).
        let mut b = vec![0.0f64; k * k];
        for (i, &u) in comp.iter().enumerate() {
            for (j, &v) in comp.iter().enumerate() {
                b[i * k + j] = m.entry(u, v).to_f64().unwrap_or(f64::INFINITY);
            }
            b[i * k + i] += 1.0;
        }
        let mut vec_v = vec![1.0f64; k];
        let mut est = 0.0f64;
        let mut stable = 0usize;
        let mut block_converged = false;
        for _ in 0..SPECTRAL_ITERATION_CAP {
            iterations += 1;
            let mut w = vec![0.0f64; k];
            for i in 0..k {
                for j in 0..k {
                    w[i] += b[i * k + j] * vec_v[j];
                }
            }
            let dot_vw: f64 = vec_v.iter().zip(&w).map(|(a, b)| a * b).sum();
            let dot_vv: f64 = vec_v.iter().map(|a| a * a).sum();
            let new_est = dot_vw / dot_vv;
            let sup = w.iter().cloned().fold(0.0f64, f64::max);
            for x in &mut w {
                *x /= sup;
            }
            vec_v = w;
            if (new_est - est).abs() < tol {
                stable += 1;
                if stable >= 2 {
                    est = new_est;
                    block_converged = true;
                    break;
                }
            } else {
                stable = 0;
            }
            est = new_est;
        }
        converged &= block_converged;
        per_scc.push(est - 1.0);
    }

    let rho = per_scc.iter().cloned().fold(0.0f64, f64::max);
    SpectralResult {
        rho,
        scc_count: comps.len(),
        per_scc,
        iterations,
        tolerance: tol,
        converged,
    }
}

/// Graph entropy: log2 of the spectral radius, tagged -inf when rho = 0
/// (acyclic graphs / finite-dimensional algebras).
pub fn graph_entropy(m: &AdjacencyMatrix, tol: f64) -> (LogValue, SpectralResult) {
    let spectral = spectral_radius(m, tol);
    // Integer matrices have rho = 0 or rho >= 1; 0.5 separates the cases
    // against iteration noise.
    let value = if spectral.rho < 0.5 {
        LogValue::NegInfinity
    } else {
        LogValue::Finite(spectral.rho.log2())
    };
    (value, spectral)
}

// ---------------------------------------------------------------------------
// Holdaway-Smith labeling map
// ---------------------------------------------------------------------------

/// Image of each arrow label under the graph-labeling map: the formal sum
/// (list) of edges labeled by that arrow; empty when no edge carries the
/// label.
pub fn holdaway_smith(p: &Presentation, g: &UfnarovskiGraph) -> Vec<Vec<usize>> {
    let mut images = vec![Vec::new(); p.quiver().arrow_count()];
    for (i, e) in g.edges.iter().enumerate() {
        images[e.label].push(i);
    }
    images
}

// ---------------------------------------------------------------------------
// Dimension bijection: dim A_m = dim (kQ_A)_{m-l} for m > l
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension identity fails at m = {m}: dim A_m = {dim_a}, path count = {path_count}")]
pub struct DimMismatch {
    pub m: usize,
    pub dim_a: BigUint,
    pub path_count: BigUint,
}

/// Verifies dim A_m = total (m-l)-path count exactly for all l < m <= m_max.
pub fn dim_identity_check(
    p: &Presentation,
    g: &UfnarovskiGraph,
    m_max: usize,
) -> Result<(), DimMismatch> {
    let l = p.l();
    assert!(m_max > l, "m_max must exceed l");
    let dims = count_legal_series(p, m_max);
    let adj = adjacency(g);
    let paths = path_count_series(&adj, m_max - l);
    for m in (l + 1)..=m_max {
        let dim_a = &dims.values()[m];
        let path_count = &paths.values()[m - l];
        if dim_a != path_count {
            return Err(DimMismatch {
                m,
                dim_a: dim_a.clone(),
                path_count: path_count.clone(),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

/// GraphViz document with deterministic vertex ordering; edges carry both
/// the label and the full word.
pub fn export_dot(p: &Presentation, g: &UfnarovskiGraph) -> String {
    let q = p.quiver();
    let name = |w: &Word| -> String {
        if w.is_empty() {
            q.vertices()[w.source(q)].clone()
        } else {
            w.display(q).to_string()
        }
    };
    let mut out = String::from("digraph ufnarovski {\n");
    out.push_str("  rankdir=LR;\n");
    for v in &g.vertices {
        out.push_str(&format!("  \"{}\";\n", name(v)));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\", word=\"{}\"];\n",
            name(&g.vertices[e.source]),
            name(&g.vertices[e.target]),
            q.arrows()[e.label].label,
            name(&e.word),
        ));
    }
    out.push_str("}\n");
    out
}
