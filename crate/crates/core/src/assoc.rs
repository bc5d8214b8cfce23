//! Associahedron skeletons, color graphs, zero sets and face separation.
//!
//! Vertices of the associahedron of dimension `d` are the binary trees with
//! `d + 1` carets; edges are single rotations.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{edge_coloring_from_vector, is_acceptable, pattern_coloring, ColorVector, Pattern};
use crate::error::{Error, Result};
use crate::paths::ValidityTest;
use crate::tree::{all_trees, BinaryTree, ShadowInterval, MAX_MASK_LEAVES};

/// Default largest dimension handled by the graph builders.
pub const DEFAULT_MAX_DIMENSION: usize = 9;

/// The dimension bound, overridable through `ASSOC_COLOR_MAX_D`.
pub fn max_dimension() -> usize {
    std::env::var("ASSOC_COLOR_MAX_D")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIMENSION)
}

/// The 1-skeleton of one associahedron with precomputed masks.
pub struct Skeleton {
    pub carets: usize,
    pub trees: Vec<BinaryTree>,
    pub masks: Vec<u128>,
    /// Neighbor indices in canonical rotation order.
    pub adjacency: Vec<Vec<usize>>,
}

impl Skeleton {
    /// All trees with `carets` carets, in canonical order.
    pub fn new(carets: usize) -> Skeleton {
        let trees = all_trees(carets);
        let index: HashMap<&BinaryTree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let adjacency = trees
            .par_iter()
            .map(|t| {
                t.available_rotations()
                    .into_iter()
                    .map(|s| index[&t.rotate(s).expect("available")])
                    .collect()
            })
            .collect();
        let masks = if carets < MAX_MASK_LEAVES {
            trees.iter().map(|t| t.interval_mask()).collect()
        } else {
            Vec::new()
        };
        Skeleton {
            carets,
            trees,
            masks,
            adjacency,
        }
    }

    /// Dimension `d`, the leaf count minus two.
    pub fn dimension(&self) -> usize {
        self.carets.saturating_sub(1)
    }

    pub fn index_of(&self, t: &BinaryTree) -> Option<usize> {
        self.trees.binary_search_by(|x| x.to_text().cmp(&t.to_text())).ok()
    }

    /// Indices of the trees for which `c` is valid.
    pub fn valid_indices(&self, c: &ColorVector) -> Vec<usize> {
        if !self.masks.is_empty() && !c.has_zero() {
            let z = c.zero_interval_mask();
            return (0..self.trees.len()).filter(|&i| self.masks[i] & z == 0).collect();
        }
        let test = ValidityTest::new(c);
        (0..self.trees.len()).filter(|&i| test.holds(&self.trees[i])).collect()
    }

    /// The induced subgraph on `keep`, as local edges `(i, j)` with `i < j`.
    pub fn induced_edges(&self, keep: &[usize]) -> Vec<(usize, usize)> {
        let local: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut edges = Vec::new();
        for (k, g) in keep.iter().enumerate() {
            for n in &self.adjacency[*g] {
                if let Some(&m) = local.get(n) {
                    if k < m {
                        edges.push((k, m));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// The subgraph of the skeleton spanned by the trees a vector is valid for.
#[derive(Clone, Debug, Serialize)]
pub struct ColorGraph {
    pub vector: ColorVector,
    pub vertices: Vec<BinaryTree>,
    /// Vertex index pairs with the smaller index first, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl ColorGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, t: &BinaryTree) -> Option<usize> {
        self.vertices.iter().position(|v| v == t)
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph color_graph_{} {{\n", self.vector);
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn check_vector(c: &ColorVector) -> Result<()> {
    if c.has_zero() {
        return Err(Error::ZeroEntry);
    }
    if c.len() < 2 {
        return Err(Error::TooShort);
    }
    let d = c.len() - 2;
    let bound = max_dimension();
    if d > bound {
        return Err(Error::DimensionTooLarge { found: d, bound });
    }
    Ok(())
}

/// Color graph of `c` over a prebuilt skeleton of matching size.
pub fn color_graph_in(sk: &Skeleton, c: &ColorVector) -> ColorGraph {
    assert_eq!(sk.carets + 1, c.len(), "skeleton size must match the vector");
    let keep = if c.is_constant() || c.sum() == 0 { Vec::new() } else { sk.valid_indices(c) };
    ColorGraph {
        vector: c.clone(),
        vertices: keep.iter().map(|&i| sk.trees[i].clone()).collect(),
        edges: sk.induced_edges(&keep),
    }
}

pub fn color_graph(c: &ColorVector) -> Result<ColorGraph> {
    check_vector(c)?;
    Ok(color_graph_in(&Skeleton::new(c.len() - 1), c))
}

/// Intervals with zero entry sum and the trees whose shadow pattern meets them.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroSet {
    pub intervals: Vec<ShadowInterval>,
    pub vertices: Vec<BinaryTree>,
}

pub fn zero_set(c: &ColorVector) -> Result<ZeroSet> {
    check_vector(c)?;
    let intervals = c.zero_intervals();
    let vertices = if c.len() <= MAX_MASK_LEAVES {
        let z = c.zero_interval_mask();
        all_trees(c.len() - 1).into_iter().filter(|t| t.interval_mask() & z != 0).collect()
    } else {
        let test = ValidityTest::new(c);
        all_trees(c.len() - 1).into_iter().filter(|t| !test.holds(t)).collect()
    };
    Ok(ZeroSet { intervals, vertices })
}

fn components(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("visited");
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Number of connected components; an empty graph has none.
pub fn component_count(g: &ColorGraph) -> usize {
    components(g.vertices.len(), &g.adjacency()).into_iter().max().map_or(0, |m| m + 1)
}

pub fn is_connected_or_edgeless(g: &ColorGraph) -> bool {
    g.edges.is_empty() || component_count(g) == 1
}

/// Largest BFS distance between two vertices.
pub fn graph_diameter(g: &ColorGraph) -> Result<usize> {
    if component_count(g) != 1 {
        return Err(Error::Disconnected);
    }
    let adj = g.adjacency();
    Ok((0..adj.len())
        .into_par_iter()
        .map(|s| bfs(&adj, s).into_iter().map(|d| d.expect("connected")).max().unwrap_or(0))
        .max()
        .unwrap_or(0))
}

/// BFS distance between two vertices of the graph.
pub fn graph_distance(g: &ColorGraph, a: &BinaryTree, b: &BinaryTree) -> Option<usize> {
    let (ia, ib) = (g.index_of(a)?, g.index_of(b)?);
    bfs(&g.adjacency(), ia)[ib]
}

/// Reads a vine colored by `1^m 2 1^n` top to bottom: `l` when the caret's
/// left edge has color 1, `r` otherwise.
pub fn vine_word(t: &BinaryTree, c: &ColorVector) -> Result<String> {
    let twos = c.entries().iter().filter(|&&x| x == 2).count();
    if twos != 1 || c.entries().iter().any(|&x| x != 1 && x != 2) || c.len() != t.leaf_count() {
        return Err(Error::NotAVineColoring);
    }
    let e = edge_coloring_from_vector(t, c)?;
    if !e.is_proper() {
        return Err(Error::NotAVineColoring);
    }
    let mut carets = t.internal().to_vec();
    carets.sort_by_key(|a| a.len());
    Ok(carets
        .iter()
        .map(|v| if e.get(v.child(0)) == 1 { 'l' } else { 'r' })
        .collect())
}

/// Removes every tree whose shadow pattern meets `intervals` and reports
/// whether the rest of the skeleton falls apart, with a component label
/// for each remaining tree.
pub fn face_union_separates(d: usize, intervals: &[ShadowInterval]) -> Result<(bool, Vec<(BinaryTree, usize)>)> {
    let bound = max_dimension();
    if d > bound {
        return Err(Error::DimensionTooLarge { found: d, bound });
    }
    face_union_separates_in(&Skeleton::new(d + 1), intervals)
}

/// [`face_union_separates`] on a prebuilt skeleton.
pub fn face_union_separates_in(sk: &Skeleton, intervals: &[ShadowInterval]) -> Result<(bool, Vec<(BinaryTree, usize)>)> {
    let d = sk.dimension();
    let mut mask = 0u128;
    for iv in intervals {
        if iv.lo < 1 || iv.hi > d + 2 || iv.len() < 2 || iv.len() > d + 1 {
            return Err(Error::OutOfRange {
                what: "proper interval",
                n: iv.hi as i64,
            });
        }
        mask |= iv.mask_bit();
    }
    let keep: Vec<usize> = (0..sk.trees.len()).filter(|&i| sk.masks[i] & mask == 0).collect();
    let edges = sk.induced_edges(&keep);
    let mut adj = vec![Vec::new(); keep.len()];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let comp = components(keep.len(), &adj);
    let count = comp.iter().max().map_or(0, |m| m + 1);
    let labelled = keep.iter().zip(comp).map(|(&g, c)| (sk.trees[g].clone(), c)).collect();
    Ok((count > 1, labelled))
}

/// The normalized vector giving every vertex of `t` a positive sign, and its
/// color graph.
pub fn positive_neighborhood(t: &BinaryTree) -> Result<(ColorVector, ColorGraph)> {
    if t.is_trivial() {
        return Err(Error::TooSmall);
    }
    let c = pattern_coloring(Pattern::Positive, t);
    let g = color_graph(&c)?;
    Ok((c, g))
}

/// Number of vertices of a color graph whose signs are all equal, which are
/// the vertices with every rotation available in the graph.
pub fn interior_vertex_count(g: &ColorGraph) -> usize {
    let deg = g.degrees();
    g.vertices
        .iter()
        .zip(deg)
        .filter(|(t, k)| *k == t.caret_count().saturating_sub(1))
        .count()
}

/// True when `c` is acceptable; shorthand used by sweeps.
pub fn acceptable(c: &ColorVector) -> bool {
    is_acceptable(c).unwrap_or(false)
}
