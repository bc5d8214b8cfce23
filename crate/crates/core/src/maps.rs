//! Planar maps from tree pairs: dual triangulations, primality, named
//! triangulation families, chromatic counts, and leaf-permuted triples.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coloring::{is_valid, normalized_colorings, ColorVector};
use crate::error::{Error, Result};
use crate::thompson::TreePair;
use crate::tree::{Address, BinaryTree, ShadowInterval};

/// An undirected multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Panics on a loop or an out-of-range vertex.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a < self.n && b < self.n, "bad edge ({a}, {b})");
        self.edges.push((a.min(b), a.max(b)));
    }

    /// Neighbor lists with multiplicity.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Distinct neighbors, sorted.
    pub fn neighbor_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        !self.edges.iter().all(|e| seen.insert(*e))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_cubic(&self) -> bool {
        self.degrees().iter().all(|&d| d == 3)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Length of a shortest cycle; a pair of parallel edges is a 2-cycle.
    pub fn girth(&self) -> Option<usize> {
        if self.has_parallel_edges() {
            return Some(2);
        }
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Induced simple graph obtained by deleting `v`.
    fn without(&self, v: usize) -> Graph {
        let map = |x: usize| if x > v { x - 1 } else { x };
        Graph {
            n: self.n - 1,
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| *a != v && *b != v)
                .map(|(a, b)| (map(*a), map(*b)))
                .collect(),
        }
    }
}

/// A triangulated sphere: a graph plus its triangular faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub graph: Graph,
    pub faces: Vec<[usize; 3]>,
}

impl Triangulation {
    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    /// Euler counts hold and every edge borders exactly two faces.
    pub fn is_consistent(&self) -> bool {
        let v = self.graph.n;
        if v < 3 || self.faces.len() != 2 * v - 4 || self.graph.edges.len() != 3 * v - 6 {
            return false;
        }
        let mut uses: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &self.graph.edges {
            *mult.entry(*e).or_default() += 1;
        }
        uses.iter().all(|(e, k)| *k == 2 * mult.get(e).copied().unwrap_or(0))
            && mult.keys().all(|e| uses.contains_key(e))
    }

    fn replace_face(&mut self, old: [usize; 3], new: &[[usize; 3]]) {
        let key = |f: &[usize; 3]| {
            let mut k = *f;
            k.sort_unstable();
            k
        };
        let pos = self
            .faces
            .iter()
            .position(|f| key(f) == key(&old))
            .expect("face present");
        self.faces.remove(pos);
        self.faces.extend_from_slice(new);
    }
}

/// Internal vertices of a tree keyed by their shadow interval.
fn internal_by_interval(t: &BinaryTree) -> BTreeMap<ShadowInterval, Address> {
    let map = t.shadow_map();
    t.internal().iter().map(|a| (map[a], *a)).collect()
}

/// Chord triangles of a tree on polygon vertices `0..=L`.
fn tree_triangles(t: &BinaryTree) -> Vec<[usize; 3]> {
    let map = t.shadow_map();
    t.internal()
        .iter()
        .map(|a| {
            let s = map[a];
            let mid = map[&a.child(0)].hi;
            [s.lo - 1, mid, s.hi]
        })
        .collect()
}

/// The dual triangulation: the polygon with vertices `0..=L`, triangulated
/// by the chords of `D` on one side and those of `R` on the other.
pub fn pair_to_dual(p: &TreePair) -> Result<Triangulation> {
    let l = p.leaf_count();
    if l < 2 {
        return Err(Error::TooSmall);
    }
    let mut g = Graph::new(l + 1);
    for i in 1..=l {
        g.add_edge(i - 1, i);
    }
    g.add_edge(0, l);
    for t in [&p.d, &p.r] {
        for (iv, a) in internal_by_interval(t) {
            if !a.is_empty() {
                g.add_edge(iv.lo - 1, iv.hi);
            }
        }
    }
    let mut faces = tree_triangles(&p.d);
    faces.extend(tree_triangles(&p.r));
    Ok(Triangulation { graph: g, faces })
}

/// Common shadow intervals of internal vertices other than the roots.
pub fn common_proper_intervals(p: &TreePair) -> Vec<ShadowInterval> {
    let d = internal_by_interval(&p.d);
    let r = internal_by_interval(&p.r);
    let full = ShadowInterval::new(1, p.leaf_count());
    d.keys().filter(|iv| **iv != full && r.contains_key(iv)).copied().collect()
}

/// No proper shadow interval is shared by the two trees.
pub fn is_prime(p: &TreePair) -> bool {
    common_proper_intervals(p).is_empty()
}

fn prune(t: &BinaryTree, v: Address) -> BinaryTree {
    BinaryTree::new(t.internal().iter().copied().filter(|a| !v.is_prefix_of(*a))).expect("pruning keeps prefix closure")
}

/// Splits along common proper intervals, innermost first, until every
/// factor is prime. Factors are listed innermost first.
pub fn prime_factorization(p: &TreePair) -> Vec<TreePair> {
    let mut out = Vec::new();
    factor_into(p, &mut out);
    out
}

fn factor_into(p: &TreePair, out: &mut Vec<TreePair>) {
    let common = common_proper_intervals(p);
    let Some(inner) = common.iter().min_by_key(|iv| (iv.len(), iv.lo)).copied() else {
        out.push(p.clone());
        return;
    };
    let vd = internal_by_interval(&p.d)[&inner];
    let vr = internal_by_interval(&p.r)[&inner];
    let inside = TreePair {
        d: p.d.subtree_at(vd).expect("vertex"),
        r: p.r.subtree_at(vr).expect("vertex"),
    };
    let outside = TreePair {
        d: prune(&p.d, vd),
        r: prune(&p.r, vr),
    };
    factor_into(&inside, out);
    factor_into(&outside, out);
}

/// The five named triangulation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Suspension of a cycle.
    Biwheel,
    Theta,
    Xi,
    Y,
    Nabla,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Biwheel, Family::Theta, Family::Xi, Family::Y, Family::Nabla];

    /// Smallest vertex count the construction supports.
    pub fn min_vertices(self) -> usize {
        match self {
            Family::Biwheel => 5,
            Family::Theta | Family::Y => 6,
            Family::Xi => 7,
            Family::Nabla => 8,
        }
    }

    pub fn build(self, n: usize) -> Result<Triangulation> {
        match self {
            Family::Biwheel => biwheel(n),
            Family::Theta => theta(n),
            Family::Xi => xi(n),
            Family::Y => y_graph(n),
            Family::Nabla => nabla(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Biwheel => "W",
            Family::Theta => "Theta",
            Family::Xi => "Xi",
            Family::Y => "Y",
            Family::Nabla => "Nabla",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "w" | "biwheel" => Ok(Family::Biwheel),
            "theta" => Ok(Family::Theta),
            "xi" => Ok(Family::Xi),
            "y" => Ok(Family::Y),
            "nabla" | "del" => Ok(Family::Nabla),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

fn too_small(f: Family, n: usize) -> Result<()> {
    if n < f.min_vertices() {
        Err(Error::TooSmall)
    } else {
        Ok(())
    }
}

/// Vertices `0` and `1` are the apexes; `2..n` form the cycle in order.
pub fn biwheel(n: usize) -> Result<Triangulation> {
    too_small(Family::Biwheel, n)?;
    let m = n - 2;
    let mut g = Graph::new(n);
    let mut faces = Vec::new();
    for i in 0..m {
        let (c, d) = (2 + i, 2 + (i + 1) % m);
        g.add_edge(c, d);
        g.add_edge(0, c);
        g.add_edge(1, c);
        faces.push([0, c, d]);
        faces.push([1, c, d]);
    }
    Ok(Triangulation { graph: g, faces })
}

/// Splits the cycle vertex `2` of a biwheel into a chain of `k` vertices,
/// the first joined to apex 0, the last to apex 1, all to both cycle
/// neighbors of the old vertex.
fn split_cycle_vertex(base: &Triangulation, k: usize) -> Triangulation {
    let n = base.graph.n;
    let (a, b, d, e, c) = (0, 1, 2, 3, n - 1);
    let chain: Vec<usize> = std::iter::once(d).chain(n..n + k - 1).collect();
    let mut g = Graph::new(n + k - 1);
    for &(x, y) in &base.graph.edges {
        if x != d && y != d {
            g.add_edge(x, y);
        }
    }
    let mut faces: Vec<[usize; 3]> = base.faces.iter().filter(|f| !f.contains(&d)).copied().collect();
    for (i, &v) in chain.iter().enumerate() {
        g.add_edge(v, c);
        g.add_edge(v, e);
        if i + 1 < k {
            g.add_edge(v, chain[i + 1]);
            faces.push([c, v, chain[i + 1]]);
            faces.push([v, e, chain[i + 1]]);
        }
    }
    g.add_edge(a, chain[0]);
    g.add_edge(b, chain[k - 1]);
    faces.push([a, c, chain[0]]);
    faces.push([a, chain[0], e]);
    faces.push([b, c, chain[k - 1]]);
    faces.push([b, chain[k - 1], e]);
    Triangulation { graph: g, faces }
}

/// A cycle vertex of the biwheel on `n - 1` vertices split in two.
pub fn theta(n: usize) -> Result<Triangulation> {
    too_small(Family::Theta, n)?;
    Ok(split_cycle_vertex(&biwheel(n - 1)?, 2))
}

/// A cycle vertex of the biwheel on `n - 2` vertices split in three.
pub fn xi(n: usize) -> Result<Triangulation> {
    too_small(Family::Xi, n)?;
    Ok(split_cycle_vertex(&biwheel(n - 2)?, 3))
}

/// A new vertex inside one face of the biwheel on `n - 1` vertices.
pub fn y_graph(n: usize) -> Result<Triangulation> {
    too_small(Family::Y, n)?;
    let mut t = biwheel(n - 1)?;
    let (x, y, z, v) = (0, 2, 3, n - 1);
    t.graph.n = n;
    for w in [x, y, z] {
        t.graph.add_edge(w, v);
    }
    t.replace_face([x, y, z], &[[x, y, v], [y, z, v], [z, x, v]]);
    Ok(t)
}

/// A nested triangle inside one face of the biwheel on `n - 3` vertices.
pub fn nabla(n: usize) -> Result<Triangulation> {
    too_small(Family::Nabla, n)?;
    let mut t = biwheel(n - 3)?;
    let (a, b, c) = (0, 2, 3);
    let (x, y, z) = (n - 3, n - 2, n - 1);
    t.graph.n = n;
    for (p, q) in [(x, y), (y, z), (z, x), (a, x), (a, z), (b, x), (b, y), (c, y), (c, z)] {
        t.graph.add_edge(p, q);
    }
    t.replace_face(
        [a, b, c],
        &[[x, y, z], [a, b, x], [b, c, y], [c, a, z], [a, x, z], [b, y, x], [c, z, y]],
    );
    Ok(t)
}

/// Largest graph the exact colorer accepts.
pub const MAX_COLORING_VERTICES: usize = 16;

/// Proper vertex colorings with `k` colors, by backtracking in an order
/// where each vertex has as many earlier neighbors as possible.
pub fn count_vertex_colorings(g: &Graph, k: u8) -> Result<u64> {
    if g.n > MAX_COLORING_VERTICES {
        return Err(Error::TooLarge {
            found: g.n,
            bound: MAX_COLORING_VERTICES,
        });
    }
    let adj = g.neighbor_sets();
    let mut order: Vec<usize> = Vec::with_capacity(g.n);
    let mut placed = vec![false; g.n];
    while order.len() < g.n {
        let next = (0..g.n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (adj[v].iter().filter(|w| placed[**w]).count(), adj[v].len(), usize::MAX - v))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let position: Vec<usize> = {
        let mut p = vec![0; g.n];
        for (i, v) in order.iter().enumerate() {
            p[*v] = i;
        }
        p
    };
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| adj[v].iter().copied().filter(|w| position[*w] < position[v]).collect())
        .collect();
    let mut colors = vec![0u8; g.n];
    fn go(i: usize, order: &[usize], earlier: &[Vec<usize>], colors: &mut [u8], k: u8) -> u64 {
        if i == order.len() {
            return 1;
        }
        let v = order[i];
        let mut total = 0;
        for c in 1..=k {
            if earlier[i].iter().all(|w| colors[*w] != c) {
                colors[v] = c;
                total += go(i + 1, order, earlier, colors, k);
            }
        }
        colors[v] = 0;
        total
    }
    Ok(go(0, &order, &earlier, &mut colors, k))
}

/// Chromatic polynomial value by deletion and contraction; exponential,
/// intended as an independent check on small graphs.
pub fn chromatic_by_deletion_contraction(g: &Graph, k: i64) -> i64 {
    let simple: BTreeSet<(usize, usize)> = g.edges.iter().copied().collect();
    dc(g.n, &simple, k)
}

fn dc(n: usize, edges: &BTreeSet<(usize, usize)>, k: i64) -> i64 {
    let Some(&(a, b)) = edges.iter().next() else {
        return k.pow(n as u32);
    };
    let mut deleted = edges.clone();
    deleted.remove(&(a, b));
    // Contract b into a, then renumber the last vertex into b's slot.
    let last = n - 1;
    let relabel = |x: usize| {
        let x = if x == b { a } else { x };
        if x == last {
            b
        } else {
            x
        }
    };
    let contracted: BTreeSet<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| (relabel(x), relabel(y)))
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let a_fixed = if a == last { b } else { a };
    debug_assert!(a_fixed < n - 1);
    dc(n, &deleted, k) - dc(n - 1, &contracted, k)
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Overflow);
    }
    Ok(num / den)
}

/// Closed-form number of vertex 4-colorings up to permuting the colors.
/// The nested-triangle family uses `2^(n-4)` in its exponential term.
pub fn closed_form(f: Family, n: usize) -> Result<i64> {
    let min = match f {
        Family::Biwheel => 4,
        Family::Theta => 5,
        Family::Xi | Family::Nabla => 4,
        Family::Y => 5,
    };
    if n < min || n > 62 {
        return Err(Error::OutOfRange {
            what: "closed form",
            n: n as i64,
        });
    }
    let p = |e: usize| 1i64 << e;
    let s = sign(n);
    Ok(match f {
        Family::Biwheel => exact_div(p(n - 3) + s, 3)? + exact_div(1 + s, 2)?,
        Family::Theta => exact_div(p(n - 5) + s, 3)? + exact_div(4 - 4 * s, 2)?,
        Family::Xi => exact_div(p(n - 4) - s, 3)? + exact_div(5 + 9 * s, 2)?,
        Family::Y => closed_form(Family::Biwheel, n - 1)?,
        Family::Nabla => exact_div(p(n - 4) - s, 3)? + exact_div(4 - 6 * s, 2)?,
    })
}

/// Two vertices, non-adjacent, each adjacent to all others, with the
/// remaining vertices forming one cycle.
pub fn is_biwheel(g: &Graph) -> bool {
    if g.n < 5 || g.has_parallel_edges() || g.edges.len() != 3 * (g.n - 2) {
        return false;
    }
    let adj = g.neighbor_sets();
    let apexes: Vec<usize> = (0..g.n).filter(|&v| adj[v].len() == g.n - 2).collect();
    for (i, &a) in apexes.iter().enumerate() {
        for &b in &apexes[i + 1..] {
            if adj[a].contains(&b) {
                continue;
            }
            let rest: Vec<usize> = (0..g.n).filter(|&v| v != a && v != b).collect();
            let rim_degree_two = rest.iter().all(|&v| adj[v].iter().filter(|w| **w != a && **w != b).count() == 2);
            if rim_degree_two && g.without(a.max(b)).without(a.min(b)).is_connected() {
                return true;
            }
        }
    }
    false
}

/// A pair of trees with a bijection between leaf positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VTriple {
    pub d: BinaryTree,
    /// `perm[i]` is the position among the leaves of `r` matched with leaf `i` of `d`.
    pub perm: Vec<usize>,
    pub r: BinaryTree,
}

impl VTriple {
    pub fn new(d: BinaryTree, perm: Vec<usize>, r: BinaryTree) -> Result<VTriple> {
        let l = d.leaf_count();
        if r.leaf_count() != l || perm.len() != l {
            return Err(Error::LengthMismatch {
                expected: l,
                found: perm.len().min(r.leaf_count()),
            });
        }
        let mut seen = vec![false; l];
        for &p in &perm {
            if p >= l || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse("leaf map is not a bijection".into()));
            }
        }
        Ok(VTriple { d, perm, r })
    }

    /// The vector seen by `r` when `c` colors the leaves of `d`.
    pub fn transport(&self, c: &ColorVector) -> ColorVector {
        let mut out = vec![0; c.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = c.entries()[i];
        }
        ColorVector::new(out)
    }
}

/// Normalized vectors valid for `d` whose transport is valid for `r`.
pub fn v_triple_colorings(t: &VTriple) -> Vec<ColorVector> {
    normalized_colorings(&t.d)
        .into_iter()
        .filter(|c| is_valid(&t.r, &t.transport(c)).unwrap_or(false))
        .collect()
}

/// The cubic graph obtained by gluing the two trees along matched leaves
/// and along their roots. Vertices are the carets of `d`, then of `r`.
pub fn glued_cubic_graph(t: &VTriple) -> Graph {
    let nd = t.d.caret_count();
    let id = |tree: &BinaryTree, a: Address| tree.internal().binary_search(&a).expect("internal");
    let mut g = Graph::new(nd + t.r.caret_count());
    for (tree, off) in [(&t.d, 0), (&t.r, nd)] {
        for &a in tree.internal() {
            if let Some(p) = a.parent() {
                g.add_edge(off + id(tree, p), off + id(tree, a));
            }
        }
    }
    g.add_edge(0, nd);
    let dl = t.d.leaves();
    let rl = t.r.leaves();
    for (i, leaf) in dl.iter().enumerate() {
        let other = rl[t.perm[i]];
        g.add_edge(id(&t.d, leaf.parent().expect("leaf below e")), nd + id(&t.r, other.parent().expect("leaf below e")));
    }
    g
}

/// The cubic map of a tree pair, glued leaf to leaf in order.
pub fn sphere_map(p: &TreePair) -> Graph {
    let perm = (0..p.leaf_count()).collect();
    glued_cubic_graph(&VTriple {
        d: p.d.clone(),
        perm,
        r: p.r.clone(),
    })
}

/// Proper edge 3-colorings, counted by backtracking over edges.
pub fn count_edge_3_colorings(g: &Graph) -> u64 {
    let m = g.edges.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut color = vec![0u8; m];
    fn go(i: usize, g: &Graph, inc: &[Vec<usize>], color: &mut [u8]) -> u64 {
        if i == g.edges.len() {
            return 1;
        }
        let (a, b) = g.edges[i];
        let mut total = 0;
        for c in 1..=3 {
            let clash = inc[a].iter().chain(&inc[b]).any(|&e| e < i && color[e] == c);
            if !clash {
                color[i] = c;
                total += go(i + 1, g, inc, color);
            }
        }
        color[i] = 0;
        total
    }
    go(0, g, &incident, &mut color)
}

/// Signs each edge by the parity of the endpoints' degrees among earlier
/// edges (positive when even) and reports whether the result is balanced.
/// `order[k]` is the index of the `k`-th edge to be added.
pub fn edge_numbering_balance(g: &Graph, order: &[usize]) -> bool {
    let mut degree = vec![0usize; g.n];
    let mut signed = Vec::with_capacity(order.len());
    for &i in order {
        let (a, b) = g.edges[i];
        signed.push((a, b, (degree[a] + degree[b]).is_multiple_of(2)));
        degree[a] += 1;
        degree[b] += 1;
    }
    // Two-color the vertices so that negative edges join different colors.
    let mut side: Vec<Option<bool>> = vec![None; g.n];
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); g.n];
    for &(a, b, pos) in &signed {
        adj[a].push((b, !pos));
        adj[b].push((a, !pos));
    }
    for s in 0..g.n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].expect("set");
            for &(w, flip) in &adj[v] {
                match side[w] {
                    None => {
                        side[w] = Some(sv ^ flip);
                        stack.push(w);
                    }
                    Some(sw) if sw != sv ^ flip => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// How many of all edge orderings give a balanced signing, and the total.
pub fn numbering_balance_census(g: &Graph) -> Result<(u64, u64)> {
    let m = g.edges.len();
    if m > 9 {
        return Err(Error::TooLarge { found: m, bound: 9 });
    }
    let mut order: Vec<usize> = (0..m).collect();
    let (mut good, mut total) = (0, 0);
    loop {
        total += 1;
        if edge_numbering_balance(g, &order) {
            good += 1;
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    Ok((good, total))
}

/// Lexicographic successor; false after the last permutation.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Fixed examples of leaf-permuted triples.
pub mod fixtures {
    use super::VTriple;
    use crate::tree::BinaryTree;

    /// Six leaves; no coloring of the left tree survives the permutation.
    pub fn no_color_v() -> VTriple {
        VTriple::new(
            BinaryTree::from_addrs(&["e", "0", "00", "1", "11"]),
            vec![0, 4, 2, 1, 5, 3],
            BinaryTree::from_addrs(&["e", "0", "00", "01", "1"]),
        )
        .expect("valid fixture")
    }

    /// Two balanced depth-three trees whose glued graph embeds in the torus.
    pub fn torus_k7() -> VTriple {
        let t = BinaryTree::from_addrs(&["e", "0", "1", "00", "01", "10", "11"]);
        VTriple::new(t.clone(), vec![4, 2, 0, 6, 1, 5, 3, 7], t).expect("valid fixture")
    }

    /// The projective-plane example: its glued graph is the Petersen graph.
    pub fn petersen_rp2() -> VTriple {
        no_color_v()
    }
}

/// Census of leaf-permuted triples on `l` leaves under several counting
/// conventions, with the number lacking a valid coloring.
#[derive(Clone, Debug, Serialize)]
pub struct TripleCensusRow {
    pub convention: &'static str,
    pub total: u64,
    pub uncolorable: u64,
}

/// A common caret under the permutation: adjacent leaves of `d` that form a
/// caret map in order onto adjacent leaves of `r` that form a caret.
pub fn has_common_caret(t: &VTriple) -> bool {
    let dl = t.d.leaves();
    let rl = t.r.leaves();
    (0..dl.len().saturating_sub(1)).any(|i| {
        let sibling_d = dl[i].last() == Some(0) && dl[i + 1] == dl[i].parent().map(|p| p.child(1)).unwrap_or(dl[i]);
        let (a, b) = (t.perm[i], t.perm[i + 1]);
        sibling_d && b == a + 1 && rl[a].last() == Some(0) && Some(rl[b]) == rl[a].parent().map(|p| p.child(1))
    })
}

pub fn triple_census(l: usize) -> Result<Vec<TripleCensusRow>> {
    if !(2..=7).contains(&l) {
        return Err(Error::OutOfRange {
            what: "census leaf count",
            n: l as i64,
        });
    }
    use rayon::prelude::*;
    let trees = crate::tree::all_trees(l - 1);
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..l).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let names = [
        "all triples",
        "triples without a common caret",
        "no common caret, simple glued graph",
        "left tree not after right tree",
        "glued graph of girth at least 5",
    ];
    let rows: Vec<[(u64, u64); 5]> = trees
        .par_iter()
        .enumerate()
        .map(|(di, d)| {
            let cols = normalized_colorings(d);
            let mut acc = [(0u64, 0u64); 5];
            for (ri, r) in trees.iter().enumerate() {
                let rmask = r.interval_mask();
                for perm in &perms {
                    let t = VTriple {
                        d: d.clone(),
                        perm: perm.clone(),
                        r: r.clone(),
                    };
                    let colorable = cols.iter().any(|c| t.transport(c).zero_interval_mask() & rmask == 0);
                    let g = glued_cubic_graph(&t);
                    let reduced = !has_common_caret(&t);
                    let member = [
                        true,
                        reduced,
                        reduced && !g.has_parallel_edges(),
                        di <= ri,
                        g.girth().is_some_and(|x| x >= 5),
                    ];
                    for (k, m) in member.iter().enumerate() {
                        if *m {
                            acc[k].0 += 1;
                            acc[k].1 += u64::from(!colorable);
                        }
                    }
                }
            }
            acc
        })
        .collect();
    Ok((0..names.len())
        .map(|k| TripleCensusRow {
            convention: names[k],
            total: rows.iter().map(|r| r[k].0).sum(),
            uncolorable: rows.iter().map(|r| r[k].1).sum(),
        })
        .collect())
}
