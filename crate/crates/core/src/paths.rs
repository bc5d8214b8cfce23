//! Signed rotations, sign structures of words, and local word moves.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coloring::{colorings_of_pair, classify_vector, vector_from_signs, ColorVector, SignAssignment, VectorClass};
use crate::error::{Error, Result};
use crate::thompson::{path_evaluate, Word};
use crate::tree::{Address, BinaryTree, RotationSymbol, MAX_MASK_LEAVES};

/// A tree with a sign on every internal vertex.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SignedTree {
    pub tree: BinaryTree,
    pub signs: SignAssignment,
}

impl SignedTree {
    /// Fails unless `signs` covers exactly the internal vertices.
    pub fn new(tree: BinaryTree, signs: SignAssignment) -> Result<SignedTree> {
        if signs.signs.len() != tree.caret_count() || !tree.internal().iter().all(|a| signs.signs.contains_key(a)) {
            return Err(Error::Parse("signs must cover exactly the internal vertices".into()));
        }
        Ok(SignedTree { tree, signs })
    }

    /// Leaf vector of the coloring with root color 1.
    pub fn vector(&self) -> ColorVector {
        vector_from_signs(&self.tree, &self.signs)
    }
}

impl fmt::Display for SignedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.signs.to_text())
    }
}

/// Parses `e+ 0- 01+`; the tree is the set of listed vertices.
impl FromStr for SignedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignedTree> {
        let mut signs = BTreeMap::new();
        for tok in s.split_whitespace() {
            let (a, sign) = match tok.chars().last() {
                Some('+') => (&tok[..tok.len() - 1], true),
                Some('-') => (&tok[..tok.len() - 1], false),
                _ => return Err(Error::Parse(format!("missing sign in {tok:?}"))),
            };
            signs.insert(a.parse::<Address>()?, sign);
        }
        let tree = BinaryTree::new(signs.keys().copied())?;
        SignedTree::new(tree, SignAssignment { signs })
    }
}

fn require_pivots(t: &BinaryTree, s: RotationSymbol) -> Result<(Address, Address)> {
    let (a, b) = s.pivots();
    if t.contains(a) && t.contains(b) {
        Ok((a, b))
    } else {
        Err(Error::PivotMissing { symbol: s, index: 0 })
    }
}

/// The pivot vertices carry equal signs.
pub fn is_signed_rotation_valid(st: &SignedTree, s: RotationSymbol) -> Result<bool> {
    let (a, b) = require_pivots(&st.tree, s)?;
    Ok(st.signs.get(a) == st.signs.get(b))
}

/// Rotates and transports signs; the two pivot signs flip. Defined whether
/// or not the rotation is valid.
pub fn apply_signed_rotation(st: &SignedTree, s: RotationSymbol) -> Result<SignedTree> {
    let (a, b) = require_pivots(&st.tree, s)?;
    let tree = st.tree.rotate(s)?;
    let signs = st
        .signs
        .signs
        .iter()
        .map(|(&v, &sign)| (s.act(v), if v == a || v == b { !sign } else { sign }))
        .collect();
    Ok(SignedTree {
        tree,
        signs: SignAssignment { signs },
    })
}

/// Applies a word symbol by symbol, failing at the first invalid rotation.
pub fn replay_signed_path(st: &SignedTree, w: &Word) -> Result<Option<Vec<SignedTree>>> {
    let mut out = vec![st.clone()];
    for (i, &s) in w.syms.iter().enumerate() {
        let cur = out.last().expect("nonempty");
        let valid = is_signed_rotation_valid(cur, s).map_err(|_| Error::PivotMissing { symbol: s, index: i })?;
        if !valid {
            return Ok(None);
        }
        out.push(apply_signed_rotation(cur, s)?);
    }
    Ok(Some(out))
}

/// One edge of a sign structure.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SignedEdge {
    pub a: Address,
    pub b: Address,
    pub positive: bool,
}

/// The signed graph of a word, on the internal vertices of its support tree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SignStructure {
    /// In word order.
    pub edges: Vec<SignedEdge>,
    /// Smallest tree whose internal vertices contain every endpoint.
    pub support: BinaryTree,
}

impl SignStructure {
    /// Edges as an order-free multiset with endpoints sorted.
    pub fn edge_multiset(&self) -> Vec<SignedEdge> {
        let mut v: Vec<SignedEdge> = self
            .edges
            .iter()
            .map(|e| SignedEdge {
                a: e.a.min(e.b),
                b: e.a.max(e.b),
                positive: e.positive,
            })
            .collect();
        v.sort_unstable();
        v
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph sign_structure {\n");
        for v in self.support.internal() {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            let (sign, color) = if e.positive { ("+", "blue") } else { ("-", "red") };
            s.push_str(&format!("  \"{}\" -- \"{}\" [sign=\"{sign}\", label=\"{sign}\", color={color}];\n", e.a, e.b));
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the signed graph: each symbol adds an edge between its pivots
/// pulled back to the start of the word, positive iff the endpoints' current
/// degrees have even sum.
pub fn sign_structure(w: &Word) -> SignStructure {
    let mut edges = Vec::with_capacity(w.len());
    let mut degree: HashMap<Address, usize> = HashMap::new();
    for (i, s) in w.syms.iter().enumerate() {
        let (mut x, mut y) = s.pivots();
        for prev in w.syms[..i].iter().rev() {
            x = prev.inverted().act(x);
            y = prev.inverted().act(y);
        }
        let dx = degree.get(&x).copied().unwrap_or(0);
        let dy = degree.get(&y).copied().unwrap_or(0);
        edges.push(SignedEdge {
            a: x,
            b: y,
            positive: (dx + dy) % 2 == 0,
        });
        *degree.entry(x).or_default() += 1;
        *degree.entry(y).or_default() += 1;
    }
    let mut closure: Vec<Address> = Vec::new();
    for e in &edges {
        for mut v in [e.a, e.b] {
            loop {
                closure.push(v);
                match v.parent() {
                    Some(p) => v = p,
                    None => break,
                }
            }
        }
    }
    let support = BinaryTree::new(closure).expect("prefix closed by construction");
    SignStructure { edges, support }
}

/// Union-find with the parity of each vertex relative to its root.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, p) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.parity[x] ^= p;
        (r, self.parity[x])
    }

    /// Records that `a` and `b` differ by `odd`; false on contradiction.
    fn union(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == odd;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ odd;
        true
    }
}

/// Balance and component structure of a sign structure over a vertex set.
struct Analysis {
    balanced: bool,
    components: usize,
    /// Per vertex: (component representative index, parity relative to it).
    classes: Vec<(usize, bool)>,
}

fn analyse(ss: &SignStructure, vertices: &[Address]) -> Result<Analysis> {
    let index: HashMap<Address, usize> = vertices.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut dsu = ParityDsu::new(vertices.len());
    let mut balanced = true;
    for e in &ss.edges {
        let a = *index.get(&e.a).ok_or(Error::NotAVertex(e.a))?;
        let b = *index.get(&e.b).ok_or(Error::NotAVertex(e.b))?;
        balanced &= dsu.union(a, b, !e.positive);
    }
    let classes: Vec<(usize, bool)> = (0..vertices.len()).map(|i| dsu.find(i)).collect();
    let components = classes.iter().enumerate().filter(|(i, c)| c.0 == *i).count();
    Ok(Analysis {
        balanced,
        components,
        classes,
    })
}

/// Whether every cycle has an even number of negative edges, and the number
/// of components over the support tree's internal vertices.
pub fn is_balanced(ss: &SignStructure) -> (bool, usize) {
    let a = analyse(ss, ss.support.internal()).expect("support contains every endpoint");
    (a.balanced, a.components)
}

/// Component count of the structure regarded as a graph on the internal
/// vertices of `t`, which must contain every endpoint.
pub fn components_on(ss: &SignStructure, t: &BinaryTree) -> Result<usize> {
    Ok(analyse(ss, t.internal())?.components)
}

/// Every sign assignment on `t` in which each edge is positive exactly when
/// its endpoints agree. Empty when unbalanced.
pub fn compatible_sign_assignments(ss: &SignStructure, t: &BinaryTree) -> Result<Vec<SignAssignment>> {
    let a = analyse(ss, t.internal())?;
    if !a.balanced {
        return Ok(Vec::new());
    }
    let reps: Vec<usize> = (0..a.classes.len()).filter(|&i| a.classes[i].0 == i).collect();
    let slot: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, r)| (*r, k)).collect();
    if reps.len() >= 63 {
        return Err(Error::BoundExceeded {
            n: reps.len(),
            bound: 62,
        });
    }
    Ok((0u64..1 << reps.len())
        .map(|bits| SignAssignment {
            signs: t
                .internal()
                .iter()
                .zip(&a.classes)
                .map(|(v, (r, par))| (*v, (bits >> slot[r] & 1 == 1) ^ par))
                .collect(),
        })
        .collect())
}

/// Normalized vectors (root color 1, `e` positive) of the colorings of
/// `(D, Dw)` compatible with the word's sign structure, sorted.
pub fn compatible_colorings(w: &Word, d: &BinaryTree) -> Result<Vec<ColorVector>> {
    path_evaluate(d, w)?;
    if d.is_trivial() {
        return Ok(vec![ColorVector::new(vec![1])]);
    }
    let ss = sign_structure(w);
    let mut out: Vec<ColorVector> = compatible_sign_assignments(&ss, d)?
        .into_iter()
        .filter(|s| s.get(Address::EMPTY))
        .map(|s| vector_from_signs(d, &s))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Validity predicate for a fixed vector, by interval masks when they fit.
pub(crate) struct ValidityTest {
    vector: ColorVector,
    zero_mask: Option<u128>,
}

impl ValidityTest {
    pub(crate) fn new(c: &ColorVector) -> Self {
        let zero_mask = (c.len() <= MAX_MASK_LEAVES && !c.has_zero()).then(|| c.zero_interval_mask());
        ValidityTest {
            vector: c.clone(),
            zero_mask,
        }
    }

    pub(crate) fn holds(&self, t: &BinaryTree) -> bool {
        match self.zero_mask {
            Some(z) => t.interval_mask() & z == 0,
            None => crate::coloring::is_valid(t, &self.vector).unwrap_or(false),
        }
    }
}

/// Breadth-first search inside the color graph of `c` from `d` to `r`.
pub fn shortest_path_in_color_graph(c: &ColorVector, d: &BinaryTree, r: &BinaryTree) -> Option<Word> {
    let test = ValidityTest::new(c);
    if !test.holds(d) || !test.holds(r) {
        return None;
    }
    let mut back: HashMap<BinaryTree, Option<(BinaryTree, RotationSymbol)>> = HashMap::new();
    back.insert(d.clone(), None);
    let mut queue = VecDeque::from([d.clone()]);
    while let Some(t) = queue.pop_front() {
        if t == *r {
            let mut syms = Vec::new();
            let mut cur = t;
            while let Some(Some((prev, s))) = back.get(&cur) {
                syms.push(*s);
                cur = prev.clone();
            }
            syms.reverse();
            return Some(Word::new(syms));
        }
        for s in t.available_rotations() {
            let next = t.rotate(s).expect("available");
            if !back.contains_key(&next) && test.holds(&next) {
                back.insert(next.clone(), Some((t.clone(), s)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// A sign consistent path from `d` to `r`: the empty word when the trees are
/// equal and share a coloring, otherwise a shortest path inside the color
/// graph of the first flexible common coloring that connects them.
pub fn find_sign_consistent_path(d: &BinaryTree, r: &BinaryTree) -> Option<Word> {
    if d.leaf_count() != r.leaf_count() {
        return None;
    }
    let pair = crate::thompson::TreePair::new(d.clone(), r.clone()).ok()?;
    let common = colorings_of_pair(&pair);
    if d == r && !common.is_empty() {
        return Some(Word::default());
    }
    common
        .iter()
        .filter(|c| classify_vector(c) == Ok(VectorClass::Flexible))
        .find_map(|c| shortest_path_in_color_graph(c, d, r))
}

/// Conjugates a symbol `a` by `b`, giving `b^-1 a b` as a single symbol when
/// one of the square relations applies.
pub fn conjugate(a: RotationSymbol, b: RotationSymbol) -> Option<RotationSymbol> {
    if a.u.is_incomparable(b.u) {
        return Some(a);
    }
    let (p, q) = b.pivots();
    if b.u.is_prefix_of(a.u) && a.u != p && a.u != q {
        return Some(RotationSymbol {
            u: b.act(a.u),
            inverse: a.inverse,
        });
    }
    None
}

/// All single-face rewrites across squares at position `i`, in a fixed
/// order: the three-to-one collapse first, then the two-edge swaps.
pub fn square_moves_at(w: &Word, i: usize) -> Vec<Word> {
    let s = &w.syms;
    let mut out = Vec::new();
    let mut push = |mid: Vec<RotationSymbol>, len: usize| {
        let mut syms = s[..i].to_vec();
        syms.extend(mid);
        syms.extend_from_slice(&s[i + len..]);
        let cand = Word::new(syms);
        if cand != *w && !out.contains(&cand) {
            out.push(cand);
        }
    };
    if i + 3 <= s.len() && s[i + 2] == s[i].inverted() && s[i + 1].u != s[i].u {
        if let Some(c) = conjugate(s[i + 1], s[i + 2]) {
            push(vec![c], 3);
        }
    }
    if i + 2 <= s.len() {
        let (x, y) = (s[i], s[i + 1]);
        if x != y.inverted() {
            if let Some(c) = conjugate(x, y) {
                push(vec![y, c], 2);
            }
            if let Some(c) = conjugate(y, x.inverted()) {
                push(vec![c, x], 2);
            }
        }
    }
    out
}

/// The first square rewrite at `i`.
pub fn square_move(w: &Word, i: usize) -> Result<Word> {
    square_moves_at(w, i).into_iter().next().ok_or(Error::NoMatch(i))
}

/// Rewrites across a pentagon at `i`: `u0 u u1` and `u u` are exchanged, as
/// are their inverses `~u1 ~u ~u0` and `~u ~u`.
pub fn pentagon_move(w: &Word, i: usize) -> Result<Word> {
    let s = &w.syms;
    let splice = |mid: Vec<RotationSymbol>, len: usize| {
        let mut syms = s[..i].to_vec();
        syms.extend(mid);
        syms.extend_from_slice(&s[i + len..]);
        Word::new(syms)
    };
    if i + 3 <= s.len() {
        let (a, b, c) = (s[i], s[i + 1], s[i + 2]);
        let inv = b.inverse;
        let (first, last) = if inv { (1, 0) } else { (0, 1) };
        if a.inverse == inv && c.inverse == inv && a.u == b.u.child(first) && c.u == b.u.child(last) {
            return Ok(splice(vec![b, b], 3));
        }
    }
    if i + 2 <= s.len() && s[i] == s[i + 1] {
        let b = s[i];
        let (first, last) = if b.inverse { (1, 0) } else { (0, 1) };
        let side = |k: u8| RotationSymbol {
            u: b.u.child(k),
            inverse: b.inverse,
        };
        return Ok(splice(vec![side(first), b, side(last)], 2));
    }
    Err(Error::NoMatch(i))
}

/// Balance of each prefix of `w`, including the empty prefix.
pub fn subpath_check(w: &Word) -> Vec<bool> {
    (0..=w.len()).map(|k| is_balanced(&sign_structure(&w.slice(0, k))).0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_valid, normalized_colorings};
    use crate::thompson::{word, word_to_pair};
    use crate::tree::{addr, all_trees};
    use proptest::prelude::*;

    fn t(list: &[&str]) -> BinaryTree {
        BinaryTree::from_addrs(list)
    }

    fn st(s: &str) -> SignedTree {
        s.parse().unwrap()
    }

    fn edge(a: &str, b: &str, positive: bool) -> SignedEdge {
        SignedEdge {
            a: addr(a),
            b: addr(b),
            positive,
        }
    }

    /// Every sign assignment on `t`.
    fn all_signs(t: &BinaryTree) -> Vec<SignAssignment> {
        let n = t.caret_count();
        (0u64..1 << n)
            .map(|bits| SignAssignment {
                signs: t.internal().iter().enumerate().map(|(i, a)| (*a, bits >> i & 1 == 1)).collect(),
            })
            .collect()
    }

    #[test]
    fn signed_rotation_validity() {
        let e = RotationSymbol::forward(Address::EMPTY);
        assert!(is_signed_rotation_valid(&st("e+ 0+"), e).unwrap());
        assert!(!is_signed_rotation_valid(&st("e+ 0-"), e).unwrap());
        assert!(matches!(
            is_signed_rotation_valid(&st("e+ 1+"), e),
            Err(Error::PivotMissing { .. })
        ));
        let after = apply_signed_rotation(&st("e+ 0+"), e).unwrap();
        assert_eq!(after, st("e- 1-"));
        assert_eq!(apply_signed_rotation(&after, e.inverted()).unwrap(), st("e+ 0+"));
    }

    #[test]
    fn signed_validity_matches_vector_validity() {
        for n in 2..=5 {
            for tr in all_trees(n) {
                for signs in all_signs(&tr) {
                    let s = SignedTree::new(tr.clone(), signs).unwrap();
                    let c = s.vector();
                    for sym in tr.available_rotations() {
                        let valid = is_signed_rotation_valid(&s, sym).unwrap();
                        let target = tr.rotate(sym).unwrap();
                        assert_eq!(valid, is_valid(&target, &c).unwrap(), "{s} {sym}");
                        let next = apply_signed_rotation(&s, sym).unwrap();
                        if valid {
                            // The transported signs are those of the same vector.
                            assert_eq!(next.vector(), c);
                        }
                        assert_eq!(apply_signed_rotation(&next, sym.inverted()).unwrap(), s);
                    }
                }
            }
        }
    }

    #[test]
    fn sign_structure_examples() {
        let ss = sign_structure(&word("0 e 1"));
        assert_eq!(ss.edges, vec![edge("0", "00", true), edge("e", "00", false), edge("e", "0", true)]);
        assert!(!is_balanced(&ss).0);
        let ss = sign_structure(&word("0 e"));
        assert_eq!(ss.edges.len(), 2);
        assert_eq!(is_balanced(&ss), (true, 1));
        assert_eq!(ss.support, t(&["e", "0", "00"]));
        let ss = sign_structure(&word("e e ~1"));
        assert_eq!(ss.edge_multiset()[0].a, ss.edge_multiset()[1].a);
        assert_eq!(ss.edge_multiset()[0].b, ss.edge_multiset()[1].b);
        assert!(!is_balanced(&ss).0);
        let ss = sign_structure(&word("e e 1 ~11"));
        assert!(is_balanced(&ss).0);
        let m = ss.edge_multiset();
        let parallel: Vec<_> = m.windows(2).filter(|p| p[0].a == p[1].a && p[0].b == p[1].b).collect();
        assert_eq!(parallel.len(), 1);
        assert_eq!(parallel[0][0].positive, parallel[0][1].positive);
        assert_eq!(sign_structure(&Word::default()).support, BinaryTree::trivial());
    }

    #[test]
    fn dot_export_lists_every_edge() {
        let dot = sign_structure(&word("0 e 1")).to_dot();
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("sign=\"-\""));
    }

    #[test]
    fn compatible_coloring_examples() {
        let cs = compatible_colorings(&word("e"), &t(&["e", "0"])).unwrap();
        assert_eq!(cs.len(), 1);
        let v = cs[0].entries();
        assert_eq!((v[0], v[1]), (v[2], 1));
        assert!(compatible_colorings(&word("0 e 1"), &t(&["e", "0", "00"])).unwrap().is_empty());
        let parallel = compatible_colorings(&word("e e 1 ~11"), &t(&["e", "0", "00", "001"])).unwrap();
        assert_eq!(parallel, vec!["22313".parse::<ColorVector>().unwrap()]);
    }

    /// Independent route: replay every sign assignment literally.
    fn live_assignments(d: &BinaryTree, w: &Word) -> Vec<SignAssignment> {
        all_signs(d)
            .into_iter()
            .filter(|s| {
                replay_signed_path(&SignedTree::new(d.clone(), s.clone()).unwrap(), w)
                    .unwrap()
                    .is_some()
            })
            .collect()
    }

    #[test]
    fn balance_theorem_on_short_paths() {
        for n in 1..=4 {
            for d in all_trees(n) {
                let mut stack = vec![Word::default()];
                while let Some(w) = stack.pop() {
                    let ss = sign_structure(&w);
                    let live = live_assignments(&d, &w);
                    let (balanced, _) = is_balanced(&ss);
                    assert_eq!(balanced, !live.is_empty(), "{w} from {d}");
                    if balanced {
                        let p = components_on(&ss, &d).unwrap();
                        assert_eq!(live.len(), 1 << p);
                        let cs = compatible_colorings(&w, &d).unwrap();
                        assert_eq!(cs.len(), 1 << (p - 1));
                    }
                    for e in &ss.edges {
                        assert!(d.contains(e.a) && d.contains(e.b));
                    }
                    if w.len() < 4 {
                        let end = path_evaluate(&d, &w).unwrap().pop().unwrap();
                        for s in end.available_rotations() {
                            stack.push(Word::new([w.syms.clone(), vec![s]].concat()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_fixture_colorings() {
        let d = t(&["e", "0", "00", "001"]);
        let r = t(&["e", "1", "11", "110"]);
        let w = word("e e 1 ~11");
        assert_eq!(path_evaluate(&d, &w).unwrap().last().unwrap(), &r);
        let w2 = find_sign_consistent_path(&d, &r).unwrap();
        assert_eq!(path_evaluate(&d, &w2).unwrap().last().unwrap(), &r);
        assert!(is_balanced(&sign_structure(&w2)).0);
        assert_eq!(w2.len(), 4);
    }

    #[test]
    fn path_search_examples() {
        assert_eq!(find_sign_consistent_path(&t(&["e", "0"]), &t(&["e", "1"])), Some(word("e")));
        assert_eq!(find_sign_consistent_path(&t(&["e"]), &t(&["e"])), Some(Word::default()));
        assert_eq!(find_sign_consistent_path(&t(&["e"]), &t(&["e", "0"])), None);
    }

    #[test]
    fn paths_exist_between_all_small_trees() {
        for n in 1..=4 {
            let trees = all_trees(n);
            for d in &trees {
                for r in &trees {
                    let w = find_sign_consistent_path(d, r).expect("path");
                    assert_eq!(path_evaluate(d, &w).unwrap().last().unwrap(), r);
                    assert!(is_balanced(&sign_structure(&w)).0);
                }
            }
        }
    }

    #[test]
    fn move_examples() {
        assert_eq!(pentagon_move(&word("0 e 1"), 0).unwrap(), word("e e"));
        assert_eq!(pentagon_move(&word("e e"), 0).unwrap(), word("0 e 1"));
        assert_eq!(pentagon_move(&word("~1 ~e ~0"), 0).unwrap(), word("~e ~e"));
        assert_eq!(pentagon_move(&word("0 1"), 0), Err(Error::NoMatch(0)));
        assert_eq!(square_move(&word("0 e 1 111 ~1"), 2).unwrap(), word("0 e 11"));
        assert!(!is_balanced(&sign_structure(&word("0 e 1 111 ~1"))).0);
        assert!(is_balanced(&sign_structure(&word("0 e 11"))).0);
        assert_eq!(square_move(&word("0 1"), 0).unwrap(), word("1 0"));
        assert_eq!(square_move(&word("e ~e"), 0), Err(Error::NoMatch(0)));
        for w in [word("0 e 1"), word("e e"), word("~1 ~e ~0")] {
            let moved = pentagon_move(&w, 0).unwrap();
            assert_eq!(word_to_pair(&moved), word_to_pair(&w));
        }
    }

    #[test]
    fn subpath_examples() {
        assert_eq!(subpath_check(&word("0 e")), vec![true, true, true]);
        assert_eq!(subpath_check(&word("0 e 1")), vec![true, true, true, false]);
    }

    #[test]
    fn normalized_signs_of_compatible_colorings() {
        let d = t(&["e", "0", "1", "10"]);
        let cs = compatible_colorings(&Word::default(), &d).unwrap();
        assert_eq!(cs, normalized_colorings(&d));
    }

    fn arb_symbol() -> impl Strategy<Value = RotationSymbol> {
        (0usize..3, 0u64..8, any::<bool>()).prop_map(|(len, bits, inverse)| {
            let letters: Vec<u8> = (0..len).map(|i| (bits >> i & 1) as u8).collect();
            RotationSymbol {
                u: Address::from_letters(&letters).unwrap(),
                inverse,
            }
        })
    }

    proptest! {
        #[test]
        fn square_moves_preserve_element_and_balance(syms in prop::collection::vec(arb_symbol(), 2..7)) {
            let w = Word::new(syms);
            let g = word_to_pair(&w);
            let balanced = is_balanced(&sign_structure(&w)).0;
            for i in 0..w.len() {
                for m in square_moves_at(&w, i) {
                    prop_assert_eq!(word_to_pair(&m), g.clone());
                    if balanced {
                        prop_assert!(is_balanced(&sign_structure(&m)).0, "{} -> {}", w, m);
                    }
                }
                if let Ok(m) = pentagon_move(&w, i) {
                    prop_assert_eq!(word_to_pair(&m), g.clone());
                }
            }
        }

        #[test]
        fn subwords_of_balanced_words_are_balanced(syms in prop::collection::vec(arb_symbol(), 1..8)) {
            let w = Word::new(syms);
            if is_balanced(&sign_structure(&w)).0 {
                for a in 0..w.len() {
                    for b in a..=w.len() {
                        prop_assert!(is_balanced(&sign_structure(&w.slice(a, b))).0);
                    }
                }
            }
        }

        #[test]
        fn support_tree_is_a_start_tree(syms in prop::collection::vec(arb_symbol(), 1..8)) {
            let w = Word::new(syms);
            let ss = sign_structure(&w);
            let trees = path_evaluate(&ss.support, &w);
            prop_assert!(trees.is_ok());
        }
    }
}
