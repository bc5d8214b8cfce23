//! Thompson's group F as pairs of binary trees with equal leaf counts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::tree::RotationSymbol;
use crate::tree::{Address, BinaryTree};

/// A tree pair `(D, R)` representing an element of F.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TreePair {
    pub d: BinaryTree,
    pub r: BinaryTree,
}

/// How much a right multiplication by a rotation grows the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Increase {
    NonIncreasing,
    MinimallyIncreasing,
    Increasing,
}

impl TreePair {
    pub fn new(d: BinaryTree, r: BinaryTree) -> Result<TreePair> {
        if d.leaf_count() != r.leaf_count() {
            return Err(Error::LengthMismatch {
                expected: d.leaf_count(),
                found: r.leaf_count(),
            });
        }
        Ok(TreePair { d, r })
    }

    /// The pair of trivial trees.
    pub fn identity() -> TreePair {
        TreePair {
            d: BinaryTree::trivial(),
            r: BinaryTree::trivial(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.d.caret_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.d.leaf_count()
    }

    pub fn invert(&self) -> TreePair {
        TreePair {
            d: self.r.clone(),
            r: self.d.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.d == self.r
    }

    /// Removes matching exposed carets, scanning left to right, until none remain.
    pub fn reduce(&self) -> TreePair {
        let mut d = self.d.clone();
        let mut r = self.r.clone();
        'outer: loop {
            let ld = d.leaves();
            let lr = r.leaves();
            for i in 0..ld.len().saturating_sub(1) {
                let (Some(pd), Some(pr)) = (sibling_parent(&ld, i), sibling_parent(&lr, i)) else {
                    continue;
                };
                d = remove_exposed(&d, pd);
                r = remove_exposed(&r, pr);
                continue 'outer;
            }
            return TreePair { d, r };
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.reduce().caret_count() == self.caret_count()
    }

    /// Unreduced product: both factors are expanded to the common middle
    /// tree `B ∪ C` and composed.
    pub fn multiply(&self, other: &TreePair) -> TreePair {
        let (a, b) = (&self.d, &self.r);
        let (c, d) = (&other.d, &other.r);
        TreePair {
            d: graft_by_index(a, b, &c.difference_components(b)),
            r: graft_by_index(d, c, &b.difference_components(c)),
        }
    }

    /// Image of an arbitrary address under the element.
    ///
    /// Leaves of `D` go to leaves of `R` in order, internal vertices of `D`
    /// to internal vertices of `R` in infix order, and `l·w` to `l'·w`
    /// below a leaf `l` with image `l'`.
    pub fn apply_element(&self, v: Address) -> Address {
        if self.d.contains(v) {
            let di = self.d.internal_infix();
            let ri = self.r.internal_infix();
            let i = di.iter().position(|a| *a == v).expect("internal vertex present");
            return ri[i];
        }
        let (k, leaf) = self
            .d
            .leaves()
            .into_iter()
            .enumerate()
            .find(|(_, l)| l.is_prefix_of(v))
            .expect("every address is internal or below a leaf");
        self.r.leaves()[k].concat(v.suffix(leaf.len()))
    }

    /// Right multiplication by a rotation: whether the middle tree must grow.
    pub fn classify_multiplication(&self, s: RotationSymbol) -> Increase {
        let v = rotation_as_pair(s).d;
        let missing = v.internal().iter().filter(|a| !self.r.contains(**a)).count();
        match missing {
            0 => Increase::NonIncreasing,
            1 => Increase::MinimallyIncreasing,
            _ => Increase::Increasing,
        }
    }

    /// `R` is a right vine.
    pub fn is_positive(&self) -> bool {
        self.r == BinaryTree::right_vine(self.r.caret_count())
    }

    /// Positive, at least two carets, and the right subtree of `D` trivial.
    pub fn is_prime_positive(&self) -> bool {
        self.is_positive() && self.caret_count() >= 2 && self.d.is_leaf(Address::EMPTY.child(1))
    }

    /// The i-th leaf depths of `D` and `R` agree mod 2 for every i.
    pub fn parity_condition(&self) -> bool {
        self.d
            .leaf_depths()
            .iter()
            .zip(self.r.leaf_depths())
            .all(|(a, b)| a % 2 == b % 2)
    }

    /// Attaches both trees to `host` at `leaf`.
    pub fn deferment(&self, host: &BinaryTree, leaf: Address) -> Result<TreePair> {
        Ok(TreePair {
            d: host.graft(leaf, &self.d)?,
            r: host.graft(leaf, &self.r)?,
        })
    }

    /// Applies the same root shift/reflection to both trees.
    pub fn dihedral_apply(&self, k: usize, reflect: bool) -> Result<TreePair> {
        Ok(TreePair {
            d: self.d.dihedral_apply(k, reflect)?,
            r: self.r.dihedral_apply(k, reflect)?,
        })
    }

    /// Accepts `(D, R)` in canonical text or `{"d": ..., "r": ...}`.
    pub fn parse_any(s: &str) -> Result<TreePair> {
        let t = s.trim();
        if t.starts_with('{') {
            #[derive(Deserialize)]
            struct Raw {
                d: serde_json::Value,
                r: serde_json::Value,
            }
            let raw: Raw = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            let tree = |v: serde_json::Value| match v {
                serde_json::Value::String(s) => BinaryTree::parse_any(&s),
                other => serde_json::from_value(other).map_err(|e| Error::Parse(e.to_string())),
            };
            return TreePair::new(tree(raw.d)?, tree(raw.r)?);
        }
        t.parse()
    }
}

fn sibling_parent(leaves: &[Address], i: usize) -> Option<Address> {
    let (a, b) = (leaves[i], leaves[i + 1]);
    (a.parent().is_some() && a.parent() == b.parent() && a.last() == Some(0)).then(|| a.parent().unwrap())
}

fn remove_exposed(t: &BinaryTree, v: Address) -> BinaryTree {
    BinaryTree::new(t.internal().iter().copied().filter(|a| *a != v)).expect("removing an exposed caret keeps prefix closure")
}

/// Grafts each component, keyed by a leaf of `keyed`, onto the leaf of
/// `target` with the same index.
fn graft_by_index(
    target: &BinaryTree,
    keyed: &BinaryTree,
    comps: &std::collections::BTreeMap<Address, BinaryTree>,
) -> BinaryTree {
    if comps.is_empty() {
        return target.clone();
    }
    let kl = keyed.leaves();
    let tl = target.leaves();
    let mut internal: Vec<Address> = target.internal().to_vec();
    for (leaf, comp) in comps {
        let i = kl.iter().position(|a| a == leaf).expect("component hangs at a leaf");
        internal.extend(comp.internal().iter().map(|a| tl[i].concat(*a)));
    }
    BinaryTree::new(internal).expect("grafting keeps prefix closure")
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.r)
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TreePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<TreePair> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("pair must look like (D, R)".into()))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse("pair must look like (D, R)".into()))?;
        TreePair::new(a.parse()?, b.parse()?)
    }
}

/// `(V_{u0}, V_{u1})` for `u`, and its inverse for `~u`.
pub fn rotation_as_pair(s: RotationSymbol) -> TreePair {
    let p = TreePair {
        d: BinaryTree::vine_to(s.u.child(0)),
        r: BinaryTree::vine_to(s.u.child(1)),
    };
    if s.inverse {
        p.invert()
    } else {
        p
    }
}

/// A sequence of rotation symbols, written as whitespace-separated tokens
/// with `~` marking inverses, e.g. `"0 e ~1"`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub syms: Vec<RotationSymbol>,
}

impl Word {
    pub fn new(syms: Vec<RotationSymbol>) -> Word {
        Word { syms }
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.syms.iter().rev().map(|s| s.inverted()).collect())
    }

    /// Concatenation.
    pub fn then(&self, other: &Word) -> Word {
        Word::new(self.syms.iter().chain(&other.syms).copied().collect())
    }

    /// The contiguous subword `[a, b)`.
    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word::new(self.syms[a..b].to_vec())
    }

    /// Longest address among the symbols, or 0 when empty.
    pub fn depth(&self) -> usize {
        self.syms.iter().map(|s| s.u.len()).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Ok(Word::new(
            s.split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<RotationSymbol>>>()?,
        ))
    }
}

/// Shorthand for word literals; panics on bad input.
pub fn word(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

/// Reduced product of the symbols' vine pairs, left to right.
pub fn word_to_pair(w: &Word) -> TreePair {
    w.syms
        .iter()
        .fold(TreePair::identity(), |acc, s| acc.multiply(&rotation_as_pair(*s)).reduce())
}

/// The trees visited by the edge path `w` starting at `t`. Never grows trees.
pub fn path_evaluate(t: &BinaryTree, w: &Word) -> Result<Vec<BinaryTree>> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(t.clone());
    for (i, s) in w.syms.iter().enumerate() {
        let next = out
            .last()
            .expect("nonempty")
            .rotate(*s)
            .map_err(|_| Error::PivotMissing { symbol: *s, index: i })?;
        out.push(next);
    }
    Ok(out)
}

/// A chain starting with the rotation at `e`, in which every right
/// multiplication adds exactly one caret, whose reduced product is `p`.
/// Depth-first over candidate symbols in canonical order.
pub fn minimally_increasing_chain(p: &TreePair) -> Option<Word> {
    let target = p.reduce();
    let start = RotationSymbol::forward(Address::EMPTY);
    let steps = target.caret_count().checked_sub(2)?;
    let mut w = vec![start];
    chain_search(&rotation_as_pair(start), &target, steps, &mut w).then(|| Word::new(w))
}

fn chain_search(cur: &TreePair, target: &TreePair, left: usize, w: &mut Vec<RotationSymbol>) -> bool {
    if left == 0 {
        return cur.reduce() == *target;
    }
    let mut cands = Vec::new();
    for &u in cur.r.internal() {
        for inverse in [false, true] {
            let s = RotationSymbol { u, inverse };
            if cur.r.is_leaf(u.child(inverse as u8)) && cur.classify_multiplication(s) == Increase::MinimallyIncreasing {
                cands.push(s);
            }
        }
    }
    for s in cands {
        w.push(s);
        if chain_search(&cur.multiply(&rotation_as_pair(s)), target, left - 1, w) {
            return true;
        }
        w.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{addr, all_trees};
    use proptest::prelude::*;

    fn t(list: &[&str]) -> BinaryTree {
        BinaryTree::from_addrs(list)
    }

    fn e() -> RotationSymbol {
        RotationSymbol::forward(Address::EMPTY)
    }

    fn pairs_up_to(n: usize) -> Vec<TreePair> {
        let mut out = Vec::new();
        for k in 0..=n {
            let trees = all_trees(k);
            for d in &trees {
                for r in &trees {
                    out.push(TreePair { d: d.clone(), r: r.clone() });
                }
            }
        }
        out
    }

    #[test]
    fn reduce_examples() {
        let tt = t(&["e", "0", "01"]);
        assert_eq!(TreePair::new(tt.clone(), tt).unwrap().reduce(), TreePair::identity());
        // The first factor on the middle line of the worked square.
        let line2 = TreePair::new(t(&["e", "0", "00"]), t(&["e", "0", "1"])).unwrap();
        assert_eq!(line2.reduce(), rotation_as_pair(e()));
        let line3 = TreePair::new(t(&["e", "0", "00"]), t(&["e", "1", "11"])).unwrap();
        assert_eq!(line3.reduce(), line3);
    }

    #[test]
    fn multiply_examples() {
        let a = rotation_as_pair(e());
        let sq = a.multiply(&a);
        assert_eq!(sq, TreePair::new(t(&["e", "0", "00"]), t(&["e", "1", "11"])).unwrap());
        let line2a = TreePair::new(t(&["e", "0", "00"]), t(&["e", "0", "1"])).unwrap();
        let line2b = TreePair::new(t(&["e", "0", "1"]), t(&["e", "1", "11"])).unwrap();
        assert_eq!(line2a.multiply(&line2b), sq);
        assert_eq!(a.multiply(&a.invert()).reduce(), TreePair::identity());
        let (x, y) = (t(&["e", "0"]), t(&["e", "1"]));
        let ab = TreePair::new(x.clone(), y.clone()).unwrap();
        let bc = TreePair::new(y, x.clone()).unwrap();
        assert_eq!(ab.multiply(&bc), TreePair::new(x.clone(), x).unwrap());
    }

    #[test]
    fn invert_twice_is_identity() {
        let p = rotation_as_pair(RotationSymbol::forward(addr("1")));
        assert_eq!(p.invert().invert(), p);
        assert_eq!(p.invert(), TreePair { d: p.r.clone(), r: p.d.clone() });
    }

    #[test]
    fn apply_element_examples() {
        let p = rotation_as_pair(e());
        let cases = [("0", "e"), ("e", "1"), ("00", "0"), ("01", "10"), ("1", "11"), ("011", "101")];
        for (v, img) in cases {
            assert_eq!(p.apply_element(addr(v)), addr(img), "{v}");
        }
        let id = TreePair::identity();
        for v in ["e", "0", "0110"] {
            assert_eq!(id.apply_element(addr(v)), addr(v));
        }
    }

    #[test]
    fn apply_element_agrees_with_the_rotation_action() {
        for u in ["e", "0", "1", "01", "110"] {
            for inverse in [false, true] {
                let s = RotationSymbol { u: addr(u), inverse };
                let p = rotation_as_pair(s);
                for v in ["e", "0", "1", "00", "01", "10", "11", "010", "0110", "1101", "11011"] {
                    assert_eq!(p.apply_element(addr(v)), s.act(addr(v)), "{s} {v}");
                }
            }
        }
    }

    #[test]
    fn rotation_pair_examples() {
        assert_eq!(rotation_as_pair(e()), TreePair::new(t(&["e", "0"]), t(&["e", "1"])).unwrap());
        assert_eq!(
            rotation_as_pair(RotationSymbol::forward(addr("1"))),
            TreePair::new(t(&["e", "1", "10"]), t(&["e", "1", "11"])).unwrap()
        );
        assert_eq!(rotation_as_pair(e().inverted()), rotation_as_pair(e()).invert());
    }

    #[test]
    fn word_to_pair_examples() {
        assert_eq!(word_to_pair(&word("0 e 1")), word_to_pair(&word("e e")));
        assert_eq!(word_to_pair(&word("")), TreePair::identity());
        assert_eq!(word_to_pair(&word("e ~e")), TreePair::identity());
        assert_eq!(word("0 e ~1").to_string(), "0 e ~1");
    }

    #[test]
    fn path_evaluate_examples() {
        let got = path_evaluate(&t(&["e", "0", "00"]), &word("0 e")).unwrap();
        assert_eq!(got, vec![t(&["e", "0", "00"]), t(&["e", "0", "01"]), t(&["e", "1", "10"])]);
        assert_eq!(path_evaluate(&t(&["e"]), &word("")).unwrap(), vec![t(&["e"])]);
        assert!(matches!(
            path_evaluate(&t(&["e", "0"]), &word("1")),
            Err(Error::PivotMissing { index: 0, .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let p = rotation_as_pair(e());
        // Oracle: the unreduced product gains exactly one caret.
        assert_eq!(p.multiply(&rotation_as_pair(e())).caret_count(), p.caret_count() + 1);
        assert_eq!(p.classify_multiplication(e()), Increase::MinimallyIncreasing);
        assert_eq!(TreePair::identity().classify_multiplication(e()), Increase::Increasing);
        assert_eq!(p.classify_multiplication(RotationSymbol::forward(addr("1")).inverted()), Increase::MinimallyIncreasing);
        assert_eq!(p.classify_multiplication(e().inverted()), Increase::NonIncreasing);
    }

    #[test]
    fn classification_matches_caret_growth() {
        for p in pairs_up_to(3) {
            for u in ["e", "0", "1", "00", "01"] {
                for inverse in [false, true] {
                    let s = RotationSymbol { u: addr(u), inverse };
                    let grow = p.multiply(&rotation_as_pair(s)).caret_count() - p.caret_count();
                    let expect = match grow {
                        0 => Increase::NonIncreasing,
                        1 => Increase::MinimallyIncreasing,
                        _ => Increase::Increasing,
                    };
                    assert_eq!(p.classify_multiplication(s), expect, "{p} {s}");
                }
            }
        }
    }

    #[test]
    fn positivity_examples() {
        let p = rotation_as_pair(e());
        assert!(p.is_positive() && p.is_prime_positive());
        assert!(TreePair::identity().is_positive());
        assert!(!TreePair::identity().is_prime_positive());
        let q = TreePair::new(t(&["e", "0", "1"]), BinaryTree::right_vine(3)).unwrap();
        assert!(q.is_positive() && !q.is_prime_positive());
    }

    #[test]
    fn prime_positives_have_minimally_increasing_chains() {
        let mut seen = 0;
        for p in pairs_up_to(6) {
            if p.is_reduced() && p.is_prime_positive() {
                let w = minimally_increasing_chain(&p).unwrap_or_else(|| panic!("no chain for {p}"));
                assert_eq!(word_to_pair(&w), p);
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn parity_examples() {
        let parallel = TreePair::new(t(&["e", "0", "00", "001"]), t(&["e", "1", "11", "110"])).unwrap();
        assert!(parallel.parity_condition());
        assert!(!rotation_as_pair(e()).parity_condition());
        let tt = t(&["e", "1"]);
        assert!(TreePair::new(tt.clone(), tt).unwrap().parity_condition());
    }

    #[test]
    fn deferment_examples() {
        let p = rotation_as_pair(e());
        assert_eq!(p.deferment(&BinaryTree::trivial(), Address::EMPTY).unwrap(), p);
        assert_eq!(
            p.deferment(&t(&["e"]), addr("0")).unwrap(),
            rotation_as_pair(RotationSymbol::forward(addr("0")))
        );
        assert_eq!(p.deferment(&t(&["e"]), addr("e")), Err(Error::NotALeaf(Address::EMPTY)));
    }

    #[test]
    fn deferment_to_even_depth_preserves_parity() {
        let host = t(&["e", "0", "00", "1"]);
        for p in pairs_up_to(3) {
            for leaf in host.leaves() {
                let q = p.deferment(&host, leaf).unwrap();
                if leaf.len() % 2 == 0 {
                    assert_eq!(q.parity_condition(), p.parity_condition());
                }
            }
        }
    }

    #[test]
    fn pair_text_round_trip() {
        let p = rotation_as_pair(e());
        assert_eq!(p.to_string(), "(((..).), (.(..)))");
        assert_eq!(p.to_string().parse::<TreePair>().unwrap(), p);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(TreePair::parse_any(&j).unwrap(), p);
        assert_eq!(TreePair::parse_any(r#"{"d":"((..).)","r":"(.(..))"}"#).unwrap(), p);
    }

    #[test]
    fn relations_hold_for_short_addresses() {
        let addrs: Vec<Address> = ["e", "0", "1", "00", "01", "10", "11", "000", "001", "010", "011", "100", "101", "110", "111"]
            .iter()
            .map(|s| addr(s))
            .collect();
        let f = |s: RotationSymbol| Word::new(vec![s]);
        for &u in &addrs {
            let fu = RotationSymbol::forward(u);
            // Pentagon: u0 u u1 = u u.
            let pent = Word::new(vec![RotationSymbol::forward(u.child(0)), fu, RotationSymbol::forward(u.child(1))]);
            assert_eq!(word_to_pair(&pent), word_to_pair(&Word::new(vec![fu, fu])));
            for &v in &addrs {
                let fv = RotationSymbol::forward(v);
                // Conjugation by an incomparable rotation is trivial.
                if u.is_incomparable(v) {
                    let lhs = f(fu.inverted()).then(&f(fv)).then(&f(fu));
                    assert_eq!(word_to_pair(&lhs), word_to_pair(&f(fv)));
                }
                // Conjugating by u moves v as a vertex when u acts on v as a prefix replacement.
                if u.is_proper_prefix_of(v) && v != u.child(0) {
                    let lhs = f(fu.inverted()).then(&f(fv)).then(&f(fu));
                    let rhs = f(RotationSymbol::forward(fu.act(v)));
                    assert_eq!(word_to_pair(&lhs), word_to_pair(&rhs), "{u} {v}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn multiply_is_associative_and_has_inverses(
            i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()
        ) {
            let all = pairs_up_to(3);
            let (a, b, c) = (&all[i.index(all.len())], &all[j.index(all.len())], &all[k.index(all.len())]);
            let left = a.multiply(b).reduce().multiply(c).reduce();
            let right = a.multiply(&b.multiply(c).reduce()).reduce();
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.multiply(&a.invert()).reduce(), TreePair::identity());
        }

        #[test]
        fn reduce_is_idempotent(i in any::<prop::sample::Index>()) {
            let all = pairs_up_to(4);
            let p = &all[i.index(all.len())];
            let r = p.reduce();
            prop_assert_eq!(r.reduce(), r.clone());
            // Confluence: reducing from the inverse side gives the mirrored result.
            prop_assert_eq!(p.invert().reduce(), r.invert());
        }

        #[test]
        fn apply_element_preserves_infix_order(i in any::<prop::sample::Index>()) {
            let all = pairs_up_to(4);
            let p = &all[i.index(all.len())];
            let mut verts: Vec<Address> = p.d.internal().iter().copied().chain(p.d.leaves()).collect();
            verts.sort_by_key(|a| a.infix_key());
            let imgs: Vec<u64> = verts.iter().map(|v| p.apply_element(*v).infix_key()).collect();
            prop_assert!(imgs.windows(2).all(|w| w[0] < w[1]));
            let mapped: Vec<Address> = p.d.leaves().iter().map(|l| p.apply_element(*l)).collect();
            prop_assert_eq!(mapped, p.r.leaves());
        }
    }
}
