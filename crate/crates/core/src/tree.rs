//! Binary trees as finite prefix-closed subsets of the infinite binary tree.
//!
//! A vertex is named by an [`Address`], a word over `{0,1}`; the empty word
//! `e` is the child of the root. A [`BinaryTree`] is stored as its sorted set
//! of internal vertices (caret centers).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest supported address. Keeps every shift in `u64` arithmetic in range.
pub const MAX_ADDRESS_LEN: usize = 63;

/// A finite word over `{0,1}` naming a vertex of the infinite binary tree.
///
/// The word is kept in the low `len` bits of `bits`, first letter most
/// significant. Bits above `len` are always zero, so derived equality is exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Address {
    len: u8,
    bits: u64,
}

impl Address {
    /// The empty word, the top vertex of every nontrivial tree.
    pub const EMPTY: Address = Address { len: 0, bits: 0 };

    /// Builds an address from letters (each 0 or 1).
    pub fn from_letters(letters: &[u8]) -> Result<Address> {
        if letters.len() > MAX_ADDRESS_LEN {
            return Err(Error::AddressTooLong(MAX_ADDRESS_LEN));
        }
        let mut a = Address::EMPTY;
        for &b in letters {
            if b > 1 {
                return Err(Error::Parse(format!("address letter {b}")));
            }
            a = a.child(b);
        }
        Ok(a)
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Letter at position `i` (0-based from the first letter).
    pub fn letter(self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn letters(self) -> impl Iterator<Item = u8> {
        (0..self.len()).map(move |i| self.letter(i))
    }

    /// Appends one letter.
    ///
    /// Panics past [`MAX_ADDRESS_LEN`]; every tree this crate builds stays far below it.
    pub fn child(self, b: u8) -> Address {
        assert!(self.len() < MAX_ADDRESS_LEN, "address too long");
        Address {
            len: self.len + 1,
            bits: (self.bits << 1) | (b as u64 & 1),
        }
    }

    pub fn parent(self) -> Option<Address> {
        if self.len == 0 {
            None
        } else {
            Some(Address {
                len: self.len - 1,
                bits: self.bits >> 1,
            })
        }
    }

    /// The last letter, if any.
    pub fn last(self) -> Option<u8> {
        (self.len > 0).then_some((self.bits & 1) as u8)
    }

    /// Prefix of length `k`.
    pub fn prefix(self, k: usize) -> Address {
        debug_assert!(k <= self.len());
        Address {
            len: k as u8,
            bits: self.bits >> (self.len() - k),
        }
    }

    /// Suffix after dropping the first `k` letters.
    pub fn suffix(self, k: usize) -> Address {
        debug_assert!(k <= self.len());
        let len = self.len() - k;
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        Address {
            len: len as u8,
            bits: self.bits & mask,
        }
    }

    /// `self` followed by `other`.
    pub fn concat(self, other: Address) -> Address {
        let len = self.len() + other.len();
        assert!(len <= MAX_ADDRESS_LEN, "address too long");
        Address {
            len: len as u8,
            bits: if other.len == 0 {
                self.bits
            } else {
                (self.bits << other.len) | other.bits
            },
        }
    }

    /// Non-strict prefix test (`self` is a prefix of `other` or equal to it).
    pub fn is_prefix_of(self, other: Address) -> bool {
        self.len <= other.len && other.prefix(self.len()) == self
    }

    pub fn is_proper_prefix_of(self, other: Address) -> bool {
        self.len < other.len && other.prefix(self.len()) == self
    }

    /// Neither is a prefix of the other.
    pub fn is_incomparable(self, other: Address) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// The word left after removing `prefix`, if it is one.
    pub fn strip_prefix(self, prefix: Address) -> Option<Address> {
        prefix.is_prefix_of(self).then(|| self.suffix(prefix.len()))
    }

    /// Sort key for the infix (left, vertex, right) order of all vertices.
    pub fn infix_key(self) -> u64 {
        ((self.bits << 1) | 1) << (MAX_ADDRESS_LEN - self.len())
    }

    /// Order by infix position.
    pub fn infix_cmp(self, other: Address) -> Ordering {
        self.infix_key().cmp(&other.infix_key())
    }
}

impl Ord for Address {
    /// Lexicographic with `0 < 1` and a prefix before its extensions.
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.len.min(other.len) as usize;
        self.prefix(m)
            .bits
            .cmp(&other.prefix(m).bits)
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Address {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("e");
        }
        for b in self.letters() {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Address> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Address::EMPTY);
        }
        let letters = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad address {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Address::from_letters(&letters)
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used pervasively in tests and fixtures. Panics on bad input.
pub fn addr(s: &str) -> Address {
    s.parse().expect("valid address literal")
}

/// A rotation symbol: forward `u` or inverse `~u`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationSymbol {
    pub u: Address,
    pub inverse: bool,
}

impl RotationSymbol {
    pub fn forward(u: Address) -> Self {
        RotationSymbol { u, inverse: false }
    }

    pub fn backward(u: Address) -> Self {
        RotationSymbol { u, inverse: true }
    }

    pub fn inverted(self) -> Self {
        RotationSymbol {
            u: self.u,
            inverse: !self.inverse,
        }
    }

    /// The two vertices that must be internal: `u, u0` forward, `u, u1` inverse.
    pub fn pivots(self) -> (Address, Address) {
        (self.u, self.u.child(self.inverse as u8))
    }

    /// The action of the rotation on a vertex address. Vertices not below
    /// `u` are fixed.
    pub fn act(self, v: Address) -> Address {
        let u = self.u;
        let Some(w) = v.strip_prefix(u) else {
            return v;
        };
        let n = w.len();
        if !self.inverse {
            // u0 -> u, u -> u1, u00w -> u0w, u01w -> u10w, u1w -> u11w
            if n == 0 {
                return u.child(1);
            }
            if w.letter(0) == 1 {
                return u.child(1).concat(w);
            }
            if n == 1 {
                return u;
            }
            let rest = w.suffix(2);
            if w.letter(1) == 0 {
                u.child(0).concat(rest)
            } else {
                u.child(1).child(0).concat(rest)
            }
        } else {
            // u1 -> u, u -> u0, u0w -> u00w, u10w -> u01w, u11w -> u1w
            if n == 0 {
                return u.child(0);
            }
            if w.letter(0) == 0 {
                return u.child(0).concat(w);
            }
            if n == 1 {
                return u;
            }
            let rest = w.suffix(2);
            if w.letter(1) == 0 {
                u.child(0).child(1).concat(rest)
            } else {
                u.child(1).concat(rest)
            }
        }
    }
}

impl fmt::Display for RotationSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "~{}", self.u)
        } else {
            write!(f, "{}", self.u)
        }
    }
}

impl fmt::Debug for RotationSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RotationSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix('~') {
            Some(rest) => Ok(RotationSymbol::backward(rest.parse()?)),
            None => Ok(RotationSymbol::forward(s.parse()?)),
        }
    }
}

/// A run of consecutive leaf positions, 1-based and inclusive.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ShadowInterval {
    pub lo: usize,
    pub hi: usize,
}

impl ShadowInterval {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(1 <= lo && lo <= hi);
        ShadowInterval { lo, hi }
    }

    pub fn len(self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, other: ShadowInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(self, other: ShadowInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Bit index in an interval mask. Only intervals of length at least 2
    /// with `hi <= 16` have an index.
    pub fn mask_index(self) -> usize {
        debug_assert!(self.lo < self.hi && self.hi <= MAX_MASK_LEAVES);
        (self.hi - 1) * (self.hi - 2) / 2 + (self.lo - 1)
    }

    pub fn mask_bit(self) -> u128 {
        1u128 << self.mask_index()
    }
}

impl fmt::Display for ShadowInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Largest leaf count whose intervals fit in a `u128` mask.
pub const MAX_MASK_LEAVES: usize = 16;

/// A rooted, locally ordered binary tree given by its internal vertices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryTree {
    /// Sorted lexicographically, which is preorder.
    internal: Vec<Address>,
}

impl BinaryTree {
    /// Validates prefix closure.
    pub fn new(internal: impl IntoIterator<Item = Address>) -> Result<BinaryTree> {
        let mut v: Vec<Address> = internal.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        for &a in &v {
            if let Some(p) = a.parent() {
                if v.binary_search(&p).is_err() {
                    return Err(Error::NotPrefixClosed(a));
                }
            }
        }
        Ok(BinaryTree { internal: v })
    }

    /// Parses each token as an address. Convenience for fixtures; panics on bad input.
    pub fn from_addrs(list: &[&str]) -> BinaryTree {
        BinaryTree::new(list.iter().map(|s| addr(s))).expect("prefix-closed literal")
    }

    fn from_sorted_unchecked(internal: Vec<Address>) -> BinaryTree {
        debug_assert!(internal.windows(2).all(|w| w[0] < w[1]));
        BinaryTree { internal }
    }

    /// The tree with one leaf and no carets.
    pub fn trivial() -> BinaryTree {
        BinaryTree::default()
    }

    /// The single caret `{e}`.
    pub fn caret() -> BinaryTree {
        BinaryTree::from_sorted_unchecked(vec![Address::EMPTY])
    }

    pub fn is_trivial(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn internal(&self) -> &[Address] {
        &self.internal
    }

    pub fn caret_count(&self) -> usize {
        self.internal.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.internal.len() + 1
    }

    pub fn contains(&self, v: Address) -> bool {
        self.internal.binary_search(&v).is_ok()
    }

    pub fn is_leaf(&self, v: Address) -> bool {
        if self.contains(v) {
            return false;
        }
        match v.parent() {
            None => self.is_trivial(),
            Some(p) => self.contains(p),
        }
    }

    pub fn is_vertex(&self, v: Address) -> bool {
        self.contains(v) || self.is_leaf(v)
    }

    /// Leaves in left-right order.
    pub fn leaves(&self) -> Vec<Address> {
        if self.is_trivial() {
            return vec![Address::EMPTY];
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        for &v in &self.internal {
            for b in 0..2 {
                let c = v.child(b);
                if !self.contains(c) {
                    out.push(c);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Internal vertices sorted by infix order.
    pub fn internal_infix(&self) -> Vec<Address> {
        let mut v = self.internal.clone();
        v.sort_unstable_by_key(|a| a.infix_key());
        v
    }

    /// Internal vertices whose two children are leaves.
    pub fn exposed_carets(&self) -> Vec<Address> {
        self.internal
            .iter()
            .copied()
            .filter(|v| !self.contains(v.child(0)) && !self.contains(v.child(1)))
            .collect()
    }

    pub fn is_vine(&self) -> bool {
        self.exposed_carets().len() == 1
    }

    /// `{e, 1, 11, ...}` with `n` carets.
    pub fn right_vine(n: usize) -> BinaryTree {
        Self::vine_of_letter(n, 1)
    }

    /// `{e, 0, 00, ...}` with `n` carets.
    pub fn left_vine(n: usize) -> BinaryTree {
        Self::vine_of_letter(n, 0)
    }

    fn vine_of_letter(n: usize, b: u8) -> BinaryTree {
        let mut v = Vec::with_capacity(n);
        let mut a = Address::EMPTY;
        for _ in 0..n {
            v.push(a);
            a = a.child(b);
        }
        BinaryTree::from_sorted_unchecked(v)
    }

    /// The vine whose internal vertices are the prefixes of `v`, `v` included.
    pub fn vine_to(v: Address) -> BinaryTree {
        BinaryTree::from_sorted_unchecked((0..=v.len()).map(|k| v.prefix(k)).collect())
    }

    /// The subtree hanging below `v`, re-addressed so that `v` becomes `e`.
    pub fn subtree_at(&self, v: Address) -> Result<BinaryTree> {
        if !self.is_vertex(v) {
            return Err(Error::NotAVertex(v));
        }
        let start = self.internal.partition_point(|a| *a < v);
        let inner = self.internal[start..]
            .iter()
            .take_while(|a| v.is_prefix_of(**a))
            .map(|a| a.suffix(v.len()))
            .collect();
        Ok(BinaryTree::from_sorted_unchecked(inner))
    }

    /// The tree with left subtree `left` and right subtree `right`.
    pub fn join(left: &BinaryTree, right: &BinaryTree) -> BinaryTree {
        let mut v = Vec::with_capacity(left.caret_count() + right.caret_count() + 1);
        v.push(Address::EMPTY);
        let zero = Address::EMPTY.child(0);
        let one = Address::EMPTY.child(1);
        v.extend(left.internal.iter().map(|a| zero.concat(*a)));
        v.extend(right.internal.iter().map(|a| one.concat(*a)));
        BinaryTree::from_sorted_unchecked(v)
    }

    /// Splits a nontrivial tree into its left and right subtrees.
    pub fn split(&self) -> Option<(BinaryTree, BinaryTree)> {
        if self.is_trivial() {
            return None;
        }
        let zero = Address::EMPTY.child(0);
        let one = Address::EMPTY.child(1);
        Some((
            self.subtree_at(zero).expect("child of e is a vertex"),
            self.subtree_at(one).expect("child of e is a vertex"),
        ))
    }

    /// Attaches `other` at `leaf`: the result is `self ∪ leaf·other`.
    pub fn graft(&self, leaf: Address, other: &BinaryTree) -> Result<BinaryTree> {
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        let mut v = self.internal.clone();
        v.extend(other.internal.iter().map(|a| leaf.concat(*a)));
        v.sort_unstable();
        Ok(BinaryTree::from_sorted_unchecked(v))
    }

    pub fn union(&self, other: &BinaryTree) -> BinaryTree {
        let set: BTreeSet<Address> = self.internal.iter().chain(&other.internal).copied().collect();
        BinaryTree::from_sorted_unchecked(set.into_iter().collect())
    }

    pub fn intersection(&self, other: &BinaryTree) -> BinaryTree {
        BinaryTree::from_sorted_unchecked(
            self.internal
                .iter()
                .copied()
                .filter(|a| other.contains(*a))
                .collect(),
        )
    }

    pub fn is_subtree_of(&self, other: &BinaryTree) -> bool {
        self.internal.iter().all(|a| other.contains(*a))
    }

    /// Components of `self − other`, keyed by the leaf of the intersection
    /// where each one hangs.
    pub fn difference_components(&self, other: &BinaryTree) -> BTreeMap<Address, BinaryTree> {
        let common = self.intersection(other);
        common
            .leaves()
            .into_iter()
            .filter(|v| self.contains(*v))
            .map(|v| (v, self.subtree_at(v).expect("leaf of the intersection is a vertex")))
            .collect()
    }

    /// Union, intersection and the components of `self − other`.
    pub fn set_ops(&self, other: &BinaryTree) -> (BinaryTree, BinaryTree, BTreeMap<Address, BinaryTree>) {
        (
            self.union(other),
            self.intersection(other),
            self.difference_components(other),
        )
    }

    /// Depth (address length) of each leaf, left to right.
    pub fn leaf_depths(&self) -> Vec<usize> {
        self.leaves().into_iter().map(|a| a.len()).collect()
    }

    /// Shadow interval of every vertex (internal and leaf), keyed by address.
    pub fn shadow_map(&self) -> BTreeMap<Address, ShadowInterval> {
        let mut out = BTreeMap::new();
        let mut next = 1;
        self.shadow_walk(Address::EMPTY, &mut next, &mut out);
        out
    }

    fn shadow_walk(&self, v: Address, next: &mut usize, out: &mut BTreeMap<Address, ShadowInterval>) {
        if !self.contains(v) {
            out.insert(v, ShadowInterval::new(*next, *next));
            *next += 1;
            return;
        }
        let lo = *next;
        self.shadow_walk(v.child(0), next, out);
        self.shadow_walk(v.child(1), next, out);
        out.insert(v, ShadowInterval::new(lo, *next - 1));
    }

    /// Shadow interval of each internal vertex other than `e`, sorted.
    pub fn shadow_pattern(&self) -> Result<Vec<ShadowInterval>> {
        if self.is_trivial() {
            return Err(Error::TooSmall);
        }
        let map = self.shadow_map();
        let mut v: Vec<ShadowInterval> = self
            .internal
            .iter()
            .filter(|a| !a.is_empty())
            .map(|a| map[a])
            .collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Mask of the shadow intervals of all internal vertices, `e` included.
    /// Requires at most [`MAX_MASK_LEAVES`] leaves.
    pub fn interval_mask(&self) -> u128 {
        assert!(self.leaf_count() <= MAX_MASK_LEAVES, "tree too large for an interval mask");
        let mut mask = 0u128;
        let mut next = 1;
        self.mask_walk(Address::EMPTY, &mut next, &mut mask);
        mask
    }

    fn mask_walk(&self, v: Address, next: &mut usize, mask: &mut u128) {
        if !self.contains(v) {
            *next += 1;
            return;
        }
        let lo = *next;
        self.mask_walk(v.child(0), next, mask);
        self.mask_walk(v.child(1), next, mask);
        *mask |= ShadowInterval::new(lo, *next - 1).mask_bit();
    }

    /// Rebuilds a tree from its shadow pattern and leaf count.
    pub fn from_shadow_pattern(pattern: &[ShadowInterval], n: usize) -> Result<BinaryTree> {
        if n < 2 {
            return Err(Error::TooSmall);
        }
        let set: HashSet<ShadowInterval> = pattern.iter().copied().collect();
        if set.len() != n - 2 || pattern.len() != n - 2 {
            return Err(Error::WrongCardinality {
                expected: n - 2,
                found: pattern.len(),
            });
        }
        for iv in &set {
            if iv.lo < 1 || iv.hi > n || iv.lo >= iv.hi || (iv.lo == 1 && iv.hi == n) {
                return Err(Error::NotLaminar);
            }
        }
        for a in &set {
            for b in &set {
                if !(a.contains(*b) || b.contains(*a) || a.is_disjoint(*b)) {
                    return Err(Error::NotLaminar);
                }
            }
        }
        let mut internal = Vec::with_capacity(n - 1);
        Self::build_from_intervals(&set, 1, n, Address::EMPTY, &mut internal)?;
        internal.sort_unstable();
        Ok(BinaryTree::from_sorted_unchecked(internal))
    }

    fn build_from_intervals(
        set: &HashSet<ShadowInterval>,
        lo: usize,
        hi: usize,
        v: Address,
        out: &mut Vec<Address>,
    ) -> Result<()> {
        if lo == hi {
            return Ok(());
        }
        let present = |a: usize, b: usize| a == b || set.contains(&ShadowInterval::new(a, b));
        let m = (lo..hi)
            .find(|&m| present(lo, m) && present(m + 1, hi))
            .ok_or(Error::NotLaminar)?;
        out.push(v);
        Self::build_from_intervals(set, lo, m, v.child(0), out)?;
        Self::build_from_intervals(set, m + 1, hi, v.child(1), out)
    }

    /// Applies a rotation. Both pivots must be internal.
    pub fn rotate(&self, s: RotationSymbol) -> Result<BinaryTree> {
        let (a, b) = s.pivots();
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::PivotMissing { symbol: s, index: 0 });
        }
        let mut v: Vec<Address> = self.internal.iter().map(|x| s.act(*x)).collect();
        v.sort_unstable();
        Ok(BinaryTree::from_sorted_unchecked(v))
    }

    /// Every rotation symbol that is an edge at this tree, in canonical order
    /// (by pivot address, forward before inverse).
    pub fn available_rotations(&self) -> Vec<RotationSymbol> {
        let mut out = Vec::new();
        for &u in &self.internal {
            if self.contains(u.child(0)) {
                out.push(RotationSymbol::forward(u));
            }
            if self.contains(u.child(1)) {
                out.push(RotationSymbol::backward(u));
            }
        }
        out
    }

    /// Rotates or reflects the dual polygon, keeping the root in the top edge.
    ///
    /// The polygon has vertices `0..=L` for `L` leaves; the chord of a
    /// non-root internal vertex with shadow `[lo,hi]` is `(lo-1, hi)`.
    /// Reflection `i -> L-i` is applied before the shift `i -> i+k`.
    pub fn dihedral_apply(&self, k: usize, reflect: bool) -> Result<BinaryTree> {
        let l = self.leaf_count();
        if k > l {
            return Err(Error::OutOfRange {
                what: "root shift",
                n: k as i64,
            });
        }
        if l < 3 {
            return Ok(self.clone());
        }
        let m = l + 1;
        let map = |i: usize| {
            let i = if reflect { l - i } else { i };
            (i + k) % m
        };
        let pattern: Vec<ShadowInterval> = self
            .shadow_pattern()?
            .into_iter()
            .map(|iv| {
                let (a, b) = (map(iv.lo - 1), map(iv.hi));
                let (a, b) = (a.min(b), a.max(b));
                ShadowInterval::new(a + 1, b)
            })
            .collect();
        BinaryTree::from_shadow_pattern(&pattern, l)
    }

    /// All trees reachable by [`BinaryTree::dihedral_apply`], sorted canonically.
    pub fn dihedral_orbit(&self) -> Vec<BinaryTree> {
        let l = self.leaf_count();
        let mut out: Vec<BinaryTree> = (0..=l)
            .flat_map(|k| [false, true].map(|r| self.dihedral_apply(k, r).expect("k in range")))
            .collect();
        sort_canonical(&mut out);
        out.dedup();
        out
    }

    /// Collapses the internal edges of each listed subtree.
    ///
    /// A subtree is given by its top vertex `w` and its shape `S`; its
    /// internal vertices are `w·S`. Edge-disjointness is tested on the
    /// non-root edges of each subtree, named by their lower endpoints.
    pub fn projection(&self, subs: &[(Address, BinaryTree)]) -> Result<GeneralTree> {
        let mut contracted: HashSet<Address> = HashSet::new();
        let mut used_edges: HashSet<Address> = HashSet::new();
        for (w, s) in subs {
            if s.caret_count() < 2 {
                return Err(Error::SubtreeTooSmall);
            }
            for a in s.internal() {
                let x = w.concat(*a);
                if !self.contains(x) {
                    return Err(Error::NotAVertex(x));
                }
            }
            let inner = s.internal.iter().filter(|a| !a.is_empty());
            let leaves = s.leaves();
            for a in inner.clone().chain(leaves.iter()) {
                if !used_edges.insert(w.concat(*a)) {
                    return Err(Error::NotEdgeDisjoint);
                }
            }
            contracted.extend(inner.map(|a| w.concat(*a)));
        }
        Ok(self.project_node(Address::EMPTY, &contracted))
    }

    fn project_node(&self, v: Address, contracted: &HashSet<Address>) -> GeneralTree {
        if !self.contains(v) {
            return GeneralTree::leaf();
        }
        let mut children = Vec::new();
        self.project_expand(v.child(0), contracted, &mut children);
        self.project_expand(v.child(1), contracted, &mut children);
        GeneralTree { children }
    }

    fn project_expand(&self, c: Address, contracted: &HashSet<Address>, out: &mut Vec<GeneralTree>) {
        if contracted.contains(&c) {
            self.project_expand(c.child(0), contracted, out);
            self.project_expand(c.child(1), contracted, out);
        } else {
            out.push(self.project_node(c, contracted));
        }
    }

    /// Canonical text: `.` for the trivial tree, `(AB)` for a join.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(2 * self.caret_count() + 1);
        self.write_text(Address::EMPTY, &mut s);
        s
    }

    fn write_text(&self, v: Address, s: &mut String) {
        if self.contains(v) {
            s.push('(');
            self.write_text(v.child(0), s);
            self.write_text(v.child(1), s);
            s.push(')');
        } else {
            s.push('.');
        }
    }

    /// Accepts canonical text or the JSON object `{"internal": [...]}`.
    pub fn parse_any(s: &str) -> Result<BinaryTree> {
        let t = s.trim();
        if t.starts_with('{') {
            serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))
        } else {
            t.parse()
        }
    }
}

fn parse_tree_text(chars: &[u8], pos: &mut usize, v: Address, out: &mut Vec<Address>) -> Result<()> {
    match chars.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(())
        }
        Some(b'(') => {
            *pos += 1;
            if v.len() >= MAX_ADDRESS_LEN {
                return Err(Error::AddressTooLong(MAX_ADDRESS_LEN));
            }
            out.push(v);
            parse_tree_text(chars, pos, v.child(0), out)?;
            parse_tree_text(chars, pos, v.child(1), out)?;
            if chars.get(*pos) != Some(&b')') {
                return Err(Error::Parse(format!("expected ')' at offset {}", *pos)));
            }
            *pos += 1;
            Ok(())
        }
        _ => Err(Error::Parse(format!("expected '.' or '(' at offset {}", *pos))),
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<BinaryTree> {
        let chars: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let mut out = Vec::new();
        parse_tree_text(&chars, &mut pos, Address::EMPTY, &mut out)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input at offset {pos}")));
        }
        out.sort_unstable();
        Ok(BinaryTree::from_sorted_unchecked(out))
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryTree{}", self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    internal: Vec<Address>,
}

impl Serialize for BinaryTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson {
            internal: self.internal.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TreeJson::deserialize(d)?;
        BinaryTree::new(raw.internal).map_err(serde::de::Error::custom)
    }
}

/// Sorts trees by canonical text.
pub fn sort_canonical(trees: &mut [BinaryTree]) {
    trees.sort_by_cached_key(|t| t.to_text());
}

/// All trees with `n` carets, sorted by canonical text.
pub fn all_trees(n: usize) -> Vec<BinaryTree> {
    let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::trivial()]];
    for m in 1..=n {
        let mut level = Vec::new();
        for k in 0..m {
            for l in &by_size[k] {
                for r in &by_size[m - 1 - k] {
                    level.push(BinaryTree::join(l, r));
                }
            }
        }
        by_size.push(level);
    }
    let mut out = by_size.swap_remove(n);
    sort_canonical(&mut out);
    out
}

/// An ordered rooted tree whose internal nodes may have any number of
/// children. Produced by [`BinaryTree::projection`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GeneralTree {
    pub children: Vec<GeneralTree>,
}

impl GeneralTree {
    pub fn leaf() -> Self {
        GeneralTree::default()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(GeneralTree::leaf_count).sum()
        }
    }

    /// `.` for a leaf, `(` children `)` for an internal node.
    pub fn to_text(&self) -> String {
        if self.is_leaf() {
            return ".".into();
        }
        let mut s = String::from("(");
        for c in &self.children {
            s.push_str(&c.to_text());
        }
        s.push(')');
        s
    }
}

impl fmt::Display for GeneralTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
