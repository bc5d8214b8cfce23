//! Colors in Z2×Z2, color vectors, induced edge colorings and sign assignments.
//!
//! Colors are coded `0..=3` with addition as XOR, so `1 + 2 = 3` and every
//! color is its own negative. A sign at an internal vertex is `+` when the
//! colors on (parent edge, left edge, right edge) read `1,2,3` up to a cyclic
//! shift.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::thompson::TreePair;
use crate::tree::{Address, BinaryTree, ShadowInterval, MAX_MASK_LEAVES};

/// A color; `0` is the non-color, `1..=3` the three Tait colors.
pub type Color = u8;

/// The next color in the cyclic order `1 -> 2 -> 3 -> 1`.
pub fn next_color(c: Color) -> Color {
    debug_assert!((1..=3).contains(&c));
    c % 3 + 1
}

/// The previous color in the cyclic order.
pub fn prev_color(c: Color) -> Color {
    debug_assert!((1..=3).contains(&c));
    (c + 1) % 3 + 1
}

/// Leaf colors in left-right order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorVector(pub Vec<Color>);

impl ColorVector {
    pub fn new(entries: Vec<Color>) -> ColorVector {
        ColorVector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Color] {
        &self.0
    }

    pub fn sum(&self) -> Color {
        self.0.iter().fold(0, |a, b| a ^ b)
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&0)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Applies a color permutation given as the images of `1, 2, 3`.
    pub fn permuted(&self, perm: [Color; 3]) -> ColorVector {
        ColorVector(self.0.iter().map(|&c| if c == 0 { 0 } else { perm[c as usize - 1] }).collect())
    }

    /// Bit mask of the intervals of length at least 2 whose entries sum to
    /// zero, indexed like [`BinaryTree::interval_mask`].
    pub fn zero_interval_mask(&self) -> u128 {
        assert!(self.len() <= MAX_MASK_LEAVES, "vector too long for an interval mask");
        let mut mask = 0u128;
        for lo in 0..self.len() {
            let mut s = self.0[lo];
            for hi in lo + 1..self.len() {
                s ^= self.0[hi];
                if s == 0 {
                    mask |= ShadowInterval::new(lo + 1, hi + 1).mask_bit();
                }
            }
        }
        mask
    }

    /// All intervals (length at least 2) with zero entry sum.
    pub fn zero_intervals(&self) -> Vec<ShadowInterval> {
        let mut out = Vec::new();
        for lo in 0..self.len() {
            let mut s = self.0[lo];
            for hi in lo + 1..self.len() {
                s ^= self.0[hi];
                if s == 0 {
                    out.push(ShadowInterval::new(lo + 1, hi + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColorVector({self})")
    }
}

impl FromStr for ColorVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<ColorVector> {
        let digits: String = s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        let entries = digits
            .chars()
            .map(|ch| match ch.to_digit(10) {
                Some(d) if d <= 3 => Ok(d as u8),
                _ => Err(Error::Parse(format!("bad color {ch:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("empty color vector".into()));
        }
        Ok(ColorVector(entries))
    }
}

impl Serialize for ColorVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColorVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for vector literals; panics on bad input.
pub fn cv(s: &str) -> ColorVector {
    s.parse().expect("valid color vector literal")
}

/// Color of the edge above each vertex of a tree; `e` carries the root color.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EdgeColoring {
    pub colors: BTreeMap<Address, Color>,
}

impl EdgeColoring {
    pub fn get(&self, v: Address) -> Color {
        self.colors[&v]
    }

    pub fn root(&self) -> Color {
        self.get(Address::EMPTY)
    }

    pub fn is_proper(&self) -> bool {
        self.colors.values().all(|c| *c != 0)
    }

    /// Leaf colors of `t` in left-right order.
    pub fn leaf_vector(&self, t: &BinaryTree) -> ColorVector {
        ColorVector(t.leaves().iter().map(|l| self.get(*l)).collect())
    }
}

/// Per-vertex signs, `true` meaning `+`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Default)]
pub struct SignAssignment {
    pub signs: BTreeMap<Address, bool>,
}

impl SignAssignment {
    pub fn get(&self, v: Address) -> bool {
        self.signs[&v]
    }

    /// The same sign everywhere on the internal vertices of `t`.
    pub fn constant(t: &BinaryTree, sign: bool) -> SignAssignment {
        SignAssignment {
            signs: t.internal().iter().map(|a| (*a, sign)).collect(),
        }
    }

    pub fn negated(&self) -> SignAssignment {
        SignAssignment {
            signs: self.signs.iter().map(|(a, s)| (*a, !s)).collect(),
        }
    }

    /// Every pair of adjacent internal vertices has opposite signs.
    pub fn is_alternating(&self) -> bool {
        self.signs.iter().all(|(a, s)| match a.parent() {
            Some(p) => self.signs.get(&p) != Some(s),
            None => true,
        })
    }

    /// Text like `e+ 0- 00+`, in preorder.
    pub fn to_text(&self) -> String {
        self.signs
            .iter()
            .map(|(a, s)| format!("{a}{}", if *s { '+' } else { '-' }))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_len(t: &BinaryTree, c: &ColorVector) -> Result<()> {
    if c.len() != t.leaf_count() {
        return Err(Error::LengthMismatch {
            expected: t.leaf_count(),
            found: c.len(),
        });
    }
    Ok(())
}

/// The unique edge coloring extending `c` with zero sum at every internal vertex.
pub fn edge_coloring_from_vector(t: &BinaryTree, c: &ColorVector) -> Result<EdgeColoring> {
    check_len(t, c)?;
    let mut colors = BTreeMap::new();
    for (l, col) in t.leaves().iter().zip(c.entries()) {
        colors.insert(*l, *col);
    }
    // Reverse preorder visits children before parents.
    for &v in t.internal().iter().rev() {
        let col = colors[&v.child(0)] ^ colors[&v.child(1)];
        colors.insert(v, col);
    }
    Ok(EdgeColoring { colors })
}

/// The induced edge coloring avoids 0.
pub fn is_valid(t: &BinaryTree, c: &ColorVector) -> Result<bool> {
    check_len(t, c)?;
    Ok(is_valid_unchecked(t, c))
}

fn is_valid_unchecked(t: &BinaryTree, c: &ColorVector) -> bool {
    fn walk(t: &BinaryTree, v: Address, c: &[Color], next: &mut usize) -> Color {
        if !t.contains(v) {
            let col = c[*next];
            *next += 1;
            return col;
        }
        let a = walk(t, v.child(0), c, next);
        if a == 0 {
            return 0;
        }
        let b = walk(t, v.child(1), c, next);
        if b == 0 {
            return 0;
        }
        a ^ b
    }
    let mut next = 0;
    walk(t, Address::EMPTY, c.entries(), &mut next) != 0 && (t.is_trivial() || next == c.len())
}

/// Fast validity test from precomputed masks; both arguments must come from
/// a tree and a vector of the same length with no zero entry.
pub fn is_valid_by_masks(tree_mask: u128, zero_mask: u128) -> bool {
    tree_mask & zero_mask == 0
}

/// Sign at each internal vertex from a proper edge coloring.
pub fn sign_assignment_from_coloring(t: &BinaryTree, e: &EdgeColoring) -> Result<SignAssignment> {
    if !e.is_proper() {
        return Err(Error::ImproperColoring);
    }
    let signs = t
        .internal()
        .iter()
        .map(|&v| (v, e.get(v.child(0)) == next_color(e.get(v))))
        .collect();
    Ok(SignAssignment { signs })
}

/// The unique proper edge coloring with the given signs and root color.
pub fn coloring_from_sign(t: &BinaryTree, s: &SignAssignment, root: Color) -> Result<EdgeColoring> {
    if root == 0 || root > 3 {
        return Err(Error::ZeroRoot);
    }
    let mut colors = BTreeMap::new();
    colors.insert(Address::EMPTY, root);
    // Preorder visits parents before children.
    for &v in t.internal() {
        let up = colors[&v];
        let left = if s.get(v) { next_color(up) } else { prev_color(up) };
        colors.insert(v.child(0), left);
        colors.insert(v.child(1), up ^ left);
    }
    Ok(EdgeColoring { colors })
}

/// Leaf vector of the coloring with the given signs and root color 1.
pub fn vector_from_signs(t: &BinaryTree, s: &SignAssignment) -> ColorVector {
    coloring_from_sign(t, s, 1).expect("root 1 is nonzero").leaf_vector(t)
}

/// Signs induced by a valid vector.
pub fn signs_of_vector(t: &BinaryTree, c: &ColorVector) -> Result<SignAssignment> {
    sign_assignment_from_coloring(t, &edge_coloring_from_vector(t, c)?)
}

/// The unique color permutation sending a valid vector on `t` to root
/// color 1 with `e` positive. Trivial trees only fix the root color.
pub fn normalize(t: &BinaryTree, c: &ColorVector) -> Result<ColorVector> {
    let e = edge_coloring_from_vector(t, c)?;
    if !e.is_proper() {
        return Err(Error::ImproperColoring);
    }
    let root = e.root();
    // root -> 1 and the left child color of e -> 2, which makes e positive.
    let left = if t.is_trivial() {
        next_color(root)
    } else {
        e.get(Address::EMPTY.child(0))
    };
    let mut perm = [0u8; 3];
    perm[root as usize - 1] = 1;
    perm[left as usize - 1] = 2;
    perm[(root ^ left) as usize - 1] = 3;
    Ok(c.permuted(perm))
}

/// All `2^(n-1)` normalized vectors valid for a tree with `n >= 1` carets,
/// or the single vector `1` for the trivial tree. Sorted.
pub fn normalized_colorings(t: &BinaryTree) -> Vec<ColorVector> {
    if t.is_trivial() {
        return vec![ColorVector(vec![1])];
    }
    let rest: Vec<Address> = t.internal()[1..].to_vec();
    let mut out: Vec<ColorVector> = (0u64..1 << rest.len())
        .map(|bits| {
            let mut signs: BTreeMap<Address, bool> = BTreeMap::new();
            signs.insert(Address::EMPTY, true);
            for (i, a) in rest.iter().enumerate() {
                signs.insert(*a, bits >> i & 1 == 1);
            }
            vector_from_signs(t, &SignAssignment { signs })
        })
        .collect();
    out.sort_unstable();
    out
}

/// Normalized vectors valid for both trees of the pair, sorted.
pub fn colorings_of_pair(p: &TreePair) -> Vec<ColorVector> {
    normalized_colorings(&p.d)
        .into_iter()
        .filter(|c| is_valid_unchecked(&p.r, c))
        .collect()
}

/// Non-constant with nonzero sum. Requires entries in `1..=3` and length at least 2.
pub fn is_acceptable(c: &ColorVector) -> Result<bool> {
    if c.has_zero() {
        return Err(Error::ZeroEntry);
    }
    if c.len() < 2 {
        return Err(Error::TooShort);
    }
    Ok(!c.is_constant() && c.sum() != 0)
}

/// A tree for which `c` is valid, built by splitting the vector recursively,
/// or `None` when `c` is not acceptable.
pub fn acceptable_witness(c: &ColorVector) -> Result<Option<BinaryTree>> {
    if !is_acceptable(c)? {
        return Ok(None);
    }
    Ok(Some(witness(c.entries())))
}

fn sum(v: &[Color]) -> Color {
    v.iter().fold(0, |a, b| a ^ b)
}

fn is_const(v: &[Color]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Precondition: `v` has length at least 2, is non-constant and sums to nonzero.
fn witness(v: &[Color]) -> BinaryTree {
    let n = v.len();
    if n == 2 {
        return BinaryTree::caret();
    }
    let x = v[0];
    let total = sum(v);
    let triv = BinaryTree::trivial();
    if total != x {
        // v = x s with sum(s) not in {0, x}. A constant tail y^k makes the
        // running sums alternate between x + y and x along a left vine.
        let s = &v[1..];
        if is_const(s) {
            return BinaryTree::left_vine(n - 1);
        }
        return BinaryTree::join(&triv, &witness(s));
    }
    if v[n - 1] != x {
        // v = p t with t the last entry; p is non-constant with sum x + t.
        return BinaryTree::join(&witness(&v[..n - 1]), &triv);
    }
    // v = x m x with m = p s, p the x-run after the first entry plus the first other color.
    let first_other = v.iter().position(|&c| c != x).expect("non-constant");
    let left = &v[..=first_other];
    let right = &v[first_other + 1..];
    BinaryTree::join(&witness(left), &witness(right))
}

/// The class of a color vector, uniform over all trees it is valid for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VectorClass {
    PositiveRigid,
    NegativeRigid,
    Flexible,
    Unacceptable,
}

impl fmt::Display for VectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorClass::PositiveRigid => "positive-rigid",
            VectorClass::NegativeRigid => "negative-rigid",
            VectorClass::Flexible => "flexible",
            VectorClass::Unacceptable => "unacceptable",
        })
    }
}

/// Classifies by prefix sums after the even color permutation that makes the sum 1.
pub fn classify_vector(c: &ColorVector) -> Result<VectorClass> {
    if !is_acceptable(c)? {
        return Ok(VectorClass::Unacceptable);
    }
    // The 3-cycle k times; even permutations keep every sign.
    let total = c.sum();
    let shift = (4 - total) % 3;
    let rot = |x: Color| ((x - 1 + shift) % 3) + 1;
    let v: Vec<Color> = c.entries().iter().map(|&x| rot(x)).collect();
    debug_assert_eq!(sum(&v), 1);
    let mut prefix = 0;
    let (mut hit2, mut hit3) = (false, false);
    for &x in &v[..v.len() - 1] {
        prefix ^= x;
        hit2 |= prefix == 2;
        hit3 |= prefix == 3;
    }
    Ok(match (hit3, hit2) {
        (false, _) => VectorClass::PositiveRigid,
        (true, false) => VectorClass::NegativeRigid,
        (true, true) => VectorClass::Flexible,
    })
}

/// A sign rule on every vertex of the infinite binary tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `+` at even depth, `-` at odd depth.
    Rigid,
    /// `+` everywhere.
    Positive,
}

pub fn pattern_eval(p: Pattern, v: Address) -> bool {
    match p {
        Pattern::Rigid => v.len().is_multiple_of(2),
        Pattern::Positive => true,
    }
}

/// Leaf vector of the coloring with the pattern's signs and root color 1.
pub fn pattern_coloring(p: Pattern, t: &BinaryTree) -> ColorVector {
    let signs = SignAssignment {
        signs: t.internal().iter().map(|&a| (a, pattern_eval(p, a))).collect(),
    };
    vector_from_signs(t, &signs)
}

/// Both trees of the pair get the same leaf vector from the pattern.
pub fn is_pattern_compatible(pair: &TreePair, p: Pattern) -> bool {
    pattern_coloring(p, &pair.d) == pattern_coloring(p, &pair.r)
}
