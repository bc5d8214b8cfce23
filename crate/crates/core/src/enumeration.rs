//! Counting: linear recurrences, acceptable and rigid vector counts, the
//! search for the largest coloring counts among prime pairs, and zero-set
//! extremes. Every closed count has a brute-force counterpart here.

use rayon::prelude::*;
use serde::Serialize;

use crate::assoc::Skeleton;
use crate::coloring::{classify_vector, is_acceptable, signs_of_vector, ColorVector, VectorClass};
use crate::error::{Error, Result};
use crate::maps::{is_biwheel, pair_to_dual};
use crate::thompson::TreePair;
use crate::tree::{ShadowInterval, MAX_MASK_LEAVES};

/// `t(0) = a`, `t(1) = b`, `t(n+1) = p t(n) + q t(n-1) + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceSpec {
    pub p: i128,
    pub q: i128,
    pub k: i128,
    pub a: i128,
    pub b: i128,
}

impl RecurrenceSpec {
    pub const fn new(p: i128, q: i128, k: i128, a: i128, b: i128) -> Self {
        RecurrenceSpec { p, q, k, a, b }
    }

    pub const JACOBSTHAL: RecurrenceSpec = RecurrenceSpec::new(1, 2, 0, 0, 1);
    pub const ACCEPTABLE: RecurrenceSpec = RecurrenceSpec::new(2, 3, 1, 0, 1);
    pub const RIGID: RecurrenceSpec = RecurrenceSpec::new(1, 2, 1, 0, 1);

    /// The same recurrence with `k = b`, whose terms are the partial sums
    /// of this one when `k = a = 0`.
    pub fn partial_sums(self) -> RecurrenceSpec {
        RecurrenceSpec { k: self.b, ..self }
    }
}

/// The `n`-th term with checked arithmetic.
pub fn recurrence(spec: RecurrenceSpec, n: usize) -> Result<i128> {
    let (mut prev, mut cur) = (spec.a, spec.b);
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = spec
            .p
            .checked_mul(cur)
            .and_then(|x| spec.q.checked_mul(prev).and_then(|y| x.checked_add(y)))
            .and_then(|x| x.checked_add(spec.k))
            .ok_or(Error::Overflow)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `J(n)`, by the recurrence; agrees with `(2^n - (-1)^n) / 3`.
pub fn jacobsthal(n: usize) -> Result<i128> {
    recurrence(RecurrenceSpec::JACOBSTHAL, n)
}

/// `J(n)` from its closed form.
pub fn jacobsthal_closed(n: usize) -> Result<i128> {
    let pow = 1i128.checked_shl(n as u32).filter(|_| n < 126).ok_or(Error::Overflow)?;
    Ok((pow - if n.is_multiple_of(2) { 1 } else { -1 }) / 3)
}

/// Acceptable vectors with `n + 1` entries, up to permuting colors.
pub fn count_acceptable(n: usize) -> Result<i128> {
    recurrence(RecurrenceSpec::ACCEPTABLE, n)
}

/// Rigid acceptable vectors with `n + 1` entries, up to permuting colors.
pub fn count_rigid(n: usize) -> Result<i128> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "rigid count", n: 0 });
    }
    recurrence(RecurrenceSpec::RIGID, n)
}

/// Flexible acceptable vectors, `c(n) - r(n)`.
pub fn count_flexible(n: usize) -> Result<i128> {
    count_acceptable(n)?.checked_sub(count_rigid(n)?).ok_or(Error::Overflow)
}

/// Vectors of length `len` over {1,2,3} whose first entry is 1 and whose
/// first entry other than 1 is 2, in lexicographic order. Every
/// non-constant vector has exactly one such representative up to
/// permuting colors.
pub fn normalized_vectors(len: usize) -> Vec<ColorVector> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, cur: &mut Vec<u8>, seen_two: bool, out: &mut Vec<ColorVector>) {
        if cur.len() == len {
            if seen_two {
                out.push(ColorVector::new(cur.clone()));
            }
            return;
        }
        let choices: &[u8] = if cur.is_empty() {
            &[1]
        } else if seen_two {
            &[1, 2, 3]
        } else {
            &[1, 2]
        };
        for &x in choices {
            cur.push(x);
            go(len, cur, seen_two || x == 2, out);
            cur.pop();
        }
    }
    go(len, &mut cur, false, &mut out);
    out
}

fn check_mask_bound(carets: usize) -> Result<()> {
    if carets + 1 > MAX_MASK_LEAVES {
        return Err(Error::BoundExceeded {
            n: carets,
            bound: MAX_MASK_LEAVES - 1,
        });
    }
    Ok(())
}

/// Brute force: normalized vectors with `n + 1` entries valid for some tree
/// in a full scan of the skeleton.
pub fn brute_count_acceptable(n: usize) -> Result<u64> {
    check_mask_bound(n)?;
    let sk = Skeleton::new(n);
    Ok(normalized_vectors(n + 1)
        .par_iter()
        .filter(|c| {
            let z = c.zero_interval_mask();
            sk.masks.iter().any(|m| m & z == 0)
        })
        .count() as u64)
}

/// Brute force: normalized vectors valid for some scanned tree on which
/// the induced signs alternate.
pub fn brute_count_rigid(n: usize) -> Result<u64> {
    check_mask_bound(n)?;
    let sk = Skeleton::new(n);
    Ok(normalized_vectors(n + 1)
        .par_iter()
        .filter(|c| {
            let z = c.zero_interval_mask();
            sk.masks.iter().position(|m| m & z == 0).is_some_and(|i| {
                signs_of_vector(&sk.trees[i], c)
                    .expect("valid vector")
                    .is_alternating()
            })
        })
        .count() as u64)
}

/// Counts by class from the prefix-sum classifier.
pub fn classified_counts(n: usize) -> Result<(u64, u64)> {
    let mut acceptable = 0;
    let mut rigid = 0;
    for c in normalized_vectors(n + 1) {
        match classify_vector(&c)? {
            VectorClass::Unacceptable => {}
            VectorClass::Flexible => acceptable += 1,
            VectorClass::PositiveRigid | VectorClass::NegativeRigid => {
                acceptable += 1;
                rigid += 1;
            }
        }
    }
    Ok((acceptable, rigid))
}

/// Largest vertex count the exhaustive search accepts by default.
pub const DEFAULT_MAX_SEARCH_VERTICES: usize = 10;
/// Largest vertex count the search accepts at all.
pub const SLOW_MAX_SEARCH_VERTICES: usize = 11;

/// One rank in the table of coloring counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountEntry {
    /// 1 for the largest count.
    pub rank: usize,
    /// Normalized colorings, i.e. counted up to permuting colors.
    pub count: u64,
    /// The first pair attaining the count in canonical order.
    pub witness: TreePair,
    /// How many pairs attain the count.
    pub witnesses: u64,
}

/// Distinct coloring counts of prime pairs whose dual has `n` vertices,
/// in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub pairs: u64,
    pub entries: Vec<CountEntry>,
}

impl CountReport {
    /// The `i`-th largest count, 1-based.
    pub fn m(&self, i: usize) -> Option<u64> {
        self.entries.get(i.checked_sub(1)?).map(|e| e.count)
    }
}

/// Exhaustive search over prime pairs with `n - 2` carets, so that the dual
/// triangulation has `n` vertices. Counts are accumulated per vector: each
/// normalized vector adds one to every pair of trees it is valid for.
pub fn max_coloring_search(n: usize, bound: usize) -> Result<CountReport> {
    let bound = bound.min(SLOW_MAX_SEARCH_VERTICES);
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if n < 4 {
        return Err(Error::OutOfRange { what: "search vertex count", n: n as i64 });
    }
    let carets = n - 2;
    let sk = Skeleton::new(carets);
    let nt = sk.trees.len();
    let root = ShadowInterval::new(1, carets + 1).mask_bit();

    // Valid tree sets per vector, and the vectors valid for each tree.
    let sets: Vec<Vec<u32>> = normalized_vectors(carets + 1)
        .par_iter()
        .map(|c| {
            let z = c.zero_interval_mask();
            (0..nt as u32).filter(|&i| sk.masks[i as usize] & z == 0).collect()
        })
        .filter(|s: &Vec<u32>| !s.is_empty())
        .collect();
    let mut by_tree: Vec<Vec<u32>> = vec![Vec::new(); nt];
    for (k, s) in sets.iter().enumerate() {
        for &i in s {
            by_tree[i as usize].push(k as u32);
        }
    }

    // Per row: (count, first witness column, multiplicity) for each count.
    let rows: Vec<Vec<(u64, usize, u64)>> = (0..nt)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u32; nt];
            for &k in &by_tree[i] {
                for &j in &sets[k as usize] {
                    row[j as usize] += 1;
                }
            }
            let mut tally: Vec<(u64, usize, u64)> = Vec::new();
            for (j, &cnt) in row.iter().enumerate() {
                if sk.masks[i] & sk.masks[j] != root {
                    continue;
                }
                match tally.iter_mut().find(|t| t.0 == cnt as u64) {
                    Some(t) => t.2 += 1,
                    None => tally.push((cnt as u64, j, 1)),
                }
            }
            tally
        })
        .collect();

    let mut merged: Vec<(u64, (usize, usize), u64)> = Vec::new();
    let mut pairs = 0;
    for (i, tally) in rows.iter().enumerate() {
        for &(cnt, j, mult) in tally {
            pairs += mult;
            match merged.iter_mut().find(|m| m.0 == cnt) {
                // Rows are visited in order, so the first hit is the
                // canonical witness.
                Some(m) => m.2 += mult,
                None => merged.push((cnt, (i, j), mult)),
            }
        }
    }
    merged.sort_by_key(|e| std::cmp::Reverse(e.0));
    let entries = merged
        .into_iter()
        .enumerate()
        .map(|(r, (count, (i, j), witnesses))| CountEntry {
            rank: r + 1,
            count,
            witness: TreePair {
                d: sk.trees[i].clone(),
                r: sk.trees[j].clone(),
            },
            witnesses,
        })
        .collect();
    Ok(CountReport { n, pairs, entries })
}

/// The predicted `m_i(n)` for `i` in 1..=4 and `n >= 7` (`n >= 5` for `i = 1`).
/// The third row is taken as `m_1(n - 1)`, whose parity offsets are `(0, 1)`.
pub fn predicted_m(i: usize, n: usize) -> Result<i128> {
    let even = n.is_multiple_of(2);
    let pick = |e: i128, o: i128| if even { e } else { o };
    let out = |min: usize| Error::OutOfRange { what: "predicted count", n: n.min(min) as i64 };
    match i {
        1 if n >= 5 => Ok(jacobsthal(n - 3)? + pick(1, 0)),
        2 if n >= 7 => Ok(jacobsthal(n - 4)? + pick(7, 5)),
        3 if n >= 7 => Ok(jacobsthal(n - 4)? + pick(0, 1)),
        4 if n >= 7 => Ok(jacobsthal(n - 4)? - pick(1, 2)),
        1..=4 => Err(out(n)),
        _ => Err(Error::OutOfRange { what: "rank", n: i as i64 }),
    }
}

/// Whether the witness of the top rank has a biwheel as its dual.
pub fn top_witness_is_biwheel(report: &CountReport) -> bool {
    report
        .entries
        .first()
        .and_then(|e| pair_to_dual(&e.witness).ok())
        .is_some_and(|t| is_biwheel(&t.graph))
}

/// Largest and smallest zero-set size over acceptable vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroSetExtremes {
    pub n: usize,
    pub max: usize,
    pub min: usize,
    pub max_witness: ColorVector,
    pub min_witness: ColorVector,
}

/// Largest `n` for [`zero_set_extremes`].
pub const MAX_ZERO_SET_CARETS: usize = 12;

/// Exhaustive extremes of the number of zero intervals over acceptable
/// vectors with `n + 1` entries. Witnesses are the first in normalized order.
pub fn zero_set_extremes(n: usize) -> Result<ZeroSetExtremes> {
    if n > MAX_ZERO_SET_CARETS {
        return Err(Error::BoundExceeded {
            n,
            bound: MAX_ZERO_SET_CARETS,
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange { what: "zero set carets", n: 0 });
    }
    let sizes: Vec<(usize, ColorVector)> = normalized_vectors(n + 1)
        .into_par_iter()
        .filter(|c| is_acceptable(c).unwrap_or(false))
        .map(|c| (c.zero_intervals().len(), c))
        .collect();
    let (max, max_witness) = sizes.iter().max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1))).cloned().expect("nonempty");
    let (min, min_witness) = sizes.iter().min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1))).cloned().expect("nonempty");
    Ok(ZeroSetExtremes {
        n,
        max,
        min,
        max_witness,
        min_witness,
    })
}

/// `1^m 2 1^k`.
pub fn ones_two_ones(m: usize, k: usize) -> ColorVector {
    let mut v = vec![1; m];
    v.push(2);
    v.extend(std::iter::repeat_n(1, k));
    ColorVector::new(v)
}
