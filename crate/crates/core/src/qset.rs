//! Box-stack tuples, the *-height map, n-restricted (q-)set partitions and the
//! tilde map used for the half-step basis.
//!
//! A column of height `k` with *-height `k*` carries free labels at heights
//! `k*+1, …, k`, stored bottom-up. Labels are integers `0..q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{set_partitions, SetPartition};
use crate::error::{Error, Result};
use crate::qpoly::{falling_q_product, QPolynomial};

/// Default bound on `n^r · q^{nr}` for [`enumerate_qsp`].
pub const QSP_ENUMERATION_LIMIT: u128 = 10_000_000;

/// A tuple `(k_1, …, k_r)` with `0 ≤ k_j ≤ n − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StackTuple {
    heights: Vec<usize>,
    n: usize,
}

impl StackTuple {
    pub fn new(heights: Vec<usize>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "n",
                value: 0,
                expected: "n >= 1".into(),
            });
        }
        if let Some(&h) = heights.iter().find(|&&h| h >= n) {
            return Err(Error::OutOfRange {
                what: "height",
                value: h,
                expected: format!("0..{n}"),
            });
        }
        Ok(StackTuple { heights, n })
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }
}

/// `k*_1 = 0`, `k*_j = min(k_j, max_{i<j} k*_i + 1)`.
pub fn star_heights(k: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(k.len());
    let mut ceiling = 0;
    for &h in k {
        let s = h.min(ceiling);
        out.push(s);
        ceiling = ceiling.max(s + 1);
    }
    out
}

pub fn star_height(k: &StackTuple) -> StackTuple {
    StackTuple {
        heights: star_heights(&k.heights),
        n: k.n,
    }
}

/// Membership in `P_{n×r}`: `k_1 = 0` and each height `h > 0` is preceded
/// by an occurrence of `h − 1`.
pub fn is_restricted(k: &StackTuple) -> bool {
    let mut max_seen: Option<usize> = None;
    for &h in &k.heights {
        match max_seen {
            None if h != 0 => return false,
            Some(m) if h > m + 1 => return false,
            _ => {}
        }
        max_seen = Some(max_seen.map_or(h, |m| m.max(h)));
    }
    true
}

/// Groups positions by equal height.
pub fn to_set_partition(k: &StackTuple) -> Result<SetPartition> {
    if !is_restricted(k) {
        return Err(Error::NotRestricted(k.heights.clone()));
    }
    Ok(SetPartition::from_labels(&k.heights))
}

/// Inverse of [`to_set_partition`]: block `i` (ordered by least element)
/// becomes height `i`.
pub fn from_set_partition(p: &SetPartition, n: usize) -> Result<StackTuple> {
    if p.num_blocks() > n {
        return Err(Error::OutOfRange {
            what: "blocks",
            value: p.num_blocks(),
            expected: format!("at most {n}"),
        });
    }
    StackTuple::new(p.block_labels(), n)
}

/// Every element of `P_{n×r}`, in lexicographic order.
pub fn restricted_tuples(n: usize, r: usize) -> Vec<StackTuple> {
    let mut out: Vec<StackTuple> = set_partitions(r, n)
        .iter()
        .map(|p| StackTuple {
            heights: p.block_labels(),
            n,
        })
        .collect();
    out.sort();
    out
}

/// An element of `P_{n×r}(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QSetPartition {
    heights: Vec<usize>,
    entries: Vec<Vec<u32>>,
    n: usize,
    q: u32,
}

impl QSetPartition {
    pub fn new(heights: Vec<usize>, entries: Vec<Vec<u32>>, n: usize, q: u32) -> Result<Self> {
        let k = StackTuple::new(heights, n)?;
        if q == 0 {
            return Err(Error::InvalidQSetPartition("q must be at least 1".into()));
        }
        if entries.len() != k.len() {
            return Err(Error::InvalidQSetPartition(format!(
                "{} entry columns for {} heights",
                entries.len(),
                k.len()
            )));
        }
        let star = star_heights(&k.heights);
        for (j, col) in entries.iter().enumerate() {
            let want = k.heights[j] - star[j];
            if col.len() != want {
                return Err(Error::InvalidQSetPartition(format!(
                    "column {} has {} entries, expected {want}",
                    j + 1,
                    col.len()
                )));
            }
            if let Some(v) = col.iter().find(|&&v| v >= q) {
                return Err(Error::InvalidQSetPartition(format!("label {v} not below q = {q}")));
            }
        }
        Ok(QSetPartition {
            heights: k.heights,
            entries,
            n,
            q,
        })
    }

    pub(crate) fn from_parts_unchecked(heights: Vec<usize>, entries: Vec<Vec<u32>>, n: usize, q: u32) -> Self {
        QSetPartition { heights, entries, n, q }
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Free labels per column, bottom-up from height `k* + 1`.
    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.heights.len()
    }

    pub fn star_heights(&self) -> Vec<usize> {
        star_heights(&self.heights)
    }

    /// Box picture: one column per stack, `*` for forced boxes and the label
    /// for free ones, bottom row at height 1.
    pub fn to_ascii(&self) -> String {
        let star = self.star_heights();
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(1);
        let top = self.heights.iter().copied().max().unwrap_or(0);
        let mut lines = Vec::new();
        for h in (1..=top).rev() {
            let cells: Vec<String> = (0..self.r())
                .map(|j| {
                    let cell = if h > self.heights[j] {
                        String::new()
                    } else if h <= star[j] {
                        "*".to_string()
                    } else {
                        self.entries[j][h - star[j] - 1].to_string()
                    };
                    format!("{cell:>width$}")
                })
                .collect();
            lines.push(format!("|{}|", cells.join("|")));
        }
        lines.push(format!("+{}+", vec!["-".repeat(width); self.r()].join("+")));
        lines.join("\n")
    }
}

impl fmt::Display for QSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .heights
            .iter()
            .zip(&self.entries)
            .map(|(k, e)| {
                let e: Vec<String> = e.iter().map(u32::to_string).collect();
                format!("({k};{})", e.join(","))
            })
            .collect();
        write!(f, "[{}]", cols.join(" "))
    }
}

fn enumeration_cost(n: usize, r: usize, q: u32) -> u128 {
    let base = (n as u128).checked_pow(r as u32);
    let labels = (q as u128).checked_pow((n * r) as u32);
    match (base, labels) {
        (Some(a), Some(b)) => a.saturating_mul(b),
        _ => u128::MAX,
    }
}

/// All of `P_{n×r}(q)`, heights in lexicographic order and labels
/// lexicographic within each height tuple.
pub fn enumerate_qsp(n: usize, r: usize, q: u32) -> Result<Vec<QSetPartition>> {
    enumerate_qsp_with_limit(n, r, q, QSP_ENUMERATION_LIMIT)
}

pub fn enumerate_qsp_with_limit(n: usize, r: usize, q: u32, limit: u128) -> Result<Vec<QSetPartition>> {
    if n == 0 || q == 0 {
        return Err(Error::OutOfRange {
            what: if n == 0 { "n" } else { "q" },
            value: 0,
            expected: ">= 1".into(),
        });
    }
    let cost = enumeration_cost(n, r, q);
    if cost > limit {
        return Err(Error::GuardExceeded {
            guard: "qsp_enumeration",
            requested: cost,
            limit,
        });
    }
    let mut out = Vec::new();
    let mut heights = vec![0usize; r];
    loop {
        let star = star_heights(&heights);
        let free: Vec<usize> = heights.iter().zip(&star).map(|(k, s)| k - s).collect();
        let total: usize = free.iter().sum();
        let mut labels = vec![0u32; total];
        loop {
            let mut it = labels.iter().copied();
            let entries = free.iter().map(|&f| it.by_ref().take(f).collect()).collect();
            out.push(QSetPartition {
                heights: heights.clone(),
                entries,
                n,
                q,
            });
            if !odometer(&mut labels, q as usize - 1) {
                break;
            }
        }
        if !odometer_usize(&mut heights, n - 1) {
            break;
        }
    }
    Ok(out)
}

fn odometer(v: &mut [u32], max: usize) -> bool {
    for x in v.iter_mut().rev() {
        if (*x as usize) < max {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

fn odometer_usize(v: &mut [usize], max: usize) -> bool {
    for x in v.iter_mut().rev() {
        if *x < max {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// `Σ_K [n][n−1]⋯[n−ℓ(K)+1]` over set partitions `K` of `{1..r}` with at
/// most `n` blocks.
pub fn count_qsp_symbolic(n: usize, r: usize) -> QPolynomial {
    set_partitions(r, n)
        .iter()
        .map(|p| falling_q_product(n, p.num_blocks()).expect("at most n blocks"))
        .sum()
}

/// A slot starred by [`tilde`]: 1-based column in the widened diagram and
/// the height of the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarredSlot {
    pub column: usize,
    pub height: usize,
}

/// The tilde map `P_{n×r}(q) → {K ∈ P_{n×(r+1)}(q) : k_1 = 0}`.
pub fn tilde(k: &QSetPartition) -> QSetPartition {
    tilde_with_record(k).0
}

/// [`tilde`], also reporting which boxes were starred.
pub fn tilde_with_record(k: &QSetPartition) -> (QSetPartition, Vec<StarredSlot>) {
    let mut heights = Vec::with_capacity(k.r() + 1);
    heights.push(0);
    heights.extend_from_slice(&k.heights);
    let mut entries = Vec::with_capacity(k.r() + 1);
    entries.push(Vec::new());
    entries.extend(k.entries.iter().cloned());
    let valid = |entries: &[Vec<u32>]| {
        star_heights(&heights)
            .iter()
            .zip(&heights)
            .zip(entries)
            .all(|((s, h), e)| e.len() == h - s)
    };
    let mut starred = Vec::new();
    let mut m = 0;
    while !valid(&entries) {
        m += 1;
        assert!(m < heights.len(), "tilde ran past the last column");
        if !entries[m].is_empty() {
            let height = heights[m] - entries[m].len() + 1;
            entries[m].remove(0);
            starred.push(StarredSlot {
                column: m + 1,
                height,
            });
        }
    }
    (
        QSetPartition::from_parts_unchecked(heights, entries, k.n, k.q),
        starred,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell;
    use crate::qpoly::d_poly;
    use num_bigint::BigInt;

    fn st(h: &[usize], n: usize) -> StackTuple {
        StackTuple::new(h.to_vec(), n).unwrap()
    }

    #[test]
    fn star_height_examples() {
        assert_eq!(star_heights(&[1, 4, 2, 0, 2, 5, 2]), vec![0, 1, 2, 0, 2, 3, 2]);
        assert_eq!(star_heights(&[1, 4, 0, 2, 2, 6, 3]), vec![0, 1, 0, 2, 2, 3, 3]);
        assert_eq!(star_heights(&[0, 0, 0]), vec![0, 0, 0]);
        assert_eq!(star_heights(&[4, 4]), vec![0, 1]);
        let k = st(&[1, 4, 2, 0, 2, 5, 2], 6);
        assert_eq!(star_height(&star_height(&k)), star_height(&k));
    }

    #[test]
    fn restricted_examples() {
        assert!(is_restricted(&st(&[0, 1, 2, 0, 2, 3, 2], 4)));
        assert!(!is_restricted(&st(&[1, 0], 2)));
        assert!(!is_restricted(&st(&[0, 2], 3)));
        assert!(is_restricted(&st(&[], 3)));
    }

    #[test]
    fn set_partition_bijection() {
        let k = st(&[0, 1, 2, 0, 2, 3, 2], 4);
        let p = to_set_partition(&k).unwrap();
        let expected = SetPartition::new(vec![vec![1, 4], vec![2], vec![3, 5, 7], vec![6]], 7).unwrap();
        assert_eq!(p, expected);
        assert_eq!(from_set_partition(&p, 4).unwrap(), k);
        assert_eq!(to_set_partition(&st(&[0, 0, 0], 2)).unwrap().num_blocks(), 1);
        assert!(to_set_partition(&st(&[0, 2], 3)).is_err());
        assert_eq!(restricted_tuples(3, 3).len(), 5);
        assert_eq!(BigInt::from(restricted_tuples(3, 3).len()), BigInt::from(bell(3)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_qsp(2, 2, 2).unwrap().len(), 6);
        assert_eq!(enumerate_qsp(3, 0, 2).unwrap().len(), 1);
        for n in 1..=3 {
            for r in 0..=3 {
                assert_eq!(enumerate_qsp(n, r, 1).unwrap().len(), n.pow(r as u32));
                for q in 2..=3u32 {
                    let all = enumerate_qsp(n, r, q).unwrap();
                    assert_eq!(BigInt::from(all.len()), d_poly(n, r).eval_i64(q as i64));
                    for k in &all {
                        assert_eq!(QSetPartition::new(k.heights.clone(), k.entries.clone(), n, q).as_ref(), Ok(k));
                    }
                }
            }
        }
        assert!(matches!(
            enumerate_qsp(6, 6, 5),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn symbolic_counts() {
        assert_eq!(count_qsp_symbolic(4, 0), QPolynomial::one());
        assert_eq!(count_qsp_symbolic(4, 1), crate::qpoly::q_int(4));
        assert_eq!(count_qsp_symbolic(3, 3), d_poly(3, 3));
    }

    #[test]
    fn tilde_examples() {
        let zeros = QSetPartition::new(vec![0, 0], vec![vec![], vec![]], 3, 2).unwrap();
        let t = tilde(&zeros);
        assert_eq!(t.heights(), &[0, 0, 0]);

        let single = QSetPartition::new(vec![1], vec![vec![1]], 2, 2).unwrap();
        let (t, starred) = tilde_with_record(&single);
        assert_eq!(t.heights(), &[0, 1]);
        assert_eq!(t.entries(), &[Vec::<u32>::new(), vec![]]);
        assert_eq!(starred, vec![StarredSlot { column: 2, height: 1 }]);
    }

    #[test]
    fn tilde_worked_example() {
        // labels 1..=9 stand for a1,a2,b1,b2,b3,c1,e1,e2,e3
        let k = QSetPartition::new(
            vec![2, 4, 0, 3, 2, 6, 2],
            vec![vec![1, 2], vec![3, 4, 5], vec![], vec![6], vec![], vec![7, 8, 9], vec![]],
            7,
            10,
        )
        .unwrap();
        let (t, starred) = tilde_with_record(&k);
        assert_eq!(t.heights(), &[0, 2, 4, 0, 3, 2, 6, 2]);
        assert_eq!(
            t.entries(),
            &[vec![], vec![2], vec![4, 5], vec![], vec![], vec![], vec![8, 9], vec![]]
        );
        let cols: Vec<usize> = starred.iter().map(|s| s.column).collect();
        assert_eq!(cols, vec![2, 3, 5, 7]);
        assert!(QSetPartition::new(t.heights().to_vec(), t.entries().to_vec(), 7, 10).is_ok());
    }

    #[test]
    fn ascii_picture() {
        let k = QSetPartition::new(vec![0, 2, 1], vec![vec![], vec![1], vec![]], 3, 2).unwrap();
        assert_eq!(k.to_ascii(), "| |1| |\n| |*|*|\n+-+-+-+");
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(QSetPartition::new(vec![1], vec![vec![]], 2, 2).is_err());
        assert!(QSetPartition::new(vec![1], vec![vec![2]], 2, 2).is_err());
        assert!(QSetPartition::new(vec![2], vec![vec![0, 0]], 2, 2).is_err());
    }
}
