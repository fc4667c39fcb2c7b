//! Partitions, tableaux, permutations and set partitions, together with the
//! statistics used throughout the crate (descents, backsteps, `inv`, `maj`,
//! `imaj`) and Stirling/Bell numbers.
//!
//! Every set-valued statistic is 1-based and returned as a sorted `Vec`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(IntegerPartition { parts })
    }

    pub fn empty() -> Self {
        IntegerPartition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            IntegerPartition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `λ_2 + λ_3 + ⋯`, the number of boxes below the first row.
    pub fn below_first_row(&self) -> usize {
        self.parts.iter().skip(1).sum()
    }

    /// Rows from which a box can be removed leaving a partition.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    /// Rows to which a box can be added leaving a partition (row `len()` opens a new row).
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .collect()
    }

    pub fn remove_box(&self, row: usize) -> Option<Self> {
        if row >= self.len() || self.part(row) <= self.part(row + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Some(IntegerPartition { parts })
    }

    pub fn add_box(&self, row: usize) -> Option<Self> {
        if row > self.len() || (row > 0 && self.part(row - 1) <= self.part(row)) {
            return None;
        }
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Some(IntegerPartition { parts })
    }

    /// Row index of the single box by which `self` exceeds `smaller`, if the
    /// two differ by exactly one box.
    pub fn box_difference(&self, smaller: &IntegerPartition) -> Option<usize> {
        if self.size() != smaller.size() + 1 {
            return None;
        }
        let mut row = None;
        for i in 0..self.len().max(smaller.len()) {
            let (a, b) = (self.part(i), smaller.part(i));
            if a == b {
                continue;
            }
            if a != b + 1 || row.is_some() {
                return None;
            }
            row = Some(i);
        }
        row
    }
}

impl TryFrom<Vec<usize>> for IntegerPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntegerPartition::new(parts)
    }
}

impl From<IntegerPartition> for Vec<usize> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order, e.g.
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(n: usize) -> Vec<IntegerPartition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(one_line));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// `Des(w) = { i : w_i > w_{i+1} }`.
    pub fn descents(&self) -> Vec<usize> {
        self.one_line
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `BS(w) = { i : i+1 appears to the left of i }`.
    pub fn backsteps(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &v) in self.one_line.iter().enumerate() {
            pos[v] = i;
        }
        (1..self.len()).filter(|&i| pos[i + 1] < pos[i]).collect()
    }

    pub fn inv(&self) -> usize {
        let w = &self.one_line;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    /// Sum of the backsteps; equals `maj(w⁻¹)`.
    pub fn imaj(&self) -> usize {
        self.backsteps().iter().sum()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.one_line.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation {
            one_line: cur.clone(),
        });
        // next permutation in lex order
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// The minimal-length coset representatives `D_{n,t}` of `S_n / S_t`: permutations
/// whose first `t` values increase. Lexicographic order.
pub fn coset_reps(n: usize, t: usize) -> Result<Vec<Permutation>> {
    if t > n {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            expected: format!("0..={n}"),
        });
    }
    let mut out = Vec::new();
    for head in combinations(n, t) {
        let rest: Vec<usize> = (1..=n).filter(|v| !head.contains(v)).collect();
        for tail in all_permutations(rest.len()) {
            let mut one_line = head.clone();
            one_line.extend(tail.one_line().iter().map(|&i| rest[i - 1]));
            out.push(Permutation { one_line });
        }
    }
    Ok(out)
}

/// `t`-subsets of `{1..n}` as increasing vectors, in lexicographic order.
fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < t - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, t, &mut Vec::new(), &mut out);
    out
}

/// A tableau with strictly increasing rows and columns.
///
/// The entry set is `{1..n}` for a standard tableau proper; intermediate
/// tableaux of the delete-insert process are standard on an arbitrary set of
/// distinct letters. [`StandardTableau::new`] enforces the strict form,
/// [`StandardTableau::on_letters`] the relaxed one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self::on_letters(rows)?;
        let n = t.size();
        let mut entries = t.entries();
        entries.sort_unstable();
        if entries != (1..=n).collect::<Vec<_>>() {
            return Err(Error::InvalidTableau(format!(
                "entries must be exactly 1..={n}"
            )));
        }
        Ok(t)
    }

    pub fn on_letters(rows: Vec<Vec<usize>>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidTableau(format!("row {} not increasing", i + 1)));
            }
            if i > 0 {
                let above = &rows[i - 1];
                if row.len() > above.len() {
                    return Err(Error::InvalidTableau("shape is not a partition".into()));
                }
                if row.iter().zip(above).any(|(b, a)| a >= b) {
                    return Err(Error::InvalidTableau(format!(
                        "column increase fails below row {i}"
                    )));
                }
            }
        }
        let mut entries: Vec<usize> = rows.iter().flatten().copied().collect();
        entries.sort_unstable();
        if entries.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTableau("repeated entry".into()));
        }
        Ok(StandardTableau { rows })
    }

    /// The single-row tableau `1 2 ⋯ n`.
    pub fn single_row(n: usize) -> Self {
        let rows = if n == 0 { vec![] } else { vec![(1..=n).collect()] };
        StandardTableau { rows }
    }

    /// Builds without validation; callers maintain the row/column invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        StandardTableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> IntegerPartition {
        IntegerPartition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn position(&self, x: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(i, row)| row.iter().position(|&v| v == x).map(|j| (i, j)))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position(x).is_some()
    }

    /// `Des(T) = { i : i+1 lies in a strictly lower row than i }`, over letters
    /// `i` with both `i` and `i+1` present.
    pub fn descent_set(&self) -> Vec<usize> {
        let mut row_of = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                row_of.insert(v, r);
            }
        }
        row_of
            .iter()
            .filter_map(|(&v, &r)| match row_of.get(&(v + 1)) {
                Some(&r2) if r2 > r => Some(v),
                _ => None,
            })
            .collect()
    }

    pub fn maj(&self) -> usize {
        self.descent_set().iter().sum()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(usize::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "{}", rows.join(""))
    }
}

/// Every standard tableau of shape `shape`, built by placing the largest
/// letter in each removable corner.
pub fn standard_tableaux(shape: &IntegerPartition) -> Vec<StandardTableau> {
    fn go(shape: &IntegerPartition) -> Vec<Vec<Vec<usize>>> {
        let n = shape.size();
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for row in shape.removable_rows() {
            let smaller = shape.remove_box(row).expect("removable row");
            for mut rows in go(&smaller) {
                if row == rows.len() {
                    rows.push(vec![n]);
                } else {
                    rows[row].push(n);
                }
                out.push(rows);
            }
        }
        out
    }
    go(shape)
        .into_iter()
        .map(StandardTableau::from_rows_unchecked)
        .collect()
}

/// A sequence `(a_1, …, a_r)` over the alphabet `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntSequence {
    entries: Vec<usize>,
    n: usize,
}

impl IntSequence {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&entry) = entries.iter().find(|&&a| a == 0 || a > n) {
            return Err(Error::EntryOutOfRange { entry, n });
        }
        Ok(IntSequence { entries, n })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// All of `{1..n}^r` in lexicographic order.
pub fn all_sequences(n: usize, r: usize) -> Vec<IntSequence> {
    let total = n.pow(r as u32);
    (0..total)
        .map(|mut code| {
            let mut entries = vec![0; r];
            for slot in entries.iter_mut().rev() {
                *slot = code % n + 1;
                code /= n;
            }
            IntSequence { entries, n }
        })
        .collect()
}

/// `w_a`: the rightmost occurrence of each letter in `(1, 2, …, n, a_1, …, a_r)`.
pub fn sequence_to_permutation(a: &IntSequence) -> Permutation {
    let n = a.n;
    let mut seen = vec![false; n + 1];
    let mut rev = Vec::with_capacity(n);
    for &v in a.entries.iter().rev().chain((1..=n).rev().collect::<Vec<_>>().iter()) {
        if !seen[v] {
            seen[v] = true;
            rev.push(v);
        }
    }
    rev.reverse();
    Permutation { one_line: rev }
}

/// A set partition of `{1, …, r}`. Blocks are sorted internally and ordered by
/// their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
    r: usize,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>, r: usize) -> Result<Self> {
        let mut seen = vec![false; r + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v == 0 || v > r || seen[v] {
                    return Err(Error::InvalidSetPartition(format!(
                        "element {v} repeated or outside 1..={r}"
                    )));
                }
                seen[v] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::InvalidSetPartition("blocks do not cover 1..=r".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { blocks, r })
    }

    /// Groups positions `1..=labels.len()` by equal label.
    pub fn from_labels<T: Ord + Clone>(labels: &[T]) -> Self {
        let mut groups: BTreeMap<T, Vec<usize>> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            groups.entry(l.clone()).or_default().push(i + 1);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition {
            blocks,
            r: labels.len(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground_size(&self) -> usize {
        self.r
    }

    /// Restricted growth string: position `i` gets the index of its block.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.r];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                labels[v - 1] = b;
            }
        }
        labels
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join("∪"))
    }
}

/// All set partitions of `{1..r}` with at most `max_blocks` blocks, via
/// restricted growth strings in lexicographic order.
pub fn set_partitions(r: usize, max_blocks: usize) -> Vec<SetPartition> {
    fn go(r: usize, max_blocks: usize, rgs: &mut Vec<usize>, used: usize, out: &mut Vec<SetPartition>) {
        if rgs.len() == r {
            out.push(SetPartition::from_labels(rgs));
            return;
        }
        for b in 0..=used.min(max_blocks.saturating_sub(1)) {
            if b == used && used >= max_blocks {
                break;
            }
            rgs.push(b);
            go(r, max_blocks, rgs, used.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        out.push(SetPartition { blocks: vec![], r: 0 });
        return out;
    }
    if max_blocks == 0 {
        return out;
    }
    go(r, max_blocks, &mut Vec::new(), 0, &mut out);
    out
}

/// `shape(a)`: positions `i ~ j` iff `a_i = a_j`.
pub fn shape_of_sequence(a: &IntSequence) -> SetPartition {
    SetPartition::from_labels(&a.entries)
}

/// Stirling number of the second kind `S(r, ℓ)`.
pub fn stirling2(r: usize, l: usize) -> BigUint {
    if l > r {
        return BigUint::zero();
    }
    // row[j] = S(i, j)
    let mut row = vec![BigUint::zero(); l + 1];
    row[0] = BigUint::one();
    for i in 1..=r {
        for j in (1..=l.min(i)).rev() {
            row[j] = &row[j - 1] + &row[j] * BigUint::from(j);
        }
        row[0] = BigUint::zero();
    }
    row[l].clone()
}

/// Bell number `B(r) = Σ_ℓ S(r, ℓ)`.
pub fn bell(r: usize) -> BigUint {
    (0..=r).map(|l| stirling2(r, l)).sum()
}
