//! Row insertion, jeu-de-taquin deletion and the delete-insert bijection
//! between `{1..n}^r` and pairs `(P, Q)` with `Q` a vacillating tableau.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    sequence_to_permutation, IntSequence, IntegerPartition, Permutation, StandardTableau,
};
use crate::error::{Error, Result};

/// A path `λ^(0), λ^(½), λ^(1), …, λ^(r)` in the Bratteli diagram: boxes are
/// alternately removed and added, starting from the one-row shape `(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VacillatingTableau {
    shapes: Vec<IntegerPartition>,
    n: usize,
}

impl VacillatingTableau {
    pub fn new(shapes: Vec<IntegerPartition>) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidVacillating(m));
        let Some(first) = shapes.first() else {
            return invalid("no shapes".into());
        };
        if shapes.len().is_multiple_of(2) {
            return invalid("expected an odd number of shapes".into());
        }
        let n = first.size();
        if first != &IntegerPartition::row(n) {
            return invalid(format!("starts at {first}, not a single row"));
        }
        for (idx, pair) in shapes.windows(2).enumerate() {
            let (prev, next) = (&pair[0], &pair[1]);
            let ok = if idx % 2 == 0 {
                prev.box_difference(next).is_some()
            } else {
                next.box_difference(prev).is_some()
            };
            if !ok {
                let verb = if idx % 2 == 0 { "remove" } else { "add" };
                return invalid(format!("step {} must {verb} one box: {prev} -> {next}", idx + 1));
            }
        }
        for (idx, shape) in shapes.iter().enumerate() {
            if shape.below_first_row() > idx / 2 {
                return invalid(format!("{shape} exceeds the bound at level {}", idx as f64 / 2.0));
            }
        }
        Ok(VacillatingTableau { shapes, n })
    }

    /// All shapes, indexed by twice the level.
    pub fn shapes(&self) -> &[IntegerPartition] {
        &self.shapes
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of full steps.
    pub fn r(&self) -> usize {
        self.shapes.len() / 2
    }

    pub fn last(&self) -> &IntegerPartition {
        self.shapes.last().expect("nonempty")
    }
}

impl fmt::Display for VacillatingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shapes.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Row-inserts `x`, returning the new tableau and the row of the added box.
fn insert_with_row(t: &StandardTableau, x: usize) -> Result<(StandardTableau, usize)> {
    if t.contains(x) {
        return Err(Error::LetterPresent(x));
    }
    let mut rows = t.rows().to_vec();
    let mut carry = x;
    for (i, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&v| v > carry) {
            Some(j) => carry = std::mem::replace(&mut row[j], carry),
            None => {
                row.push(carry);
                return Ok((StandardTableau::from_rows_unchecked(rows), i));
            }
        }
    }
    let i = rows.len();
    rows.push(vec![carry]);
    Ok((StandardTableau::from_rows_unchecked(rows), i))
}

/// Robinson-Schensted row insertion of a letter not already in `t`.
pub fn rsk_insert(t: &StandardTableau, x: usize) -> Result<StandardTableau> {
    insert_with_row(t, x).map(|(t, _)| t)
}

/// Removes `x` and slides the hole out to an outer corner: at each step the
/// smaller of the right and lower neighbours moves into the hole.
pub fn jdt_delete(t: &StandardTableau, x: usize) -> Result<StandardTableau> {
    let (mut i, mut j) = t.position(x).ok_or(Error::LetterAbsent(x))?;
    let mut rows = t.rows().to_vec();
    loop {
        let right = rows[i].get(j + 1).copied();
        let below = rows.get(i + 1).and_then(|r| r.get(j)).copied();
        let (ni, nj) = match (right, below) {
            (None, None) => break,
            (Some(_), None) => (i, j + 1),
            (None, Some(_)) => (i + 1, j),
            (Some(r), Some(b)) => {
                if r < b {
                    (i, j + 1)
                } else {
                    (i + 1, j)
                }
            }
        };
        rows[i][j] = rows[ni][nj];
        (i, j) = (ni, nj);
    }
    rows[i].pop();
    if rows[i].is_empty() {
        rows.pop();
    }
    Ok(StandardTableau::from_rows_unchecked(rows))
}

/// Reverse row insertion: removes the last box of `row` and bumps upwards,
/// returning the letter ejected from the first row.
fn uninsert(rows: &mut Vec<Vec<usize>>, row: usize) -> usize {
    let mut carry = rows[row].pop().expect("box to remove");
    if rows[row].is_empty() {
        rows.pop();
    }
    for i in (0..row).rev() {
        let j = rows[i]
            .iter()
            .rposition(|&v| v < carry)
            .expect("row above has a smaller entry");
        carry = std::mem::replace(&mut rows[i][j], carry);
    }
    carry
}

/// Reverse jeu-de-taquin: opens a hole at the end of `row`, moves the larger
/// of the left and upper neighbours into it while that neighbour exceeds `x`,
/// then places `x`.
fn unslide(rows: &mut Vec<Vec<usize>>, row: usize, x: usize) {
    if row == rows.len() {
        rows.push(Vec::new());
    }
    let (mut i, mut j) = (row, rows[row].len());
    rows[i].push(0);
    loop {
        let left = if j > 0 { Some(rows[i][j - 1]) } else { None };
        let up = if i > 0 { rows[i - 1].get(j).copied() } else { None };
        let from = match (left, up) {
            (Some(l), Some(u)) if l.max(u) > x => {
                if l > u {
                    (i, j - 1)
                } else {
                    (i - 1, j)
                }
            }
            (Some(l), None) if l > x => (i, j - 1),
            (None, Some(u)) if u > x => (i - 1, j),
            _ => break,
        };
        rows[i][j] = rows[from.0][from.1];
        (i, j) = from;
    }
    rows[i][j] = x;
}

/// One step of the delete-insert process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiStep {
    /// 1-based step index.
    pub step: usize,
    pub letter: usize,
    /// Tableau after the deletion (`P_{i-½}`).
    pub after_delete: StandardTableau,
    /// Tableau after the insertion (`P_i`).
    pub after_insert: StandardTableau,
    /// `w_a` for the prefix `a_1 … a_i`.
    pub permutation: Permutation,
    pub backsteps: Vec<usize>,
    pub descents: Vec<usize>,
}

/// Runs delete-insert on `a`, returning every intermediate step.
pub fn delete_insert_trace(a: &IntSequence) -> Result<Vec<DiStep>> {
    let n = a.n();
    let mut p = StandardTableau::single_row(n);
    let mut steps = Vec::with_capacity(a.len());
    for (i, &x) in a.entries().iter().enumerate() {
        let after_delete = jdt_delete(&p, x)?;
        let after_insert = rsk_insert(&after_delete, x)?;
        let prefix = IntSequence::new(a.entries()[..=i].to_vec(), n)?;
        let permutation = sequence_to_permutation(&prefix);
        steps.push(DiStep {
            step: i + 1,
            letter: x,
            backsteps: permutation.backsteps(),
            descents: after_insert.descent_set(),
            after_delete,
            after_insert: after_insert.clone(),
            permutation,
        });
        p = after_insert;
    }
    Ok(steps)
}

/// The delete-insert map `a ↦ (P_a, Q_a)`, starting from `P_0 = [1 2 ⋯ n]`.
pub fn delete_insert(a: &IntSequence) -> Result<(StandardTableau, VacillatingTableau)> {
    let n = a.n();
    let mut p = StandardTableau::single_row(n);
    let mut shapes = Vec::with_capacity(2 * a.len() + 1);
    shapes.push(p.shape());
    for &x in a.entries() {
        p = jdt_delete(&p, x)?;
        shapes.push(p.shape());
        p = rsk_insert(&p, x)?;
        shapes.push(p.shape());
    }
    Ok((p, VacillatingTableau { shapes, n }))
}

/// Inverts [`delete_insert`]: recovers `a` from `(P, Q)`.
pub fn delete_insert_inverse(p: &StandardTableau, q: &VacillatingTableau) -> Result<IntSequence> {
    let n = q.n();
    let p = StandardTableau::new(p.rows().to_vec())?;
    if p.size() != n || &p.shape() != q.last() {
        return Err(Error::ShapeMismatch {
            insertion: p.shape().into(),
            recording: q.last().clone().into(),
        });
    }
    let shapes = q.shapes();
    let mut rows = p.rows().to_vec();
    let mut letters = Vec::with_capacity(q.r());
    for i in (1..=q.r()).rev() {
        let (full, half, prev) = (&shapes[2 * i], &shapes[2 * i - 1], &shapes[2 * i - 2]);
        let added = full.box_difference(half).expect("validated path");
        let x = uninsert(&mut rows, added);
        let removed = prev.box_difference(half).expect("validated path");
        unslide(&mut rows, removed, x);
        letters.push(x);
    }
    letters.reverse();
    debug_assert_eq!(rows, StandardTableau::single_row(n).rows());
    IntSequence::new(letters, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::all_sequences;

    fn tab(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::on_letters(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn part(parts: &[usize]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(
            rsk_insert(&tab(&[&[1, 2, 4, 5, 6]]), 3).unwrap(),
            tab(&[&[1, 2, 3, 5, 6], &[4]])
        );
        assert_eq!(
            rsk_insert(&tab(&[&[1, 3], &[4, 5], &[6]]), 2).unwrap(),
            tab(&[&[1, 2], &[3, 5], &[4], &[6]])
        );
        assert_eq!(
            rsk_insert(&StandardTableau::single_row(4), 5).unwrap(),
            StandardTableau::single_row(5)
        );
        assert_eq!(
            rsk_insert(&StandardTableau::single_row(4), 2),
            Err(Error::LetterPresent(2))
        );
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(
            jdt_delete(&StandardTableau::single_row(6), 3).unwrap(),
            tab(&[&[1, 2, 4, 5, 6]])
        );
        assert_eq!(
            jdt_delete(&tab(&[&[1, 2, 3, 5, 6], &[4]]), 5).unwrap(),
            tab(&[&[1, 2, 3, 6], &[4]])
        );
        assert_eq!(
            jdt_delete(&StandardTableau::single_row(4), 4).unwrap(),
            StandardTableau::single_row(3)
        );
        assert_eq!(
            jdt_delete(&StandardTableau::single_row(4), 7),
            Err(Error::LetterAbsent(7))
        );
    }

    #[test]
    fn worked_example_trace() {
        let a = IntSequence::new(vec![3, 5, 2, 3, 2], 6).unwrap();
        let steps = delete_insert_trace(&a).unwrap();
        let halves = [
            tab(&[&[1, 2, 4, 5, 6]]),
            tab(&[&[1, 2, 3, 6], &[4]]),
            tab(&[&[1, 3, 5], &[4, 6]]),
            tab(&[&[1, 2, 5], &[4, 6]]),
            tab(&[&[1, 3], &[4, 5], &[6]]),
        ];
        let fulls = [
            tab(&[&[1, 2, 3, 5, 6], &[4]]),
            tab(&[&[1, 2, 3, 5], &[4, 6]]),
            tab(&[&[1, 2, 5], &[3, 6], &[4]]),
            tab(&[&[1, 2, 3], &[4, 5], &[6]]),
            tab(&[&[1, 2], &[3, 5], &[4], &[6]]),
        ];
        let perms: [&[usize]; 5] = [
            &[1, 2, 4, 5, 6, 3],
            &[1, 2, 4, 6, 3, 5],
            &[1, 4, 6, 3, 5, 2],
            &[1, 4, 6, 5, 2, 3],
            &[1, 4, 6, 5, 3, 2],
        ];
        let bs: [&[usize]; 5] = [&[3], &[3, 5], &[2, 3, 5], &[3, 5], &[2, 3, 5]];
        for (i, s) in steps.iter().enumerate() {
            assert_eq!(s.after_delete, halves[i], "half step {}", i + 1);
            assert_eq!(s.after_insert, fulls[i], "full step {}", i + 1);
            assert_eq!(s.permutation.one_line(), perms[i]);
            assert_eq!(s.backsteps, bs[i]);
            assert_eq!(s.descents, bs[i]);
        }
        let (p, q) = delete_insert(&a).unwrap();
        assert_eq!(p, fulls[4]);
        let expected: Vec<IntegerPartition> = [
            &[6][..],
            &[5],
            &[5, 1],
            &[4, 1],
            &[4, 2],
            &[3, 2],
            &[3, 2, 1],
            &[3, 2],
            &[3, 2, 1],
            &[2, 2, 1],
            &[2, 2, 1, 1],
        ]
        .iter()
        .map(|s| part(s))
        .collect();
        assert_eq!(q.shapes(), expected.as_slice());
        assert_eq!(delete_insert_inverse(&p, &q).unwrap(), a);
    }

    #[test]
    fn empty_sequence() {
        let a = IntSequence::new(vec![], 4).unwrap();
        let (p, q) = delete_insert(&a).unwrap();
        assert_eq!(p, StandardTableau::single_row(4));
        assert_eq!(q.shapes(), &[part(&[4])]);
        assert_eq!(delete_insert_inverse(&p, &q).unwrap(), a);
    }

    #[test]
    fn single_letter() {
        let a = IntSequence::new(vec![1], 2).unwrap();
        let (p, _) = delete_insert(&a).unwrap();
        assert_eq!(p, tab(&[&[1], &[2]]));
        let w = sequence_to_permutation(&a);
        assert_eq!(w.backsteps(), p.descent_set());
    }

    #[test]
    fn round_trip_small() {
        let mut seen = std::collections::HashSet::new();
        for a in all_sequences(3, 2) {
            let (p, q) = delete_insert(&a).unwrap();
            assert!(seen.insert((p.clone(), q.clone())));
            assert_eq!(delete_insert_inverse(&p, &q).unwrap(), a);
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn inverse_rejects_mismatched_shapes() {
        let a = IntSequence::new(vec![2], 3).unwrap();
        let (_, q) = delete_insert(&a).unwrap();
        let err = delete_insert_inverse(&StandardTableau::single_row(3), &q);
        assert!(matches!(err, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn vacillating_validation() {
        assert!(VacillatingTableau::new(vec![part(&[3]), part(&[2]), part(&[2, 1])]).is_ok());
        assert!(VacillatingTableau::new(vec![part(&[2, 1])]).is_err());
        assert!(VacillatingTableau::new(vec![part(&[3]), part(&[2])]).is_err());
        assert!(VacillatingTableau::new(vec![part(&[3]), part(&[3]), part(&[3])]).is_err());
    }
}
