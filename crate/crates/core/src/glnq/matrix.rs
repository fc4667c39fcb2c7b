//! Invertible matrices over `F_q`, the generators `x_{ij}(t)`, `s_i`,
//! `h_k(t)`, the coset representatives `w_k(a)` and the decomposition
//! `g = w_k(a) p` with `p` in the parabolic subgroup `P_n`.
//!
//! Generator indices are 1-based; [`GLMatrix::entry`] is 0-based.

use std::fmt;

use serde::Serialize;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// An invertible `n × n` matrix over a prime field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GLMatrix {
    n: usize,
    field: PrimeField,
    entries: Vec<u32>,
}

impl GLMatrix {
    /// Reduces `entries` (row-major) mod `q` and checks invertibility.
    pub fn new(n: usize, field: PrimeField, entries: &[i64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidGenerator(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        let m = GLMatrix {
            n,
            field,
            entries: entries.iter().map(|&x| field.reduce(x)).collect(),
        };
        if m.rank() < n {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub(crate) fn from_raw(n: usize, field: PrimeField, entries: Vec<u32>) -> Self {
        GLMatrix { n, field, entries }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        GLMatrix { n, field, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// 0-based entry.
    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    fn set(&mut self, row: usize, col: usize, v: u32) {
        self.entries[row * self.n + col] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<u32> {
        (0..self.n).map(|r| self.entry(r, col)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.field)
    }

    pub fn mul(&self, rhs: &GLMatrix) -> GLMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let n = self.n;
        let q = self.field.order() as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = ((out[idx] as u64 + a * rhs.entries[k * n + j] as u64) % q) as u32;
                }
            }
        }
        GLMatrix::from_raw(n, self.field, out)
    }

    fn rank(&self) -> usize {
        let (n, f) = (self.n, self.field);
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, p * n + j);
            }
            let inv = f.inv(m[rank * n + col]).expect("nonzero pivot");
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let factor = f.mul(m[r * n + col], inv);
                    for j in 0..n {
                        m[r * n + j] = f.sub(m[r * n + j], f.mul(factor, m[rank * n + j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> GLMatrix {
        let (n, f) = (self.n, self.field);
        let mut a = self.entries.clone();
        let mut b = Self::identity(n, f).entries;
        for col in 0..n {
            let p = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .expect("matrix is invertible");
            for j in 0..n {
                a.swap(col * n + j, p * n + j);
                b.swap(col * n + j, p * n + j);
            }
            let inv = f.inv(a[col * n + col]).expect("nonzero pivot");
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], inv);
                b[col * n + j] = f.mul(b[col * n + j], inv);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r != col && factor != 0 {
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                        b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                    }
                }
            }
        }
        GLMatrix::from_raw(n, f, b)
    }

    /// Membership in `P_n`: the first column is `(α, 0, …, 0)`.
    pub fn is_in_parabolic(&self) -> bool {
        (1..self.n).all(|r| self.entry(r, 0) == 0)
    }

    /// Membership in the unipotent radical `U_n`: identity outside the first row.
    pub fn is_in_unipotent_radical(&self) -> bool {
        let n = self.n;
        self.entry(0, 0) == 1
            && (1..n).all(|r| (0..n).all(|c| self.entry(r, c) == u32::from(r == c)))
    }
}

impl fmt::Display for GLMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|r| {
                let cells: Vec<String> = (0..self.n).map(|c| self.entry(r, c).to_string()).collect();
                format!("[{}]", cells.join(" "))
            })
            .collect();
        write!(f, "{}", rows.join(""))
    }
}

impl Serialize for GLMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<u32>> = (0..self.n).map(|r| self.entries[r * self.n..(r + 1) * self.n].to_vec()).collect();
        rows.serialize(s)
    }
}

fn check_index(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::InvalidGenerator(format!(
            "{what} = {value} outside {lo}..={hi}"
        )));
    }
    Ok(())
}

/// `x_{ij}(t)`: the identity with `t` at position `(i, j)`, `i < j`.
pub fn gen_x(n: usize, field: PrimeField, i: usize, j: usize, t: u32) -> Result<GLMatrix> {
    check_index("i", i, 1, n)?;
    check_index("j", j, 1, n)?;
    if i >= j {
        return Err(Error::InvalidGenerator(format!("x needs i < j, got i={i}, j={j}")));
    }
    let mut m = GLMatrix::identity(n, field);
    m.set(i - 1, j - 1, t % field.order());
    Ok(m)
}

/// The simple reflection `s_i` swapping coordinates `i` and `i + 1`.
pub fn gen_s(n: usize, field: PrimeField, i: usize) -> Result<GLMatrix> {
    check_index("i", i, 1, n.saturating_sub(1))?;
    let mut m = GLMatrix::identity(n, field);
    m.set(i - 1, i - 1, 0);
    m.set(i, i, 0);
    m.set(i - 1, i, 1);
    m.set(i, i - 1, 1);
    Ok(m)
}

/// `h_k(t)`: the identity with diagonal entry `k` replaced by `t ≠ 0`.
pub fn gen_h(n: usize, field: PrimeField, k: usize, t: u32) -> Result<GLMatrix> {
    check_index("k", k, 1, n)?;
    if t.is_multiple_of(field.order()) {
        return Err(Error::InvalidGenerator("h_k(t) needs t != 0".into()));
    }
    let mut m = GLMatrix::identity(n, field);
    m.set(k - 1, k - 1, t % field.order());
    Ok(m)
}

/// `w_k(a) = s_k(a_k) ⋯ s_1(a_1)` with `s_i(t) = x_{i,i+1}(t) s_i`; `w_0 = 1`.
pub fn wk_matrix(n: usize, field: PrimeField, k: usize, a: &[u32]) -> Result<GLMatrix> {
    if k >= n.max(1) {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            expected: format!("0..{n}"),
        });
    }
    if a.len() != k {
        return Err(Error::InvalidWord(format!("w_{k} needs {k} entries, got {}", a.len())));
    }
    let mut m = GLMatrix::identity(n, field);
    for i in (1..=k).rev() {
        m = m.mul(&gen_x(n, field, i, i + 1, a[i - 1])?).mul(&gen_s(n, field, i)?);
    }
    Ok(m)
}

/// Fast form of [`wk_matrix`]: first column `(a_1, …, a_k, 1, 0, …)`,
/// column `i` is `e_{i−1}` for `2 ≤ i ≤ k+1` and `e_i` beyond.
pub(crate) fn wk_matrix_direct(n: usize, field: PrimeField, k: usize, a: &[u32]) -> GLMatrix {
    let mut entries = vec![0u32; n * n];
    for (i, &ai) in a.iter().enumerate() {
        entries[i * n] = ai;
    }
    entries[k * n] = 1;
    for c in 1..=k {
        entries[(c - 1) * n + c] = 1;
    }
    for c in k + 1..n {
        entries[c * n + c] = 1;
    }
    GLMatrix::from_raw(n, field, entries)
}

/// The unique `(k, a, p)` with `g = w_k(a) p` and `p ∈ P_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub k: usize,
    pub a: Vec<u32>,
    pub p: GLMatrix,
}

pub fn coset_decompose(g: &GLMatrix) -> CosetDecomposition {
    let (n, f) = (g.n(), g.field());
    let c = g.column(0);
    let k = c.iter().rposition(|&x| x != 0).expect("invertible matrix has a nonzero first column");
    let lead = f.inv(c[k]).expect("nonzero");
    let a: Vec<u32> = c[..k].iter().map(|&x| f.mul(x, lead)).collect();
    let p = wk_matrix_direct(n, f, k, &a).inverse().mul(g);
    debug_assert!(p.is_in_parabolic());
    CosetDecomposition { k, a, p }
}

/// `|GL_n(F_q)| = Π_{i<n} (q^n − q^i)`, saturating.
pub fn group_order(n: usize, field: PrimeField) -> u128 {
    let q = field.order() as u128;
    let Some(qn) = q.checked_pow(n as u32) else {
        return u128::MAX;
    };
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(qn - q.pow(i as u32)))
}

/// Every element of `GL_n(F_q)`, in lexicographic order of row-major entries.
pub fn all_group_elements(n: usize, field: PrimeField, max_order: u128) -> Result<Vec<GLMatrix>> {
    let order = group_order(n, field);
    if order > max_order {
        return Err(Error::GuardExceeded {
            guard: "max_group_order",
            requested: order,
            limit: max_order,
        });
    }
    // grow row by row, keeping only linearly independent prefixes
    let q = field.order();
    let vectors: Vec<Vec<u32>> = (0..(q as u64).pow(n as u32))
        .map(|mut code| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (code % q as u64) as u32;
                code /= q as u64;
            }
            v
        })
        .collect();
    let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
    for row in 0..n {
        let mut next = Vec::new();
        for pre in &prefixes {
            for v in &vectors {
                let mut cand = pre.clone();
                cand.extend_from_slice(v);
                if independent_rows(&cand, row + 1, n, field) {
                    next.push(cand);
                }
            }
        }
        prefixes = next;
    }
    Ok(prefixes
        .into_iter()
        .map(|e| GLMatrix::from_raw(n, field, e))
        .collect())
}

fn independent_rows(entries: &[u32], rows: usize, cols: usize, f: PrimeField) -> bool {
    let mut m = entries.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(rank * cols + j, p * cols + j);
        }
        let inv = f.inv(m[rank * cols + col]).expect("nonzero pivot");
        for r in 0..rows {
            if r != rank && m[r * cols + col] != 0 {
                let factor = f.mul(m[r * cols + col], inv);
                for j in 0..cols {
                    m[r * cols + j] = f.sub(m[r * cols + j], f.mul(factor, m[rank * cols + j]));
                }
            }
        }
        rank += 1;
    }
    rank == rows
}

/// The `q^{n−1}` elements of `U_n`.
pub fn unipotent_radical(n: usize, field: PrimeField) -> Vec<GLMatrix> {
    let q = field.order() as u64;
    let count = q.pow(n.saturating_sub(1) as u32);
    (0..count)
        .map(|mut code| {
            let mut m = GLMatrix::identity(n, field);
            for c in (1..n).rev() {
                m.set(0, c, (code % q) as u32);
                code /= q;
            }
            m
        })
        .collect()
}
