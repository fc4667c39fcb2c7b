//! Pure words `w_{k_1}(a^(1)) ⊗_U ⋯ ⊗_U w_{k_r}(a^(r)) ⊗ 1`, their reduction
//! to the canonical basis, and the two group actions on them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::field::PrimeField;
use super::matrix::{coset_decompose, gen_h, gen_s, gen_x, wk_matrix_direct, GLMatrix};
use crate::error::{Error, Result};
use crate::qset::{star_heights, QSetPartition};

/// A column `(k, a)` with `a = (a_1, …, a_k)`; `a_i` sits at height `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Column {
    pub k: usize,
    pub a: Vec<u32>,
}

/// An elementary tensor of coset representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PureWord {
    n: usize,
    #[serde(skip)]
    field: PrimeField,
    columns: Vec<Column>,
}

impl PureWord {
    pub fn new(n: usize, field: PrimeField, columns: Vec<Column>) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if c.k >= n {
                return Err(Error::InvalidWord(format!("column {} has height {} >= n = {n}", j + 1, c.k)));
            }
            if c.a.len() != c.k {
                return Err(Error::InvalidWord(format!(
                    "column {} has {} entries for height {}",
                    j + 1,
                    c.a.len(),
                    c.k
                )));
            }
            if c.a.iter().any(|&x| x >= field.order()) {
                return Err(Error::InvalidWord(format!("column {} has an entry outside F_q", j + 1)));
            }
        }
        Ok(PureWord { n, field, columns })
    }

    pub fn empty(n: usize, field: PrimeField) -> Self {
        PureWord {
            n,
            field,
            columns: Vec::new(),
        }
    }

    /// The zero-filled word of a q-set partition: forced slots become 0.
    pub fn from_qsp(k: &QSetPartition, field: PrimeField) -> Result<Self> {
        if k.q() != field.order() {
            return Err(Error::InvalidWord(format!(
                "labels over {} used with F_{}",
                k.q(),
                field.order()
            )));
        }
        let star = k.star_heights();
        let columns = k
            .heights()
            .iter()
            .zip(&star)
            .zip(k.entries())
            .map(|((&h, &s), e)| {
                let mut a = vec![0; s];
                a.extend_from_slice(e);
                Column { k: h, a }
            })
            .collect();
        Ok(PureWord {
            n: k.n(),
            field,
            columns,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn heights(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.k).collect()
    }

    /// The word with `col` prepended.
    pub fn prepend(&self, col: Column) -> Result<Self> {
        let mut columns = Vec::with_capacity(self.len() + 1);
        columns.push(col);
        columns.extend(self.columns.iter().cloned());
        PureWord::new(self.n, self.field, columns)
    }

    pub fn tail(&self) -> PureWord {
        PureWord {
            n: self.n,
            field: self.field,
            columns: self.columns.get(1..).unwrap_or(&[]).to_vec(),
        }
    }
}

impl fmt::Display for PureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                let a: Vec<String> = c.a.iter().map(u32::to_string).collect();
                format!("w{}({})", c.k, a.join(","))
            })
            .collect();
        write!(f, "{}", cols.join(" ⊗ "))
    }
}

/// A basis vector `v_K`, identified by its q-set partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalBasisVector(QSetPartition);

impl CanonicalBasisVector {
    pub fn index(&self) -> &QSetPartition {
        &self.0
    }

    pub fn into_index(self) -> QSetPartition {
        self.0
    }

    pub fn to_word(&self, field: PrimeField) -> PureWord {
        PureWord::from_qsp(&self.0, field).expect("basis vector over its own field")
    }
}

impl From<QSetPartition> for CanonicalBasisVector {
    fn from(k: QSetPartition) -> Self {
        CanonicalBasisVector(k)
    }
}

impl fmt::Display for CanonicalBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Drops every entry at a height `≤ k*_j`; what remains indexes `v_K`.
pub fn canonicalize(w: &PureWord) -> CanonicalBasisVector {
    let star = star_heights(&w.heights());
    let heights = w.heights();
    let entries = w
        .columns
        .iter()
        .zip(&star)
        .map(|(c, &s)| c.a[s..].to_vec())
        .collect();
    CanonicalBasisVector(QSetPartition::new(heights, entries, w.n, w.field.order()).expect("valid by construction"))
}

/// The generators `x_{ij}(t)`, `s_i` and `h_k(t)` of `GL_n(F_q)`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    X { i: usize, j: usize, t: u32 },
    S { i: usize },
    H { k: usize, t: u32 },
}

impl Generator {
    pub fn to_matrix(self, n: usize, field: PrimeField) -> Result<GLMatrix> {
        match self {
            Generator::X { i, j, t } => gen_x(n, field, i, j, t),
            Generator::S { i } => gen_s(n, field, i),
            Generator::H { k, t } => gen_h(n, field, k, t),
        }
    }

    /// Checks indices against `n` and values against `F_q`.
    pub fn validate(self, n: usize, field: PrimeField) -> Result<()> {
        self.to_matrix(n, field).map(|_| ())
    }

    fn is_trivial(self) -> bool {
        matches!(self, Generator::X { t: 0, .. } | Generator::H { t: 1, .. })
    }

    /// `s_i` for all `i`, `x_{i,i+1}(t)` and `h_k(t)` for all `t ≠ 0`.
    pub fn generating_set(n: usize, field: PrimeField) -> Vec<Generator> {
        let mut out: Vec<Generator> = (1..n).map(|i| Generator::S { i }).collect();
        for i in 1..n {
            out.extend(field.units().map(|t| Generator::X { i, j: i + 1, t }));
        }
        for k in 1..=n {
            out.extend(field.units().map(|t| Generator::H { k, t }));
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X { i, j, t } => write!(f, "x:{i},{j},{t}"),
            Generator::S { i } => write!(f, "s{i}"),
            Generator::H { k, t } => write!(f, "h:{k},{t}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// `s<i>`, `x:i,j,t` or `h:k,t`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGenerator(format!("cannot parse {s:?}; expected s<i>, x:i,j,t or h:k,t"));
        let nums = |body: &str| -> Result<Vec<usize>> {
            body.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
        };
        let s = s.trim();
        if let Some(body) = s.strip_prefix("x:") {
            match nums(body)?.as_slice() {
                &[i, j, t] => Ok(Generator::X { i, j, t: t as u32 }),
                _ => Err(bad()),
            }
        } else if let Some(body) = s.strip_prefix("h:") {
            match nums(body)?.as_slice() {
                &[k, t] => Ok(Generator::H { k, t: t as u32 }),
                _ => Err(bad()),
            }
        } else if let Some(body) = s.strip_prefix('s') {
            let i = body.strip_prefix(':').unwrap_or(body);
            Ok(Generator::S { i: i.parse().map_err(|_| bad())? })
        } else {
            Err(bad())
        }
    }
}

/// `g · w_k(a) = w_{k'}(a') · R` for a single generator `g`, where `R` is the
/// returned residual word (leftmost factor first). The residual agrees with
/// the exact parabolic factor up to right multiplication by `U_n`.
pub fn generator_on_column(g: Generator, col: &Column, field: PrimeField) -> (Column, Vec<Generator>) {
    let f = field;
    let k = col.k;
    let a = &col.a;
    let same = || col.clone();
    match g {
        Generator::S { i } => {
            if i > k + 1 {
                (same(), vec![g])
            } else if i == k + 1 {
                let mut a2 = a.clone();
                a2.push(0);
                (Column { k: k + 1, a: a2 }, vec![])
            } else if i == k {
                let ak = a[k - 1];
                if ak == 0 {
                    (
                        Column {
                            k: k - 1,
                            a: a[..k - 1].to_vec(),
                        },
                        vec![],
                    )
                } else {
                    let inv = f.inv(ak).expect("nonzero");
                    let mut a2: Vec<u32> = a[..k - 1].iter().map(|&x| f.mul(x, inv)).collect();
                    a2.push(inv);
                    let mut res = vec![Generator::H { k: 1, t: ak }];
                    res.extend((1..k).map(|m| Generator::X {
                        i: m + 1,
                        j: k + 1,
                        t: a[m - 1],
                    }));
                    res.push(Generator::H {
                        k: k + 1,
                        t: f.neg(inv),
                    });
                    (Column { k, a: a2 }, res)
                }
            } else {
                let mut a2 = a.clone();
                a2.swap(i - 1, i);
                (Column { k, a: a2 }, vec![Generator::S { i: i + 1 }])
            }
        }
        Generator::H { k: j, t: b } => {
            if j > k + 1 {
                (same(), vec![g])
            } else if j == k + 1 {
                let inv = f.inv(b).expect("h needs a unit");
                let a2 = a.iter().map(|&x| f.mul(x, inv)).collect();
                (Column { k, a: a2 }, vec![Generator::H { k: 1, t: b }])
            } else {
                let mut a2 = a.clone();
                a2[j - 1] = f.mul(b, a2[j - 1]);
                (Column { k, a: a2 }, vec![Generator::H { k: j + 1, t: b }])
            }
        }
        Generator::X { i, j, t: b } => {
            if i > k + 1 {
                (same(), vec![g])
            } else if i == k + 1 && i != 1 {
                let res = (1..=k)
                    .rev()
                    .map(|m| Generator::X {
                        i: m + 1,
                        j,
                        t: f.neg(f.mul(a[m - 1], b)),
                    })
                    .collect();
                (same(), res)
            } else if i == k + 1 {
                (same(), vec![])
            } else if j > k + 1 {
                (same(), vec![Generator::X { i: i + 1, j, t: b }])
            } else if j == k + 1 {
                let mut a2 = a.clone();
                a2[i - 1] = f.add(a2[i - 1], b);
                (Column { k, a: a2 }, vec![])
            } else {
                let mut a2 = a.clone();
                a2[i - 1] = f.add(a2[i - 1], f.mul(b, a[j - 1]));
                (
                    Column { k, a: a2 },
                    vec![Generator::X {
                        i: i + 1,
                        j: j + 1,
                        t: b,
                    }],
                )
            }
        }
    }
}

/// Acts by a single generator using the column rewriting rules; residual
/// factors pass to the right and are discarded after the last column.
pub fn act_generator(g: Generator, w: &PureWord) -> Result<PureWord> {
    g.validate(w.n, w.field)?;
    act_generator_word(&[g], w)
}

/// Acts by the product `g_1 g_2 ⋯ g_m` (leftmost first).
pub fn act_generator_word(gens: &[Generator], w: &PureWord) -> Result<PureWord> {
    for g in gens {
        g.validate(w.n, w.field)?;
    }
    let mut pending: Vec<Generator> = gens.iter().copied().filter(|g| !g.is_trivial()).collect();
    let mut columns = Vec::with_capacity(w.len());
    for col in &w.columns {
        let mut col = col.clone();
        let mut residual: Vec<Generator> = Vec::new();
        for &g in pending.iter().rev() {
            let (next, r) = generator_on_column(g, &col, w.field);
            col = next;
            let mut joined: Vec<Generator> = r.into_iter().filter(|g| !g.is_trivial()).collect();
            joined.extend(residual);
            residual = joined;
        }
        columns.push(col);
        pending = residual;
    }
    Ok(PureWord {
        n: w.n,
        field: w.field,
        columns,
    })
}

/// Acts by a matrix: `g w_k(a) = w_{k'}(a') p`, then `p` acts on the tail.
pub fn act_group_element(g: &GLMatrix, w: &PureWord) -> Result<PureWord> {
    if g.n() != w.n || g.field() != w.field {
        return Err(Error::InvalidWord(format!(
            "matrix over F_{} of size {} cannot act on a word for n = {}, q = {}",
            g.field().order(),
            g.n(),
            w.n,
            w.field.order()
        )));
    }
    let mut current = g.clone();
    let mut columns = Vec::with_capacity(w.len());
    for col in &w.columns {
        let m = current.mul(&wk_matrix_direct(w.n, w.field, col.k, &col.a));
        let d = coset_decompose(&m);
        columns.push(Column { k: d.k, a: d.a });
        current = d.p;
    }
    Ok(PureWord {
        n: w.n,
        field: w.field,
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glnq::matrix::wk_matrix;

    fn f(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn word(n: usize, q: u32, cols: &[&[u32]]) -> PureWord {
        let columns = cols
            .iter()
            .map(|a| Column {
                k: a.len(),
                a: a.to_vec(),
            })
            .collect();
        PureWord::new(n, f(q), columns).unwrap()
    }

    #[test]
    fn generator_parsing() {
        assert_eq!("s1".parse::<Generator>().unwrap(), Generator::S { i: 1 });
        assert_eq!("x:1,3,2".parse::<Generator>().unwrap(), Generator::X { i: 1, j: 3, t: 2 });
        assert_eq!("h:2,1".parse::<Generator>().unwrap(), Generator::H { k: 2, t: 1 });
        assert!("y1".parse::<Generator>().is_err());
        assert!("x:1,2".parse::<Generator>().is_err());
        for g in ["s3", "x:1,3,2", "h:2,1"] {
            assert_eq!(g.parse::<Generator>().unwrap().to_string(), g);
        }
    }

    #[test]
    fn canonical_examples() {
        let w = word(3, 2, &[&[], &[], &[]]);
        assert_eq!(canonicalize(&w).to_word(f(2)), w);
        // a single column keeps its entry: the star height is 0
        let w = word(2, 3, &[&[2]]);
        assert_eq!(canonicalize(&w).to_word(f(3)), w);
        // the second column of heights (0, 1) is forced
        let w = word(2, 3, &[&[], &[2]]);
        assert_eq!(canonicalize(&w).to_word(f(3)), word(2, 3, &[&[], &[0]]));
    }

    #[test]
    fn canonical_worked_example() {
        // heights (1,4,0,2,2,6,3): star heights (0,1,0,2,2,3,3)
        let w = word(
            7,
            7,
            &[&[1], &[1, 2, 3, 4], &[], &[1, 2], &[3, 4], &[1, 2, 3, 4, 5, 6], &[4, 5, 6]],
        );
        let c = canonicalize(&w);
        let expected: Vec<Vec<u32>> = vec![vec![1], vec![2, 3, 4], vec![], vec![], vec![], vec![4, 5, 6], vec![]];
        assert_eq!(c.index().entries(), expected.as_slice());
    }

    #[test]
    fn table_cases_from_generator_list() {
        let fq = f(5);
        // x_{1j}(b) on a height-0 first column
        let w = word(3, 5, &[&[], &[3]]);
        assert_eq!(act_generator(Generator::X { i: 1, j: 3, t: 2 }, &w).unwrap(), w);
        // h_j(b) with j > k+1 leaves the column alone
        let col = Column { k: 1, a: vec![4] };
        let (c, r) = generator_on_column(Generator::H { k: 3, t: 2 }, &col, fq);
        assert_eq!((c, r), (col.clone(), vec![Generator::H { k: 3, t: 2 }]));
        // s_{k+1}
        let (c, r) = generator_on_column(Generator::S { i: 2 }, &col, fq);
        assert_eq!(c, Column { k: 2, a: vec![4, 0] });
        assert!(r.is_empty());
    }

    /// Every rewriting rule holds as a matrix identity modulo `U_n` on the right.
    #[test]
    fn rules_match_matrices() {
        for q in [2u32, 3, 5] {
            let fq = f(q);
            for n in 2..=4 {
                let mut gens = Generator::generating_set(n, fq);
                for i in 1..n {
                    for j in i + 1..=n {
                        gens.extend(fq.elements().map(|t| Generator::X { i, j, t }));
                    }
                }
                for k in 0..n {
                    let count = (q as u64).pow(k as u32);
                    for code in 0..count {
                        let mut c = code;
                        let a: Vec<u32> = (0..k)
                            .map(|_| {
                                let v = (c % q as u64) as u32;
                                c /= q as u64;
                                v
                            })
                            .collect();
                        let col = Column { k, a: a.clone() };
                        for &g in &gens {
                            let (new, res) = generator_on_column(g, &col, fq);
                            let lhs = g.to_matrix(n, fq).unwrap().mul(&wk_matrix(n, fq, k, &a).unwrap());
                            let w_new = wk_matrix(n, fq, new.k, &new.a).unwrap();
                            let p = w_new.inverse().mul(&lhs);
                            let r = res.iter().fold(GLMatrix::identity(n, fq), |acc, h| {
                                acc.mul(&h.to_matrix(n, fq).unwrap())
                            });
                            assert!(
                                r.inverse().mul(&p).is_in_unipotent_radical(),
                                "q={q} n={n} g={g} col={col:?} -> {new:?} residual {res:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let w = word(3, 3, &[&[2], &[1, 2], &[]]);
        assert_eq!(act_group_element(&GLMatrix::identity(3, f(3)), &w).unwrap(), w);
        assert_eq!(act_generator(Generator::X { i: 1, j: 2, t: 0 }, &w).unwrap(), w);
    }
}
