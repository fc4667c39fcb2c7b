//! Permutation matrices of group elements on the canonical basis, half-step
//! bases and the commutant dimension.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::field::PrimeField;
use super::matrix::{all_group_elements, GLMatrix};
use super::word::{act_generator, act_group_element, canonicalize, CanonicalBasisVector, Generator, PureWord};
use crate::error::{Error, Result};
use crate::qpoly::d_poly;
use crate::qset::{enumerate_qsp_with_limit, QSetPartition};

/// Default bound on the module dimension.
pub const DEFAULT_MAX_DIM: u128 = 5_000;
/// Default bound on `|GL_n(F_q)|` for the Burnside count.
pub const DEFAULT_MAX_GROUP_ORDER: u128 = 25_000;

/// Dimension `d_{n,r}(q)` of the module.
pub fn module_dimension(n: usize, r: usize, q: u32) -> u128 {
    let d = d_poly(n, r).eval_i64(q as i64);
    u128::try_from(d).unwrap_or(u128::MAX)
}

/// The canonical basis `{v_K}` of the module for fixed `(n, r, q)`, with an
/// index for fast lookup.
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    n: usize,
    r: usize,
    field: PrimeField,
    vectors: Vec<CanonicalBasisVector>,
    words: Vec<PureWord>,
    index: HashMap<CanonicalBasisVector, usize>,
}

impl ModuleBasis {
    pub fn new(n: usize, r: usize, q: u32, max_dim: u128) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let dim = module_dimension(n, r, q);
        if dim > max_dim {
            return Err(Error::GuardExceeded {
                guard: "max_dim",
                requested: dim,
                limit: max_dim,
            });
        }
        let all = enumerate_qsp_with_limit(n, r, q, u128::MAX)?;
        Ok(Self::from_indices(n, r, field, all))
    }

    fn from_indices(n: usize, r: usize, field: PrimeField, all: Vec<QSetPartition>) -> Self {
        let vectors: Vec<CanonicalBasisVector> = all.into_iter().map(CanonicalBasisVector::from).collect();
        let words = vectors.iter().map(|v| v.to_word(field)).collect();
        let index = vectors.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        ModuleBasis {
            n,
            r,
            field,
            vectors,
            words,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[CanonicalBasisVector] {
        &self.vectors
    }

    pub fn words(&self) -> &[PureWord] {
        &self.words
    }

    pub fn position(&self, v: &CanonicalBasisVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    fn build(&self, image: impl Fn(&PureWord) -> Result<PureWord>) -> Result<RepMatrix> {
        let mut images = Vec::with_capacity(self.dim());
        let mut hit = vec![false; self.dim()];
        for (col, w) in self.words.iter().enumerate() {
            let v = canonicalize(&image(w)?);
            let row = self.position(&v).ok_or_else(|| {
                Error::NotPermutation(format!("image {v} of basis vector {} is not a basis vector", self.vectors[col]))
            })?;
            if std::mem::replace(&mut hit[row], true) {
                return Err(Error::NotPermutation(format!(
                    "basis vector {} is hit twice",
                    self.vectors[row]
                )));
            }
            images.push(row);
        }
        Ok(RepMatrix { images })
    }

    /// The permutation matrix of `g`, computed by coset decomposition.
    pub fn matrix(&self, g: &GLMatrix) -> Result<RepMatrix> {
        self.build(|w| act_group_element(g, w))
    }

    /// The permutation matrix of a generator, computed by column rewriting.
    pub fn generator_matrix(&self, g: Generator) -> Result<RepMatrix> {
        g.validate(self.n, self.field)?;
        self.build(|w| act_generator(g, w))
    }
}

/// A permutation matrix stored as `images[col] = row`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RepMatrix {
    images: Vec<usize>,
}

impl RepMatrix {
    pub fn identity(dim: usize) -> Self {
        RepMatrix {
            images: (0..dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self · rhs`: apply `rhs`, then `self`.
    pub fn compose(&self, rhs: &RepMatrix) -> RepMatrix {
        RepMatrix {
            images: rhs.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i == j).count()
    }

    /// `{dim, entries: [[row, col], …]}` with all values equal to 1.
    pub fn to_triplet_json(&self) -> Value {
        let entries: Vec<[usize; 2]> = self.images.iter().enumerate().map(|(c, &r)| [r, c]).collect();
        json!({ "dim": self.dim(), "entries": entries })
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let d = self.dim();
        let mut m = vec![vec![0u8; d]; d];
        for (c, &r) in self.images.iter().enumerate() {
            m[r][c] = 1;
        }
        m
    }
}

/// `rep_matrix(g)` on the basis of `(n, r, q)`.
pub fn rep_matrix(g: &GLMatrix, r: usize, max_dim: u128) -> Result<RepMatrix> {
    ModuleBasis::new(g.n(), r, g.field().order(), max_dim)?.matrix(g)
}

/// Basis of the half-step module: `v_K` with `K ∈ P_{n×(r+1)}(q)` and `k_1 = 0`.
pub fn half_level_basis(n: usize, r: usize, q: u32, max_dim: u128) -> Result<Vec<CanonicalBasisVector>> {
    let dim = module_dimension(n, r + 1, q);
    if dim > max_dim {
        return Err(Error::GuardExceeded {
            guard: "max_dim",
            requested: dim,
            limit: max_dim,
        });
    }
    PrimeField::new(q)?;
    Ok(enumerate_qsp_with_limit(n, r + 1, q, u128::MAX)?
        .into_iter()
        .filter(|k| k.heights().first() == Some(&0))
        .map(CanonicalBasisVector::from)
        .collect())
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
            components: size,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }
}

/// Number of orbits on ordered pairs of basis vectors under the group
/// generated by `gens`.
pub fn orbits_on_pairs(dim: usize, gens: &[RepMatrix]) -> usize {
    let mut uf = UnionFind::new(dim * dim);
    for g in gens {
        let im = g.images();
        for a in 0..dim {
            for b in 0..dim {
                uf.union(a * dim + b, im[a] * dim + im[b]);
            }
        }
    }
    uf.components
}

/// Both counts of `dim End_G(M)`; `burnside` is `None` when the group is
/// too large to enumerate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutantReport {
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub module_dim: usize,
    pub orbit_count: usize,
    pub burnside: Option<usize>,
}

impl CommutantReport {
    pub fn consistent(&self) -> bool {
        self.burnside.is_none_or(|b| b == self.orbit_count)
    }

    pub fn value(&self) -> usize {
        self.orbit_count
    }
}

/// Commutant dimension by union-find over generator images, cross-checked by
/// `(1/|G|) Σ_g fix(g)²` when `|G| ≤ max_group_order`.
pub fn commutant_dim(n: usize, r: usize, q: u32, max_dim: u128, max_group_order: u128) -> Result<CommutantReport> {
    let basis = ModuleBasis::new(n, r, q, max_dim)?;
    let dim = basis.dim();
    let gens = Generator::generating_set(n, basis.field())
        .into_iter()
        .map(|g| basis.generator_matrix(g))
        .collect::<Result<Vec<_>>>()?;
    let orbit_count = orbits_on_pairs(dim, &gens);
    let burnside = match all_group_elements(n, basis.field(), max_group_order) {
        Ok(group) => {
            let mut total: u128 = 0;
            for g in &group {
                let fix = basis.matrix(g)?.fixed_points() as u128;
                total += fix * fix;
            }
            let order = group.len() as u128;
            if !total.is_multiple_of(order) {
                return Err(Error::NotPermutation(format!(
                    "Burnside sum {total} is not divisible by |G| = {order}"
                )));
            }
            Some((total / order) as usize)
        }
        Err(Error::GuardExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CommutantReport {
        n,
        r,
        q,
        module_dim: dim,
        orbit_count,
        burnside,
    })
}
