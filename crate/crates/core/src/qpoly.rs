//! Exact polynomials in `q` with big-integer coefficients, q-integers,
//! q-factorials, the dimension polynomial `d_{n,r}(q)` and the maj generating
//! function `f^λ(q)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::bratteli::{BratteliDiagram, Level};
use crate::combinatorics::{
    sequence_to_permutation, standard_tableaux, stirling2, IntSequence, IntegerPartition,
};
use crate::error::{Error, Result};

/// Largest `n^r` accepted by [`imaj_generating_sum`].
pub const IMAJ_SUM_LIMIT: u128 = 6u128.pow(6);
/// Largest `|λ|` accepted by [`f_q`].
pub const F_Q_MAX_SIZE: usize = 12;

/// A polynomial in `q`; `coefficients[i]` multiplies `q^i`. No trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coefficients: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coefficients(vec![c.into()])
    }

    /// `q^d`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[d] = BigInt::one();
        QPolynomial { coefficients: c }
    }

    pub fn from_coefficients(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        QPolynomial { coefficients }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_coefficients(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|c| c * k).collect())
    }

    /// Exact division over the integers; `None` if the divisor is zero or
    /// does not divide `self` in `Z[q]`.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Option<QPolynomial> {
        let dd = divisor.degree()?;
        let lead = divisor.coefficients[dd].clone();
        let mut rem = self.coefficients.clone();
        if rem.len() <= dd {
            return self.is_zero().then(QPolynomial::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            if !(&rem[i + dd] % &lead).is_zero() {
                return None;
            }
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coefficients.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then(|| QPolynomial::from_coefficients(quot))
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        if self.coefficients.len() < rhs.coefficients.len() {
            self.coefficients.resize(rhs.coefficients.len(), BigInt::zero());
        }
        for (a, b) in self.coefficients.iter_mut().zip(&rhs.coefficients) {
            *a += b;
        }
        *self = Self::from_coefficients(std::mem::take(&mut self.coefficients));
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPolynomial::from_coefficients(c)
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for QPolynomial {
    fn product<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let show_coeff = d == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient array, lowest degree first; entries outside `i64` become strings.
impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// `[i] = 1 + q + ⋯ + q^{i−1}`; `[0] = 0`.
pub fn q_int(i: usize) -> QPolynomial {
    QPolynomial::from_coefficients(vec![BigInt::one(); i])
}

/// `[n]! = [n][n−1]⋯[1]`.
pub fn q_factorial(n: usize) -> QPolynomial {
    (1..=n).map(q_int).product()
}

/// `[n][n−1]⋯[n−ℓ+1]`; the empty product is 1.
pub fn falling_q_product(n: usize, l: usize) -> Result<QPolynomial> {
    if l > n {
        return Err(Error::OutOfRange {
            what: "l",
            value: l,
            expected: format!("0..={n}"),
        });
    }
    Ok((n - l + 1..=n).map(q_int).product())
}

/// `d_{n,r}(q) = Σ_{ℓ=1}^{n} S(r,ℓ)[n][n−1]⋯[n−ℓ+1]`, with `d_{n,0} = 1`.
pub fn d_poly(n: usize, r: usize) -> QPolynomial {
    if r == 0 {
        return QPolynomial::one();
    }
    (1..=n.min(r))
        .map(|l| {
            let s = BigInt::from(stirling2(r, l));
            falling_q_product(n, l).expect("l <= n").scale(&s)
        })
        .sum()
}

fn check_guard(guard: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::GuardExceeded {
            guard,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}

/// `Σ_{a ∈ {1..n}^r} q^{imaj(w_a)}` by enumeration.
pub fn imaj_generating_sum(n: usize, r: usize) -> Result<QPolynomial> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            expected: "n >= 1".into(),
        });
    }
    let total = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    check_guard("imaj_sum_sequences", total, IMAJ_SUM_LIMIT)?;
    let max_deg = n * (n - 1) / 2;
    let mut counts = vec![0u64; max_deg + 1];
    let mut entries = vec![1usize; r];
    loop {
        let a = IntSequence::new(entries.clone(), n)?;
        counts[sequence_to_permutation(&a).imaj()] += 1;
        // odometer increment
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(QPolynomial::from_coefficients(
                    counts.into_iter().map(BigInt::from).collect(),
                ));
            }
            i -= 1;
            if entries[i] < n {
                entries[i] += 1;
                break;
            }
            entries[i] = 1;
        }
    }
}

/// `f^λ(q) = Σ_T q^{maj(T)}` over standard tableaux of shape `λ`.
pub fn f_q(lambda: &IntegerPartition) -> Result<QPolynomial> {
    check_guard("f_q_size", lambda.size() as u128, F_Q_MAX_SIZE as u128)?;
    let n = lambda.size();
    let mut counts = vec![0u64; n * n.saturating_sub(1) / 2 + 1];
    for t in standard_tableaux(lambda) {
        counts[t.maj()] += 1;
    }
    Ok(QPolynomial::from_coefficients(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// The three computations of the dimension polynomial and whether they agree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CorollaryReport {
    pub n: usize,
    pub r: usize,
    pub closed_form: QPolynomial,
    pub imaj_sum: QPolynomial,
    pub tableau_sum: QPolynomial,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

/// `Σ_{λ ∈ Λ_n^r} f^λ(q) m_r^λ`.
pub fn tableau_multiplicity_sum(n: usize, r: usize) -> Result<QPolynomial> {
    let level = Level::full(r);
    let d = BratteliDiagram::new(n, level)?;
    let mut total = QPolynomial::zero();
    for (lambda, m) in d.vertices(level).iter().zip(d.multiplicities(level)) {
        total += &f_q(lambda)?.scale(&BigInt::from(m.clone()));
    }
    Ok(total)
}

/// Compares the closed form, the imaj enumeration and the tableau sum.
pub fn verify_corollary_sum(n: usize, r: usize) -> Result<CorollaryReport> {
    let closed_form = d_poly(n, r);
    let imaj_sum = imaj_generating_sum(n, r)?;
    let tableau_sum = tableau_multiplicity_sum(n, r)?;
    let mut mismatches = Vec::new();
    if imaj_sum != closed_form {
        mismatches.push(format!("imaj sum {imaj_sum} != closed form {closed_form}"));
    }
    if tableau_sum != closed_form {
        mismatches.push(format!("tableau sum {tableau_sum} != closed form {closed_form}"));
    }
    Ok(CorollaryReport {
        n,
        r,
        passed: mismatches.is_empty(),
        closed_form,
        imaj_sum,
        tableau_sum,
        mismatches,
    })
}

/// `Σ_{ℓ ≤ n} S(r, ℓ)`, the value of `d_{n,r}` at `q = 0`.
pub fn bounded_bell(r: usize, n: usize) -> BigUint {
    if r == 0 {
        return BigUint::one();
    }
    (1..=n.min(r)).map(|l| stirling2(r, l)).sum()
}
