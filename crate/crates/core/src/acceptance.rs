//! The acceptance criteria as runnable checks, grouped into suites.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bratteli::{level_set, BratteliDiagram, Level};
use crate::combinatorics::{
    all_permutations, all_sequences, bell, coset_reps, IntSequence, IntegerPartition, SetPartition, StandardTableau,
};
use crate::error::{Error, Result};
use crate::glnq::{
    commutant_dim, gen_x, half_level_basis, Column, GLMatrix, Generator, ModuleBasis, PrimeField,
    DEFAULT_MAX_DIM, DEFAULT_MAX_GROUP_ORDER,
};
use crate::glnq::canonicalize;
use crate::qpoly::{d_poly, falling_q_product, q_factorial, q_int, verify_corollary_sum, QPolynomial};
use crate::qset::{count_qsp_symbolic, enumerate_qsp, star_heights, tilde};
use crate::schensted::{delete_insert, delete_insert_inverse, delete_insert_trace};

/// A group of criteria that can be run on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Identities,
    Basis,
    Commutant,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9],
            Suite::Identities => &[1, 2, 3, 4, 5, 6],
            Suite::Basis => &[7, 8],
            Suite::Commutant => &[9],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "identities" => Ok(Suite::Identities),
            "basis" => Ok(Suite::Basis),
            "commutant" => Ok(Suite::Commutant),
            _ => Err(Error::OutOfRange {
                what: "suite",
                value: 0,
                expected: "all, identities, basis or commutant".into(),
            }),
        }
    }
}

/// Run parameters. Cases with `n > max_n` are skipped and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Config {
    pub max_n: Option<usize>,
    pub max_dim: u128,
    pub max_group_order: u128,
    pub seed: u64,
    /// Random pairs per configuration for the homomorphism check.
    pub random_pairs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: None,
            max_dim: DEFAULT_MAX_DIM,
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            seed: 0x5eed,
            random_pairs: 200,
        }
    }
}

impl Config {
    fn allows(&self, n: usize) -> bool {
        self.max_n.is_none_or(|m| n <= m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}. {}: {}", self.status, self.id, self.name, self.detail)
    }
}

/// Collects check outcomes for one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    skipped: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self, id: u8, name: &'static str) -> CriterionResult {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if self.checks == 0 {
            Status::Skip
        } else {
            Status::Pass
        };
        let mut detail = format!("{} checks", self.checks);
        if self.skipped > 0 {
            detail.push_str(&format!(", skipped by max-n: {}", self.skipped));
        }
        if !self.notes.is_empty() {
            detail.push_str(&format!("; {}", self.notes.join("; ")));
        }
        if !self.failures.is_empty() {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            detail.push_str(&format!("; {} failed, first: {}", self.failures.len(), shown.join(" | ")));
        }
        CriterionResult {
            id,
            name,
            status,
            detail,
        }
    }
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "dimension polynomial three ways",
        2 => "specializations at q = 1 and q = 0",
        3 => "Bratteli diagram of level sets for n = 6",
        4 => "delete-insert bijection",
        5 => "equidistribution of imaj and inv",
        6 => "q-set partition counts",
        7 => "module basis sizes",
        8 => "representation correctness",
        9 => "commutant dimension",
        _ => "unknown",
    }
}

/// Runs one criterion. Guard violations are returned as errors; any other
/// error is reported as a failure of the criterion.
pub fn run_criterion(id: u8, config: &Config) -> Result<CriterionResult> {
    let mut tally = Tally::default();
    let outcome = match id {
        1 => dimension_three_ways(config, &mut tally),
        2 => specializations(config, &mut tally),
        3 => bratteli_b6(config, &mut tally),
        4 => di_bijection(config, &mut tally),
        5 => equidistribution(config, &mut tally),
        6 => qsp_counts(config, &mut tally),
        7 => basis_sizes(config, &mut tally),
        8 => representation(config, &mut tally),
        9 => commutant(config, &mut tally),
        _ => {
            return Err(Error::OutOfRange {
                what: "criterion",
                value: id as usize,
                expected: "1..=9".into(),
            })
        }
    };
    match outcome {
        Ok(()) => {}
        Err(e @ Error::GuardExceeded { .. }) => return Err(e),
        Err(e) => tally.failures.push(format!("error: {e}")),
    }
    Ok(tally.finish(id, criterion_name(id)))
}

pub fn run_suite(suite: Suite, config: &Config) -> Result<Vec<CriterionResult>> {
    suite.criteria().iter().map(|&id| run_criterion(id, config)).collect()
}

fn big(x: u128) -> BigInt {
    BigInt::from(x)
}

fn dimension_three_ways(config: &Config, t: &mut Tally) -> Result<()> {
    for n in 1..=5 {
        for r in 0..=4 {
            if !config.allows(n) {
                t.skip();
                continue;
            }
            let report = verify_corollary_sum(n, r)?;
            t.check(report.passed, || format!("(n,r)=({n},{r}): {}", report.mismatches.join(", ")));
        }
    }
    Ok(())
}

fn specializations(config: &Config, t: &mut Tally) -> Result<()> {
    for n in 1..=8 {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        for r in 0..=6 {
            let d = d_poly(n, r);
            let at1 = d.eval_i64(1);
            t.check(at1 == big((n as u128).pow(r as u32)), || format!("d_{{{n},{r}}}(1) = {at1}"));
            if r <= n {
                let at0 = d.eval_i64(0);
                t.check(at0 == BigInt::from(bell(r)), || format!("d_{{{n},{r}}}(0) = {at0}"));
            }
        }
    }
    Ok(())
}

type LabelledLevel = (Level, Vec<(&'static [usize], u32)>);

/// Level sets and labels of the diagram for `n = 6`, levels 0 to 3.
fn b6_table() -> Vec<LabelledLevel> {
    vec![
        (Level::full(0), vec![(&[6], 1)]),
        (Level::half(0), vec![(&[5], 1)]),
        (Level::full(1), vec![(&[6], 1), (&[5, 1], 1)]),
        (Level::half(1), vec![(&[5], 2), (&[4, 1], 1)]),
        (Level::full(2), vec![(&[6], 2), (&[5, 1], 3), (&[4, 2], 1), (&[4, 1, 1], 1)]),
        (Level::half(2), vec![(&[5], 5), (&[4, 1], 5), (&[3, 2], 1), (&[3, 1, 1], 1)]),
        (
            Level::full(3),
            vec![
                (&[6], 5),
                (&[5, 1], 10),
                (&[4, 2], 6),
                (&[4, 1, 1], 6),
                (&[3, 3], 1),
                (&[3, 2, 1], 2),
                (&[3, 1, 1, 1], 1),
            ],
        ),
    ]
}

fn bratteli_b6(config: &Config, t: &mut Tally) -> Result<()> {
    if !config.allows(6) {
        t.skip();
        return Ok(());
    }
    let diagram = BratteliDiagram::new(6, Level::full(3))?;
    let mut labels = 0;
    for (level, expected) in b6_table() {
        let shapes: Vec<IntegerPartition> = expected
            .iter()
            .map(|(p, _)| IntegerPartition::new(p.to_vec()))
            .collect::<Result<_>>()?;
        let got = diagram.vertices(level);
        t.check(got == shapes.as_slice(), || format!("level {level}: vertices {got:?}"));
        t.check(level_set(6, level) == shapes, || format!("level {level}: level_set differs"));
        for (shape, (_, m)) in shapes.iter().zip(&expected) {
            labels += 1;
            let got = diagram.multiplicity(level, shape)?;
            t.check(got == BigUint::from(*m), || format!("level {level}, {shape}: label {got}, expected {m}"));
        }
    }
    t.note(format!("{labels} labels"));
    let squares: BigUint = diagram.multiplicities(Level::full(3)).iter().map(|m| m * m).sum();
    t.check(squares == BigUint::from(203u32) && squares == bell(6), || {
        format!("sum of squared labels at level 3 is {squares}")
    });
    Ok(())
}

fn tab(rows: &[&[usize]]) -> Result<StandardTableau> {
    StandardTableau::on_letters(rows.iter().map(|r| r.to_vec()).collect())
}

fn di_bijection(config: &Config, t: &mut Tally) -> Result<()> {
    for (n, r) in [(4, 4), (3, 5)] {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        let mut images = HashSet::new();
        let mut ok = true;
        let mut bs_ok = true;
        for a in all_sequences(n, r) {
            let (p, q) = delete_insert(&a)?;
            ok &= delete_insert_inverse(&p, &q)? == a;
            ok &= images.insert((p, q));
            for step in delete_insert_trace(&a)? {
                bs_ok &= step.backsteps == step.descents && step.permutation.backsteps() == step.after_insert.descent_set();
            }
        }
        t.check(ok, || format!("round trip or injectivity fails on {{1..{n}}}^{r}"));
        t.check(bs_ok, || format!("BS(w_a) != Des(P_a) somewhere on {{1..{n}}}^{r}"));
        t.check(images.len() == n.pow(r as u32), || format!("{} images on {{1..{n}}}^{r}", images.len()));
    }
    if !config.allows(6) {
        t.skip();
        return Ok(());
    }
    let a = IntSequence::new(vec![3, 5, 2, 3, 2], 6)?;
    let halves = [
        tab(&[&[1, 2, 4, 5, 6]])?,
        tab(&[&[1, 2, 3, 6], &[4]])?,
        tab(&[&[1, 3, 5], &[4, 6]])?,
        tab(&[&[1, 2, 5], &[4, 6]])?,
        tab(&[&[1, 3], &[4, 5], &[6]])?,
    ];
    let fulls = [
        tab(&[&[1, 2, 3, 5, 6], &[4]])?,
        tab(&[&[1, 2, 3, 5], &[4, 6]])?,
        tab(&[&[1, 2, 5], &[3, 6], &[4]])?,
        tab(&[&[1, 2, 3], &[4, 5], &[6]])?,
        tab(&[&[1, 2], &[3, 5], &[4], &[6]])?,
    ];
    let perms: [&[usize]; 5] = [
        &[1, 2, 4, 5, 6, 3],
        &[1, 2, 4, 6, 3, 5],
        &[1, 4, 6, 3, 5, 2],
        &[1, 4, 6, 5, 2, 3],
        &[1, 4, 6, 5, 3, 2],
    ];
    let bs: [&[usize]; 5] = [&[3], &[3, 5], &[2, 3, 5], &[3, 5], &[2, 3, 5]];
    let steps = delete_insert_trace(&a)?;
    t.check(steps.len() == 5, || format!("{} steps in the worked example", steps.len()));
    for (i, s) in steps.iter().enumerate() {
        t.check(s.after_delete == halves[i], || format!("worked example P_{}.5 = {}", i, s.after_delete));
        t.check(s.after_insert == fulls[i], || format!("worked example P_{} = {}", i + 1, s.after_insert));
        t.check(s.permutation.one_line() == perms[i], || format!("worked example w_a at step {}", i + 1));
        t.check(s.backsteps == bs[i] && s.descents == bs[i], || format!("worked example BS/Des at step {}", i + 1));
    }
    Ok(())
}

fn generating_function(values: impl Iterator<Item = usize>) -> QPolynomial {
    let mut counts: Vec<u64> = Vec::new();
    for v in values {
        if counts.len() <= v {
            counts.resize(v + 1, 0);
        }
        counts[v] += 1;
    }
    QPolynomial::from_coefficients(counts.into_iter().map(BigInt::from).collect())
}

fn equidistribution(config: &Config, t: &mut Tally) -> Result<()> {
    for n in 0..=6 {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        for s in 0..=n {
            let reps = coset_reps(n, s)?;
            let imaj = generating_function(reps.iter().map(|w| w.imaj()));
            let inv = generating_function(reps.iter().map(|w| w.inv()));
            let expected = q_factorial(n).div_exact(&q_factorial(s));
            t.check(expected.as_ref() == Some(&imaj) && imaj == inv, || {
                format!("D_{{{n},{s}}}: imaj {imaj}, inv {inv}")
            });
        }
    }
    for n in 0..=7 {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        let inv = generating_function(all_permutations(n).iter().map(|w| w.inv()));
        t.check(inv == q_factorial(n), || format!("S_{n}: inv {inv}"));
    }
    Ok(())
}

fn qsp_counts(config: &Config, t: &mut Tally) -> Result<()> {
    for n in 1..=3 {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        for r in 0..=3 {
            for q in [2u32, 3] {
                let all = enumerate_qsp(n, r, q)?;
                let d = d_poly(n, r).eval_i64(q as i64);
                t.check(big(all.len() as u128) == d, || format!("|P_{{{n}x{r}}}({q})| = {}, d = {d}", all.len()));
                let distinct: HashSet<_> = all.iter().collect();
                t.check(distinct.len() == all.len(), || format!("duplicates in P_{{{n}x{r}}}({q})"));
                let mut by_shape: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
                for k in &all {
                    *by_shape.entry(star_heights(k.heights())).or_default() += 1;
                }
                let shapes = crate::combinatorics::set_partitions(r, n);
                t.check(by_shape.len() == shapes.len(), || {
                    format!("{} shapes in P_{{{n}x{r}}}({q}), expected {}", by_shape.len(), shapes.len())
                });
                for (star, count) in by_shape {
                    let blocks = SetPartition::from_labels(&star).num_blocks();
                    let expected = falling_q_product(n, blocks)?.eval_i64(q as i64);
                    t.check(big(count as u128) == expected, || {
                        format!("shape {star:?} at (n,r,q)=({n},{r},{q}): {count}, expected {expected}")
                    });
                }
            }
        }
    }
    for n in 1..=6 {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        for r in 0..=5 {
            let sym = count_qsp_symbolic(n, r);
            t.check(sym == d_poly(n, r), || format!("symbolic count ({n},{r}) = {sym}"));
        }
    }
    Ok(())
}

const BASIS_CASES: [(usize, usize, u32); 6] = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 2, 2), (4, 2, 2)];

fn basis_sizes(config: &Config, t: &mut Tally) -> Result<()> {
    for (n, r, q) in BASIS_CASES {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        let basis = ModuleBasis::new(n, r, q, config.max_dim)?;
        let d = d_poly(n, r).eval_i64(q as i64);
        t.check(big(basis.dim() as u128) == d, || format!("({n},{r},{q}): {} basis vectors, d = {d}", basis.dim()));
        let distinct: HashSet<_> = basis.vectors().iter().collect();
        t.check(distinct.len() == basis.dim(), || format!("({n},{r},{q}): repeated basis vectors"));
        let half = half_level_basis(n, r, q, config.max_dim)?;
        let lhs = big(half.len() as u128) * q_int(n).eval_i64(q as i64);
        let rhs = d_poly(n, r + 1).eval_i64(q as i64);
        t.check(lhs == rhs, || format!("({n},{r},{q}): half-level {} * [n] = {lhs}, d = {rhs}", half.len()));
    }
    if !config.allows(3) {
        t.skip();
        return Ok(());
    }
    let basis = ModuleBasis::new(3, 2, 2, config.max_dim)?;
    for (v, w) in basis.vectors().iter().zip(basis.words()) {
        let widened = canonicalize(&w.prepend(Column { k: 0, a: vec![] })?);
        let expected = tilde(v.index());
        t.check(widened.index() == &expected, || format!("tilde of {v}: {widened} != {expected}"));
    }
    Ok(())
}

/// All generators `x_{ij}(t)` with `i < j`, `s_i` and `h_k(t)`, `t ≠ 0`.
fn all_generators(n: usize, field: PrimeField) -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..n).map(|i| Generator::S { i }).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            out.extend(field.units().map(|t| Generator::X { i, j, t }));
        }
        out.extend(field.units().map(|t| Generator::H { k: i, t }));
    }
    out
}

fn random_element(n: usize, field: PrimeField, rng: &mut StdRng) -> GLMatrix {
    let q = field.order() as i64;
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.random_range(0..q)).collect();
        if let Ok(g) = GLMatrix::new(n, field, &entries) {
            return g;
        }
    }
}

/// The identity plus `t` at `(i, j)`, for any `i ≠ j`.
fn elementary(n: usize, field: PrimeField, i: usize, j: usize, t: u32) -> Result<GLMatrix> {
    let mut entries = vec![0i64; n * n];
    for d in 0..n {
        entries[d * n + d] = 1;
    }
    entries[(i - 1) * n + j - 1] = t as i64;
    GLMatrix::new(n, field, &entries)
}

/// The permutation matrix sending `e_i` to `e_{w(i)}`.
fn permutation_matrix(w: &[usize], field: PrimeField) -> Result<GLMatrix> {
    let n = w.len();
    let mut entries = vec![0i64; n * n];
    for (i, &wi) in w.iter().enumerate() {
        entries[(wi - 1) * n + i] = 1;
    }
    GLMatrix::new(n, field, &entries)
}

fn commutation_relations(t: &mut Tally) -> Result<()> {
    for n in 2..=4 {
        for q in [2u32, 3, 5] {
            let f = PrimeField::new(q)?;
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
            let mut ok = true;
            for &(i, j) in &pairs {
                for &(k, l) in &pairs {
                    for a in f.elements() {
                        for b in f.elements() {
                            let lhs = gen_x(n, f, i, j, a)?.mul(&gen_x(n, f, k, l, b)?);
                            let rhs = if j == k {
                                gen_x(n, f, k, l, b)?.mul(&gen_x(n, f, i, l, f.mul(a, b))?).mul(&gen_x(n, f, i, j, a)?)
                            } else if i == l {
                                gen_x(n, f, k, l, b)?
                                    .mul(&gen_x(n, f, k, j, f.neg(f.mul(a, b)))?)
                                    .mul(&gen_x(n, f, i, j, a)?)
                            } else if i == k && j == l {
                                gen_x(n, f, i, j, f.add(a, b))?
                            } else {
                                gen_x(n, f, k, l, b)?.mul(&gen_x(n, f, i, j, a)?)
                            };
                            ok &= lhs == rhs;
                        }
                    }
                }
            }
            t.check(ok, || format!("x x relations fail for n = {n}, q = {q}"));
            let mut ok = true;
            for w in all_permutations(n) {
                let pw = permutation_matrix(w.one_line(), f)?;
                let winv = w.inverse();
                for &(i, j) in &pairs {
                    for a in f.elements() {
                        let lhs = gen_x(n, f, i, j, a)?.mul(&pw);
                        let (wi, wj) = (winv.one_line()[i - 1], winv.one_line()[j - 1]);
                        let rhs = pw.mul(&elementary(n, f, wi, wj, a)?);
                        ok &= lhs == rhs;
                    }
                }
            }
            t.check(ok, || format!("x w relations fail for n = {n}, q = {q}"));
        }
    }
    Ok(())
}

fn representation(config: &Config, t: &mut Tally) -> Result<()> {
    for (n, r, q) in BASIS_CASES {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        let basis = ModuleBasis::new(n, r, q, config.max_dim)?;
        let mut ok = true;
        for g in all_generators(n, basis.field()) {
            let by_rules = basis.generator_matrix(g)?;
            let by_matrix = basis.matrix(&g.to_matrix(n, basis.field())?)?;
            ok &= by_rules == by_matrix;
        }
        t.check(ok, || format!("({n},{r},{q}): generator rules disagree with the matrix action"));
    }
    let mut rng = StdRng::seed_from_u64(config.seed);
    for (n, r, q) in [(3, 1, 2), (2, 2, 2)] {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        let basis = ModuleBasis::new(n, r, q, config.max_dim)?;
        let f = basis.field();
        let mut bad = 0;
        for _ in 0..config.random_pairs {
            let g = random_element(n, f, &mut rng);
            let h = random_element(n, f, &mut rng);
            let lhs = basis.matrix(&g)?.compose(&basis.matrix(&h)?);
            if lhs != basis.matrix(&g.mul(&h))? {
                bad += 1;
            }
        }
        t.check(bad == 0, || format!("({n},{r},{q}): {bad} of {} random pairs break the homomorphism", config.random_pairs));
    }
    commutation_relations(t)
}

fn commutant(config: &Config, t: &mut Tally) -> Result<()> {
    for (n, r, q, expected) in [(2, 1, 2, 2), (2, 1, 3, 2), (4, 2, 2, 15)] {
        if !config.allows(n) {
            t.skip();
            continue;
        }
        let report = commutant_dim(n, r, q, config.max_dim, config.max_group_order)?;
        let burnside = report.burnside.map_or("not run".to_string(), |b| b.to_string());
        t.note(format!("({n},{r},{q}) -> {} [burnside {burnside}]", report.orbit_count));
        t.check(report.orbit_count == expected && report.consistent(), || {
            format!("({n},{r},{q}): orbits {}, burnside {burnside}, expected {expected}", report.orbit_count)
        });
        t.check(bell(2 * r) == BigUint::from(expected as u32), || format!("B({}) != {expected}", 2 * r));
    }
    Ok(())
}
