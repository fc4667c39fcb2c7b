//! Independent oracles checked against the library.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qpartition::bratteli::{level_set, multiplicity, Level};
use qpartition::combinatorics::{
    all_sequences, enumerate_partitions, sequence_to_permutation, standard_tableaux, IntSequence, IntegerPartition,
};
use qpartition::glnq::{
    act_generator, act_group_element, canonicalize, coset_decompose, commutant_dim, unipotent_radical, wk_matrix,
    Column, GLMatrix, Generator, ModuleBasis, PrimeField, PureWord,
};
use qpartition::qpoly::{d_poly, f_q, q_factorial, q_int, QPolynomial};
use qpartition::schensted::delete_insert;

/// `w_a` read off `(1, …, n, a_1, …, a_r)` by keeping the last copy of each letter.
fn last_occurrences(a: &IntSequence) -> Vec<usize> {
    let word: Vec<usize> = (1..=a.n()).chain(a.entries().iter().copied()).collect();
    let mut seen = vec![false; a.n() + 1];
    let mut out = Vec::new();
    for &x in word.iter().rev() {
        if !std::mem::replace(&mut seen[x], true) {
            out.push(x);
        }
    }
    out.reverse();
    out
}

#[test]
fn w_a_matches_last_occurrences() {
    for (n, r) in [(4, 4), (3, 5), (5, 3)] {
        for a in all_sequences(n, r) {
            assert_eq!(sequence_to_permutation(&a).one_line(), last_occurrences(&a).as_slice(), "{a:?}");
        }
    }
}

/// `q^{Σ(i−1)λ_i} [n]! / Π_{boxes} [hook]`.
fn q_hook_formula(lambda: &IntegerPartition) -> QPolynomial {
    let parts = lambda.parts();
    let b: usize = parts.iter().enumerate().map(|(i, p)| i * p).sum();
    let mut denom = QPolynomial::one();
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p {
            let leg = parts[i + 1..].iter().filter(|&&pk| pk > j).count();
            denom = denom * q_int(p - j + leg);
        }
    }
    let num = q_factorial(lambda.size()) * QPolynomial::monomial(b);
    num.div_exact(&denom).expect("hook product divides")
}

#[test]
fn f_q_matches_q_hook_formula() {
    for n in 0..=8 {
        for lambda in enumerate_partitions(n) {
            assert_eq!(f_q(&lambda).unwrap(), q_hook_formula(&lambda), "{lambda}");
        }
    }
}

#[test]
fn shape_counts_of_delete_insert() {
    for (n, r) in [(4, 3), (3, 4), (5, 3), (2, 5)] {
        let mut counts: HashMap<IntegerPartition, usize> = HashMap::new();
        for a in all_sequences(n, r) {
            *counts.entry(delete_insert(&a).unwrap().0.shape()).or_default() += 1;
        }
        for lambda in level_set(n, Level::full(r)) {
            let f = BigUint::from(standard_tableaux(&lambda).len());
            let m = multiplicity(n, Level::full(r), &lambda).unwrap();
            let got = BigUint::from(counts.remove(&lambda).unwrap_or(0));
            assert_eq!(got, f * m, "(n,r)=({n},{r}), {lambda}");
        }
        assert!(counts.is_empty(), "shapes outside the level set: {counts:?}");
    }
}

fn all_columns(n: usize, field: PrimeField) -> Vec<Column> {
    let mut out = Vec::new();
    for k in 0..n {
        let mut a = vec![0u32; k];
        loop {
            out.push(Column { k, a: a.clone() });
            let Some(i) = a.iter().rposition(|&x| x + 1 < field.order()) else {
                break;
            };
            a[i] += 1;
            a[i + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    out
}

fn all_words(n: usize, r: usize, field: PrimeField) -> Vec<PureWord> {
    let cols = all_columns(n, field);
    let mut words = vec![Vec::<Column>::new()];
    for _ in 0..r {
        words = words
            .into_iter()
            .flat_map(|w| {
                cols.iter().map(move |c| {
                    let mut w = w.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    words.into_iter().map(|c| PureWord::new(n, field, c).unwrap()).collect()
}

/// Keeps the first column and replaces the tail by the least normal form
/// over its `U_n`-translates.
fn orbit_normal_form(w: &PureWord, u: &[GLMatrix]) -> Vec<Column> {
    let Some(first) = w.columns().first() else {
        return Vec::new();
    };
    let tail = w.tail();
    let best = u
        .iter()
        .map(|x| orbit_normal_form(&act_group_element(x, &tail).unwrap(), u))
        .min()
        .unwrap();
    let mut out = vec![first.clone()];
    out.extend(best);
    out
}

#[test]
fn canonicalize_matches_unipotent_orbits() {
    for (n, r, q) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (3, 3, 2), (3, 2, 3), (4, 2, 2), (2, 2, 5)] {
        let field = PrimeField::new(q).unwrap();
        let u = unipotent_radical(n, field);
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for w in all_words(n, r, field) {
            let c = canonicalize(&w);
            let o = orbit_normal_form(&w, &u);
            assert_eq!(forward.entry(o.clone()).or_insert_with(|| c.clone()), &c, "{w}");
            assert_eq!(backward.entry(c).or_insert(o.clone()), &o, "{w}");
        }
        let d = d_poly(n, r).eval_i64(q as i64);
        assert_eq!(BigInt::from(forward.len()), d, "(n,r,q)=({n},{r},{q})");
    }
}

fn full_generators(n: usize, field: PrimeField) -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..n).map(|i| Generator::S { i }).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            out.extend(field.elements().map(|t| Generator::X { i, j, t }));
        }
        out.extend(field.units().map(|t| Generator::H { k: i, t }));
    }
    out
}

#[test]
fn rules_agree_with_matrices_on_all_words() {
    for (n, r, q) in [(2, 3, 2), (3, 2, 3), (3, 3, 2), (2, 2, 5), (4, 2, 2), (4, 1, 3)] {
        let field = PrimeField::new(q).unwrap();
        for w in all_words(n, r, field) {
            for g in full_generators(n, field) {
                let by_rules = canonicalize(&act_generator(g, &w).unwrap());
                let by_matrix = canonicalize(&act_group_element(&g.to_matrix(n, field).unwrap(), &w).unwrap());
                assert_eq!(by_rules, by_matrix, "{g} on {w}");
            }
        }
    }
}

fn random_word(n: usize, r: usize, field: PrimeField, rng: &mut StdRng) -> PureWord {
    let cols = (0..r)
        .map(|_| {
            let k = rng.random_range(0..n);
            Column {
                k,
                a: (0..k).map(|_| rng.random_range(0..field.order())).collect(),
            }
        })
        .collect();
    PureWord::new(n, field, cols).unwrap()
}

fn random_element(n: usize, field: PrimeField, rng: &mut StdRng) -> GLMatrix {
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.random_range(0..field.order() as i64)).collect();
        if let Ok(g) = GLMatrix::new(n, field, &entries) {
            return g;
        }
    }
}

#[test]
fn action_is_well_defined_on_classes() {
    let mut rng = StdRng::seed_from_u64(11);
    for (n, r, q) in [(3, 3, 2), (4, 3, 2), (3, 3, 3), (5, 2, 2), (3, 4, 5)] {
        let field = PrimeField::new(q).unwrap();
        let gens = full_generators(n, field);
        for _ in 0..300 {
            let w = random_word(n, r, field, &mut rng);
            let canon = canonicalize(&w).to_word(field);
            let g = gens[rng.random_range(0..gens.len())];
            assert_eq!(
                canonicalize(&act_generator(g, &w).unwrap()),
                canonicalize(&act_generator(g, &canon).unwrap()),
                "{g} on {w}"
            );
            let m = random_element(n, field, &mut rng);
            assert_eq!(
                canonicalize(&act_group_element(&m, &w).unwrap()),
                canonicalize(&act_group_element(&m, &canon).unwrap()),
                "{m} on {w}"
            );
        }
    }
}

#[test]
fn homomorphism_on_larger_modules() {
    let mut rng = StdRng::seed_from_u64(12);
    for (n, r, q) in [(3, 2, 3), (3, 3, 2), (4, 2, 2)] {
        let basis = ModuleBasis::new(n, r, q, 10_000).unwrap();
        let field = basis.field();
        for _ in 0..50 {
            let g = random_element(n, field, &mut rng);
            let h = random_element(n, field, &mut rng);
            let gh = basis.matrix(&g.mul(&h)).unwrap();
            assert_eq!(basis.matrix(&g).unwrap().compose(&basis.matrix(&h).unwrap()), gh);
        }
    }
}

#[test]
fn coset_decomposition_round_trip() {
    let mut rng = StdRng::seed_from_u64(13);
    for (n, q) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        let field = PrimeField::new(q).unwrap();
        for _ in 0..1000 {
            let g = random_element(n, field, &mut rng);
            let d = coset_decompose(&g);
            assert!(d.p.is_in_parabolic());
            assert_eq!(wk_matrix(n, field, d.k, &d.a).unwrap().mul(&d.p), g);
        }
    }
}

/// Sum of squared multiplicities at level `r` of the diagram for `n`.
fn squared_multiplicities(n: usize, r: usize) -> BigUint {
    level_set(n, Level::full(r))
        .iter()
        .map(|l| {
            let m = multiplicity(n, Level::full(r), l).unwrap();
            &m * &m
        })
        .sum()
}

#[test]
fn commutant_matches_squared_multiplicities() {
    for (n, r, q) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 3, 2), (3, 2, 3), (2, 2, 5)] {
        let rep = commutant_dim(n, r, q, 10_000, 25_000).unwrap();
        assert!(rep.consistent(), "{rep:?}");
        assert_eq!(BigUint::from(rep.value()), squared_multiplicities(n, r), "(n,r,q)=({n},{r},{q})");
    }
}
