//! The Bratteli diagram: index sets at integer and half-integer levels,
//! multiplicities as path counts, vacillating-tableau enumeration and DOT/JSON
//! rendering.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_partitions, IntegerPartition};
use crate::error::{Error, Result};
use crate::schensted::VacillatingTableau;

/// A level in steps of one half, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(usize);

impl Level {
    pub fn full(r: usize) -> Self {
        Level(2 * r)
    }

    /// The level `r + ½`.
    pub fn half(r: usize) -> Self {
        Level(2 * r + 1)
    }

    pub fn from_twice(t: usize) -> Self {
        Level(t)
    }

    pub fn twice(self) -> usize {
        self.0
    }

    pub fn is_half(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn floor(self) -> usize {
        self.0 / 2
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half() {
            write!(f, "{}.5", self.floor())
        } else {
            write!(f, "{}", self.floor())
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    /// Accepts `3`, `1.5`, `3/2` and `1+1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::OutOfRange {
            what: "level",
            value: 0,
            expected: format!("a nonnegative integer or half-integer, got {s:?}"),
        };
        let s = s.trim();
        if let Some((int, frac)) = s.split_once('.') {
            let r: usize = int.parse().map_err(|_| bad())?;
            return match frac {
                "5" => Ok(Level::half(r)),
                "0" => Ok(Level::full(r)),
                _ => Err(bad()),
            };
        }
        if let Some(int) = s.strip_suffix("+1/2") {
            return int.parse().map(Level::half).map_err(|_| bad());
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: usize = num.parse().map_err(|_| bad())?;
            return match den {
                "2" => Ok(Level(num)),
                "1" => Ok(Level::full(num)),
                _ => Err(bad()),
            };
        }
        s.parse().map(Level::full).map_err(|_| bad())
    }
}

/// `Λ_n^r` at an integer level: partitions of `n` with at most `r` boxes
/// below the first row. At level `r + ½`: partitions of `n − 1` with the
/// same bound. Reverse-lexicographic order.
pub fn level_set(n: usize, level: Level) -> Vec<IntegerPartition> {
    let size = if level.is_half() {
        match n.checked_sub(1) {
            Some(m) => m,
            None => return Vec::new(),
        }
    } else {
        n
    };
    enumerate_partitions(size)
        .into_iter()
        .filter(|p| p.below_first_row() <= level.floor())
        .collect()
}

/// `𝔅_n` up to a given level, with path-count multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliDiagram {
    n: usize,
    max_level: Level,
    /// Indexed by twice the level.
    levels: Vec<Vec<IntegerPartition>>,
    multiplicities: Vec<Vec<BigUint>>,
    /// `edges[t][v]`: indices at level `t − 1` adjacent to vertex `v` at level `t`.
    edges: Vec<Vec<Vec<usize>>>,
}

impl BratteliDiagram {
    pub fn new(n: usize, max_level: Level) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                expected: "n >= 1".into(),
            });
        }
        let mut levels = Vec::new();
        let mut multiplicities: Vec<Vec<BigUint>> = Vec::new();
        let mut edges = Vec::new();
        for t in 0..=max_level.twice() {
            let vertices = level_set(n, Level(t));
            if t == 0 {
                multiplicities.push(vec![BigUint::one(); vertices.len()]);
                edges.push(vec![Vec::new(); vertices.len()]);
            } else {
                let below: &Vec<IntegerPartition> = &levels[t - 1];
                let adj: Vec<Vec<usize>> = vertices
                    .iter()
                    .map(|v| {
                        below
                            .iter()
                            .enumerate()
                            .filter(|(_, u)| {
                                if t % 2 == 1 {
                                    u.box_difference(v).is_some()
                                } else {
                                    v.box_difference(u).is_some()
                                }
                            })
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect();
                let prev = &multiplicities[t - 1];
                let mult = adj
                    .iter()
                    .map(|a| a.iter().fold(BigUint::zero(), |acc, &i| acc + &prev[i]))
                    .collect();
                multiplicities.push(mult);
                edges.push(adj);
            }
            levels.push(vertices);
        }
        Ok(BratteliDiagram {
            n,
            max_level,
            levels,
            multiplicities,
            edges,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_level(&self) -> Level {
        self.max_level
    }

    pub fn vertices(&self, level: Level) -> &[IntegerPartition] {
        self.levels.get(level.twice()).map_or(&[], Vec::as_slice)
    }

    pub fn multiplicities(&self, level: Level) -> &[BigUint] {
        self.multiplicities
            .get(level.twice())
            .map_or(&[], Vec::as_slice)
    }

    /// Vertices one half-level down adjacent to `lambda` at `level`.
    pub fn neighbours_below(&self, level: Level, lambda: &IntegerPartition) -> Vec<&IntegerPartition> {
        let t = level.twice();
        match self.index_of(level, lambda) {
            Some(v) if t > 0 => self.edges[t][v].iter().map(|&i| &self.levels[t - 1][i]).collect(),
            _ => Vec::new(),
        }
    }

    fn index_of(&self, level: Level, lambda: &IntegerPartition) -> Option<usize> {
        self.levels.get(level.twice())?.iter().position(|p| p == lambda)
    }

    pub fn multiplicity(&self, level: Level, lambda: &IntegerPartition) -> Result<BigUint> {
        self.index_of(level, lambda)
            .map(|v| self.multiplicities[level.twice()][v].clone())
            .ok_or_else(|| Error::NotAtLevel {
                partition: lambda.clone().into(),
                level: level.to_string(),
            })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().map(Vec::len).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Renders as a DOT digraph: one `rank=same` group per level, vertices
    /// labelled `partition | multiplicity`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph bratteli_{} {{", self.n);
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        for (t, vertices) in self.levels.iter().enumerate() {
            let _ = writeln!(out, "  subgraph level_{t} {{");
            let _ = writeln!(out, "    rank=same;");
            let _ = writeln!(
                out,
                "    \"level_{t}\" [shape=plaintext, label=\"{}\"];",
                Level(t)
            );
            for (v, p) in vertices.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "    \"v{t}_{v}\" [label=\"{p} | {}\"];",
                    self.multiplicities[t][v]
                );
            }
            let _ = writeln!(out, "  }}");
        }
        for t in 1..self.levels.len() {
            let _ = writeln!(out, "  \"level_{}\" -> \"level_{t}\" [style=invis];", t - 1);
            for (v, adj) in self.edges[t].iter().enumerate() {
                for &u in adj {
                    let _ = writeln!(out, "  \"v{}_{u}\" -> \"v{t}_{v}\" [dir=none];", t - 1);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(t, vertices)| {
                let vs: Vec<Value> = vertices
                    .iter()
                    .enumerate()
                    .map(|(v, p)| {
                        let below: Vec<Value> = if t == 0 {
                            Vec::new()
                        } else {
                            self.edges[t][v]
                                .iter()
                                .map(|&u| json!(self.levels[t - 1][u].parts()))
                                .collect()
                        };
                        json!({
                            "partition": p.parts(),
                            "multiplicity": biguint_json(&self.multiplicities[t][v]),
                            "below": below,
                        })
                    })
                    .collect();
                json!({ "level": Level(t).to_string(), "vertices": vs })
            })
            .collect();
        json!({
            "n": self.n,
            "max_level": self.max_level.to_string(),
            "levels": levels,
        })
    }
}

/// A JSON number when the value fits in `u64`, a decimal string otherwise.
pub(crate) fn biguint_json(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// `m_r^λ`: the number of paths from `(n)` to `λ` at `level`.
pub fn multiplicity(n: usize, level: Level, lambda: &IntegerPartition) -> Result<BigUint> {
    BratteliDiagram::new(n, level)?.multiplicity(level, lambda)
}

/// All `r`-vacillating tableaux of shape `λ`.
pub fn enumerate_vacillating(
    n: usize,
    r: usize,
    lambda: &IntegerPartition,
) -> Result<Vec<VacillatingTableau>> {
    let level = Level::full(r);
    let d = BratteliDiagram::new(n, level)?;
    let start = d.index_of(level, lambda).ok_or_else(|| Error::NotAtLevel {
        partition: lambda.clone().into(),
        level: level.to_string(),
    })?;

    fn walk(d: &BratteliDiagram, t: usize, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(v);
        if t == 0 {
            out.push(path.iter().rev().copied().collect());
        } else {
            for &u in &d.edges[t][v] {
                walk(d, t - 1, u, path, out);
            }
        }
        path.pop();
    }

    let mut paths = Vec::new();
    walk(&d, level.twice(), start, &mut Vec::new(), &mut paths);
    paths
        .into_iter()
        .map(|idx| {
            let shapes = idx
                .iter()
                .enumerate()
                .map(|(t, &v)| d.levels[t][v].clone())
                .collect();
            VacillatingTableau::new(shapes)
        })
        .collect()
}
