//! Arithmetic in a prime field `F_q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_q`; elements are represented by `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || (2..q).take_while(|d| d * d <= q).any(|d| q.is_multiple_of(d)) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(self) -> u32 {
        self.q
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.q) {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.q as i64, (a % self.q) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Ok(self.reduce(t0))
    }

    pub fn div(self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn units(self) -> impl Iterator<Item = u32> {
        1..self.q
    }

    /// The least generator of the multiplicative group.
    pub fn primitive_root(self) -> u32 {
        let order = self.q - 1;
        self.units()
            .find(|&g| {
                let mut x = 1;
                for k in 1..=order {
                    x = self.mul(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .expect("prime fields have primitive roots")
    }

    pub fn element(self, value: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(value),
            modulus: self.q,
        }
    }
}

/// A value in `F_q` that carries its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn new(value: i64, q: u32) -> Result<Self> {
        Ok(PrimeField::new(q)?.element(value))
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn field(self) -> PrimeField {
        PrimeField { q: self.modulus }
    }

    pub fn inv(self) -> Result<Self> {
        Ok(FieldElement {
            value: self.field().inv(self.value)?,
            modulus: self.modulus,
        })
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "mixing elements of different fields");
    }
}

impl Add for FieldElement {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: self.field().add(self.value, rhs.value),
            ..self
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: self.field().sub(self.value, rhs.value),
            ..self
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: self.field().mul(self.value, rhs.value),
            ..self
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;

    fn neg(self) -> Self {
        FieldElement {
            value: self.field().neg(self.value),
            ..self
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
