//! Exact combinatorics for q-analogs of partition algebras: the delete-insert
//! Schensted bijection, Bratteli multiplicities, the dimension polynomial
//! `d_{n,r}(q)`, n-restricted q-set partitions and the permutation action of
//! `GL_n(F_q)` on the restriction-induction module.

pub mod acceptance;
pub mod bratteli;
pub mod combinatorics;
pub mod error;
pub mod glnq;
pub mod qpoly;
pub mod qset;
pub mod schensted;

pub use error::{Error, Result};
