//! The permutation module of `GL_n(F_q)` spanned by pure words over the
//! parabolic `P_n`, with its canonical basis indexed by q-set partitions.

pub mod field;
pub mod matrix;
pub mod rep;
pub mod word;

pub use field::{FieldElement, PrimeField};
pub use matrix::{
    all_group_elements, coset_decompose, gen_h, gen_s, gen_x, group_order, unipotent_radical,
    wk_matrix, CosetDecomposition, GLMatrix,
};
pub use word::{
    act_generator, act_generator_word, act_group_element, canonicalize, generator_on_column,
    CanonicalBasisVector, Column, Generator, PureWord,
};
pub use rep::{
    commutant_dim, half_level_basis, module_dimension, orbits_on_pairs, rep_matrix, CommutantReport,
    ModuleBasis, RepMatrix, DEFAULT_MAX_DIM, DEFAULT_MAX_GROUP_ORDER,
};
