//! Exact arithmetic over GF(p^k): field elements, dense matrices and
//! subspaces, polynomials with factorization, and a seeded RNG.

mod charpoly;
mod embed;
mod field;
mod matrix;
mod poly;
mod rng;

pub use charpoly::{char_min_poly, char_poly, min_poly};
pub use embed::Embedding;
pub use field::{is_prime, Fe, Field, FieldSpec};
pub use matrix::{
    axpy, dot, unit_vector, vec_add, vec_is_zero, vec_scale, vec_sub, Echelon, Matrix, Subspace,
};
pub use poly::{factor_poly, factor_poly_seeded, roots, Poly};
pub use rng::SeededRng;
