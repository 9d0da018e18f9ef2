//! Exact chain complexes, homology and Smith normal form.

pub mod dense;
mod complex;
mod field;
mod matrix;
mod simplicial;
mod snf;

pub use complex::{ChainComplex, EulerCharacteristic, HomologyEntry, HomologyTable, Ring};
pub use field::{format_rational, is_prime, parse_rational, Field, PrimeField, Rationals};
pub use matrix::{rank_over, SparseMatrix};
pub use simplicial::{degenerate_flags, moore_chains, normalized_chains, simplicial_chains, SimplicialData};
pub use snf::{determinant, int_identity, int_mul, invariant_factors, smith_normal_form, IntMatrix, SnfCertificate};
