//! Cyclic bar complexes of finite-dimensional graded algebras: Hochschild and
//! cyclic homology, Connes' operator, the Hodge decomposition and duals.

mod algebra;
mod complex;
mod hodge;
mod homology;

pub use algebra::{reduce, sphere_model, BasisElement, Element, GradedAlgebra};
pub use complex::{HochschildComplex, OperatorIdentities, Word};
pub use hodge::{
    adams_checks, descents, eulerian_coefficients, hodge_classes, hodge_data, homology_representatives,
    induced_on_homology, permutations, AdamsCheck, HodgeClass, HodgeContract, HodgeData, MAX_HODGE_DEGREE,
};
pub use homology::{
    cyclic_total_complex, dual_hh, dual_hh_with_cap, hc, hc_with_cap, hh, hh_with_cap, simplicial_bound, table_from_complex,
    BigradedRank, DegreeRank, HHRange, HHTable,
};
