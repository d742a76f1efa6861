//! Integer linear algebra and lattice polytopes.

pub mod matrix;
pub mod normal_form;
pub mod polytope;

pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, integer_kernel, invariant_factors, smith_normal_form};
pub use polytope::{
    affine_equivalent, delta_vector, ehrhart_polynomial, hull_and_facets, lattice_points,
    delta_vector_with_budget, lattice_points_with_budget, normalized_volume, relative_normalized_volume, AffineMap, Facet,
    PointConfig, Polytope, DEFAULT_BUDGET,
};
