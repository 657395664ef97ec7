//! Exact integer and rational linear algebra.

mod lattice;
mod matrix;
mod module;
pub mod rational;
mod smith;

pub use lattice::{integer_kernel, is_saturated, lattice_basis, row_hnf, IntSolver};
pub use matrix::{int, rat, rat_vec, Int, IntMatrix, Matrix, Rat, RatMatrix, Scalar};
pub use module::{
    dual_map, solve_in_submodule, subquotient, torsion_list, FgModule, LinalgError, ModuleMap,
    Ring, SubmoduleSolver, Subquotient,
};
pub use smith::{smith_normal_form, unimodular_inverse, SmithForm};
