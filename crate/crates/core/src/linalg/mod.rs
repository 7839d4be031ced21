//! Exact integer linear algebra: Smith and Hermite normal forms, cokernel
//! invariants, and submodule comparison in finite products of cyclic groups.

mod complex;
mod hnf;
mod matrix;
mod shape;
mod snf;

pub use complex::homology_at;
pub use hnf::{contains_mod, hermite_rows, submodule_equal_mod};
pub use matrix::IntMatrix;
pub use shape::{cokernel_shape, shape_from_snf, ModuleShape};
pub use snf::{p_local_exponents, snf, SnfResult};
