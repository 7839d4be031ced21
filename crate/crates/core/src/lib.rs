//! Exact homology of the DGA `R//p` obtained by killing a prime `p` in a
//! p-torsion-free `Z_(p)`-algebra `R`.
//!
//! The crate has two independent routes to every answer: Smith normal forms
//! of explicit finite presentations, and the closed forms in terms of the
//! valuation sequences `a_j`, `b_j` and the index sets `Z1`, `Z2`.

pub mod error;
pub mod gaps;
pub mod homology;
pub mod linalg;
pub mod padic;
pub mod par;

pub use error::{Error, Result};
pub use padic::{PadicRational, Prime};
pub use par::Execution;
