//! Exact Stokes data of pure Gaussian type.
//!
//! Matrix and filtration encodings, cellular sheaf cohomology on the circle at
//! infinity, the Laplace transformation rule and a brute-force disc-model check of it.

pub mod circle_sheaf;
pub mod error;
pub mod exact_math;
pub mod io_cli;
pub mod laplace;
pub mod laplace_oracle;
pub mod stokes_core;

pub use error::{Error, Result};
pub use exact_math::{CirclePoint, Field, GaussRational, Matrix, QuadReal, Rational, Subspace};

pub use stokes_core::{ExponentLayout, Form, StokesFiltrations, StokesMatrices, StokesMorphism};
