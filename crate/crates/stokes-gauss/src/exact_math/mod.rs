//! Exact scalars, circle directions and linear algebra.

pub mod circle;
pub mod linalg;
pub mod quad;
pub mod scalar;
pub mod sparse;

pub use circle::{cyclic_strictly_between, is_generic, is_leq, leq_at, sign_on_cell_after, stokes_directions, CirclePoint, Order};
pub use linalg::{Matrix, Subspace, Vector};
pub use quad::QuadReal;
pub use scalar::{format_rational, int, parse_rational, rat, GaussRational, Field, Rational};
pub use sparse::{SparseEchelon, SparseVec};
