//! Cellular sheaves on the circle at infinity and their cohomology.

pub mod cells;
pub mod circle;
pub mod closed_forms;
pub mod splitting;

pub use cells::{CellComplex, CellSheaf, CohomologyResult, FramedStalks};
pub use circle::{build_circle_model, sheaf_leq, sheaf_lt, CircleModel, CircleSheaves};
pub use closed_forms::{disc_cohomology_fleq0, euler_characteristic_leq, h0_leq_closed_form, EulerCheck};
pub use splitting::{good_interval_splitting, good_interval_splitting_shuffled, is_graded};
