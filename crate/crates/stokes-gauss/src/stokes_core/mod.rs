//! Stokes data of pure Gaussian type in matrix and filtration form.

pub mod filtrations;
pub mod layout;
pub mod matrices;
pub mod morphism;
pub mod random;
pub mod rigidity;
pub mod samples;

pub use filtrations::{to_filtrations, to_matrices, StokesFiltrations};
pub use layout::{sort_exponents, ExponentLayout};
pub use matrices::{Form, StokesMatrices};
pub use morphism::{add_trivial, direct_sum, endomorphism_basis, extend_layout, random_endomorphism, trivial, trivial_matrices, StokesMorphism, TrivialExtension};
pub use random::{random_aligned_layout, random_data, random_layout, random_ranks};
pub use rigidity::{rigidity_index, Rigidity};
