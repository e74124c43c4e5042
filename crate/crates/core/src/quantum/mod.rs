//! Dense complex linear algebra, density matrices, and the special
//! measurement families: MUBs, MUMs, equiangular tight frames, SIC-POVMs
//! and general SIC-POVMs. Every constructor validates its output.

pub mod etf;
pub mod io;
pub mod matrix;
pub mod mub;
pub mod mum;
pub mod povm;
pub mod sic;
pub mod state;

pub use etf::{etf_povm, etf_simplex, etf_validate, simplex_frame, EtfReport, Frame};
pub use matrix::{ComplexMatrix, Ket};
pub use mub::{mub_bases, mub_set};
pub use mum::{mum_kappa_max, mum_set};
pub use povm::{born_probabilities, Family, MeasurementSet, Povm, PovmReport, SetKind};
pub use sic::{general_sic, general_sic_from, sic_from_vectors, sic_povm, sic_vectors};
pub use state::{purity, random_state, random_states, DensityMatrix, StateKind};
