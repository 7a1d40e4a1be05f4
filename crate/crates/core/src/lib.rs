//! Robustness of entanglement for bipartite pure states.
//!
//! The crate computes the closed-form robustness of a pure state on
//! `C^n ⊗ C^n` from its Schmidt coefficients, evaluates the antisymmetric
//! partial-transpose witnesses that bound the admissible mixing weight for an
//! arbitrary mixer, builds the diagonally dominant ("Gershgorin") optimal
//! mixer, and provides a randomized search oracle that maximizes the PPT
//! mixing weight directly.
//!
//! Indices in the public math API (`index_c`, `index_f`, witness pairs) are
//! 1-based; matrix storage is 0-based.

pub mod error;
pub mod io;
pub mod matrix;
pub mod ppt;
pub mod robustness;
pub mod search;
pub mod states;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, EigenSystem};
pub use num_complex::Complex64;
pub use ppt::{AntisymVector, PtSpectrum};
pub use robustness::{GCoefficients, MixerReport, PseudoMixture, RobustnessReport};
pub use search::{SearchConfig, SearchResult};
pub use states::{DensityMatrix, Ket, SchmidtDecomposition};
