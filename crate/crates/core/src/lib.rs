//! Exact Fock representations of A-statistics (`sl(n+1)`) and
//! A-superstatistics (`sl(1|n)`) creation and annihilation operators, relation
//! verification with zero residual, and the 3D A-superoscillator viewed as a
//! Wigner quantum system.

pub mod algebra;
mod error;
pub mod fock;
pub mod limits;
pub mod oscillator;
pub mod scalar;
pub mod serial;

pub use error::{Error, Result};
pub use scalar::RadicalScalar;
