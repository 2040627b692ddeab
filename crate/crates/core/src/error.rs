use thiserror::Error;

use crate::fock::FamilyKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("number of modes must be at least 1")]
    NoModes,
    #[error("order of statistics must be at least 1")]
    ZeroOrder,
    #[error("the Fermi family has order 1, got {0}")]
    FermiOrder(u32),
    #[error("mode index {index} out of range 1..={n}")]
    ModeOutOfRange { index: usize, n: usize },
    #[error("generator index {index} out of range 0..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("operators act on different Fock modules")]
    ModuleMismatch,
    #[error("cannot add operators of different parity")]
    GradeMismatch,
    #[error("entry ({row}, {col}) outside a {dim}-dimensional module")]
    EntryOutOfRange { row: usize, col: usize, dim: usize },
    #[error("operation requires the {expected:?} family, got {found:?}")]
    WrongFamily {
        expected: FamilyKind,
        found: FamilyKind,
    },
    #[error("occupation {0:?} is not a basis state of this module")]
    InvalidState(Vec<u32>),
    #[error("measurement support is only defined for order p > 2, got p = {0}")]
    OrderTooLow(u32),
    #[error("invalid limit probe: {0}")]
    InvalidProbe(String),
    #[error("invalid oscillator constants: hbar, mass and omega must be positive and finite")]
    InvalidConstants,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
