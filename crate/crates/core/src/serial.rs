//! Deterministic JSON documents for modules and operators. Scalars use the
//! exact `(radicand, re_num, re_den, im_num, im_den)` tuple form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    FockModule, Grade, OccupationState, Operator, PhaseConvention, StatisticsFamily,
};
use crate::scalar::RadicalScalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleDoc {
    #[serde(flatten)]
    pub family: StatisticsFamily,
    pub phase: PhaseConvention,
    pub dim: usize,
    pub basis: Vec<OccupationState>,
}

impl ModuleDoc {
    pub fn from_module(module: &FockModule) -> Self {
        Self {
            family: module.family(),
            phase: module.phase(),
            dim: module.dim(),
            basis: module.basis().to_vec(),
        }
    }

    /// Rebuilds the module and checks that the stored basis matches it.
    pub fn to_module(&self) -> Result<Arc<FockModule>> {
        let module = FockModule::new(self.family, self.phase)?;
        if let Some(bad) = self
            .basis
            .iter()
            .zip(module.basis())
            .find(|(a, b)| a != b)
            .map(|(a, _)| a)
        {
            return Err(Error::InvalidState(bad.0.clone()));
        }
        if self.basis.len() != module.dim() {
            return Err(Error::InvalidState(vec![]));
        }
        Ok(module)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub module: ModuleDoc,
    pub grade: Grade,
    /// `(row, col, value)` in row-major order.
    pub entries: Vec<(usize, usize, RadicalScalar)>,
}

impl OperatorDoc {
    pub fn from_operator(op: &Operator) -> Self {
        Self {
            module: ModuleDoc::from_module(op.module()),
            grade: op.grade(),
            entries: op.entries().map(|(r, c, v)| (r, c, v.clone())).collect(),
        }
    }

    pub fn to_operator(&self) -> Result<Operator> {
        let module = self.module.to_module()?;
        Operator::from_entries(&module, self.grade, self.entries.iter().cloned())
    }
}
