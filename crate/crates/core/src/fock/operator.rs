use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FockModule;
use crate::error::{Error, Result};
use crate::scalar::RadicalScalar;

/// Parity of an operator in the superalgebra grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Even,
    Odd,
}

impl Grade {
    pub fn of_product(self, other: Grade) -> Grade {
        if self == other {
            Grade::Even
        } else {
            Grade::Odd
        }
    }
}

/// Exact sparse matrix acting on a [`FockModule`].
#[derive(Clone, Debug)]
pub struct Operator {
    module: Arc<FockModule>,
    entries: BTreeMap<(usize, usize), RadicalScalar>,
    grade: Grade,
}

impl PartialEq for Operator {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.grade == other.grade && self.entries == other.entries
    }
}

impl Operator {
    pub fn zero(module: &Arc<FockModule>, grade: Grade) -> Self {
        Self {
            module: Arc::clone(module),
            entries: BTreeMap::new(),
            grade,
        }
    }

    pub fn identity(module: &Arc<FockModule>) -> Self {
        Self::scalar(module, RadicalScalar::one())
    }

    /// `c · Identity`.
    pub fn scalar(module: &Arc<FockModule>, c: RadicalScalar) -> Self {
        let entries = if c.is_zero() {
            BTreeMap::new()
        } else {
            (0..module.dim()).map(|k| ((k, k), c.clone())).collect()
        };
        Self {
            module: Arc::clone(module),
            entries,
            grade: Grade::Even,
        }
    }

    /// Builds an operator from `(row, col, value)` triples; repeated positions
    /// are summed and zeros dropped.
    pub fn from_entries<I>(module: &Arc<FockModule>, grade: Grade, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, RadicalScalar)>,
    {
        let dim = module.dim();
        let mut out = Self::zero(module, grade);
        for (row, col, v) in entries {
            if row >= dim || col >= dim {
                return Err(Error::EntryOutOfRange { row, col, dim });
            }
            out.accumulate(row, col, &v);
        }
        Ok(out)
    }

    fn accumulate(&mut self, row: usize, col: usize, v: &RadicalScalar) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((row, col)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn module(&self) -> &Arc<FockModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    pub fn with_grade(mut self, grade: Grade) -> Self {
        self.grade = grade;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> RadicalScalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RadicalScalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Largest entry modulus, evaluated in floating point.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .values()
            .map(RadicalScalar::abs_f64)
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    /// Diagonal, including zeros.
    pub fn diagonal(&self) -> Vec<RadicalScalar> {
        (0..self.dim()).map(|k| self.entry(k, k)).collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    fn same_module(&self, other: &Operator) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) || self.module == other.module {
            Ok(())
        } else {
            Err(Error::ModuleMismatch)
        }
    }

    /// Exact matrix product `self · other`.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        self.same_module(other)?;
        let mut by_col: BTreeMap<usize, Vec<(usize, &RadicalScalar)>> = BTreeMap::new();
        for (&(r, k), v) in &self.entries {
            by_col.entry(k).or_default().push((r, v));
        }
        let mut out = Operator::zero(&self.module, self.grade.of_product(other.grade));
        for (&(k, c), w) in &other.entries {
            if let Some(col) = by_col.get(&k) {
                for &(r, v) in col {
                    out.accumulate(r, c, &(v * w));
                }
            }
        }
        Ok(out)
    }

    /// Exact sum. A zero operand adopts the grade of the other; otherwise the
    /// grades must agree.
    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.same_module(other)?;
        let grade = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.grade,
            (_, true) => self.grade,
            _ if self.grade == other.grade => self.grade,
            _ => return Err(Error::GradeMismatch),
        };
        let mut out = self.clone();
        out.grade = grade;
        for (&(r, c), v) in &other.entries {
            out.accumulate(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.add(&other.scale(&RadicalScalar::from_integer(-1)))
    }

    pub fn scale(&self, c: &RadicalScalar) -> Operator {
        let mut out = Operator::zero(&self.module, self.grade);
        if c.is_zero() {
            return out;
        }
        for (&(r, col), v) in &self.entries {
            out.accumulate(r, col, &(c * v));
        }
        out
    }

    /// Conjugate transpose; the grade is preserved.
    pub fn adjoint(&self) -> Operator {
        Operator {
            module: Arc::clone(&self.module),
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.conj()))
                .collect(),
            grade: self.grade,
        }
    }

    /// `self · v`.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        let mut out = StateVector::default();
        for (&(r, c), a) in &self.entries {
            if let Some(x) = v.0.get(&c) {
                out.accumulate(r, &(a * x));
            }
        }
        out
    }

    /// Column `col`, i.e. the image of the basis vector with that index.
    pub fn column(&self, col: usize) -> StateVector {
        let mut out = StateVector::default();
        for (&(r, c), a) in &self.entries {
            if c == col {
                out.accumulate(r, a);
            }
        }
        out
    }

    /// Keeps only the columns selected by `keep`.
    pub fn restrict_columns(&self, keep: impl Fn(usize) -> bool) -> Operator {
        Operator {
            module: Arc::clone(&self.module),
            entries: self
                .entries
                .iter()
                .filter(|((_, c), _)| keep(*c))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            grade: self.grade,
        }
    }

    /// Keeps only entries whose row and column are both selected.
    pub fn restrict_block(&self, keep: impl Fn(usize) -> bool) -> Operator {
        Operator {
            module: Arc::clone(&self.module),
            entries: self
                .entries
                .iter()
                .filter(|((r, c), _)| keep(*r) && keep(*c))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            grade: self.grade,
        }
    }

    /// Dense floating-point copy.
    pub fn to_dense(&self) -> ndarray::Array2<num_complex::Complex64> {
        let dim = self.dim();
        let mut m = ndarray::Array2::zeros((dim, dim));
        for (&(r, c), v) in &self.entries {
            m[[r, c]] = v.to_complex();
        }
        m
    }
}

// The operator-trait forms panic on mismatched modules or grades; use the
// named methods for the fallible versions.
impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.compose(rhs).expect("operator product")
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        Operator::add(self, rhs).expect("operator sum")
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        Operator::sub(self, rhs).expect("operator difference")
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale(&RadicalScalar::from_integer(-1))
    }
}

/// Sparse exact vector in the coordinates of a module basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateVector(BTreeMap<usize, RadicalScalar>);

impl StateVector {
    pub fn basis(index: usize) -> Self {
        let mut v = Self::default();
        v.0.insert(index, RadicalScalar::one());
        v
    }

    fn accumulate(&mut self, k: usize, x: &RadicalScalar) {
        if x.is_zero() {
            return;
        }
        let slot = self.0.entry(k).or_default();
        *slot += x;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> RadicalScalar {
        self.0.get(&k).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &RadicalScalar)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn scale(&self, c: &RadicalScalar) -> Self {
        let mut out = Self::default();
        for (k, v) in &self.0 {
            out.accumulate(*k, &(c * v));
        }
        out
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> RadicalScalar {
        self.0
            .iter()
            .filter_map(|(k, u)| other.0.get(k).map(|v| &u.conj() * v))
            .sum()
    }
}
