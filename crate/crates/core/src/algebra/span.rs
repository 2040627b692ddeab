//! Exact linear algebra over [`RadicalScalar`].

use std::collections::BTreeMap;

use crate::fock::Operator;
use crate::scalar::RadicalScalar;

/// Dense matrix of exact scalars, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RadicalScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![RadicalScalar::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &RadicalScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RadicalScalar) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduces to reduced row echelon form in place and returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(src) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, src);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&factor * self.get(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Finds coefficients `w` with `Σ w_k · generators[k] = target`, or `None` if
/// the target lies outside their span. Free variables are set to zero.
pub fn solve_in_span(generators: &[Operator], target: &Operator) -> Option<Vec<RadicalScalar>> {
    // one equation per matrix position touched by any operand
    let mut positions: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for op in generators.iter().chain(std::iter::once(target)) {
        for (r, c, _) in op.entries() {
            let next = positions.len();
            positions.entry((r, c)).or_insert(next);
        }
    }
    let k = generators.len();
    let mut m = ExactMatrix::zeros(positions.len(), k + 1);
    for (col, op) in generators.iter().enumerate() {
        for (r, c, v) in op.entries() {
            m.set(positions[&(r, c)], col, v.clone());
        }
    }
    for (r, c, v) in target.entries() {
        m.set(positions[&(r, c)], k, v.clone());
    }
    let pivots = m.rref();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut w = vec![RadicalScalar::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        w[col] = m.get(row, k).clone();
    }
    Some(w)
}
