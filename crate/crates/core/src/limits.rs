//! Connections to canonical statistics: the large-`p` boson limit of
//! A-statistics and the order-1 Fermi witness of the paraFermi relations.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{verify_para_fermi_relations, RelationReport};
use crate::error::{Error, Result};
use crate::fock::{build_module, CaoSet, Operator, StateVector, StatisticsFamily};
use crate::scalar::RadicalScalar;

/// Largest module dimension a probe may request.
pub const MAX_PROBE_DIM: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitProbe {
    pub n: usize,
    /// Strictly increasing orders of statistics.
    pub p_list: Vec<u32>,
    /// Probed subspace: states with total occupation at most `cutoff`.
    pub cutoff: u32,
}

impl LimitProbe {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidProbe(m.to_string()));
        if self.n == 0 {
            return Err(Error::NoModes);
        }
        let Some(&min_p) = self.p_list.first() else {
            return bad("empty order list");
        };
        if !self.p_list.windows(2).all(|w| w[0] < w[1]) {
            return bad("orders must be strictly increasing");
        }
        if self.cutoff >= min_p {
            return bad("cutoff must be below every order");
        }
        for &p in &self.p_list {
            if binomial(self.n as u64 + u64::from(p), self.n as u64) > MAX_PROBE_DIM as u64 {
                return Err(Error::InvalidProbe(format!(
                    "order {p} exceeds the dimension cap"
                )));
            }
        }
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1u64, |acc, j| acc.saturating_mul(n + 1 - j) / j)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub p: u32,
    pub dim: usize,
    /// Largest `|[b_i^-, b_j^+] − δ_ij|` entry on the probed block, over all `i, j`.
    pub deviation_max: f64,
    pub deviation_exact: RadicalScalar,
    /// `max (Σl + l_i) / p` over probed states.
    pub closed_form: RadicalScalar,
    pub bound_2l_over_p: f64,
    /// `[b_i^+, b_j^+] = 0` for all `i, j`.
    pub creators_commute: bool,
    /// `[b_i^-, b_j^+] |0⟩ = δ_ij |0⟩` for all `i, j`.
    pub vacuum_exact: bool,
}

/// Deviation of the rescaled A-statistics CAOs `b_k^± = a_k^±/√p` from the
/// Bose relations on the low-occupation subspace, for each order in the probe.
pub fn boson_limit_deviation(probe: &LimitProbe) -> Result<Vec<LimitRow>> {
    probe.validate()?;
    probe
        .p_list
        .par_iter()
        .map(|&p| limit_row(probe, p))
        .collect()
}

fn limit_row(probe: &LimitProbe, p: u32) -> Result<LimitRow> {
    let module = build_module(StatisticsFamily::a(probe.n, p))?;
    let a = CaoSet::build(&module)?;
    let probed = |k: usize| module.state(k).total() <= probe.cutoff;
    // [b_i^-, b_j^+] = [a_i^-, a_j^+]/p; only the probed columns are needed,
    // and (XY) restricted to columns is X times (Y restricted to columns).
    let inv_p = RadicalScalar::from_ratio(1, p.into());
    let id = Operator::identity(&module).restrict_block(probed);

    let mut best = RadicalScalar::zero();
    let mut best_abs = 0.0f64;
    let mut creators_commute = true;
    let mut vacuum_exact = true;
    for i in 1..=probe.n {
        for j in 1..=probe.n {
            let forward = a.minus(i).compose(&a.plus(j).restrict_columns(probed))?;
            let backward = a.plus(j).compose(&a.minus(i).restrict_columns(probed))?;
            let ccr = forward.sub(&backward)?.scale(&inv_p);
            let expected = if i == j {
                StateVector::basis(0)
            } else {
                StateVector::default()
            };
            vacuum_exact &= ccr.column(0) == expected;
            let block = ccr.restrict_block(probed);
            let dev = if i == j { block.sub(&id)? } else { block };
            for (_, _, v) in dev.entries() {
                let abs = v.abs_f64();
                if abs > best_abs {
                    best_abs = abs;
                    best = if v.is_real() && v.to_complex().re < 0.0 {
                        -v
                    } else {
                        v.clone()
                    };
                }
            }
            // antisymmetric, so i < j covers every pair
            if i < j {
                creators_commute &=
                    a.plus(i).compose(a.plus(j))? == a.plus(j).compose(a.plus(i))?;
            }
        }
    }

    let closed = module
        .basis()
        .iter()
        .filter(|s| s.total() <= probe.cutoff)
        .flat_map(|s| s.as_slice().iter().map(move |&l| s.total() + l))
        .max()
        .unwrap_or(0);
    Ok(LimitRow {
        p,
        dim: module.dim(),
        deviation_max: best_abs,
        deviation_exact: best,
        closed_form: RadicalScalar::from_ratio(closed.into(), p.into()),
        bound_2l_over_p: 2.0 * f64::from(probe.cutoff) / f64::from(p),
        creators_commute,
        vacuum_exact,
    })
}

/// Ordinary fermions checked against the paraFermi relations with order 1.
pub fn fermi_witness(n: usize) -> Result<Vec<RelationReport>> {
    let module = build_module(StatisticsFamily::fermi(n))?;
    Ok(verify_para_fermi_relations(&CaoSet::build(&module)?, 1))
}
