use std::fmt;

use anyhow::Result;
use fockalg::algebra::{
    a_relations_of, all_pass, asuper_relations_of, interior_selector, verify_adjointness,
    verify_gl_relations, verify_lie_closure, verify_para_bose_relations,
    verify_para_fermi_relations, verify_pauli_principle, verify_vacuum_condition, RelationReport,
    SuiteSummary,
};
use fockalg::fock::{CaoSet, FockModule, OccupationState, PhaseConvention, StatisticsFamily};
use fockalg::limits::{boson_limit_deviation, LimitProbe};
use fockalg::oscillator::{
    measurement_support, spectrum, uncertainty_report, Evolution, OscillatorConfig,
};
use serde::Serialize;

use crate::report::{Cell, Table};

/// Bad user input that clap cannot catch; maps to exit code 2.
#[derive(Debug)]
pub struct InvalidArgument(pub String);

impl fmt::Display for InvalidArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidArgument {}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(InvalidArgument(msg.into()).into())
}

const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    A,
    Asuper,
    Fermi,
    Bose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Standard,
    AsPrinted,
}

impl From<Phase> for PhaseConvention {
    fn from(p: Phase) -> Self {
        match p {
            Phase::Standard => PhaseConvention::Standard,
            Phase::AsPrinted => PhaseConvention::AsPrinted,
        }
    }
}

/// Output of a command before it is wrapped in a document.
#[derive(Default)]
pub struct Outcome {
    pub reports: Vec<RelationReport>,
    pub tables: Vec<Table>,
    pub passed: bool,
}

impl Outcome {
    fn table(table: Table) -> Self {
        Self {
            reports: Vec::new(),
            tables: vec![table],
            passed: true,
        }
    }
}

pub fn parse_state(s: &str) -> Result<OccupationState> {
    let occ: Result<Vec<u32>, _> = s.split(',').map(|x| x.trim().parse::<u32>()).collect();
    match occ {
        Ok(v) if !v.is_empty() => Ok(OccupationState(v)),
        _ => invalid(format!(
            "invalid state '{s}': expected comma-separated occupations like 1,0,0"
        )),
    }
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = match s
        .split(':')
        .map(str::parse::<f64>)
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) if v.len() == 3 && v.iter().all(|x| x.is_finite()) => v,
        _ => return invalid(format!("invalid time grid '{s}': expected start:stop:step")),
    };
    let (start, stop, step) = (parts[0], parts[1], parts[2]);
    if step <= 0.0 || stop < start {
        return invalid(format!(
            "invalid time grid '{s}': need step > 0 and stop >= start"
        ));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return invalid(format!(
            "time grid has {count} points, limit is {MAX_GRID_POINTS}"
        ));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

pub fn verify(family: Family, n: usize, p: u32, phase: Phase, closure: bool) -> Result<Outcome> {
    let stat = match family {
        Family::A => StatisticsFamily::a(n, p),
        Family::Asuper => StatisticsFamily::asuper(n, p),
        Family::Fermi if p != 1 => return invalid("the fermi family has order 1; use --p 1"),
        Family::Fermi => StatisticsFamily::fermi(n),
        Family::Bose => StatisticsFamily::truncated_bose(n, p),
    };
    let module = FockModule::new(stat, phase.into())?;
    let cao = CaoSet::build(&module)?;

    let mut suites: Vec<(&str, Vec<RelationReport>)> = Vec::new();
    match family {
        Family::A => {
            suites.push(("triple relations", a_relations_of(&cao)));
            suites.push(("adjointness", verify_adjointness(&cao)));
            suites.push(("vacuum", verify_vacuum_condition(&cao, p)));
            suites.push(("gl relations", verify_gl_relations(n, p)?));
            suites.push(("pauli principle", verify_pauli_principle(n, p)?));
            if closure {
                suites.push(("lie closure", verify_lie_closure(n, p)?));
            }
        }
        Family::Asuper => {
            suites.push(("superalgebra relations", asuper_relations_of(&cao)));
            suites.push(("adjointness", verify_adjointness(&cao)));
            suites.push(("vacuum", verify_vacuum_condition(&cao, p)));
        }
        Family::Fermi => {
            suites.push(("parafermi relations", verify_para_fermi_relations(&cao, 1)));
            suites.push(("adjointness", verify_adjointness(&cao)));
        }
        Family::Bose => {
            let interior = interior_selector(&module, 2);
            if !(0..module.dim()).any(&interior) {
                return invalid(format!(
                    "cutoff {p} leaves no interior states; use --p 2 or more"
                ));
            }
            suites.push((
                "parabose relations (interior)",
                verify_para_bose_relations(&cao, interior),
            ));
            suites.push(("adjointness", verify_adjointness(&cao)));
        }
    }

    let mut summary = Table::new("summary", &["suite", "instances", "failures", "passed"]);
    let mut reports = Vec::new();
    for (name, rs) in suites {
        let s = SuiteSummary::of(name, &rs);
        summary.push(vec![
            s.suite.clone().into(),
            s.instances.into(),
            s.failures.into(),
            s.passed().into(),
        ]);
        reports.extend(rs);
    }
    Ok(Outcome {
        passed: all_pass(&reports),
        reports,
        tables: vec![summary],
    })
}

pub fn spectrum_table(cfg: &OscillatorConfig) -> Result<Outcome> {
    let mut t = Table::new(
        "spectrum",
        &["q", "energy", "energy_natural", "multiplicity"],
    );
    for level in spectrum(cfg)? {
        t.push(vec![
            level.q.into(),
            level.energy.into(),
            level.energy_exact.into(),
            level.multiplicity.into(),
        ]);
    }
    Ok(Outcome::table(t))
}

/// Rounds away the sign of negative zero so bodies stay diff-stable.
fn clean(x: f64) -> f64 {
    x + 0.0
}

pub fn uncertainty(cfg: &OscillatorConfig, state: &OccupationState) -> Result<Outcome> {
    let rep = uncertainty_report(cfg, state)?;
    let mut t = Table::new(
        "uncertainty",
        &[
            "axis",
            "theta",
            "mean_r",
            "mean_p",
            "dr",
            "dp",
            "product",
            "product_over_hbar",
            "window_low",
            "window_high",
            "within_window",
            "within_half_hbar",
        ],
    );
    for k in 0..3 {
        t.push(vec![
            (k + 1).into(),
            state.as_slice()[k].into(),
            clean(rep.mean_r[k]).into(),
            clean(rep.mean_p[k]).into(),
            rep.dr[k].into(),
            rep.dp[k].into(),
            rep.product[k].into(),
            rep.exact.product[k].clone().into(),
            rep.window.0.into(),
            rep.window.1.into(),
            rep.within_window[k].into(),
            rep.within_half_hbar[k].into(),
        ]);
    }
    Ok(Outcome {
        passed: rep.within_window.iter().all(|&b| b),
        ..Outcome::table(t)
    })
}

pub fn measure(cfg: &OscillatorConfig, state: &OccupationState) -> Result<Outcome> {
    if cfg.p <= 2 {
        return invalid(format!("position support needs p > 2, got p = {}", cfg.p));
    }
    let points = measurement_support(cfg, state)?;
    let unit = (cfg.hbar / (2.0 * cfg.mass * cfg.omega)).sqrt();
    let mut t = Table::new(
        "support",
        &["x", "y", "z", "x_length", "y_length", "z_length"],
    );
    for [x, y, z] in points {
        let phys = |c: &fockalg::RadicalScalar| clean(c.to_complex().re * unit);
        let lengths = [phys(&x), phys(&y), phys(&z)];
        t.push(vec![
            x.into(),
            y.into(),
            z.into(),
            lengths[0].into(),
            lengths[1].into(),
            lengths[2].into(),
        ]);
    }
    Ok(Outcome::table(t))
}

pub fn limit(n: usize, p_list: Vec<u32>, cutoff: u32) -> Result<Outcome> {
    let probe = LimitProbe { n, p_list, cutoff };
    probe.validate()?;
    let mut t = Table::new(
        "boson_limit",
        &[
            "p",
            "dim",
            "deviation_max",
            "bound_2L_over_p",
            "deviation_exact",
            "closed_form",
            "creators_commute",
            "vacuum_exact",
        ],
    );
    for row in boson_limit_deviation(&probe)? {
        t.push(vec![
            row.p.into(),
            row.dim.into(),
            row.deviation_max.into(),
            row.bound_2l_over_p.into(),
            row.deviation_exact.into(),
            row.closed_form.into(),
            row.creators_commute.into(),
            row.vacuum_exact.into(),
        ]);
    }
    Ok(Outcome::table(t))
}

pub fn evolve(cfg: &OscillatorConfig, state: &OccupationState, grid: &[f64]) -> Result<Outcome> {
    let evo = Evolution::new(cfg)?;
    let module = FockModule::new(
        StatisticsFamily::asuper(3, cfg.p),
        PhaseConvention::Standard,
    )?;
    let k = module.require(state.as_slice())?;
    let mut t = Table::new("trajectory", &["t", "R1", "R2", "R3", "P1", "P2", "P3"]);
    for &time in grid {
        let snap = evo.at(time);
        let mut row: Vec<Cell> = vec![time.into()];
        row.extend(
            snap.position
                .iter()
                .chain(&snap.momentum)
                .map(|m| clean(m[(k, k)].re).into()),
        );
        t.push(row);
    }
    Ok(Outcome::table(t))
}
