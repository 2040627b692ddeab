//! The 3D harmonic oscillator quantised with `sl(1|3)` CAOs, treated as a
//! Wigner quantum system.
//!
//! All exact operators live in natural units `ħ = m = ω = 1`:
//!
//! * `R_k = (a_k^+ + a_k^-)/√2`, `P_k = −i(a_k^+ − a_k^-)/√2`,
//! * `H = ½ Σ_i {a_i^+, a_i^-}`.
//!
//! Physical constants from [`OscillatorConfig`] only scale the floating-point
//! values handed out for reporting: lengths by `√(ħ/mω)`, momenta by `√(mωħ)`
//! and energies by `ħω`.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::{anticommutator, commutator, RelationReport};
use crate::error::{Error, Result};
use crate::fock::{build_module, CaoSet, OccupationState, Operator, StatisticsFamily};
use crate::scalar::RadicalScalar;

/// Spatial dimension of the oscillator.
pub const DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorConfig {
    pub p: u32,
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
}

impl OscillatorConfig {
    /// Order `p` in natural units.
    pub fn natural(p: u32) -> Self {
        Self {
            p,
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::ZeroOrder);
        }
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(self.hbar) && ok(self.mass) && ok(self.omega) {
            Ok(())
        } else {
            Err(Error::InvalidConstants)
        }
    }

    pub fn length_unit(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    pub fn momentum_unit(&self) -> f64 {
        (self.mass * self.omega * self.hbar).sqrt()
    }

    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.omega
    }
}

/// Exact observables in natural units.
#[derive(Debug, Clone)]
pub struct ObservableSet {
    cao: CaoSet,
    pub hamiltonian: Operator,
    pub position: Vec<Operator>,
    pub momentum: Vec<Operator>,
    /// `R² = Σ_k R_k²`
    pub position_sq: Operator,
    /// `P² = Σ_k P_k²`
    pub momentum_sq: Operator,
    pub position_component_sq: Vec<Operator>,
    pub momentum_component_sq: Vec<Operator>,
}

/// Observables of the 3D oscillator on the order-`p` module of `sl(1|3)`.
pub fn build_observables(cfg: &OscillatorConfig) -> Result<ObservableSet> {
    cfg.validate()?;
    let module = build_module(StatisticsFamily::asuper(DIM, cfg.p))?;
    Ok(ObservableSet::from_cao(CaoSet::build(&module)?))
}

impl ObservableSet {
    /// Builds the observables from any set of CAOs, which need not satisfy the
    /// superalgebra relations (used for negative controls).
    pub fn from_cao(cao: CaoSet) -> Self {
        let half_root = RadicalScalar::sqrt_ratio(1, 2).expect("1/2");
        let minus_i_half_root = &-&RadicalScalar::i() * &half_root;
        let position: Vec<Operator> = (1..=cao.n())
            .map(|k| (cao.plus(k) + cao.minus(k)).scale(&half_root))
            .collect();
        let momentum: Vec<Operator> = (1..=cao.n())
            .map(|k| (cao.plus(k) - cao.minus(k)).scale(&minus_i_half_root))
            .collect();
        let position_component_sq: Vec<Operator> = position.iter().map(|r| r * r).collect();
        let momentum_component_sq: Vec<Operator> = momentum.iter().map(|p| p * p).collect();
        let sum = |ops: &[Operator]| ops[1..].iter().fold(ops[0].clone(), |acc, x| &acc + x);
        let position_sq = sum(&position_component_sq);
        let momentum_sq = sum(&momentum_component_sq);
        let anti: Vec<Operator> = (1..=cao.n())
            .map(|i| anticommutator(cao.plus(i), cao.minus(i)).expect("same module"))
            .collect();
        let hamiltonian = sum(&anti).scale(&RadicalScalar::from_ratio(1, 2));
        Self {
            cao,
            hamiltonian,
            position,
            momentum,
            position_sq,
            momentum_sq,
            position_component_sq,
            momentum_component_sq,
        }
    }

    pub fn cao(&self) -> &CaoSet {
        &self.cao
    }

    /// `H, R², P², R_1², …, R_n², P_1², …, P_n²` with display names.
    pub fn commuting_family(&self) -> Vec<(String, &Operator)> {
        let mut out = vec![
            ("H".to_string(), &self.hamiltonian),
            ("R^2".to_string(), &self.position_sq),
            ("P^2".to_string(), &self.momentum_sq),
        ];
        for (k, r) in self.position_component_sq.iter().enumerate() {
            out.push((format!("R{}^2", k + 1), r));
        }
        for (k, p) in self.momentum_component_sq.iter().enumerate() {
            out.push((format!("P{}^2", k + 1), p));
        }
        out
    }
}

fn i_times(x: &Operator) -> Operator {
    x.scale(&RadicalScalar::i())
}

/// Compatibility of Heisenberg and Hamilton equations as exact identities:
/// `[H, P_k] = iħmω² R_k`, `[H, R_k] = −(iħ/m) P_k`, and the CAO form
/// `Σ_i [{a_i^+, a_i^-}, a_k^±] = ∓2 a_k^±`.
pub fn check_compatibility(cfg: &OscillatorConfig) -> Result<Vec<RelationReport>> {
    Ok(compatibility_of(&build_observables(cfg)?))
}

pub fn compatibility_of(obs: &ObservableSet) -> Vec<RelationReport> {
    let h = &obs.hamiltonian;
    let c = obs.cao();
    let mut out = Vec::new();
    for k in 1..=c.n() {
        let (r, p) = (&obs.position[k - 1], &obs.momentum[k - 1]);
        out.push(RelationReport::compare(
            "[H,P_k] = i hbar m omega^2 R_k",
            vec![k],
            &commutator(h, p).expect("same module"),
            &i_times(r),
        ));
        out.push(RelationReport::compare(
            "[H,R_k] = -(i hbar/m) P_k",
            vec![k],
            &commutator(h, r).expect("same module"),
            &-&i_times(p),
        ));
    }
    let anti: Vec<Operator> = (1..=c.n())
        .map(|i| anticommutator(c.plus(i), c.minus(i)).expect("same module"))
        .collect();
    for k in 1..=c.n() {
        for (sign, name) in [
            (1i8, "sum_i [{a+_i,a-_i},a+_k] = -2 a+_k"),
            (-1, "sum_i [{a+_i,a-_i},a-_k] = 2 a-_k"),
        ] {
            let target = c.signed(sign, k);
            let lhs = anti
                .iter()
                .map(|x| commutator(x, target).expect("same module"))
                .fold(Operator::zero(c.module(), target.grade()), |acc, x| {
                    &acc + &x
                });
            let rhs = target.scale(&RadicalScalar::from_integer(-2 * i64::from(sign)));
            out.push(RelationReport::compare(name, vec![k], &lhs, &rhs));
        }
    }
    out
}

/// Heisenberg equations reproduce the Hamilton equations:
/// `(i/ħ)[H, R_k] = P_k/m` and `(i/ħ)[H, P_k] = −mω² R_k`.
pub fn equations_of_motion(obs: &ObservableSet) -> Vec<RelationReport> {
    let h = &obs.hamiltonian;
    let mut out = Vec::new();
    for (k, (r, p)) in obs.position.iter().zip(&obs.momentum).enumerate() {
        out.push(RelationReport::compare(
            "(i/hbar)[H,R_k] = P_k/m",
            vec![k + 1],
            &i_times(&commutator(h, r).expect("same module")),
            p,
        ));
        out.push(RelationReport::compare(
            "(i/hbar)[H,P_k] = -m omega^2 R_k",
            vec![k + 1],
            &i_times(&commutator(h, p).expect("same module")),
            &-r,
        ));
    }
    out
}

/// `X† = X` for `H`, every `R_k` and every `P_k`.
pub fn hermiticity(obs: &ObservableSet) -> Vec<RelationReport> {
    let mut out = vec![RelationReport::compare(
        "H^dagger = H",
        vec![],
        &obs.hamiltonian.adjoint(),
        &obs.hamiltonian,
    )];
    for (k, r) in obs.position.iter().enumerate() {
        out.push(RelationReport::compare(
            "R_k^dagger = R_k",
            vec![k + 1],
            &r.adjoint(),
            r,
        ));
    }
    for (k, p) in obs.momentum.iter().enumerate() {
        out.push(RelationReport::compare(
            "P_k^dagger = P_k",
            vec![k + 1],
            &p.adjoint(),
            p,
        ));
    }
    out
}

/// Canonical commutation relations `[R_j, P_k] = iħ δ_jk`. These are expected
/// to fail: the system is a non-canonical Wigner quantum system.
pub fn canonical_relations(obs: &ObservableSet) -> Vec<RelationReport> {
    let id = Operator::identity(obs.cao().module());
    let mut out = Vec::new();
    for (j, r) in obs.position.iter().enumerate() {
        for (k, p) in obs.momentum.iter().enumerate() {
            let rhs = if j == k {
                i_times(&id)
            } else {
                Operator::zero(obs.cao().module(), id.grade())
            };
            out.push(RelationReport::compare(
                "[R_j,P_k] = i hbar d_jk",
                vec![j + 1, k + 1],
                &commutator(r, p).expect("same module"),
                &rhs,
            ));
        }
    }
    out
}

/// All pairwise commutators of `H, R², P², R_i², P_i²` vanish.
pub fn check_commuting_family(cfg: &OscillatorConfig) -> Result<Vec<RelationReport>> {
    Ok(commuting_family_of(&build_observables(cfg)?))
}

pub fn commuting_family_of(obs: &ObservableSet) -> Vec<RelationReport> {
    let family = obs.commuting_family();
    let mut out = Vec::new();
    for a in 0..family.len() {
        for b in a + 1..family.len() {
            let (na, x) = &family[a];
            let (nb, y) = &family[b];
            out.push(RelationReport::from_residual(
                &format!("[{na},{nb}] = 0"),
                vec![a, b],
                &commutator(x, y).expect("same module"),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumLevel {
    /// Number of excited modes `q = θ_1 + θ_2 + θ_3`.
    pub q: u32,
    /// Energy in the units of the config.
    pub energy: f64,
    /// Exact energy in units of `ħω`.
    pub energy_exact: RadicalScalar,
    pub multiplicity: usize,
}

/// Energy levels read off the exact Hamiltonian, highest energy (q = 0) first.
///
/// Panics if the Hamiltonian is not diagonal with rational entries, which
/// would mean the CAOs are broken.
pub fn spectrum(cfg: &OscillatorConfig) -> Result<Vec<SpectrumLevel>> {
    let obs = build_observables(cfg)?;
    let h = &obs.hamiltonian;
    assert!(
        h.is_diagonal(),
        "Hamiltonian must be diagonal in the occupation basis"
    );
    let module = obs.cao().module();
    let mut levels: BTreeMap<BigRational, (u32, usize)> = BTreeMap::new();
    for (k, e) in h.diagonal().into_iter().enumerate() {
        let e = e.as_rational().expect("rational energy");
        let q = module.state(k).total();
        let slot = levels.entry(e).or_insert((q, 0));
        slot.0 = slot.0.min(q);
        slot.1 += 1;
    }
    Ok(levels
        .into_iter()
        .rev()
        .map(|(e, (q, multiplicity))| SpectrumLevel {
            q,
            energy: e.to_f64().unwrap_or(f64::NAN) * cfg.energy_unit(),
            energy_exact: RadicalScalar::from_rational(e),
            multiplicity,
        })
        .collect())
}

fn state_index(obs: &ObservableSet, state: &OccupationState) -> Result<usize> {
    obs.cao().module().require(state.as_slice())
}

/// Points where a position measurement can find the particle in a basis
/// state, as coordinates `(±√(p−q+θ_1), ±√(p−q+θ_2), ±√(p−q+θ_3))` in units
/// of `√(ħ/2mω)`. The coordinates are read off the exact `R_i²` eigenvalues.
/// Coincident points (a zero coordinate) are listed once.
///
/// Only defined for `p > 2`.
pub fn measurement_support(
    cfg: &OscillatorConfig,
    state: &OccupationState,
) -> Result<Vec<[RadicalScalar; 3]>> {
    if cfg.p <= 2 {
        return Err(Error::OrderTooLow(cfg.p));
    }
    let obs = build_observables(cfg)?;
    let k = state_index(&obs, state)?;
    // natural-unit eigenvalue λ of R_i² gives coordinate² = 2λ in units √(1/2)
    let axes: Vec<Vec<RadicalScalar>> = obs
        .position_component_sq
        .iter()
        .map(|r2| {
            let lambda = r2.entry(k, k).as_rational().expect("rational eigenvalue");
            let coord =
                RadicalScalar::sqrt_rational(&(lambda * BigRational::from_integer(2.into())))
                    .expect("representable square root");
            if coord.is_zero() {
                vec![coord]
            } else {
                vec![coord.clone(), -coord]
            }
        })
        .collect();
    let mut points = Vec::new();
    for x in &axes[0] {
        for y in &axes[1] {
            for z in &axes[2] {
                points.push([x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    Ok(points)
}

/// Exact first and second moments in natural units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactMoments {
    pub mean_r: Vec<RadicalScalar>,
    pub mean_p: Vec<RadicalScalar>,
    pub var_r: Vec<RadicalScalar>,
    pub var_p: Vec<RadicalScalar>,
    /// `ΔR_i ΔP_i` in units of `ħ`.
    pub product: Vec<RadicalScalar>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub state: OccupationState,
    pub q: u32,
    pub mean_r: Vec<f64>,
    pub mean_p: Vec<f64>,
    pub dr: Vec<f64>,
    pub dp: Vec<f64>,
    pub product: Vec<f64>,
    /// `((p−2)ħ/2, pħ/2)`
    pub window: (f64, f64),
    /// Exact check of `(p−2)ħ/2 ≤ ΔR_i ΔP_i ≤ pħ/2` per axis.
    pub within_window: Vec<bool>,
    /// Exact check of `ΔR_i ΔP_i ≤ ħ/2` per axis. This bound is only claimed
    /// for order 1; for larger `p` it fails on some states.
    pub within_half_hbar: Vec<bool>,
    pub exact: ExactMoments,
}

fn rational(x: &RadicalScalar) -> BigRational {
    x.as_rational().expect("rational moment")
}

/// Means, standard deviations and uncertainty products of `R_i`, `P_i` in a
/// basis state.
pub fn uncertainty_report(
    cfg: &OscillatorConfig,
    state: &OccupationState,
) -> Result<UncertaintyReport> {
    let obs = build_observables(cfg)?;
    let k = state_index(&obs, state)?;
    let expect = |op: &Operator| op.entry(k, k);
    let variance = |op: &Operator, sq: &Operator| {
        let m = expect(op);
        &expect(sq) - &(&m * &m)
    };
    let mean_r: Vec<RadicalScalar> = obs.position.iter().map(expect).collect();
    let mean_p: Vec<RadicalScalar> = obs.momentum.iter().map(expect).collect();
    let var_r: Vec<RadicalScalar> = obs
        .position
        .iter()
        .zip(&obs.position_component_sq)
        .map(|(r, sq)| variance(r, sq))
        .collect();
    let var_p: Vec<RadicalScalar> = obs
        .momentum
        .iter()
        .zip(&obs.momentum_component_sq)
        .map(|(p, sq)| variance(p, sq))
        .collect();
    let product_sq: Vec<BigRational> = var_r
        .iter()
        .zip(&var_p)
        .map(|(a, b)| rational(a) * rational(b))
        .collect();
    let product: Vec<RadicalScalar> = product_sq
        .iter()
        .map(|x| RadicalScalar::sqrt_rational(x).expect("representable square root"))
        .collect();

    let p = i64::from(cfg.p);
    let lo = BigRational::new((p - 2).into(), 2.into());
    let hi = BigRational::new(p.into(), 2.into());
    let half = BigRational::new(1.into(), 2.into());
    let within_window = product_sq
        .iter()
        .map(|x| (lo.is_negative() || &lo * &lo <= *x) && *x <= &hi * &hi)
        .collect();
    let within_half_hbar = product_sq.iter().map(|x| *x <= &half * &half).collect();

    let re = |x: &RadicalScalar| x.to_complex().re;
    let sqrt_re = |x: &RadicalScalar| re(x).max(0.0).sqrt();
    Ok(UncertaintyReport {
        state: state.clone(),
        q: state.total(),
        mean_r: mean_r.iter().map(|x| re(x) * cfg.length_unit()).collect(),
        mean_p: mean_p.iter().map(|x| re(x) * cfg.momentum_unit()).collect(),
        dr: var_r
            .iter()
            .map(|x| sqrt_re(x) * cfg.length_unit())
            .collect(),
        dp: var_p
            .iter()
            .map(|x| sqrt_re(x) * cfg.momentum_unit())
            .collect(),
        product: product.iter().map(|x| re(x) * cfg.hbar).collect(),
        window: ((p - 2) as f64 * cfg.hbar / 2.0, p as f64 * cfg.hbar / 2.0),
        within_window,
        within_half_hbar,
        exact: ExactMoments {
            mean_r,
            mean_p,
            var_r,
            var_p,
            product,
        },
    })
}

/// Heisenberg-picture position and momentum in floating point,
/// `R_k(t) = √(ħ/2mω)(a_k^+ e^{−iωt} + a_k^- e^{iωt})`,
/// `P_k(t) = −i√(mωħ/2)(a_k^+ e^{−iωt} − a_k^- e^{iωt})`.
#[derive(Debug, Clone)]
pub struct Evolution {
    cfg: OscillatorConfig,
    plus: Vec<Array2<Complex64>>,
    minus: Vec<Array2<Complex64>>,
}

#[derive(Debug, Clone)]
pub struct PhaseSpaceSnapshot {
    pub position: Vec<Array2<Complex64>>,
    pub momentum: Vec<Array2<Complex64>>,
}

impl Evolution {
    pub fn new(cfg: &OscillatorConfig) -> Result<Self> {
        cfg.validate()?;
        let module = build_module(StatisticsFamily::asuper(DIM, cfg.p))?;
        let cao = CaoSet::build(&module)?;
        Ok(Self {
            cfg: *cfg,
            plus: cao.creators().iter().map(Operator::to_dense).collect(),
            minus: cao.annihilators().iter().map(Operator::to_dense).collect(),
        })
    }

    fn phases(&self, t: f64) -> (Complex64, Complex64) {
        let wt = self.cfg.omega * t;
        (
            Complex64::from_polar(1.0, -wt),
            Complex64::from_polar(1.0, wt),
        )
    }

    fn r_scale(&self) -> f64 {
        (self.cfg.hbar / (2.0 * self.cfg.mass * self.cfg.omega)).sqrt()
    }

    fn p_scale(&self) -> f64 {
        (self.cfg.mass * self.cfg.omega * self.cfg.hbar / 2.0).sqrt()
    }

    pub fn position(&self, t: f64) -> Vec<Array2<Complex64>> {
        let (em, ep) = self.phases(t);
        let s = Complex64::new(self.r_scale(), 0.0);
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(a, b)| (a * em + b * ep) * s)
            .collect()
    }

    pub fn momentum(&self, t: f64) -> Vec<Array2<Complex64>> {
        let (em, ep) = self.phases(t);
        let s = Complex64::new(0.0, -self.p_scale());
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(a, b)| (a * em - b * ep) * s)
            .collect()
    }

    /// Momentum with a plus sign between the two terms, identical in form to
    /// `R_k(t)`. Kept for comparison: it is not hermitian and does not satisfy
    /// `dR/dt = P/m`.
    pub fn momentum_same_sign(&self, t: f64) -> Vec<Array2<Complex64>> {
        let (em, ep) = self.phases(t);
        let s = Complex64::new(0.0, -self.p_scale());
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(a, b)| (a * em + b * ep) * s)
            .collect()
    }

    pub fn at(&self, t: f64) -> PhaseSpaceSnapshot {
        PhaseSpaceSnapshot {
            position: self.position(t),
            momentum: self.momentum(t),
        }
    }
}

/// `R(t)` and `P(t)` in physical units.
pub fn evolve(cfg: &OscillatorConfig, t: f64) -> Result<PhaseSpaceSnapshot> {
    Ok(Evolution::new(cfg)?.at(t))
}

/// Exact observables converted to floating point in physical units, for
/// comparison with [`evolve`] at `t = 0`.
pub fn physical_phase_space(cfg: &OscillatorConfig, obs: &ObservableSet) -> PhaseSpaceSnapshot {
    let scale = |ops: &[Operator], unit: f64| -> Vec<Array2<Complex64>> {
        ops.iter()
            .map(|o| o.to_dense() * Complex64::new(unit, 0.0))
            .collect()
    };
    PhaseSpaceSnapshot {
        position: scale(&obs.position, cfg.length_unit()),
        momentum: scale(&obs.momentum, cfg.momentum_unit()),
    }
}

/// Largest entry modulus of `a − b`.
pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}
