//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fockalg::algebra::{
    all_pass, interior_selector, verify_a_relations, verify_adjointness, verify_asuper_relations,
    verify_gl_relations, verify_para_bose_relations, verify_pauli_principle, RelationReport,
};
use fockalg::fock::{
    build_module, CaoSet, FockModule, OccupationState, PhaseConvention, StatisticsFamily,
};
use fockalg::limits::{boson_limit_deviation, fermi_witness, LimitProbe};
use fockalg::oscillator::{
    build_observables, canonical_relations, check_commuting_family, check_compatibility, evolve,
    max_abs, max_abs_diff, measurement_support, physical_phase_space, spectrum, uncertainty_report,
    Evolution, OscillatorConfig,
};
use fockalg::RadicalScalar;
use ndarray::Array2;
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn first_failure(reports: &[RelationReport]) -> String {
    reports
        .iter()
        .find(|r| !r.exact_pass)
        .map(|r| {
            format!(
                "{} {:?} ({} n={} p={}) residual {:.3e}",
                r.identity, r.indices, r.family, r.n, r.p, r.residual_max_abs
            )
        })
        .unwrap_or_default()
}

fn suite(reports: Vec<RelationReport>, label: &str) -> Result<usize, String> {
    require(
        all_pass(&reports),
        format!("{label}: {}", first_failure(&reports)),
    )?;
    Ok(reports.len())
}

fn relation_suites() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=4 {
        for p in 1..=6 {
            count += suite(verify_a_relations(n, p).map_err(|e| e.to_string())?, "A")?;
        }
    }
    for p in 1..=6 {
        let reports =
            verify_asuper_relations(3, p, PhaseConvention::Standard).map_err(|e| e.to_string())?;
        count += suite(reports, "A-super")?;
    }
    for n in 1..=3 {
        for p in 1..=4 {
            count += suite(verify_gl_relations(n, p).map_err(|e| e.to_string())?, "gl")?;
        }
    }
    let elapsed = start.elapsed();
    require(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{count} instances exact in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn pauli_principle() -> Outcome {
    let mut count = 0;
    for p in 1..=4 {
        count += suite(
            verify_pauli_principle(3, p).map_err(|e| e.to_string())?,
            "pauli",
        )?;
    }
    Ok(format!(
        "{count} monomials of degree p+1 annihilate the vacuum"
    ))
}

fn cao_set(family: StatisticsFamily, phase: PhaseConvention) -> CaoSet {
    CaoSet::build(&FockModule::new(family, phase).unwrap()).unwrap()
}

fn adjointness() -> Outcome {
    let mut families: Vec<StatisticsFamily> = (1..=4)
        .flat_map(|n| (1..=6).map(move |p| StatisticsFamily::a(n, p)))
        .collect();
    families.extend((1..=6).map(|p| StatisticsFamily::asuper(3, p)));
    let mut count = 0;
    for &f in &families {
        count += suite(
            verify_adjointness(&cao_set(f, PhaseConvention::Standard)),
            "adjoint",
        )?;
    }
    let failing: usize = (1..=6)
        .map(|p| {
            let c = cao_set(StatisticsFamily::asuper(3, p), PhaseConvention::AsPrinted);
            verify_adjointness(&c)
                .iter()
                .filter(|r| !r.exact_pass)
                .count()
        })
        .sum();
    require(failing > 0, "as-printed phase produced no failure")?;
    Ok(format!(
        "{count} pairs adjoint; as-printed phase fails {failing} pairs"
    ))
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn oscillator_spectrum() -> Outcome {
    let levels = spectrum(&OscillatorConfig::natural(3)).map_err(|e| e.to_string())?;
    let energies: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    let mults: Vec<usize> = levels.iter().map(|l| l.multiplicity).collect();
    require(
        energies == [4.5, 3.5, 2.5, 1.5],
        format!("p=3 energies {energies:?}"),
    )?;
    require(
        mults == [1, 3, 3, 1],
        format!("p=3 multiplicities {mults:?}"),
    )?;
    for p in 1..=6u32 {
        let levels = spectrum(&OscillatorConfig::natural(p)).map_err(|e| e.to_string())?;
        require(
            levels.len() == p.min(3) as usize + 1,
            format!("p={p}: {} levels", levels.len()),
        )?;
        for (q, level) in levels.iter().enumerate() {
            let q = q as u32;
            let expected = RadicalScalar::from_ratio(i64::from(3 * p - 2 * q), 2);
            require(
                level.q == q && level.energy_exact == expected,
                format!("p={p} q={q}: {}", level.energy_exact),
            )?;
            require(
                level.multiplicity == binomial(3, q),
                format!("p={p} q={q}: mult {}", level.multiplicity),
            )?;
        }
        for w in levels.windows(2) {
            require(
                &w[0].energy_exact - &w[1].energy_exact == RadicalScalar::one(),
                format!("p={p}: uneven spacing"),
            )?;
        }
    }
    Ok("p=3 levels {4.5,3.5,2.5,1.5} x {1,3,3,1}; min(p,3)+1 unit-spaced levels for p=1..6".into())
}

fn square_commutative_geometry() -> Outcome {
    for p in 1..=6 {
        let reports =
            check_commuting_family(&OscillatorConfig::natural(p)).map_err(|e| e.to_string())?;
        require(
            reports.len() == 36,
            format!("p={p}: {} pairs", reports.len()),
        )?;
        suite(reports, "commuting")?;
    }
    let mut worst = 0.0f64;
    for p in 1..=6 {
        let obs = build_observables(&OscillatorConfig::natural(p)).map_err(|e| e.to_string())?;
        let ccr = canonical_relations(&obs);
        let max = ccr.iter().map(|r| r.residual_max_abs).fold(0.0, f64::max);
        require(
            !all_pass(&ccr) && max > 0.0,
            format!("p={p}: canonical relations hold"),
        )?;
        worst = worst.max(max);
    }
    Ok(format!(
        "36 squares commute for p=1..6; canonical residual up to {worst:.3}"
    ))
}

fn measurement() -> Outcome {
    let cfg = OscillatorConfig::natural(3);
    let points =
        measurement_support(&cfg, &OccupationState(vec![1, 1, 0])).map_err(|e| e.to_string())?;
    let pm = |x: RadicalScalar| [x.clone(), -x];
    let mut expected = BTreeSet::new();
    for x in pm(RadicalScalar::sqrt(2)) {
        for y in pm(RadicalScalar::sqrt(2)) {
            for z in pm(RadicalScalar::one()) {
                expected.insert(format!("({x}, {y}, {z})"));
            }
        }
    }
    let got: BTreeSet<String> = points
        .iter()
        .map(|[x, y, z]| format!("({x}, {y}, {z})"))
        .collect();
    require(
        points.len() == 8 && got == expected,
        format!("support {got:?}"),
    )?;
    require(
        measurement_support(
            &OscillatorConfig::natural(2),
            &OccupationState(vec![0, 0, 0]),
        )
        .is_err(),
        "p=2 accepted",
    )?;
    Ok("p=3 theta=(1,1,0): {±√2}x{±√2}x{±1}".into())
}

fn uncertainty_window() -> Outcome {
    let mut states = 0;
    for p in 1..=6u32 {
        let cfg = OscillatorConfig::natural(p);
        let module = build_module(StatisticsFamily::asuper(3, p)).map_err(|e| e.to_string())?;
        for s in module.basis() {
            let rep = uncertainty_report(&cfg, s).map_err(|e| e.to_string())?;
            for (i, prod) in rep.exact.product.iter().enumerate() {
                let theta = s.as_slice()[i];
                let expected = RadicalScalar::from_ratio(i64::from(p - s.total() + theta), 2);
                require(
                    *prod == expected,
                    format!("p={p} {s} axis {}: {prod}", i + 1),
                )?;
            }
            require(
                rep.within_window.iter().all(|&b| b),
                format!("p={p} {s} outside window"),
            )?;
            if p == 1 {
                require(
                    rep.within_half_hbar.iter().all(|&b| b),
                    format!("{s} exceeds hbar/2"),
                )?;
            }
            states += 1;
        }
    }
    Ok(format!(
        "{states} basis states inside [(p-2)/2, p/2]; p=1 products <= 1/2"
    ))
}

fn commutator_dense(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    a.dot(b) - b.dot(a)
}

fn compatibility() -> Outcome {
    for p in 1..=6 {
        suite(
            check_compatibility(&OscillatorConfig::natural(p)).map_err(|e| e.to_string())?,
            "compatibility",
        )?;
    }
    // physical units, floating point
    let cfg = OscillatorConfig {
        p: 3,
        hbar: 0.7,
        mass: 1.9,
        omega: 2.3,
    };
    let obs = build_observables(&cfg).map_err(|e| e.to_string())?;
    let h = obs.hamiltonian.to_dense() * Complex64::new(cfg.energy_unit(), 0.0);
    let phys = physical_phase_space(&cfg, &obs);
    let i_hbar = Complex64::new(0.0, cfg.hbar);
    for k in 0..3 {
        let (r, p) = (&phys.position[k], &phys.momentum[k]);
        let lhs = commutator_dense(&h, p);
        let rhs = r * (i_hbar * cfg.mass * cfg.omega * cfg.omega);
        require(
            max_abs_diff(&lhs, &rhs) <= 1e-12 * max_abs(&rhs),
            format!("[H,P_{}] physical", k + 1),
        )?;
        let lhs = commutator_dense(&h, r);
        let rhs = p * (-i_hbar / cfg.mass);
        require(
            max_abs_diff(&lhs, &rhs) <= 1e-12 * max_abs(&rhs),
            format!("[H,R_{}] physical", k + 1),
        )?;
    }
    Ok("exact for p=1..6; physical-unit form within 1e-12".into())
}

fn boson_limit() -> Outcome {
    let probe = LimitProbe {
        n: 2,
        p_list: vec![8, 16, 32, 64],
        cutoff: 2,
    };
    let rows = boson_limit_deviation(&probe).map_err(|e| e.to_string())?;
    for row in &rows {
        // max over l_1 + l_2 <= 2 of (l_1 + l_2 + l_i) is 4
        let expected = RadicalScalar::from_ratio(4, i64::from(row.p));
        require(
            row.deviation_exact == expected && row.closed_form == expected,
            format!("p={}: {}", row.p, row.deviation_exact),
        )?;
        require(
            row.creators_commute,
            format!("p={}: creators do not commute", row.p),
        )?;
    }
    for w in rows.windows(2) {
        let doubled = &w[1].deviation_exact * &RadicalScalar::from_integer(2);
        require(
            doubled == w[0].deviation_exact,
            format!("p={} -> {} does not halve", w[0].p, w[1].p),
        )?;
    }
    let devs: Vec<String> = rows.iter().map(|r| r.deviation_exact.to_string()).collect();
    Ok(format!("deviations {} halve exactly", devs.join(", ")))
}

fn parafermi_witness() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        count += suite(fermi_witness(n).map_err(|e| e.to_string())?, "fermi")?;
    }
    for n in [1, 2] {
        let module =
            build_module(StatisticsFamily::truncated_bose(n, 6)).map_err(|e| e.to_string())?;
        let c = CaoSet::build(&module).map_err(|e| e.to_string())?;
        count += suite(
            verify_para_bose_relations(&c, interior_selector(&module, 2)),
            "bose",
        )?;
    }
    Ok(format!(
        "{count} instances exact (Fermi n=2,3; truncated Bose cutoff 6 interior)"
    ))
}

fn dynamics() -> Outcome {
    const STEP: f64 = 1e-5;
    let configs = [
        OscillatorConfig::natural(3),
        OscillatorConfig {
            p: 5,
            hbar: 0.4,
            mass: 2.5,
            omega: 0.9,
        },
    ];
    let rel = |a: &Array2<Complex64>, b: &Array2<Complex64>| max_abs_diff(a, b) / max_abs(b);
    let mut worst = 0.0f64;
    for cfg in configs {
        let obs = build_observables(&cfg).map_err(|e| e.to_string())?;
        let exact = physical_phase_space(&cfg, &obs);
        let t0 = evolve(&cfg, 0.0).map_err(|e| e.to_string())?;
        for k in 0..3 {
            let d = max_abs_diff(&t0.position[k], &exact.position[k])
                .max(max_abs_diff(&t0.momentum[k], &exact.momentum[k]));
            require(d <= 1e-12, format!("{cfg:?}: t=0 mismatch {d:e}"))?;
        }
        let evo = Evolution::new(&cfg).map_err(|e| e.to_string())?;
        for t in [0.0, 0.5, 1.7, 3.3] {
            let (rf, rb) = (evo.position(t + STEP), evo.position(t - STEP));
            let (pf, pb) = (evo.momentum(t + STEP), evo.momentum(t - STEP));
            let (r, p) = (evo.position(t), evo.momentum(t));
            for k in 0..3 {
                let dr = (&rf[k] - &rb[k]) / Complex64::new(2.0 * STEP, 0.0);
                let dp = (&pf[k] - &pb[k]) / Complex64::new(2.0 * STEP, 0.0);
                let e1 = rel(&dr, &(&p[k] / Complex64::new(cfg.mass, 0.0)));
                let e2 = rel(
                    &dp,
                    &(&r[k] * Complex64::new(-cfg.mass * cfg.omega * cfg.omega, 0.0)),
                );
                worst = worst.max(e1).max(e2);
                require(
                    e1 < 1e-6 && e2 < 1e-6,
                    format!("{cfg:?} t={t}: {e1:e} {e2:e}"),
                )?;
            }
        }
        let period = 2.0 * std::f64::consts::PI / cfg.omega;
        let (a, b) = (evo.at(0.0), evo.at(period));
        for k in 0..3 {
            let d = max_abs_diff(&a.position[k], &b.position[k])
                .max(max_abs_diff(&a.momentum[k], &b.momentum[k]));
            require(d < 1e-10, format!("{cfg:?}: recurrence {d:e}"))?;
        }
    }
    Ok(format!(
        "t=0 exact, Hamilton equations to {worst:.1e}, period recurrence < 1e-10"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("relation suites exact", relation_suites),
        ("Pauli principle", pauli_principle),
        ("adjointness", adjointness),
        ("oscillator spectrum", oscillator_spectrum),
        ("square-commutative geometry", square_commutative_geometry),
        ("measurement support", measurement),
        ("uncertainty window", uncertainty_window),
        ("compatibility conditions", compatibility),
        ("boson limit", boson_limit),
        ("paraFermi / paraBose witnesses", parafermi_witness),
        ("Heisenberg dynamics", dynamics),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
