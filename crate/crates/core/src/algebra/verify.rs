//! Exhaustive relation suites. Every suite enumerates its index tuples in
//! lexicographic order and returns one [`RelationReport`] per instance.

use rayon::prelude::*;
use serde::Serialize;

use super::bracket::{anti, comm, sbr};
use super::span::solve_in_span;
use crate::error::Result;
use crate::fock::CaoSet;
use crate::fock::{
    build_module, gl_generator, FamilyKind, FockModule, Operator, PhaseConvention, StateVector,
    StatisticsFamily,
};
use crate::scalar::RadicalScalar;

/// Verdict for one identity instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub identity: String,
    pub indices: Vec<usize>,
    /// Largest residual entry modulus; exactly `0.0` when `exact_pass`.
    pub residual_max_abs: f64,
    pub exact_pass: bool,
    pub family: FamilyKind,
    pub n: usize,
    pub p: u32,
}

impl RelationReport {
    pub(crate) fn from_residual(identity: &str, indices: Vec<usize>, residual: &Operator) -> Self {
        let module = residual.module();
        Self {
            identity: identity.to_string(),
            indices,
            residual_max_abs: residual.max_abs(),
            exact_pass: residual.is_zero(),
            family: module.kind(),
            n: module.n(),
            p: module.p(),
        }
    }

    /// One verdict for several residuals that must all vanish.
    fn joint(identity: &str, indices: Vec<usize>, residuals: &[Operator]) -> Self {
        let first = Self::from_residual(identity, indices, &residuals[0]);
        residuals[1..].iter().fold(first, |acc, r| Self {
            residual_max_abs: acc.residual_max_abs.max(r.max_abs()),
            exact_pass: acc.exact_pass && r.is_zero(),
            ..acc
        })
    }

    pub(crate) fn compare(
        identity: &str,
        indices: Vec<usize>,
        lhs: &Operator,
        rhs: &Operator,
    ) -> Self {
        Self::from_residual(identity, indices, &(lhs - rhs))
    }
}

/// Suite name with instance and failure counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub instances: usize,
    pub failures: usize,
}

impl SuiteSummary {
    pub fn of(suite: &str, reports: &[RelationReport]) -> Self {
        Self {
            suite: suite.to_string(),
            instances: reports.len(),
            failures: reports.iter().filter(|r| !r.exact_pass).count(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl std::fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} instances, {} failures",
            self.suite, self.instances, self.failures
        )
    }
}

pub fn all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(|r| r.exact_pass)
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `Σ c_k · x_k` with integer weights; zero weights are skipped.
fn combo(zero: &Operator, terms: &[(i64, &Operator)]) -> Operator {
    terms.iter().fold(zero.clone(), |acc, (c, x)| {
        if *c == 0 {
            acc
        } else {
            &acc + &x.scale(&RadicalScalar::from_integer(*c))
        }
    })
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(n * n * n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

/// Triple relations and commutativity of the A-statistics CAOs:
///
/// `[[a_i^+, a_j^-], a_k^+] = δ_jk a_i^+ + δ_ij a_k^+`,
/// `[[a_i^+, a_j^-], a_k^-] = −δ_ik a_j^- − δ_ij a_k^-`,
/// `[a_i^+, a_j^+] = [a_i^-, a_j^-] = 0`.
pub fn verify_a_relations(n: usize, p: u32) -> Result<Vec<RelationReport>> {
    let module = build_module(StatisticsFamily::a(n, p))?;
    Ok(a_relations_of(&CaoSet::build(&module)?))
}

/// The A-statistics relations evaluated on an arbitrary CAO set (negative controls).
pub fn a_relations_of(c: &CaoSet) -> Vec<RelationReport> {
    let n = c.n();
    let zero = Operator::zero(c.module(), c.plus(1).grade());
    let mut out: Vec<RelationReport> = triples(n)
        .into_par_iter()
        .flat_map_iter(|(i, j, k)| {
            let inner = comm(c.plus(i), c.minus(j));
            let plus = RelationReport::compare(
                "[[a+_i,a-_j],a+_k] = d_jk a+_i + d_ij a+_k",
                vec![i, j, k],
                &comm(&inner, c.plus(k)),
                &combo(&zero, &[(delta(j, k), c.plus(i)), (delta(i, j), c.plus(k))]),
            );
            let minus = RelationReport::compare(
                "[[a+_i,a-_j],a-_k] = -d_ik a-_j - d_ij a-_k",
                vec![i, j, k],
                &comm(&inner, c.minus(k)),
                &combo(
                    &zero,
                    &[(-delta(i, k), c.minus(j)), (-delta(i, j), c.minus(k))],
                ),
            );
            [plus, minus]
        })
        .collect();
    out.extend(
        pairs(n)
            .into_par_iter()
            .map(|(i, j)| {
                RelationReport::joint(
                    "[a+_i,a+_j] = [a-_i,a-_j] = 0",
                    vec![i, j],
                    &[comm(c.plus(i), c.plus(j)), comm(c.minus(i), c.minus(j))],
                )
            })
            .collect::<Vec<_>>(),
    );
    out
}

/// Triple relations of the `sl(1|n)` CAOs, using the supercommutator:
///
/// `[{a_i^+, a_j^-}, a_k^+] = δ_jk a_i^+ − δ_ij a_k^+`,
/// `[{a_i^+, a_j^-}, a_k^-] = −δ_ik a_j^- + δ_ij a_k^-`,
/// `{a_i^+, a_j^+} = {a_i^-, a_j^-} = 0`.
pub fn verify_asuper_relations(
    n: usize,
    p: u32,
    phase: PhaseConvention,
) -> Result<Vec<RelationReport>> {
    let module = FockModule::new(StatisticsFamily::asuper(n, p), phase)?;
    Ok(asuper_relations_of(&CaoSet::build(&module)?))
}

pub fn asuper_relations_of(c: &CaoSet) -> Vec<RelationReport> {
    let n = c.n();
    let zero = Operator::zero(c.module(), c.plus(1).grade());
    let mut out: Vec<RelationReport> = triples(n)
        .into_par_iter()
        .flat_map_iter(|(i, j, k)| {
            let inner = sbr(c.plus(i), c.minus(j));
            let plus = RelationReport::compare(
                "[{a+_i,a-_j},a+_k] = d_jk a+_i - d_ij a+_k",
                vec![i, j, k],
                &sbr(&inner, c.plus(k)),
                &combo(
                    &zero,
                    &[(delta(j, k), c.plus(i)), (-delta(i, j), c.plus(k))],
                ),
            );
            let minus = RelationReport::compare(
                "[{a+_i,a-_j},a-_k] = -d_ik a-_j + d_ij a-_k",
                vec![i, j, k],
                &sbr(&inner, c.minus(k)),
                &combo(
                    &zero,
                    &[(-delta(i, k), c.minus(j)), (delta(i, j), c.minus(k))],
                ),
            );
            [plus, minus]
        })
        .collect();
    out.extend(
        pairs(n)
            .into_par_iter()
            .map(|(i, j)| {
                RelationReport::joint(
                    "{a+_i,a+_j} = {a-_i,a-_j} = 0",
                    vec![i, j],
                    &[sbr(c.plus(i), c.plus(j)), sbr(c.minus(i), c.minus(j))],
                )
            })
            .collect::<Vec<_>>(),
    );
    out
}

/// `(a_i^+)† = a_i^-` for every mode.
pub fn verify_adjointness(c: &CaoSet) -> Vec<RelationReport> {
    (1..=c.n())
        .map(|i| {
            RelationReport::compare(
                "adjoint(a+_i) = a-_i",
                vec![i],
                &c.plus(i).adjoint(),
                c.minus(i),
            )
        })
        .collect()
}

/// Vacuum condition `a_i^- a_j^+ |0⟩ = δ_ij p |0⟩`, the vacuum being basis index 0.
pub fn verify_vacuum_condition(c: &CaoSet, p_expected: u32) -> Vec<RelationReport> {
    let module = c.module();
    pairs(c.n())
        .into_iter()
        .map(|(i, j)| {
            let image = (c.minus(i) * c.plus(j)).column(0);
            let expected = StateVector::basis(0).scale(&RadicalScalar::from_integer(
                delta(i, j) * i64::from(p_expected),
            ));
            let residual = vector_residual(module, &image, &expected);
            RelationReport::from_residual("a-_i a+_j |0> = d_ij p |0>", vec![i, j], &residual)
        })
        .collect()
}

/// Difference of two vectors stored as a single-column operator, so that it
/// reports like any other residual.
fn vector_residual(
    module: &std::sync::Arc<FockModule>,
    got: &StateVector,
    expected: &StateVector,
) -> Operator {
    let diff = got
        .components()
        .map(|(k, v)| (k, 0, v.clone()))
        .chain(expected.components().map(|(k, v)| (k, 0, -v)));
    Operator::from_entries(module, crate::fock::Grade::Even, diff).expect("indices within module")
}

/// Green's paraFermi triple relations (plain commutators) and the order
/// condition `f_i^- f_j^+ |0⟩ = δ_ij p |0⟩`:
///
/// `[[f_i^+, f_j^-], f_k^+] = 2δ_jk f_i^+`, `[[f_i^+, f_j^-], f_k^-] = −2δ_ik f_j^-`,
/// `[[f_i^+, f_j^+], f_k^+] = [[f_i^-, f_j^-], f_k^-] = 0`.
pub fn verify_para_fermi_relations(c: &CaoSet, p_expected: u32) -> Vec<RelationReport> {
    let zero = Operator::zero(c.module(), c.plus(1).grade());
    let mut out: Vec<RelationReport> = triples(c.n())
        .into_par_iter()
        .flat_map_iter(|(i, j, k)| {
            let mixed = comm(c.plus(i), c.minus(j));
            let idx = vec![i, j, k];
            [
                RelationReport::compare(
                    "[[f+_i,f-_j],f+_k] = 2 d_jk f+_i",
                    idx.clone(),
                    &comm(&mixed, c.plus(k)),
                    &combo(&zero, &[(2 * delta(j, k), c.plus(i))]),
                ),
                RelationReport::compare(
                    "[[f+_i,f-_j],f-_k] = -2 d_ik f-_j",
                    idx.clone(),
                    &comm(&mixed, c.minus(k)),
                    &combo(&zero, &[(-2 * delta(i, k), c.minus(j))]),
                ),
                RelationReport::from_residual(
                    "[[f+_i,f+_j],f+_k] = 0",
                    idx.clone(),
                    &comm(&comm(c.plus(i), c.plus(j)), c.plus(k)),
                ),
                RelationReport::from_residual(
                    "[[f-_i,f-_j],f-_k] = 0",
                    idx,
                    &comm(&comm(c.minus(i), c.minus(j)), c.minus(k)),
                ),
            ]
        })
        .collect();
    out.extend(verify_vacuum_condition(c, p_expected));
    out
}

/// Basis indices at least `margin` quanta below the cutoff in every mode.
pub fn interior_selector(module: &FockModule, margin: u32) -> impl Fn(usize) -> bool + Sync + '_ {
    let cutoff = module.p();
    move |k| {
        module
            .state(k)
            .as_slice()
            .iter()
            .all(|&l| l + margin <= cutoff)
    }
}

/// Green's paraBose triple relations together with the Bose relations
/// `[b_i^-, b_j^+] = δ_ij`, `[b_i^±, b_j^±] = 0`, evaluated only on the basis
/// vectors picked by `interior`:
///
/// `[{b_i^+, b_j^-}, b_k^+] = 2δ_jk b_i^+`, `[{b_i^+, b_j^-}, b_k^-] = −2δ_ik b_j^-`,
/// `[{b_i^+, b_j^+}, b_k^+] = [{b_i^-, b_j^-}, b_k^-] = 0`.
pub fn verify_para_bose_relations<F>(c: &CaoSet, interior: F) -> Vec<RelationReport>
where
    F: Fn(usize) -> bool + Sync,
{
    let zero = Operator::zero(c.module(), c.plus(1).grade());
    let on_interior = |identity: &str, idx: Vec<usize>, residual: Operator| {
        RelationReport::from_residual(identity, idx, &residual.restrict_columns(&interior))
    };
    let mut out: Vec<RelationReport> = triples(c.n())
        .into_par_iter()
        .flat_map_iter(|(i, j, k)| {
            let mixed = anti(c.plus(i), c.minus(j));
            let idx = vec![i, j, k];
            [
                on_interior(
                    "[{b+_i,b-_j},b+_k] = 2 d_jk b+_i",
                    idx.clone(),
                    &comm(&mixed, c.plus(k)) - &combo(&zero, &[(2 * delta(j, k), c.plus(i))]),
                ),
                on_interior(
                    "[{b+_i,b-_j},b-_k] = -2 d_ik b-_j",
                    idx.clone(),
                    &comm(&mixed, c.minus(k)) - &combo(&zero, &[(-2 * delta(i, k), c.minus(j))]),
                ),
                on_interior(
                    "[{b+_i,b+_j},b+_k] = 0",
                    idx.clone(),
                    comm(&anti(c.plus(i), c.plus(j)), c.plus(k)),
                ),
                on_interior(
                    "[{b-_i,b-_j},b-_k] = 0",
                    idx,
                    comm(&anti(c.minus(i), c.minus(j)), c.minus(k)),
                ),
            ]
        })
        .collect();
    out.extend(bose_relations(c, &interior));
    out
}

/// Canonical Bose relations restricted to the selected columns.
pub fn bose_relations<F>(c: &CaoSet, keep: &F) -> Vec<RelationReport>
where
    F: Fn(usize) -> bool + Sync,
{
    let id = Operator::identity(c.module());
    pairs(c.n())
        .into_par_iter()
        .flat_map_iter(|(i, j)| {
            let ccr =
                &comm(c.minus(i), c.plus(j)) - &id.scale(&RadicalScalar::from_integer(delta(i, j)));
            [
                RelationReport::from_residual(
                    "[b-_i,b+_j] = d_ij",
                    vec![i, j],
                    &ccr.restrict_columns(keep),
                ),
                RelationReport::from_residual(
                    "[b+_i,b+_j] = 0",
                    vec![i, j],
                    &comm(c.plus(i), c.plus(j)).restrict_columns(keep),
                ),
                RelationReport::from_residual(
                    "[b-_i,b-_j] = 0",
                    vec![i, j],
                    &comm(c.minus(i), c.minus(j)).restrict_columns(keep),
                ),
            ]
        })
        .collect()
}

/// `[e_ab, e_cd] = δ_cb e_ad − δ_ad e_cb` for all `a, b, c, d ∈ 0..=n`, plus
/// the central condition `Σ_a e_aa = p·1`.
pub fn verify_gl_relations(n: usize, p: u32) -> Result<Vec<RelationReport>> {
    let module = build_module(StatisticsFamily::a(n, p))?;
    let size = n + 1;
    let mut e = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            e.push(gl_generator(&module, a, b)?);
        }
    }
    let gen = |a: usize, b: usize| &e[a * size + b];
    let zero = Operator::zero(&module, gen(0, 0).grade());
    let quads: Vec<[usize; 4]> = (0..size.pow(4))
        .map(|code| {
            [
                code / size.pow(3),
                code / size.pow(2) % size,
                code / size % size,
                code % size,
            ]
        })
        .collect();
    let mut out: Vec<RelationReport> = quads
        .into_par_iter()
        .map(|[a, b, c, d]| {
            RelationReport::compare(
                "[e_ab,e_cd] = d_cb e_ad - d_ad e_cb",
                vec![a, b, c, d],
                &comm(gen(a, b), gen(c, d)),
                &combo(
                    &zero,
                    &[(delta(c, b), gen(a, d)), (-delta(a, d), gen(c, b))],
                ),
            )
        })
        .collect();
    let trace = (0..size).fold(zero.clone(), |acc, a| &acc + gen(a, a));
    out.push(RelationReport::compare(
        "sum_a e_aa = p",
        vec![],
        &trace,
        &Operator::scalar(&module, RadicalScalar::from_integer(p.into())),
    ));
    Ok(out)
}

/// Every creation monomial of total degree `p + 1` annihilates the vacuum.
pub fn verify_pauli_principle(n: usize, p: u32) -> Result<Vec<RelationReport>> {
    let module = build_module(StatisticsFamily::a(n, p))?;
    let c = CaoSet::build(&module)?;
    let degree = p + 1;
    let mut exponents = Vec::new();
    compositions(n, degree, &mut vec![], &mut exponents);
    Ok(exponents
        .into_iter()
        .map(|ls| {
            let mut v = StateVector::basis(0);
            for (mode, &l) in ls.iter().enumerate().rev() {
                for _ in 0..l {
                    v = c.plus(mode + 1).apply(&v);
                }
            }
            let residual = vector_residual(&module, &v, &StateVector::default());
            RelationReport::from_residual(
                "(a+_1)^l1 ... (a+_n)^ln |0> = 0",
                ls.iter().map(|&l| l as usize).collect(),
                &residual,
            )
        })
        .collect())
}

/// All `n`-tuples of non-negative integers summing to `total`, lexicographic.
fn compositions(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == n {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(n, total - first, prefix, out);
        prefix.pop();
    }
}

/// Lie closure of the A-statistics CAOs: every `[x, y]` and `[x, [y, z]]` with
/// `x, y, z` among the `a_i^±` lies in the span of `{a_i^±, e_ab}`.
///
/// Membership is decided by exact Gaussian elimination; an instance fails when
/// the target is not in the span.
pub fn verify_lie_closure(n: usize, p: u32) -> Result<Vec<RelationReport>> {
    let module = build_module(StatisticsFamily::a(n, p))?;
    let c = CaoSet::build(&module)?;
    let mut span: Vec<Operator> = c.creators().to_vec();
    span.extend(c.annihilators().iter().cloned());
    for a in 0..=n {
        for b in 0..=n {
            span.push(gl_generator(&module, a, b)?);
        }
    }
    // CAO labels: 1..=n for a_i^+, n+1..=2n for a_i^-
    let cao = |k: usize| if k <= n { c.plus(k) } else { c.minus(k - n) };
    let labels: Vec<usize> = (1..=2 * n).collect();
    let mut targets = Vec::new();
    for &x in &labels {
        for &y in &labels {
            targets.push(("[x,y] in span", vec![x, y], comm(cao(x), cao(y))));
        }
    }
    for &x in &labels {
        for &y in &labels {
            for &z in &labels {
                targets.push((
                    "[x,[y,z]] in span",
                    vec![x, y, z],
                    comm(cao(x), &comm(cao(y), cao(z))),
                ));
            }
        }
    }
    Ok(targets
        .into_par_iter()
        .map(|(name, idx, target)| match solve_in_span(&span, &target) {
            Some(coeffs) => {
                let rebuilt = span
                    .iter()
                    .zip(&coeffs)
                    .fold(Operator::zero(&module, target.grade()), |acc, (g, w)| {
                        &acc + &g.scale(w)
                    });
                RelationReport::compare(name, idx, &target, &rebuilt)
            }
            None => RelationReport {
                exact_pass: false,
                ..RelationReport::from_residual(name, idx, &target)
            },
        })
        .collect())
}
