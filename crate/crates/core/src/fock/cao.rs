use std::sync::Arc;

use super::{FamilyKind, FockModule, Grade, Operator, PhaseConvention};
use crate::error::{Error, Result};
use crate::scalar::RadicalScalar;

fn grade_of(kind: FamilyKind) -> Grade {
    match kind {
        FamilyKind::A => Grade::Even,
        FamilyKind::ASuper | FamilyKind::Fermi | FamilyKind::TruncatedBose => Grade::Odd,
    }
}

fn parity_sign(exponent: u32) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(sign: i64, amp: RadicalScalar) -> RadicalScalar {
    if sign < 0 {
        -amp
    } else {
        amp
    }
}

/// Matrix element of `a_i^+` on `occ`, with the target occupation. `None` when
/// the state is annihilated.
fn raise(module: &FockModule, occ: &[u32], i: usize) -> Option<(Vec<u32>, RadicalScalar)> {
    let p = u64::from(module.p());
    let li = occ[i - 1];
    let total: u64 = occ.iter().map(|&l| u64::from(l)).sum();
    let prefix: u32 = occ[..i - 1].iter().sum();
    let amp = match module.kind() {
        FamilyKind::A => {
            if total >= p {
                return None;
            }
            RadicalScalar::sqrt((u64::from(li) + 1) * (p - total))
        }
        FamilyKind::ASuper => {
            if li == 1 || total >= p {
                return None;
            }
            signed(parity_sign(prefix), RadicalScalar::sqrt(p - total))
        }
        FamilyKind::Fermi => {
            if li == 1 {
                return None;
            }
            RadicalScalar::from_integer(parity_sign(prefix))
        }
        FamilyKind::TruncatedBose => {
            if u64::from(li) >= p {
                return None;
            }
            RadicalScalar::sqrt(u64::from(li) + 1)
        }
    };
    let mut target = occ.to_vec();
    target[i - 1] += 1;
    Some((target, amp))
}

fn lower(module: &FockModule, occ: &[u32], i: usize) -> Option<(Vec<u32>, RadicalScalar)> {
    let p = u64::from(module.p());
    let li = occ[i - 1];
    if li == 0 {
        return None;
    }
    let total: u64 = occ.iter().map(|&l| u64::from(l)).sum();
    let prefix: u32 = occ[..i - 1].iter().sum();
    let exponent = match module.phase() {
        PhaseConvention::Standard => prefix,
        PhaseConvention::AsPrinted => prefix + li,
    };
    let amp = match module.kind() {
        FamilyKind::A => RadicalScalar::sqrt(u64::from(li) * (p - total + 1)),
        FamilyKind::ASuper => signed(parity_sign(exponent), RadicalScalar::sqrt(p - total + 1)),
        FamilyKind::Fermi => RadicalScalar::from_integer(parity_sign(exponent)),
        FamilyKind::TruncatedBose => RadicalScalar::sqrt(u64::from(li)),
    };
    let mut target = occ.to_vec();
    target[i - 1] -= 1;
    Some((target, amp))
}

/// One ladder step: target occupation and amplitude, or `None` if it vanishes.
type Step = fn(&FockModule, &[u32], usize) -> Option<(Vec<u32>, RadicalScalar)>;

fn ladder(module: &Arc<FockModule>, i: usize, step: Step) -> Result<Operator> {
    module.check_mode(i)?;
    let entries = module
        .basis()
        .iter()
        .enumerate()
        .filter_map(|(col, state)| {
            let (target, amp) = step(module, state.as_slice(), i)?;
            let row = module
                .index_of(&target)
                .expect("ladder step leaves the module");
            Some((row, col, amp))
        });
    Operator::from_entries(module, grade_of(module.kind()), entries)
}

/// Creation operator `a_i^+` (mode `i` in `1..=n`).
pub fn creation(module: &Arc<FockModule>, i: usize) -> Result<Operator> {
    ladder(module, i, raise)
}

/// Annihilation operator `a_i^-`, built from its own matrix elements rather
/// than as the adjoint of `a_i^+`.
pub fn annihilation(module: &Arc<FockModule>, i: usize) -> Result<Operator> {
    ladder(module, i, lower)
}

/// The `gl(n+1)` generator `e_ab` for the A family, `a, b ∈ 0..=n`.
///
/// Off-diagonal generators come from the CAOs directly; the diagonal ones are
/// fixed by `e_ii − e_00 = [a_i^+, a_i^-]` and `Σ_a e_aa = p·1`.
pub fn gl_generator(module: &Arc<FockModule>, a: usize, b: usize) -> Result<Operator> {
    if module.kind() != FamilyKind::A {
        return Err(Error::WrongFamily {
            expected: FamilyKind::A,
            found: module.kind(),
        });
    }
    let n = module.n();
    for idx in [a, b] {
        if idx > n {
            return Err(Error::GeneratorOutOfRange { index: idx, n });
        }
    }
    let comm = |i: usize, j: usize| -> Result<Operator> {
        let x = creation(module, i)?;
        let y = annihilation(module, j)?;
        Ok(&(&x * &y) - &(&y * &x))
    };
    match (a, b) {
        (0, 0) => e00(module),
        (i, 0) => creation(module, i),
        (0, j) => annihilation(module, j),
        (i, j) if i == j => Ok(&e00(module)? + &comm(i, i)?),
        (i, j) => comm(i, j),
    }
}

fn e00(module: &Arc<FockModule>) -> Result<Operator> {
    // (n+1)·e_00 = p·1 − Σ_i [a_i^+, a_i^-]
    let n = module.n();
    let mut acc = Operator::scalar(module, RadicalScalar::from_integer(module.p().into()));
    for i in 1..=n {
        let x = creation(module, i)?;
        let y = annihilation(module, i)?;
        acc = &acc - &(&(&x * &y) - &(&y * &x));
    }
    Ok(acc.scale(&RadicalScalar::from_ratio(1, n as i64 + 1)))
}

/// All creation and annihilation operators of one module, modes `1..=n`.
#[derive(Clone, Debug)]
pub struct CaoSet {
    module: Arc<FockModule>,
    creators: Vec<Operator>,
    annihilators: Vec<Operator>,
}

impl CaoSet {
    pub fn build(module: &Arc<FockModule>) -> Result<Self> {
        let n = module.n();
        let creators = (1..=n)
            .map(|i| creation(module, i))
            .collect::<Result<_>>()?;
        let annihilators = (1..=n)
            .map(|i| annihilation(module, i))
            .collect::<Result<_>>()?;
        Ok(Self {
            module: Arc::clone(module),
            creators,
            annihilators,
        })
    }

    /// Wraps explicit operator lists, e.g. rescaled CAOs.
    pub fn from_parts(
        module: &Arc<FockModule>,
        creators: Vec<Operator>,
        annihilators: Vec<Operator>,
    ) -> Self {
        assert_eq!(creators.len(), annihilators.len(), "unpaired CAOs");
        Self {
            module: Arc::clone(module),
            creators,
            annihilators,
        }
    }

    pub fn module(&self) -> &Arc<FockModule> {
        &self.module
    }

    pub fn n(&self) -> usize {
        self.creators.len()
    }

    /// `a_i^+`, 1-based.
    pub fn plus(&self, i: usize) -> &Operator {
        &self.creators[i - 1]
    }

    /// `a_i^-`, 1-based.
    pub fn minus(&self, i: usize) -> &Operator {
        &self.annihilators[i - 1]
    }

    /// `a_i^+` for `sign = +1`, `a_i^-` otherwise.
    pub fn signed(&self, sign: i8, i: usize) -> &Operator {
        if sign > 0 {
            self.plus(i)
        } else {
            self.minus(i)
        }
    }

    pub fn creators(&self) -> &[Operator] {
        &self.creators
    }

    pub fn annihilators(&self) -> &[Operator] {
        &self.annihilators
    }
}
