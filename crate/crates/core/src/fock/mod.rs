//! Fock bases and exact operator matrices.
//!
//! Modes are numbered `1..=n` throughout, matching the index `0` reserved for
//! the extra row/column of the `gl(n+1)` generators.

mod cao;
mod operator;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cao::{annihilation, creation, gl_generator, CaoSet};
pub use operator::{Grade, Operator, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// CAOs generating `sl(n+1)`; occupations `l_i ≥ 0` with `Σ l_i ≤ p`.
    A,
    /// CAOs generating `sl(1|n)`; occupations `θ_i ∈ {0,1}` with `Σ θ_i ≤ min(p, n)`.
    ASuper,
    /// Ordinary fermions, order 1.
    Fermi,
    /// Bosons cut off at `p` quanta per mode.
    TruncatedBose,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::A => "a",
            FamilyKind::ASuper => "asuper",
            FamilyKind::Fermi => "fermi",
            FamilyKind::TruncatedBose => "bose",
        })
    }
}

/// Statistics family, number of modes and order of statistics. For
/// [`FamilyKind::TruncatedBose`] the order is the per-mode occupation cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatisticsFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub p: u32,
}

impl StatisticsFamily {
    pub fn a(n: usize, p: u32) -> Self {
        Self {
            kind: FamilyKind::A,
            n,
            p,
        }
    }

    pub fn asuper(n: usize, p: u32) -> Self {
        Self {
            kind: FamilyKind::ASuper,
            n,
            p,
        }
    }

    pub fn fermi(n: usize) -> Self {
        Self {
            kind: FamilyKind::Fermi,
            n,
            p: 1,
        }
    }

    pub fn truncated_bose(n: usize, cutoff: u32) -> Self {
        Self {
            kind: FamilyKind::TruncatedBose,
            n,
            p: cutoff,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::NoModes);
        }
        if self.p == 0 {
            return Err(Error::ZeroOrder);
        }
        if self.kind == FamilyKind::Fermi && self.p != 1 {
            return Err(Error::FermiOrder(self.p));
        }
        Ok(())
    }

    /// Largest value a single occupation entry may take.
    fn max_entry(&self) -> u32 {
        match self.kind {
            FamilyKind::A | FamilyKind::TruncatedBose => self.p,
            FamilyKind::ASuper | FamilyKind::Fermi => 1,
        }
    }

    /// Whether `occ` satisfies this family's occupation constraint.
    pub fn admits(&self, occ: &[u32]) -> bool {
        if occ.len() != self.n || occ.iter().any(|&l| l > self.max_entry()) {
            return false;
        }
        let total: u64 = occ.iter().map(|&l| u64::from(l)).sum();
        match self.kind {
            FamilyKind::A => total <= u64::from(self.p),
            FamilyKind::ASuper => total <= u64::from(self.p).min(self.n as u64),
            FamilyKind::Fermi | FamilyKind::TruncatedBose => true,
        }
    }
}

/// Sign convention for the odd families.
///
/// `Standard` takes the sign `(−1)^(θ_1+…+θ_{i−1})` for both `a_i^±`. `AsPrinted`
/// includes `θ_i` of the ket in the exponent, which flips the sign of every
/// annihilation matrix element and breaks `(a_i^+)† = a_i^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseConvention {
    #[default]
    Standard,
    AsPrinted,
}

/// Occupation numbers labelling one basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationState(pub Vec<u32>);

impl OccupationState {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Occupation of mode `i` (1-based).
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for OccupationState {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Enumerated orthonormal basis of one Fock representation.
#[derive(Debug)]
pub struct FockModule {
    family: StatisticsFamily,
    phase: PhaseConvention,
    basis: Vec<OccupationState>,
    index: HashMap<OccupationState, usize>,
}

impl PartialEq for FockModule {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.phase == other.phase
    }
}

impl Eq for FockModule {}

/// Builds the module with the standard phase convention.
pub fn build_module(family: StatisticsFamily) -> Result<Arc<FockModule>> {
    FockModule::new(family, PhaseConvention::Standard)
}

impl FockModule {
    /// Enumerates the basis in lexicographic order of the occupation vector,
    /// which puts the vacuum at index 0.
    pub fn new(family: StatisticsFamily, phase: PhaseConvention) -> Result<Arc<Self>> {
        family.validate()?;
        let max = family.max_entry();
        let mut basis = Vec::new();
        let mut occ = vec![0u32; family.n];
        loop {
            if family.admits(&occ) {
                basis.push(OccupationState(occ.clone()));
            }
            // odometer increment, last mode fastest
            let mut pos = family.n;
            loop {
                if pos == 0 {
                    let index = basis
                        .iter()
                        .enumerate()
                        .map(|(k, s)| (s.clone(), k))
                        .collect();
                    return Ok(Arc::new(Self {
                        family,
                        phase,
                        basis,
                        index,
                    }));
                }
                pos -= 1;
                if occ[pos] < max {
                    occ[pos] += 1;
                    break;
                }
                occ[pos] = 0;
            }
        }
    }

    pub fn family(&self) -> StatisticsFamily {
        self.family
    }

    pub fn kind(&self) -> FamilyKind {
        self.family.kind
    }

    pub fn n(&self) -> usize {
        self.family.n
    }

    pub fn p(&self) -> u32 {
        self.family.p
    }

    pub fn phase(&self) -> PhaseConvention {
        self.phase
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[OccupationState] {
        &self.basis
    }

    pub fn state(&self, index: usize) -> &OccupationState {
        &self.basis[index]
    }

    pub fn index_of(&self, occ: &[u32]) -> Option<usize> {
        self.index.get(&OccupationState(occ.to_vec())).copied()
    }

    /// Like [`index_of`](Self::index_of) but reports a missing state as an error.
    pub fn require(&self, occ: &[u32]) -> Result<usize> {
        self.index_of(occ)
            .ok_or_else(|| Error::InvalidState(occ.to_vec()))
    }

    pub(crate) fn check_mode(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::ModeOutOfRange {
                index: i,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, j| acc * (n + 1 - j) / j)
    }

    fn brute_force_count(family: StatisticsFamily) -> usize {
        let max = family.max_entry();
        let mut count = 0;
        let total = (max as usize + 1).pow(family.n as u32);
        for code in 0..total {
            let mut c = code;
            let occ: Vec<u32> = (0..family.n)
                .map(|_| {
                    let d = (c % (max as usize + 1)) as u32;
                    c /= max as usize + 1;
                    d
                })
                .collect();
            if family.admits(&occ) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn a_family_n2_p2_basis() {
        let m = build_module(StatisticsFamily::a(2, 2)).unwrap();
        let states: Vec<Vec<u32>> = m.basis().iter().map(|s| s.0.clone()).collect();
        assert_eq!(
            states,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0]
            ]
        );
    }

    #[test]
    fn asuper_dimensions() {
        assert_eq!(
            build_module(StatisticsFamily::asuper(3, 1)).unwrap().dim(),
            4
        );
        assert_eq!(
            build_module(StatisticsFamily::asuper(3, 2)).unwrap().dim(),
            7
        );
        assert_eq!(
            build_module(StatisticsFamily::asuper(3, 3)).unwrap().dim(),
            8
        );
        assert_eq!(
            build_module(StatisticsFamily::asuper(3, 9)).unwrap().dim(),
            8
        );
    }

    #[test]
    fn dimension_formulas_match_enumeration() {
        for n in 1..=4usize {
            for p in 1..=5u32 {
                let a = StatisticsFamily::a(n, p);
                let dim = build_module(a).unwrap().dim();
                assert_eq!(dim, brute_force_count(a));
                assert_eq!(dim as u64, binomial(n as u64 + p as u64, n as u64));

                let s = StatisticsFamily::asuper(n, p);
                let expected: u64 = (0..=(p as u64).min(n as u64))
                    .map(|q| binomial(n as u64, q))
                    .sum();
                assert_eq!(build_module(s).unwrap().dim() as u64, expected);

                let b = StatisticsFamily::truncated_bose(n, p);
                assert_eq!(
                    build_module(b).unwrap().dim(),
                    (p as usize + 1).pow(n as u32)
                );
            }
            assert_eq!(
                build_module(StatisticsFamily::fermi(n)).unwrap().dim(),
                1 << n
            );
        }
    }

    #[test]
    fn vacuum_first_and_index_consistent() {
        let m = build_module(StatisticsFamily::a(3, 3)).unwrap();
        assert_eq!(m.state(0).total(), 0);
        for (k, s) in m.basis().iter().enumerate() {
            assert_eq!(m.index_of(s.as_slice()), Some(k));
        }
        assert!(m.basis().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_degenerate_families() {
        assert_eq!(
            build_module(StatisticsFamily::a(0, 1)).unwrap_err(),
            Error::NoModes
        );
        assert_eq!(
            build_module(StatisticsFamily::asuper(3, 0)).unwrap_err(),
            Error::ZeroOrder
        );
        let bad_fermi = StatisticsFamily {
            kind: FamilyKind::Fermi,
            n: 2,
            p: 2,
        };
        assert_eq!(build_module(bad_fermi).unwrap_err(), Error::FermiOrder(2));
    }
}
