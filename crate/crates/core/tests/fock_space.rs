//! Fock-space structure: monomial states, orthonormality, vacuum and number
//! operators.

use fockalg::algebra::{all_pass, verify_pauli_principle, verify_vacuum_condition};
use fockalg::fock::{
    build_module, gl_generator, CaoSet, FamilyKind, StateVector, StatisticsFamily,
};
use fockalg::RadicalScalar;

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Normalised monomial `(a_1^+)^{l_1} … (a_n^+)^{l_n} |0⟩`.
fn monomial_state(c: &CaoSet, occ: &[u32], p: u32) -> StateVector {
    let mut v = StateVector::basis(0);
    for (mode, &l) in occ.iter().enumerate().rev() {
        for _ in 0..l {
            v = c.plus(mode + 1).apply(&v);
        }
    }
    let total: u32 = occ.iter().sum();
    let (num, den) = match c.module().kind() {
        FamilyKind::A => (
            factorial((p - total).into()),
            factorial(p.into()) * occ.iter().map(|&l| factorial(l.into())).product::<u64>(),
        ),
        _ => (factorial((p - total).into()), factorial(p.into())),
    };
    v.scale(&RadicalScalar::sqrt_ratio(num, den).unwrap())
}

fn check_gram(family: StatisticsFamily) {
    let m = build_module(family).unwrap();
    let c = CaoSet::build(&m).unwrap();
    let states: Vec<StateVector> = m
        .basis()
        .iter()
        .map(|s| monomial_state(&c, s.as_slice(), family.p))
        .collect();
    for (k, v) in states.iter().enumerate() {
        assert_eq!(*v, StateVector::basis(k), "{family:?} state {}", m.state(k));
        for (l, w) in states.iter().enumerate() {
            let expected = if k == l {
                RadicalScalar::one()
            } else {
                RadicalScalar::zero()
            };
            assert_eq!(v.inner(w), expected);
        }
    }
}

#[test]
fn monomial_states_are_orthonormal_a_family() {
    for n in 1..=3 {
        for p in 1..=4 {
            check_gram(StatisticsFamily::a(n, p));
        }
    }
}

#[test]
fn monomial_states_are_orthonormal_asuper() {
    for p in 1..=5 {
        check_gram(StatisticsFamily::asuper(3, p));
    }
}

#[test]
fn pauli_principle_three_modes() {
    for p in 1..=4 {
        let reports = verify_pauli_principle(3, p).unwrap();
        // number of compositions of p+1 into 3 parts
        assert_eq!(reports.len(), ((p + 3) * (p + 2) / 2) as usize);
        assert!(all_pass(&reports));
    }
}

#[test]
fn vacuum_condition_gives_order() {
    for p in 1..=5 {
        let a = build_module(StatisticsFamily::a(3, p)).unwrap();
        assert!(all_pass(&verify_vacuum_condition(
            &CaoSet::build(&a).unwrap(),
            p
        )));
        let s = build_module(StatisticsFamily::asuper(3, p)).unwrap();
        let cs = CaoSet::build(&s).unwrap();
        assert!(all_pass(&verify_vacuum_condition(&cs, p)));
        assert!(!all_pass(&verify_vacuum_condition(&cs, p + 1)));
    }
}

#[test]
fn total_number_operator() {
    for p in 1..=4 {
        let m = build_module(StatisticsFamily::a(3, p)).unwrap();
        let total = (1..=3)
            .map(|i| gl_generator(&m, i, i).unwrap())
            .reduce(|a, b| &a + &b)
            .unwrap();
        assert!(total.is_diagonal());
        for (k, s) in m.basis().iter().enumerate() {
            assert_eq!(
                total.entry(k, k),
                RadicalScalar::from_integer(s.total().into())
            );
        }
    }
}

#[test]
fn a_creators_commute_asuper_creators_anticommute() {
    let a = CaoSet::build(&build_module(StatisticsFamily::a(3, 3)).unwrap()).unwrap();
    let s = CaoSet::build(&build_module(StatisticsFamily::asuper(3, 3)).unwrap()).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            assert_eq!(a.plus(i) * a.plus(j), a.plus(j) * a.plus(i));
            assert!((&(s.plus(i) * s.plus(j)) + &(s.plus(j) * s.plus(i))).is_zero());
        }
    }
}
