use crate::error::Result;
use crate::fock::{Grade, Operator};

/// `[x, y] = xy − yx`.
pub fn commutator(x: &Operator, y: &Operator) -> Result<Operator> {
    x.compose(y)?.sub(&y.compose(x)?)
}

/// `{x, y} = xy + yx`.
pub fn anticommutator(x: &Operator, y: &Operator) -> Result<Operator> {
    x.compose(y)?.add(&y.compose(x)?)
}

/// Supercommutator: the anticommutator when both operands are odd, the
/// commutator otherwise.
pub fn bracket(x: &Operator, y: &Operator) -> Result<Operator> {
    match (x.grade(), y.grade()) {
        (Grade::Odd, Grade::Odd) => anticommutator(x, y),
        _ => commutator(x, y),
    }
}

pub(crate) fn comm(x: &Operator, y: &Operator) -> Operator {
    commutator(x, y).expect("operands share a module")
}

pub(crate) fn anti(x: &Operator, y: &Operator) -> Operator {
    anticommutator(x, y).expect("operands share a module")
}

pub(crate) fn sbr(x: &Operator, y: &Operator) -> Operator {
    bracket(x, y).expect("operands share a module")
}
