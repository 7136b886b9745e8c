//! Exact arithmetic: Q, Z[t], Q(t), dense matrices, elimination and Smith normal form.

mod field;
mod matrix;
mod poly;
mod ratfunc;
mod smith;

pub use field::{parse_rational, rational_to_string, Domain, Field};
pub use matrix::{ExactMatrix, LinearSolution};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use smith::{lattice_index, smith_normal_form, LatticeIndex, SmithForm};

use thiserror::Error;

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("singular linear system")]
    SingularSystem,
    #[error("pole at t = 0")]
    PoleAtZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Entrywise evaluation at t = 0.
pub fn eval_at_zero(f: &RationalFunction) -> Result<Rational, ExactError> {
    f.eval_at_zero()
}

pub fn mat_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    m.rank()
}

pub fn solve_square<F: Field>(m: &ExactMatrix<F>, b: &[F]) -> Result<Vec<F>, ExactError> {
    m.solve_square(b)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
