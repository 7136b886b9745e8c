//! Chart matrices: the symbol grid M_{I,I'}, the type-B form, the star solver and
//! membership checks for Richardson cells.
//!
//! Columns are ordered 1, …, n, 0, n̄, …, 1̄ and addressed by 0-based positions.

mod shape;
mod solve;

pub use shape::{build_shape, InnerBox, SymbolShape};
pub use solve::{
    check_isotropic, check_leftmost_nonzero, nice_chart, random_isotropic, random_plus, reconstruct_chart, solve_stars,
    star_systems, verify_richardson_membership, RandomDraw, StarSystem,
};

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::{ExactError, ExactMatrix, Field};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("not nice: the system for row {row} is {reason}")]
    NotNice { row: usize, reason: String },
    #[error("rows {0} and {1} are not orthogonal")]
    NotIsotropic(usize, usize),
    #[error("not in the open cell: {0}")]
    NotInCell(String),
    #[error("expected {expected} plus entries, got {got}")]
    PlusCount { expected: usize, got: usize },
    #[error("torus coordinate {0} is zero")]
    ZeroScale(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("no nice point after {0} draws")]
    NoNiceDraw(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A column label: q, 0 or q̄.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnIndex {
    Pos(usize),
    Zero,
    Neg(usize),
}

impl ColumnIndex {
    /// 0-based position in the order 1, …, n, 0, n̄, …, 1̄.
    pub fn position(self, n: usize) -> usize {
        match self {
            ColumnIndex::Pos(q) => q - 1,
            ColumnIndex::Zero => n,
            ColumnIndex::Neg(q) => 2 * n + 1 - q,
        }
    }

    pub fn from_position(n: usize, pos: usize) -> Self {
        assert!(pos <= 2 * n, "position {pos} out of range for n = {n}");
        match pos.cmp(&n) {
            std::cmp::Ordering::Less => ColumnIndex::Pos(pos + 1),
            std::cmp::Ordering::Equal => ColumnIndex::Zero,
            std::cmp::Ordering::Greater => ColumnIndex::Neg(2 * n + 1 - pos),
        }
    }

    pub fn bar(self) -> Self {
        match self {
            ColumnIndex::Pos(q) => ColumnIndex::Neg(q),
            ColumnIndex::Zero => ColumnIndex::Zero,
            ColumnIndex::Neg(q) => ColumnIndex::Pos(q),
        }
    }

    /// `"3"`, `"0"` or `"3b"`.
    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ColumnIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnIndex::Pos(q) => write!(f, "{q}"),
            ColumnIndex::Zero => write!(f, "0"),
            ColumnIndex::Neg(q) => write!(f, "{q}b"),
        }
    }
}

/// Position of the bar of the column at `pos`.
pub fn bar_position(n: usize, pos: usize) -> usize {
    2 * n - pos
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    One,
    Plus,
    Star,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Plus => '+',
            Symbol::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '+' => Some(Symbol::Plus),
            '*' => Some(Symbol::Star),
            _ => None,
        }
    }
}

/// `y·z = 2 y_0 z_0 + Σ_q (y_q z_q̄ + y_q̄ z_q)`.
pub fn iso_dot<F: Field>(y: &[F], z: &[F]) -> Result<F, ChartError> {
    if y.len() != z.len() || y.len().is_multiple_of(2) {
        return Err(ChartError::LengthMismatch(format!("vectors of length {} and {}", y.len(), z.len())));
    }
    let n = y.len() / 2;
    let mut acc = F::zero();
    for (pos, a) in y.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let b = &z[bar_position(n, pos)];
        if b.is_zero() {
            continue;
        }
        let term = a.clone() * b.clone();
        acc = if pos == n { acc + term.clone() + term } else { acc + term };
    }
    Ok(acc)
}

/// Column q scaled by t_q, column q̄ by 1/t_q, column 0 fixed.
pub fn torus_scale<F: Field>(a: &ExactMatrix<F>, t: &[F]) -> Result<ExactMatrix<F>, ChartError> {
    let n = t.len();
    if a.cols() != 2 * n + 1 {
        return Err(ChartError::LengthMismatch(format!("{} torus coordinates for {} columns", n, a.cols())));
    }
    if let Some(q) = t.iter().position(|x| x.is_zero()) {
        return Err(ChartError::ZeroScale(q + 1));
    }
    let inv: Vec<F> = t.iter().map(|x| F::one() / x.clone()).collect();
    Ok(ExactMatrix::from_fn(a.rows(), a.cols(), |r, c| {
        let v = a.get(r, c).clone();
        if v.is_zero() {
            return v;
        }
        match ColumnIndex::from_position(n, c) {
            ColumnIndex::Pos(q) => v * t[q - 1].clone(),
            ColumnIndex::Zero => v,
            ColumnIndex::Neg(q) => v * inv[q - 1].clone(),
        }
    }))
}

/// Values for the plus positions of a shape, in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct PlusAssignment<F> {
    pub values: Vec<F>,
}

impl<F: Field> PlusAssignment<F> {
    pub fn new(values: Vec<F>) -> Self {
        PlusAssignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> PlusAssignment<G> {
        PlusAssignment { values: self.values.iter().map(f).collect() }
    }

    pub fn to_json(&self, shape: &SymbolShape) -> Value {
        let n = shape.n();
        Value::Array(
            shape
                .plus_positions()
                .iter()
                .zip(&self.values)
                .map(|(&(r, c), v)| json!({"row": r + 1, "col": ColumnIndex::from_position(n, c).label(), "value": v.to_json()}))
                .collect(),
        )
    }
}

/// A matrix of the given shape whose rows are mutually orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartMatrix<F> {
    pub shape: SymbolShape,
    pub entries: ExactMatrix<F>,
}

impl<F: Field> ChartMatrix<F> {
    pub fn pair(&self) -> &crate::combin::AllowedPair {
        self.shape.pair()
    }

    /// The plus entries read back off the matrix.
    pub fn plus(&self) -> PlusAssignment<F> {
        PlusAssignment::new(self.shape.plus_positions().iter().map(|&(r, c)| self.entries.get(r, c).clone()).collect())
    }

    /// Zero symbols hold 0 and one symbols hold 1.
    pub fn conforms(&self) -> bool {
        let n = self.shape.n();
        self.entries.rows() == n
            && self.entries.cols() == 2 * n + 1
            && (0..n).all(|r| {
                (0..2 * n + 1).all(|c| match self.shape.symbol(r, c) {
                    Symbol::Zero => self.entries.get(r, c).is_zero(),
                    Symbol::One => self.entries.get(r, c).is_one(),
                    _ => true,
                })
            })
    }

    pub fn to_json(&self) -> Value {
        json!({"pair": self.shape.pair().to_json(), "shape": self.shape.row_strings(), "entries": self.entries.to_json()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    fn e(n: usize, c: ColumnIndex) -> Vec<Rational> {
        let mut v = vec![int(0); 2 * n + 1];
        v[c.position(n)] = int(1);
        v
    }

    #[test]
    fn form_on_basis_vectors() {
        let n = 3;
        assert_eq!(iso_dot(&e(n, ColumnIndex::Zero), &e(n, ColumnIndex::Zero)).unwrap(), int(2));
        assert_eq!(iso_dot(&e(n, ColumnIndex::Pos(1)), &e(n, ColumnIndex::Neg(1))).unwrap(), int(1));
        assert_eq!(iso_dot(&e(n, ColumnIndex::Pos(1)), &e(n, ColumnIndex::Pos(2))).unwrap(), int(0));
        assert!(iso_dot(&e(n, ColumnIndex::Zero), &e(2, ColumnIndex::Zero)).is_err());
    }

    #[test]
    fn column_positions_round_trip() {
        let n = 4;
        for pos in 0..9 {
            let c = ColumnIndex::from_position(n, pos);
            assert_eq!(c.position(n), pos);
            assert_eq!(c.bar().position(n), bar_position(n, pos));
        }
        assert_eq!(ColumnIndex::Neg(1).position(n), 8);
    }

    #[test]
    fn torus_scaling() {
        let a = ExactMatrix::from_fn(1, 5, |_, c| int(c as i64 + 1));
        assert_eq!(torus_scale(&a, &[int(1), int(1)]).unwrap(), a);
        let t = [int(2), int(3)];
        let s = torus_scale(&a, &t).unwrap();
        assert_eq!(s.row(0), &[int(2), int(6), int(3), Rational::new(4.into(), 3.into()), Rational::new(5.into(), 2.into())]);
        let back = torus_scale(&s, &[Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())]).unwrap();
        assert_eq!(back, a);
        assert_eq!(torus_scale(&a, &[int(0), int(1)]), Err(ChartError::ZeroScale(1)));
    }
}
