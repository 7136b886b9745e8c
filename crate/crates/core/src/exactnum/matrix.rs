//! Dense exact matrices and elimination.

use serde_json::{json, Value};

use super::field::{Domain, Field};
use super::ExactError;

/// Row-major dense matrix. The entry type fixes the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Outcome of a general (possibly non-square) linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<F> {
    Unique(Vec<F>),
    Underdetermined { rank: usize },
    Inconsistent,
}

impl<T: Clone> ExactMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds from row vectors; `cols` is needed only when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, ExactError> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<ExactMatrix<U>, E> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>, ExactError> {
        if x.len() != self.cols {
            return Err(ExactError::DimensionMismatch(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(F::zero(), |acc, k| acc + self.get(r, k).clone() * other.get(k, c).clone())
        }))
    }

    fn lifted_rows(&self) -> Vec<Vec<F::Domain>> {
        (0..self.rows).map(|r| F::lift_row(self.row(r))).collect()
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.lifted_rows();
        bareiss(&mut m, self.cols).pivots.len()
    }

    /// Rank by plain Gaussian elimination in the field.
    pub fn rank_naive(&self) -> usize {
        let mut m = self.to_rows();
        rref(&mut m, self.cols).len()
    }

    pub fn determinant(&self) -> Result<F, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(F::one());
        }
        // Row lifting multiplies the determinant by the product of the row denominators.
        let mut scale = F::one();
        let mut m = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            let lifted = F::lift_row(row);
            if let Some(c) = row.iter().position(|x| !x.is_zero()) {
                scale = scale * (F::embed(&lifted[c]) / row[c].clone());
            }
            m.push(lifted);
        }
        let e = bareiss(&mut m, self.cols);
        if e.pivots.len() < self.rows {
            return Ok(F::zero());
        }
        let det = F::embed(&m[self.rows - 1][self.cols - 1]) / scale;
        Ok(if e.swaps % 2 == 1 { -det } else { det })
    }

    /// Unique solution of a square system.
    pub fn solve_square(&self, b: &[F]) -> Result<Vec<F>, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch(format!("solve_square on a {}x{} matrix", self.rows, self.cols)));
        }
        match self.solve(b)? {
            LinearSolution::Unique(x) => Ok(x),
            _ => Err(ExactError::SingularSystem),
        }
    }

    /// General solve of `self * x = b` by fraction-free elimination of the augmented matrix.
    pub fn solve(&self, b: &[F]) -> Result<LinearSolution<F>, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::DimensionMismatch(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let n = self.cols;
        let mut m: Vec<Vec<F::Domain>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                F::lift_row(&row)
            })
            .collect();
        let e = bareiss(&mut m, n + 1);
        if e.pivots.iter().any(|&(_, c)| c == n) {
            return Ok(LinearSolution::Inconsistent);
        }
        if e.pivots.len() < n {
            return Ok(LinearSolution::Underdetermined { rank: e.pivots.len() });
        }
        let mut x = vec![F::zero(); n];
        for i in (0..n).rev() {
            let mut acc = F::embed(&m[i][n]);
            for j in i + 1..n {
                if !m[i][j].is_zero() {
                    acc = acc - F::embed(&m[i][j]) * x[j].clone();
                }
            }
            x[i] = acc / F::embed(&m[i][i]);
        }
        Ok(LinearSolution::Unique(x))
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let mut m = self.to_rows();
        let pivots = rref(&mut m, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -m[i][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            (0..self.rows).map(|r| Value::Array(self.row(r).iter().map(F::to_json).collect())).collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self, ExactError> {
        let bad = |m: &str| ExactError::Parse(m.to_string());
        let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("missing cols"))? as usize;
        let rows = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(F::from_json)
                    .collect::<Result<Vec<F>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed, cols)
    }
}

pub(crate) struct Echelon {
    pub pivots: Vec<(usize, usize)>,
    pub swaps: usize,
}

/// Fraction-free (Bareiss) row echelon form, pivoting on the first nonzero entry.
/// Only columns below `pivot_cols` are eligible as pivot columns.
pub(crate) fn bareiss<D: Domain>(m: &mut [Vec<D>], pivot_cols: usize) -> Echelon {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut prev: Option<D> = None;
    let mut r = 0;
    for c in 0..pivot_cols.min(ncols) {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if i != r {
            m.swap(i, r);
            swaps += 1;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let prow = &top[r];
        let p = &prow[c];
        for row in rest.iter_mut() {
            let f = std::mem::replace(&mut row[c], D::zero());
            for j in c + 1..ncols {
                let mut v = row[j].mul(p);
                if !f.is_zero() && !prow[j].is_zero() {
                    v = v.sub(&f.mul(&prow[j]));
                }
                row[j] = match &prev {
                    Some(d) if !v.is_zero() => v.exact_div(d),
                    _ => v,
                };
            }
        }
        prev = Some(p.clone());
        pivots.push((r, c));
        r += 1;
    }
    Echelon { pivots, swaps }
}

/// Reduced row echelon form in place over a field; returns pivot columns.
pub(crate) fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(i, r);
        let inv = F::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let prow = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Rational, RationalFunction};
    use num_traits::{One, Zero};

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qm(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::<Rational>::zeros(2, 5).rank(), 0);
        assert_eq!(qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(ExactMatrix::<Rational>::identity(2).solve_square(&[q(5), q(7)]).unwrap(), vec![q(5), q(7)]);
        assert_eq!(qm(&[&[2, 1], &[1, 1]]).solve_square(&[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        assert_eq!(qm(&[&[1, 1], &[2, 2]]).solve_square(&[q(1), q(1)]), Err(ExactError::SingularSystem));
    }

    #[test]
    fn general_solve_outcomes() {
        let m = qm(&[&[1, 1], &[2, 2], &[1, 0]]);
        assert_eq!(m.solve(&[q(2), q(4), q(1)]).unwrap(), LinearSolution::Unique(vec![q(1), q(1)]));
        assert_eq!(m.solve(&[q(2), q(5), q(1)]).unwrap(), LinearSolution::Inconsistent);
        let u = qm(&[&[1, 1]]);
        assert_eq!(u.solve(&[q(1)]).unwrap(), LinearSolution::Underdetermined { rank: 1 });
    }

    #[test]
    fn determinant_with_fractions() {
        let m = ExactMatrix::from_rows(
            vec![vec![Rational::new(1.into(), 2.into()), q(1)], vec![q(3), Rational::new(1.into(), 3.into())]],
            2,
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), Rational::new((-17).into(), 6.into()));
        assert_eq!(qm(&[&[0, 1], &[1, 0]]).determinant().unwrap(), q(-1));
    }

    #[test]
    fn null_space_basis() {
        let m = qm(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = m.null_space();
        assert_eq!(ns, vec![vec![q(-1), q(1), q(0)]]);
    }

    #[test]
    fn rational_function_solve() {
        // [[t, 1], [1, 1]] x = (t + 1, 2) has x = (1, 1).
        let t = RationalFunction::t();
        let one = RationalFunction::one();
        let m = ExactMatrix::from_rows(vec![vec![t.clone(), one.clone()], vec![one.clone(), one.clone()]], 2).unwrap();
        let x = m.solve_square(&[&t + &one, RationalFunction::from(2)]).unwrap();
        assert_eq!(x, vec![one.clone(), one.clone()]);
        let sing = ExactMatrix::from_rows(vec![vec![t.clone(), t.clone()], vec![one.clone(), one]], 2).unwrap();
        assert_eq!(sing.rank(), 1);
        assert!(sing.determinant().unwrap().is_zero());
    }
}
