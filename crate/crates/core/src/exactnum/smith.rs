//! Smith normal form over Z and lattice indices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ExactMatrix;

/// Invariant factors `d_1 | d_2 | … | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

/// Index of a sublattice of Z^d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LatticeIndex {
    Finite(#[serde(serialize_with = "ser_bigint")] BigInt),
    #[serde(serialize_with = "ser_infinite")]
    Infinite,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_infinite<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("infinite")
}

impl LatticeIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, LatticeIndex::Finite(v) if v.is_one())
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(v) => write!(f, "{v}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn smith_normal_form(m: &ExactMatrix<BigInt>) -> SmithForm {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                let pivot_row = a[t].clone();
                for (x, p) in a[i][t..cols].iter_mut().zip(&pivot_row[t..cols]) {
                    *x -= p * &q;
                }
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // Enforce divisibility of the remaining block by the pivot.
        let p = a[t][t].clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            let other = a[i].clone();
            for (x, v) in a[t][t..cols].iter_mut().zip(&other[t..cols]) {
                *x += v;
            }
            continue;
        }
        diagonal.push(p.abs());
        t += 1;
    }
    SmithForm { rank: diagonal.len(), diagonal }
}

/// Index of the lattice spanned by the rows of `generators` in Z^ambient_dim.
pub fn lattice_index(generators: &ExactMatrix<BigInt>, ambient_dim: usize) -> LatticeIndex {
    assert_eq!(generators.cols(), ambient_dim, "generators must have ambient_dim columns");
    let snf = smith_normal_form(generators);
    if snf.rank < ambient_dim {
        LatticeIndex::Infinite
    } else {
        LatticeIndex::Finite(snf.diagonal.iter().product())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn zm(rows: &[&[i64]]) -> ExactMatrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols)
            .unwrap()
    }

    fn diag(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&zm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).diagonal, diag(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&zm(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])).diagonal, diag(&[1, 1, 2]));
        assert_eq!(smith_normal_form(&zm(&[&[2, 0], &[0, 4]])).diagonal, diag(&[2, 4]));
        assert_eq!(smith_normal_form(&zm(&[&[2, 0], &[0, 3]])).diagonal, diag(&[1, 6]));
        assert_eq!(smith_normal_form(&zm(&[&[0, 0], &[0, 0]])).rank, 0);
    }

    #[test]
    fn index_examples() {
        assert_eq!(lattice_index(&zm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3), LatticeIndex::Finite(1.into()));
        assert_eq!(lattice_index(&zm(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]), 3), LatticeIndex::Finite(2.into()));
        assert_eq!(lattice_index(&zm(&[&[1, 0, 0], &[0, 1, 0]]), 3), LatticeIndex::Infinite);
    }
}
