//! Delta-matroids of isotropic subspaces: rank and g functions, feasible sets, the base
//! polytope in inequality and vertex form, and checkers for the rank identities.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chart::ColumnIndex;
use crate::combin::{enumerate_admissible, AdmissibleSet, Subset};
use crate::exactnum::{int, lattice_index, ExactMatrix, LatticeIndex, Rational};

/// Largest n accepted by [`enumerate_vertices`].
pub const MAX_VERTEX_ENUM_N: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DmatroidError {
    #[error("vertex enumeration is limited to n <= {MAX_VERTEX_ENUM_N}, got n = {0}")]
    DimensionTooLarge(usize),
    #[error("J must be disjoint from S in both signs")]
    NotDisjoint,
    #[error("no choice of {q} or {q}b raises the rank; the subspace is not isotropic")]
    RankStuck { q: usize },
    #[error("need at least two vertices")]
    TooFewVertices,
}

fn columns_of(n: usize, s: &AdmissibleSet) -> Vec<usize> {
    let mut cols: Vec<usize> = s.pos().iter().map(|q| ColumnIndex::Pos(q).position(n)).collect();
    cols.extend(s.neg().iter().map(|q| ColumnIndex::Neg(q).position(n)));
    cols.sort_unstable();
    cols
}

/// Rank of the columns of `a` indexed by `s`.
pub fn rank_of(a: &ExactMatrix<Rational>, s: &AdmissibleSet) -> usize {
    if s.is_empty() {
        return 0;
    }
    a.select_columns(&columns_of(a.rows(), s)).rank()
}

/// `g(S) = rk(S) - |S ∩ [n̄]|`.
pub fn g_of(a: &ExactMatrix<Rational>, s: &AdmissibleSet) -> i64 {
    rank_of(a, s) as i64 - s.neg().len() as i64
}

/// `x(S) = Σ ε_q x_q`.
pub fn x_of(x: &[Rational], s: &AdmissibleSet) -> Rational {
    let mut acc = Rational::zero();
    for q in s.pos().iter() {
        acc += &x[q - 1];
    }
    for q in s.neg().iter() {
        acc -= &x[q - 1];
    }
    acc
}

/// Feasible sets, each encoded by its positive part T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatroid {
    pub n: usize,
    pub feasible: BTreeSet<Subset>,
}

impl DeltaMatroid {
    pub fn len(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feasible.is_empty()
    }

    pub fn contains(&self, t: Subset) -> bool {
        self.feasible.contains(&t)
    }

    pub fn is_full(&self) -> bool {
        self.feasible.len() == 1usize << self.n
    }

    pub fn sets(&self) -> impl Iterator<Item = AdmissibleSet> + '_ {
        self.feasible.iter().map(|&t| AdmissibleSet::from_t(self.n, t))
    }

    pub fn is_superset_of(&self, other: &DeltaMatroid) -> bool {
        other.feasible.is_subset(&self.feasible)
    }

    pub fn union(&self, other: &DeltaMatroid) -> DeltaMatroid {
        DeltaMatroid { n: self.n, feasible: self.feasible.union(&other.feasible).copied().collect() }
    }

    pub fn to_json(&self) -> Value {
        json!(self.feasible.iter().map(|t| t.to_vec()).collect::<Vec<_>>())
    }
}

/// All maximal admissible S with `rk(S) = n`.
pub fn feasible_sets(a: &ExactMatrix<Rational>) -> DeltaMatroid {
    let n = a.rows();
    let feasible = (0..1u32 << n)
        .into_par_iter()
        .filter(|&t| rank_of(a, &AdmissibleSet::from_t(n, Subset::from_bits(t))) == n)
        .map(Subset::from_bits)
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    DeltaMatroid { n, feasible }
}

/// `max_{S' ∈ D} |S' ∩ S|`.
pub fn rank_via_matroid(d: &DeltaMatroid, s: &AdmissibleSet) -> usize {
    d.sets().map(|sp| sp.common(s)).max().unwrap_or(0)
}

/// Inequalities `x(S) ≤ g(S)` over all nonempty admissible S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeH {
    pub n: usize,
    pub constraints: Vec<(AdmissibleSet, i64)>,
}

impl PolytopeH {
    pub fn to_json(&self) -> Value {
        json!(self.constraints.iter().map(|(s, g)| json!({"signs": s.sign_string(), "g": g})).collect::<Vec<_>>())
    }
}

/// Vertex set `{χ(S') : S' feasible}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeV {
    pub n: usize,
    pub vertices: BTreeSet<Vec<u8>>,
}

impl PolytopeV {
    pub fn from_matroid(d: &DeltaMatroid) -> Self {
        let vertices = d.feasible.iter().map(|t| (1..=d.n).map(|q| t.contains(q) as u8).collect()).collect();
        PolytopeV { n: d.n, vertices }
    }

    pub fn rational_vertices(&self) -> BTreeSet<Vec<Rational>> {
        self.vertices.iter().map(|v| v.iter().map(|&b| int(b as i64)).collect()).collect()
    }

    /// Dimension of the affine hull.
    pub fn dimension(&self) -> usize {
        let mut it = self.vertices.iter();
        let Some(base) = it.next() else { return 0 };
        let rows: Vec<Vec<Rational>> = it.map(|v| v.iter().zip(base).map(|(&a, &b)| int(a as i64 - b as i64)).collect()).collect();
        if rows.is_empty() {
            return 0;
        }
        ExactMatrix::from_rows(rows, self.n).map(|m| m.rank()).unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!(self.vertices.iter().collect::<Vec<_>>())
    }
}

pub fn polytope_h(a: &ExactMatrix<Rational>) -> PolytopeH {
    let sets: Vec<AdmissibleSet> = enumerate_admissible(a.rows(), false).into_iter().filter(|s| !s.is_empty()).collect();
    let constraints = sets.into_par_iter().map(|s| (s, g_of(a, &s))).collect();
    PolytopeH { n: a.rows(), constraints }
}

pub fn polytope_v(a: &ExactMatrix<Rational>) -> PolytopeV {
    PolytopeV::from_matroid(&feasible_sets(a))
}

/// The first violated constraint together with `x(S) - g(S) > 0`.
pub fn first_violation(p: &PolytopeH, x: &[Rational]) -> Option<(AdmissibleSet, Rational)> {
    p.constraints.iter().find_map(|(s, g)| {
        let excess = x_of(x, s) - int(*g);
        excess.is_positive().then_some((*s, excess))
    })
}

pub fn contains(p: &PolytopeH, x: &[Rational]) -> bool {
    x.len() == p.n && first_violation(p, x).is_none()
}

/// Every constraint holds strictly.
pub fn contains_strictly(p: &PolytopeH, x: &[Rational]) -> bool {
    x.len() == p.n && p.constraints.iter().all(|(s, g)| x_of(x, s) < int(*g))
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    // Fraction-free elimination; every intermediate value is a minor.
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn reduced(num: i64, den: i64) -> (i64, i64) {
    let g = num_integer::gcd(num, den).max(1);
    let (mut p, mut q) = (num / g, den / g);
    if q < 0 {
        p = -p;
        q = -q;
    }
    (p, q)
}

/// Vertices of an inequality system, from every nonsingular n-subset of constraints.
/// Accepts a candidate vertex given as (numerator, denominator) coordinates.
type FeasibleTest<'a> = dyn Fn(&[(i64, i64)]) -> bool + 'a;

pub fn enumerate_vertices(p: &PolytopeH) -> Result<BTreeSet<Vec<Rational>>, DmatroidError> {
    let n = p.n;
    if n > MAX_VERTEX_ENUM_N {
        return Err(DmatroidError::DimensionTooLarge(n));
    }
    let rows: Vec<(Vec<i64>, i64)> =
        p.constraints.iter().map(|(s, g)| (s.signs().iter().map(|&e| e as i64).collect(), *g)).collect();
    let feasible = |x: &[(i64, i64)]| {
        // Common denominator is positive after `reduced`.
        rows.iter().all(|(a, g)| {
            let den: i64 = x.iter().map(|v| v.1).product();
            let lhs: i64 = a.iter().zip(x).map(|(&c, &(num, d))| c * num * (den / d)).sum();
            lhs <= g * den
        })
    };
    let mut found = BTreeSet::new();
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    fn visit(
        start: usize,
        stack: &mut Vec<usize>,
        n: usize,
        rows: &[(Vec<i64>, i64)],
        out: &mut BTreeSet<Vec<(i64, i64)>>,
        feasible: &FeasibleTest<'_>,
    ) {
        if stack.len() == n {
            let m: Vec<Vec<i64>> = stack.iter().map(|&i| rows[i].0.clone()).collect();
            let d = det_i64(&m);
            if d == 0 {
                return;
            }
            let x: Vec<(i64, i64)> = (0..n)
                .map(|c| {
                    let mc: Vec<Vec<i64>> = stack
                        .iter()
                        .map(|&i| {
                            let mut r = rows[i].0.clone();
                            r[c] = rows[i].1;
                            r
                        })
                        .collect();
                    reduced(det_i64(&mc), d)
                })
                .collect();
            if feasible(&x) {
                out.insert(x);
            }
            return;
        }
        for i in start..rows.len() {
            stack.push(i);
            visit(i + 1, stack, n, rows, out, feasible);
            stack.pop();
        }
    }
    if n == 0 {
        return Ok(found);
    }
    let mut raw = BTreeSet::new();
    visit(0, &mut stack, n, &rows, &mut raw, &feasible);
    for x in raw {
        found.insert(x.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect());
    }
    Ok(found)
}

/// Index in Z^n of the lattice spanned by differences of vertices.
pub fn vertex_lattice_index(v: &PolytopeV) -> Result<LatticeIndex, DmatroidError> {
    if v.vertices.len() < 2 {
        return Err(DmatroidError::TooFewVertices);
    }
    let mut it = v.vertices.iter();
    let base = it.next().expect("nonempty");
    let rows: Vec<Vec<BigInt>> =
        it.map(|w| w.iter().zip(base).map(|(&a, &b)| BigInt::from(a as i64 - b as i64)).collect()).collect();
    let m = ExactMatrix::from_rows(rows, v.n).expect("rows have length n");
    Ok(lattice_index(&m, v.n))
}

/// Random admissible set with independent uniform signs in {-1, 0, 1}.
pub fn random_admissible<R: Rng>(n: usize, rng: &mut R) -> AdmissibleSet {
    let signs: Vec<i8> = (0..n).map(|_| rng.gen_range(-1i8..=1)).collect();
    AdmissibleSet::from_signs(&signs).expect("signs in range")
}

/// `g(S1) + g(S2) ≥ g(S1 ∩ S2) + g(S1 ⊔ S2)` on random pairs; returns the first violating pair.
pub fn check_bisubmodular<R: Rng>(
    a: &ExactMatrix<Rational>,
    trials: usize,
    rng: &mut R,
) -> Result<(), (AdmissibleSet, AdmissibleSet)> {
    let n = a.rows();
    for _ in 0..trials {
        let s1 = random_admissible(n, rng);
        let s2 = random_admissible(n, rng);
        if !bisubmodular_at(a, &s1, &s2) {
            return Err((s1, s2));
        }
    }
    Ok(())
}

pub fn bisubmodular_at(a: &ExactMatrix<Rational>, s1: &AdmissibleSet, s2: &AdmissibleSet) -> bool {
    g_of(a, s1) + g_of(a, s2) >= g_of(a, &s1.intersection(s2)) + g_of(a, &s1.disjoint_union(s2))
}

/// `rk(S) = rk(S ∩ [n]) + rk(S ∩ [n̄])` for every admissible S; returns the first failure.
pub fn check_split_rank(a: &ExactMatrix<Rational>) -> Result<(), AdmissibleSet> {
    let n = a.rows();
    let empty = Subset::empty();
    for s in enumerate_admissible(n, false) {
        let pos = AdmissibleSet::new(n, s.pos(), empty).expect("admissible");
        let neg = AdmissibleSet::new(n, empty, s.neg()).expect("admissible");
        if rank_of(a, &s) != rank_of(a, &pos) + rank_of(a, &neg) {
            return Err(s);
        }
    }
    Ok(())
}

/// Extends S by one of q, q̄ for each q ∈ J so that the rank grows by |J|.
pub fn check_rank_plus_j(a: &ExactMatrix<Rational>, s: &AdmissibleSet, j: Subset) -> Result<AdmissibleSet, DmatroidError> {
    if !j.intersection(s.pos().union(s.neg())).is_empty() {
        return Err(DmatroidError::NotDisjoint);
    }
    let mut cur = *s;
    let mut rank = rank_of(a, &cur);
    for q in j.iter() {
        let mut next = None;
        for sign in [1, -1] {
            let cand = cur.with(q, sign).ok_or(DmatroidError::NotDisjoint)?;
            let r = rank_of(a, &cand);
            if r == rank + 1 {
                next = Some((cand, r));
                break;
            }
        }
        let (cand, r) = next.ok_or(DmatroidError::RankStuck { q })?;
        cur = cand;
        rank = r;
    }
    Ok(cur)
}

/// The 3 × 7 matrix with parameters a, b, c whose base polytope has lattice index 2.
pub fn index_two_example(a: &Rational, b: &Rational, c: &Rational) -> ExactMatrix<Rational> {
    let z = Rational::zero;
    let o = || int(1);
    ExactMatrix::from_rows(
        vec![
            vec![o(), z(), z(), z(), a.clone(), b.clone(), z()],
            vec![z(), o(), z(), z(), c.clone(), z(), -b.clone()],
            vec![z(), z(), o(), z(), z(), -c.clone(), -a.clone()],
        ],
        7,
    )
    .expect("3 x 7")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::check_isotropic;

    fn remark() -> ExactMatrix<Rational> {
        index_two_example(&int(1), &int(1), &int(1))
    }

    fn t(v: &[usize]) -> Subset {
        Subset::from_slice(v)
    }

    #[test]
    fn remark_matroid_and_index() {
        let a = remark();
        assert!(check_isotropic(&a).is_none());
        let d = feasible_sets(&a);
        let want: BTreeSet<Subset> = [t(&[1]), t(&[2]), t(&[3]), t(&[1, 2, 3])].into_iter().collect();
        assert_eq!(d.feasible, want);
        let v = PolytopeV::from_matroid(&d);
        assert_eq!(vertex_lattice_index(&v).unwrap(), LatticeIndex::Finite(2.into()));
        let verts = enumerate_vertices(&polytope_h(&a)).unwrap();
        assert_eq!(verts, v.rational_vertices());
        let s = AdmissibleSet::parse("--0").unwrap();
        // {1b, 2b, 3} meets S in two elements.
        assert_eq!(rank_via_matroid(&d, &s), 2);
        assert_eq!(rank_of(&a, &s), 2);
    }

    #[test]
    fn remark_rank_on_first_columns() {
        let a = remark();
        assert_eq!(rank_of(&a, &AdmissibleSet::parse("+++").unwrap()), 3);
    }

    #[test]
    fn one_dimensional_case() {
        // (0, 1, 0) is neither isotropic nor supported on columns 1, 1b.
        let a = ExactMatrix::from_rows(vec![vec![int(0), int(1), int(0)]], 3).unwrap();
        assert!(check_isotropic(&a).is_some());
        assert!(feasible_sets(&a).is_empty());
        let a = ExactMatrix::from_rows(vec![vec![int(1), int(0), int(0)]], 3).unwrap();
        assert_eq!(feasible_sets(&a).feasible, [t(&[1])].into_iter().collect());
        assert_eq!(g_of(&a, &AdmissibleSet::parse("-").unwrap()), -1);
        assert_eq!(g_of(&a, &AdmissibleSet::empty(1)), 0);
    }

    #[test]
    fn cube_vertices_and_index() {
        let cube = PolytopeH {
            n: 2,
            constraints: enumerate_admissible(2, false)
                .into_iter()
                .filter(|s| !s.is_empty())
                .map(|s| (s, s.pos().len() as i64))
                .collect(),
        };
        let v = enumerate_vertices(&cube).unwrap();
        let want: BTreeSet<Vec<Rational>> =
            [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|p| p.iter().map(|&b| int(b)).collect()).collect();
        assert_eq!(v, want);
        let full = DeltaMatroid { n: 3, feasible: (0..8).map(Subset::from_bits).collect() };
        assert!(vertex_lattice_index(&PolytopeV::from_matroid(&full)).unwrap().is_one());
        assert_eq!(rank_via_matroid(&full, &AdmissibleSet::parse("+-0").unwrap()), 2);
        assert_eq!(enumerate_vertices(&PolytopeH { n: 5, constraints: vec![] }), Err(DmatroidError::DimensionTooLarge(5)));
    }

    #[test]
    fn x_of_chi_matches_counting() {
        let sp = AdmissibleSet::from_t(3, t(&[1, 3]));
        let x: Vec<Rational> = vec![int(1), int(0), int(1)];
        for s in enumerate_admissible(3, false) {
            let want = s.common(&sp) as i64 - s.neg().len() as i64;
            assert_eq!(x_of(&x, &s), int(want));
        }
    }

    #[test]
    fn determinant_helper() {
        assert_eq!(det_i64(&[vec![1, 1], vec![1, -1]]), -2);
        assert_eq!(det_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(det_i64(&[vec![1, 1], vec![1, 1]]), 0);
    }
}
