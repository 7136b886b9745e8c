//! The one-parameter degenerations attached to the tree of allowed pairs.
//!
//! For a non-saturated pair with chart point `a`, the family `A(t)` multiplies the active
//! coordinate by t and solves for the stars over Q(t). Its plain limit lands in the chart
//! of the left child; the limit of a torus translate lands in the chart of the right child.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chart::{
    build_shape, check_leftmost_nonzero, random_plus, reconstruct_chart, solve_stars, torus_scale, ChartError,
    ChartMatrix, ColumnIndex, PlusAssignment, SymbolShape,
};
use crate::combin::{AllowedPair, CombinError};
use crate::dmatroid::{feasible_sets, DeltaMatroid};
use crate::exactnum::{ExactError, ExactMatrix, Field, Rational, RationalFunction};

/// Root draws tried before a cascade gives up.
pub const MAX_ROOT_DRAWS: usize = 32;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DegenError {
    #[error("pair is saturated")]
    Saturated,
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Combin(#[from] CombinError),
    #[error("limit has a pole at t = 0")]
    PoleAtZero,
    #[error("limit is not in the child chart: {0}")]
    NotInCell(String),
    #[error("right projection undefined: pivot for row {row} vanishes")]
    SingularReduction { row: usize },
    #[error("{side} limit disagrees with the projected solve: {detail}")]
    Incoherent { side: &'static str, detail: String },
    #[error("no nicest root point in {0} draws")]
    NoNicestDraw(usize),
    #[error("at node {path:?} {pair}: {source}")]
    AtNode { path: String, pair: String, source: Box<DegenError> },
}

impl From<ExactError> for DegenError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::PoleAtZero => DegenError::PoleAtZero,
            other => DegenError::Chart(ChartError::Exact(other)),
        }
    }
}

fn at_node(path: &str, pair: &AllowedPair, e: DegenError) -> DegenError {
    match e {
        e @ DegenError::AtNode { .. } => e,
        e => DegenError::AtNode { path: path.to_string(), pair: pair.label(), source: Box::new(e) },
    }
}

/// The leftmost plus of the top inner-box row.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ActiveCoordinate {
    /// 0-based row.
    pub row: usize,
    /// 0-based column position.
    pub pos: usize,
    /// Index into the pair's plus assignment.
    pub plus_index: usize,
}

impl ActiveCoordinate {
    pub fn column(&self, n: usize) -> ColumnIndex {
        ColumnIndex::from_position(n, self.pos)
    }

    pub fn to_json(&self, n: usize) -> Value {
        json!({"row": self.row + 1, "col": self.column(n).label()})
    }
}

pub fn active_coordinate(pair: &AllowedPair) -> Result<ActiveCoordinate, DegenError> {
    if pair.is_saturated() {
        return Err(DegenError::Saturated);
    }
    let n = pair.n();
    let shape = build_shape(pair);
    let row = shape.inner_box().top_removed;
    let pos = if pair.j() > 0 { ColumnIndex::Neg(n - pair.j() + 1).position(n) } else { n };
    let plus_index = shape.plus_index(row, pos).expect("active coordinate is a plus entry");
    Ok(ActiveCoordinate { row, pos, plus_index })
}

/// `A(t)`: the chart over Q(t) with the active coordinate multiplied by t.
#[derive(Clone, Debug)]
pub struct Family {
    pub pair: AllowedPair,
    pub plus: PlusAssignment<Rational>,
    pub active: ActiveCoordinate,
    pub at: ChartMatrix<RationalFunction>,
}

impl Family {
    /// Largest numerator and denominator degrees among the entries.
    pub fn max_degrees(&self) -> (usize, usize) {
        self.at.entries.entries().iter().fold((0, 0), |(a, b), f| {
            (a.max(f.num().degree().unwrap_or(0)), b.max(f.den().degree().unwrap_or(0)))
        })
    }

    /// Substitutes a value for t.
    pub fn eval(&self, t: &Rational) -> Result<ExactMatrix<Rational>, DegenError> {
        Ok(self.at.entries.try_map(|f| f.eval(t))?)
    }
}

pub fn build_family(pair: &AllowedPair, plus: &PlusAssignment<Rational>) -> Result<Family, DegenError> {
    let active = active_coordinate(pair)?;
    let shape = build_shape(pair);
    let mut values = plus.map(RationalFunction::from_rational);
    if values.len() != shape.plus_count() {
        return Err(ChartError::PlusCount { expected: shape.plus_count(), got: values.len() }.into());
    }
    values.values[active.plus_index] = values.values[active.plus_index].clone() * RationalFunction::t();
    let at = solve_stars(&shape, &values)?;
    Ok(Family { pair: *pair, plus: plus.clone(), active, at })
}

/// Entrywise value at t = 0.
pub fn left_limit_matrix(at: &ExactMatrix<RationalFunction>) -> Result<ExactMatrix<Rational>, DegenError> {
    Ok(at.try_map(|f| f.eval_at_zero())?)
}

/// Torus translate, row rescaling and evaluation at t = 0.
pub fn right_limit_matrix(pair: &AllowedPair, at: &ExactMatrix<RationalFunction>) -> Result<ExactMatrix<Rational>, DegenError> {
    let n = pair.n();
    let j = pair.j();
    let tinv = RationalFunction::t().pow(-1);
    let tvec: Vec<RationalFunction> = (1..=n).map(|q| if q <= n - j { tinv.clone() } else { RationalFunction::one() }).collect();
    let mut m = torus_scale(at, &tvec)?;
    let top = build_shape(pair).inner_box().top_removed;
    for r in 0..n {
        let factor = if r <= top {
            tinv.clone()
        } else if r > top + j {
            RationalFunction::t()
        } else {
            continue;
        };
        for x in m.row_mut(r) {
            if !x.is_zero() {
                *x = x.clone() * factor.clone();
            }
        }
    }
    left_limit_matrix(&m)
}

fn into_chart(m: &ExactMatrix<Rational>, child: &AllowedPair) -> Result<ChartMatrix<Rational>, DegenError> {
    reconstruct_chart(m, child).map_err(|e| match e {
        ChartError::NotInCell(s) => DegenError::NotInCell(s),
        e => e.into(),
    })
}

/// `lim_{t→0} A(t)`, which must already be in the left child's normal form.
pub fn limit_left(f: &Family) -> Result<(AllowedPair, ChartMatrix<Rational>), DegenError> {
    let child = f.pair.left_child()?;
    let m = left_limit_matrix(&f.at.entries)?;
    let chart = into_chart(&m, &child)?;
    if chart.entries != m {
        return Err(DegenError::NotInCell("the limit matrix does not conform to the left child's shape".into()));
    }
    Ok((child, chart))
}

/// `lim_{t→0} t⃗·A(t)`, normalised in the right child's chart.
pub fn limit_right(f: &Family) -> Result<(AllowedPair, ChartMatrix<Rational>), DegenError> {
    let child = f.pair.right_child()?;
    let m = right_limit_matrix(&f.pair, &f.at.entries)?;
    Ok((child, into_chart(&m, &child)?))
}

/// Forgets the active coordinate.
pub fn pr_left<F: Field>(pair: &AllowedPair, plus: &PlusAssignment<F>) -> Result<PlusAssignment<F>, DegenError> {
    let child = pair.left_child()?;
    let shape = build_shape(pair);
    check_len(&shape, plus)?;
    let cshape = build_shape(&child);
    let values = cshape
        .plus_positions()
        .iter()
        .map(|&(r, c)| plus.values[shape.plus_index(r, c).expect("left child's plus entries are inherited")].clone())
        .collect();
    Ok(PlusAssignment::new(values))
}

fn check_len<F>(shape: &SymbolShape, plus: &PlusAssignment<F>) -> Result<(), DegenError> {
    if plus.values.len() != shape.plus_count() {
        return Err(ChartError::PlusCount { expected: shape.plus_count(), got: plus.values.len() }.into());
    }
    Ok(())
}

/// Zeroes box columns bar(k-j), …, bar(2) in box rows 2..=j+1 and row-reduces those rows
/// top to bottom so that their ones land where the right child's shape puts them.
pub fn pr_right<F: Field>(pair: &AllowedPair, plus: &PlusAssignment<F>) -> Result<PlusAssignment<F>, DegenError> {
    let child = pair.right_child()?;
    let shape = build_shape(pair);
    check_len(&shape, plus)?;
    let cshape = build_shape(&child);
    let n = pair.n();
    let (j, k) = (pair.j(), pair.k());
    let w = 2 * n + 1;
    let mut m = ExactMatrix::<F>::zeros(n, w);
    for r in 0..n {
        m.set(r, shape.one_position(r), F::one());
    }
    for (&(r, c), v) in shape.plus_positions().iter().zip(&plus.values) {
        m.set(r, c, v.clone());
    }
    let top = shape.inner_box().top_removed;
    let rows: Vec<usize> = (top + 1..=top + j).collect();
    for &r in &rows {
        for q in 2..=k - j {
            m.set(r, ColumnIndex::Neg(q + n - k).position(n), F::zero());
        }
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for &r in &rows {
        let target = cshape.one_position(r);
        loop {
            let c = (n..w).rev().find(|&c| !m.get(r, c).is_zero()).ok_or(DegenError::SingularReduction { row: r + 1 })?;
            if c == target {
                let s = F::one() / m.get(r, c).clone();
                for x in m.row_mut(r) {
                    *x = x.clone() * s.clone();
                }
                break;
            }
            let &(q, _) = pivots.iter().find(|&&(_, p)| p == c).ok_or(DegenError::SingularReduction { row: r + 1 })?;
            let f = m.get(r, c).clone();
            let sub: Vec<F> = m.row(q).to_vec();
            for (x, y) in m.row_mut(r).iter_mut().zip(sub) {
                *x = x.clone() - f.clone() * y;
            }
        }
        pivots.push((r, target));
    }
    Ok(PlusAssignment::new(cshape.plus_positions().iter().map(|&(r, c)| m.get(r, c).clone()).collect()))
}

/// Rank of the Jacobian of `pr_right` at `plus`, from exact first-order expansions over Q(t).
/// Equal to the child's plus count exactly when the map is submersive there.
pub fn pr_right_jacobian_rank(pair: &AllowedPair, plus: &PlusAssignment<Rational>) -> Result<usize, DegenError> {
    let base = plus.map(RationalFunction::from_rational);
    let mut cols = Vec::with_capacity(plus.len());
    for i in 0..plus.len() {
        let mut p = base.clone();
        p.values[i] = p.values[i].clone() + RationalFunction::t();
        let image = pr_right(pair, &p)?;
        cols.push(image.values.iter().map(derivative_at_zero).collect::<Result<Vec<_>, _>>()?);
    }
    let d = cols.first().map_or(0, |c| c.len());
    let jac = ExactMatrix::from_rows(cols, d)?;
    Ok(jac.rank())
}

/// `f'(0)` for a function regular at 0.
pub fn derivative_at_zero(f: &RationalFunction) -> Result<Rational, DegenError> {
    let coeff = |p: &crate::exactnum::Poly, i: usize| Rational::from_integer(p.coeffs().get(i).cloned().unwrap_or_default());
    let (n0, n1) = (coeff(f.num(), 0), coeff(f.num(), 1));
    let (d0, d1) = (coeff(f.den(), 0), coeff(f.den(), 1));
    if d0.is_zero() {
        return Err(DegenError::PoleAtZero);
    }
    Ok((n1 * d0.clone() - n0 * d1) / (d0.clone() * d0))
}

/// Why a point fails to be nicest, with the tree path below the starting pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicestFailure {
    pub path: String,
    pub pair: AllowedPair,
    pub reason: String,
}

/// Recursive nicest check; returns the feasible sets of the starting point.
///
/// At each node: all plus coordinates are nonzero, the stars solve uniquely, leftmost
/// entries are nonzero, both projections are defined and recursively nicest, and the
/// node's feasible sets contain those of both children.
pub fn nicest_check(pair: &AllowedPair, plus: &PlusAssignment<Rational>) -> Result<DeltaMatroid, NicestFailure> {
    check_from(pair, plus, String::new())
}

fn check_from(pair: &AllowedPair, plus: &PlusAssignment<Rational>, path: String) -> Result<DeltaMatroid, NicestFailure> {
    let fail = |reason: String| NicestFailure { path: path.clone(), pair: *pair, reason };
    if let Some(i) = plus.values.iter().position(|v| v.is_zero()) {
        return Err(fail(format!("plus coordinate {} is zero", i + 1)));
    }
    let shape = build_shape(pair);
    let chart = solve_stars(&shape, plus).map_err(|e| fail(e.to_string()))?;
    if !check_leftmost_nonzero(&chart) {
        return Err(fail("a leftmost entry vanishes".into()));
    }
    let d = feasible_sets(&chart.entries);
    if pair.is_saturated() {
        return Ok(d);
    }
    let lp = pr_left(pair, plus).map_err(|e| fail(e.to_string()))?;
    let rp = pr_right(pair, plus).map_err(|e| fail(e.to_string()))?;
    let (l, r) = (pair.left_child().expect("not saturated"), pair.right_child().expect("not saturated"));
    let (dl, dr) = rayon::join(|| check_from(&l, &lp, format!("{path}L")), || check_from(&r, &rp, format!("{path}R")));
    let (dl, dr) = (dl?, dr?);
    if !d.is_superset_of(&dl) || !d.is_superset_of(&dr) {
        return Err(fail("feasible sets do not contain those of the children".into()));
    }
    Ok(d)
}

pub fn is_nicest(pair: &AllowedPair, plus: &PlusAssignment<Rational>) -> bool {
    nicest_check(pair, plus).is_ok()
}

/// One node of the cascade: the family and both limits, checked against the projections.
#[derive(Clone, Debug)]
pub struct DegenerationStep {
    pub pair: AllowedPair,
    pub plus: PlusAssignment<Rational>,
    pub family: Family,
    pub left: (AllowedPair, PlusAssignment<Rational>, ChartMatrix<Rational>),
    pub right: (AllowedPair, PlusAssignment<Rational>, ChartMatrix<Rational>),
}

pub fn degeneration_step(pair: &AllowedPair, plus: &PlusAssignment<Rational>) -> Result<DegenerationStep, DegenError> {
    let family = build_family(pair, plus)?;
    let (lp, lchart) = limit_left(&family)?;
    let (rp, rchart) = limit_right(&family)?;
    let lplus = pr_left(pair, plus)?;
    let rplus = pr_right(pair, plus)?;
    for (side, child, projected, limit) in [("left", &lp, &lplus, &lchart), ("right", &rp, &rplus, &rchart)] {
        let expected = solve_stars(&build_shape(child), projected)?;
        if expected.entries != limit.entries {
            let (r, c) = first_difference(&expected.entries, &limit.entries);
            return Err(DegenError::Incoherent {
                side,
                detail: format!(
                    "entry ({}, {}) is {} in the limit but {} from the projection",
                    r + 1,
                    ColumnIndex::from_position(pair.n(), c),
                    limit.entries.get(r, c),
                    expected.entries.get(r, c)
                ),
            });
        }
    }
    Ok(DegenerationStep { pair: *pair, plus: plus.clone(), family, left: (lp, lplus, lchart), right: (rp, rplus, rchart) })
}

fn first_difference(a: &ExactMatrix<Rational>, b: &ExactMatrix<Rational>) -> (usize, usize) {
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.get(r, c) != b.get(r, c) {
                return (r, c);
            }
        }
    }
    (0, 0)
}

#[derive(Clone, Debug, Default)]
pub struct CascadeOptions {
    /// Keep every intermediate chart and family in the report.
    pub dump_matrices: bool,
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub path: String,
    pub pair: AllowedPair,
    pub active: ActiveCoordinate,
    pub left: AllowedPair,
    pub right: AllowedPair,
    /// Largest numerator / denominator degree in `A(t)`.
    pub degrees: (usize, usize),
    pub feasible_count: usize,
    pub matrices: Option<StepMatrices>,
}

#[derive(Clone, Debug)]
pub struct StepMatrices {
    pub chart: ChartMatrix<Rational>,
    pub family: ChartMatrix<RationalFunction>,
    pub left: ChartMatrix<Rational>,
    pub right: ChartMatrix<Rational>,
}

#[derive(Clone, Debug)]
pub struct LeafRecord {
    pub path: String,
    pub pair: AllowedPair,
    /// Number of times the cascade reached this pair.
    pub multiplicity: usize,
    pub chart: ChartMatrix<Rational>,
}

#[derive(Clone, Debug)]
pub struct CascadeReport {
    pub n: usize,
    pub seed: u64,
    /// Root draws used, including the accepted one.
    pub attempts: usize,
    pub root_plus: PlusAssignment<Rational>,
    pub leaves: Vec<LeafRecord>,
    pub steps: Vec<StepRecord>,
}

impl CascadeReport {
    pub fn max_degrees(&self) -> (usize, usize) {
        self.steps.iter().fold((0, 0), |(a, b), s| (a.max(s.degrees.0), b.max(s.degrees.1)))
    }

    /// 2^{n-1} leaves, all saturated, each reached once.
    pub fn leaves_complete(&self) -> bool {
        self.leaves.len() == 1 << (self.n - 1)
            && self.leaves.iter().all(|l| l.pair.is_saturated() && l.multiplicity == 1)
    }

    pub fn to_json(&self, dump_matrices: bool) -> Value {
        let root = build_shape(&AllowedPair::root(self.n));
        let leaves: Vec<Value> = self
            .leaves
            .iter()
            .map(|l| {
                json!({
                    "path": l.path,
                    "I": l.pair.i().to_vec(),
                    "Iprime": l.pair.iprime().to_vec(),
                    "multiplicity": l.multiplicity,
                    "chart": l.chart.entries.to_json(),
                })
            })
            .collect();
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let mut v = json!({
                    "path": s.path,
                    "pair": s.pair.to_json(),
                    "active": s.active.to_json(self.n),
                    "left": s.left.to_json(),
                    "right": s.right.to_json(),
                    "max_num_degree": s.degrees.0,
                    "max_den_degree": s.degrees.1,
                    "feasible_sets": s.feasible_count,
                    "coherent": true,
                });
                if let (true, Some(m)) = (dump_matrices, &s.matrices) {
                    v["matrices"] = json!({
                        "chart": m.chart.entries.to_json(),
                        "family": m.family.entries.to_json(),
                        "left_limit": m.left.entries.to_json(),
                        "right_limit": m.right.entries.to_json(),
                    });
                }
                v
            })
            .collect();
        let (dn, dd) = self.max_degrees();
        json!({
            "n": self.n,
            "seed": self.seed,
            "attempts": self.attempts,
            "root_plus": self.root_plus.to_json(&root),
            "leaf_count": self.leaves.len(),
            "leaves_complete": self.leaves_complete(),
            "max_num_degree": dn,
            "max_den_degree": dd,
            "leaves": leaves,
            "steps": steps,
        })
    }
}

/// Draws a nicest root point and degenerates it down the whole tree.
pub fn cascade(n: usize, seed: u64, opts: &CascadeOptions) -> Result<CascadeReport, DegenError> {
    let root = AllowedPair::root(n);
    let shape = build_shape(&root);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ROOT_DRAWS {
        let plus = random_plus(&shape, &mut rng);
        if !is_nicest(&root, &plus) {
            continue;
        }
        return cascade_from(&root, &plus, opts).map(|(steps, mut leaves)| {
            let mut counts: BTreeMap<AllowedPair, usize> = BTreeMap::new();
            for l in &leaves {
                *counts.entry(l.pair).or_default() += 1;
            }
            for l in &mut leaves {
                l.multiplicity = counts[&l.pair];
            }
            CascadeReport { n, seed, attempts: attempt, root_plus: plus, leaves, steps }
        });
    }
    Err(DegenError::NoNicestDraw(MAX_ROOT_DRAWS))
}

type Descent = (Vec<StepRecord>, Vec<LeafRecord>);

/// Degenerates from an arbitrary nicest point of `pair`.
pub fn cascade_from(pair: &AllowedPair, plus: &PlusAssignment<Rational>, opts: &CascadeOptions) -> Result<Descent, DegenError> {
    descend(pair, plus, String::new(), opts).map(|(s, l, _)| (s, l))
}

fn descend(
    pair: &AllowedPair,
    plus: &PlusAssignment<Rational>,
    path: String,
    opts: &CascadeOptions,
) -> Result<(Vec<StepRecord>, Vec<LeafRecord>, DeltaMatroid), DegenError> {
    let wrap = |e| at_node(&path, pair, e);
    let chart = solve_stars(&build_shape(pair), plus).map_err(|e| wrap(e.into()))?;
    let d = feasible_sets(&chart.entries);
    if pair.is_saturated() {
        let leaf = LeafRecord { path: path.clone(), pair: *pair, multiplicity: 1, chart };
        return Ok((Vec::new(), vec![leaf], d));
    }
    let step = degeneration_step(pair, plus).map_err(wrap)?;
    let (lp, lplus) = (step.left.0, step.left.1.clone());
    let (rp, rplus) = (step.right.0, step.right.1.clone());
    let (lres, rres) = rayon::join(
        || descend(&lp, &lplus, format!("{path}L"), opts),
        || descend(&rp, &rplus, format!("{path}R"), opts),
    );
    let (mut lsteps, mut lleaves, dl) = lres?;
    let (rsteps, rleaves, dr) = rres?;
    if d != dl.union(&dr) {
        return Err(wrap(DegenError::Incoherent {
            side: "both",
            detail: format!("{} feasible sets at the node, {} in the union of the children", d.len(), dl.union(&dr).len()),
        }));
    }
    let record = StepRecord {
        path: path.clone(),
        pair: *pair,
        active: step.family.active,
        left: lp,
        right: rp,
        degrees: step.family.max_degrees(),
        feasible_count: d.len(),
        matrices: opts.dump_matrices.then(|| StepMatrices {
            chart,
            family: step.family.at.clone(),
            left: step.left.2.clone(),
            right: step.right.2.clone(),
        }),
    };
    let mut steps = vec![record];
    steps.append(&mut lsteps);
    steps.extend(rsteps);
    lleaves.extend(rleaves);
    Ok((steps, lleaves, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{validate_pair, Subset};
    use crate::exactnum::int;

    fn pair(n: usize, i: &[usize], ip: &[usize]) -> AllowedPair {
        validate_pair(n, Subset::from_slice(i), Subset::from_slice(ip)).unwrap()
    }

    #[test]
    fn active_coordinates() {
        let root = AllowedPair::root(4);
        let a = active_coordinate(&root).unwrap();
        assert_eq!((a.row, a.column(4)), (0, ColumnIndex::Zero));
        let p = pair(6, &[], &[3]);
        let a = active_coordinate(&p).unwrap();
        assert_eq!((a.row, a.column(6)), (0, ColumnIndex::Neg(4)));
        assert_eq!(active_coordinate(&pair(3, &[1], &[2])), Err(DegenError::Saturated));
    }

    #[test]
    fn n2_family_limits() {
        let root = AllowedPair::root(2);
        let plus = PlusAssignment::new(vec![int(2), int(3), int(5)]);
        let f = build_family(&root, &plus).unwrap();
        assert_eq!(f.eval(&int(1)).unwrap(), solve_stars(&build_shape(&root), &plus).unwrap().entries);
        let (lp, l) = limit_left(&f).unwrap();
        assert_eq!(lp, pair(2, &[], &[1]));
        assert!(l.conforms());
        let (rp, _) = limit_right(&f).unwrap();
        assert_eq!(rp, pair(2, &[1], &[]));
        degeneration_step(&root, &plus).unwrap();
    }

    #[test]
    fn pr_right_rejects_singular_pivot() {
        let p = pair(6, &[], &[3]);
        let shape = build_shape(&p);
        let mut values = vec![int(1); shape.plus_count()];
        // Row 2's rightmost surviving entry is the plus in column 4b.
        let idx = shape.plus_index(1, ColumnIndex::Neg(4).position(6)).unwrap();
        values[idx] = int(0);
        assert_eq!(pr_right(&p, &PlusAssignment::new(values)), Err(DegenError::SingularReduction { row: 2 }));
    }

    #[test]
    fn derivative_of_quotient() {
        // (1 + 2t) / (3 + t): derivative at 0 is (2·3 - 1·1) / 9.
        let f = RationalFunction::new(
            crate::exactnum::Poly::from_i64s(&[1, 2]),
            crate::exactnum::Poly::from_i64s(&[3, 1]),
        )
        .unwrap();
        assert_eq!(derivative_at_zero(&f).unwrap(), crate::exactnum::frac(5, 9));
    }
}
