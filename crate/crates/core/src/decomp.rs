//! The decomposition of the cube [0,1]^n into the polytopes of the leaf charts.
//!
//! A point x is sent to a subset I of [n-1] through its partial sums; the claim checked here
//! is that x lies in P(Λ_I) for the saturated pair (I, I^c), and that generic points lie in
//! the interior of exactly one leaf polytope.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chart::{build_shape, nice_chart, ChartError, ChartMatrix};
use crate::combin::{codim_w, validate_pair, AdmissibleSet, AllowedPair, CombinError, Subset};
use crate::degen::CascadeReport;
use crate::dmatroid::{
    contains_strictly, feasible_sets, first_violation, polytope_h, polytope_v, vertex_lattice_index, x_of,
    DeltaMatroid, DmatroidError, PolytopeH,
};
use crate::exactnum::{frac, int, rational_to_string, LatticeIndex, Rational};

/// Draws allowed when looking for a nice leaf chart.
pub const LEAF_DRAWS: usize = 32;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DecompError {
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {0} is outside [0, 1]")]
    NotInCube(usize),
    #[error("boundary point: y_{q} = {value} is an integer, so x lies on a wall")]
    BoundaryPoint { q: usize, value: String },
    #[error("dual inequality fails for m = {m}")]
    DualInequality { m: usize },
    #[error("leaf charts of {pair} from two draws have different feasible sets")]
    DrawDependent { pair: String },
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Combin(#[from] CombinError),
    #[error(transparent)]
    Dmatroid(#[from] DmatroidError),
}

/// The subset of [n-1] attached to a point of the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionAssignment {
    pub x: Vec<Rational>,
    /// Partial sums y_1, …, y_n.
    pub y: Vec<Rational>,
    /// λ_1, …, λ_s.
    pub lambda: Vec<usize>,
    /// Special columns n+1-λ_ℓ, increasing.
    pub sc: Vec<usize>,
    pub i: Subset,
    pub iprime: Subset,
}

impl RegionAssignment {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// The saturated pair (I, I^c).
    pub fn pair(&self) -> AllowedPair {
        validate_pair(self.n(), self.i, self.iprime).expect("saturated pairs are allowed")
    }

    /// `y'_{n-λ'_m} < m ≤ y'_{n+1-λ'_m}` for m = 1, …, s', with λ' decreasing and y'_q = q - y_q.
    pub fn check_dual(&self) -> Result<(), DecompError> {
        let n = self.n();
        let yp = |q: usize| if q == 0 { Rational::zero() } else { int(q as i64) - self.y[q - 1].clone() };
        for (m0, lp) in self.iprime.iter().rev().enumerate() {
            let m = int(m0 as i64 + 1);
            if !(yp(n - lp) < m && m <= yp(n + 1 - lp)) {
                return Err(DecompError::DualInequality { m: m0 + 1 });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.iter().map(rational_to_string).collect::<Vec<_>>(),
            "y": self.y.iter().map(rational_to_string).collect::<Vec<_>>(),
            "lambda": self.lambda,
            "SC": self.sc,
            "I": self.i.to_vec(),
            "Iprime": self.iprime.to_vec(),
        })
    }
}

/// Smallest integer ≥ v.
fn ceil(v: &Rational) -> i64 {
    v.ceil().to_integer().to_i64().expect("small")
}

pub fn assign_region(x: &[Rational]) -> Result<RegionAssignment, DecompError> {
    let n = x.len();
    if n < 2 {
        return Err(DecompError::DimensionMismatch { expected: 2, got: n });
    }
    if let Some(q) = x.iter().position(|v| v.is_negative() || *v > Rational::one()) {
        return Err(DecompError::NotInCube(q + 1));
    }
    let y: Vec<Rational> = x
        .iter()
        .scan(Rational::zero(), |acc, v| {
            *acc += v;
            Some(acc.clone())
        })
        .collect();
    // An integral y_q with 1 ≤ y_q < q moves to a different region when some x_i, i ≤ q, grows.
    for (q0, v) in y.iter().enumerate() {
        if v.is_integer() && *v >= Rational::one() && *v < int(q0 as i64 + 1) {
            return Err(DecompError::BoundaryPoint { q: q0 + 1, value: rational_to_string(v) });
        }
    }
    let s = (ceil(&y[n - 1]) - 1).max(0) as usize;
    let mut lambda = Vec::with_capacity(s);
    for l in 1..=s {
        let l = int(l as i64);
        // y_1 ≤ 1 ≤ ℓ < y_n, so the last q with y_q ≤ ℓ lies in [1, n-1].
        let q = (1..n).rev().find(|&q| y[q - 1] <= l).expect("y_1 ≤ ℓ");
        debug_assert!(l < y[q]);
        lambda.push(n - q);
    }
    let i = Subset::from_slice(&lambda);
    let iprime = Subset::interval(1, n - 1).minus(i);
    let sc = lambda.iter().map(|l| n + 1 - l).collect();
    let r = RegionAssignment { x: x.to_vec(), y, lambda, sc, i, iprime };
    match r.check_dual() {
        // On the face x_1 = … = x_q = 0 the strict bound degenerates to y'_q = m.
        Err(DecompError::DualInequality { m }) => {
            let lp = r.iprime.iter().rev().nth(m - 1).expect("m ≤ s'");
            if r.y[n - lp - 1].is_zero() {
                Ok(r)
            } else {
                Err(DecompError::DualInequality { m })
            }
        }
        other => other.map(|()| r),
    }
}

/// A violated constraint of P(Λ): x(S) exceeds g(S) by `excess`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub s: AdmissibleSet,
    pub excess: Rational,
}

/// Checks all 3^n - 1 constraints of P(row span of `a`) at x.
pub fn verify_membership(x: &[Rational], a: &ChartMatrix<Rational>) -> Result<(), Violation> {
    membership_in(&polytope_h(&a.entries), x)
}

fn membership_in(p: &PolytopeH, x: &[Rational]) -> Result<(), Violation> {
    match first_violation(p, x) {
        None => Ok(()),
        Some((s, v)) => {
            let g = p.constraints.iter().find(|(t, _)| *t == s).map(|c| c.1).expect("constraint exists");
            Err(Violation { excess: v - int(g), s })
        }
    }
}

/// A nice chart of one saturated pair with its polytope and feasible sets.
#[derive(Clone, Debug)]
pub struct LeafPolytope {
    pub pair: AllowedPair,
    pub chart: ChartMatrix<Rational>,
    pub feasible: DeltaMatroid,
    pub polytope: PolytopeH,
}

impl LeafPolytope {
    pub fn draw<R: Rng>(pair: &AllowedPair, rng: &mut R) -> Result<Self, DecompError> {
        let chart = nice_chart(&build_shape(pair), rng, LEAF_DRAWS)?.chart;
        let feasible = feasible_sets(&chart.entries);
        let polytope = polytope_h(&chart.entries);
        Ok(LeafPolytope { pair: *pair, chart, feasible, polytope })
    }
}

/// All 2^{n-1} saturated pairs, in the order of their I.
pub fn saturated_pairs(n: usize) -> Vec<AllowedPair> {
    let full = Subset::interval(1, n - 1);
    (0u32..1 << (n - 1))
        .map(|bits| {
            let i = Subset::from_bits(bits);
            validate_pair(n, i, full.minus(i)).expect("saturated pairs are allowed")
        })
        .collect()
}

/// One chart per leaf; a second independent draw must give the same feasible sets.
pub fn leaf_polytopes(n: usize, seed: u64) -> Result<Vec<LeafPolytope>, DecompError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    saturated_pairs(n)
        .iter()
        .map(|p| {
            let leaf = LeafPolytope::draw(p, &mut rng)?;
            let other = nice_chart(&build_shape(p), &mut check, LEAF_DRAWS)?.chart;
            if feasible_sets(&other.entries) != leaf.feasible {
                return Err(DecompError::DrawDependent { pair: p.label() });
            }
            Ok(leaf)
        })
        .collect()
}

/// Outcome for one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRecord {
    pub x: Vec<Rational>,
    pub assignment: Result<RegionAssignment, DecompError>,
    /// Membership in the assigned leaf polytope.
    pub member: Option<Result<(), Violation>>,
    /// Leaves whose polytope contains x in its interior.
    pub interior: Vec<AllowedPair>,
}

impl SampleRecord {
    pub fn is_boundary(&self) -> bool {
        matches!(self.assignment, Err(DecompError::BoundaryPoint { .. }))
    }

    /// Assigned, a member of its leaf, and interior to that leaf alone.
    pub fn is_clean(&self) -> bool {
        match (&self.assignment, &self.member) {
            (Ok(a), Some(Ok(()))) => self.interior == [a.pair()],
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "x": self.x.iter().map(rational_to_string).collect::<Vec<_>>(),
            "interior_count": self.interior.len(),
        });
        match &self.assignment {
            Ok(a) => {
                v["I"] = json!(a.i.to_vec());
                v["SC"] = json!(a.sc);
            }
            Err(e) => v["error"] = json!(e.to_string()),
        }
        if let Some(m) = &self.member {
            v["member"] = json!(m.is_ok());
            if let Err(viol) = m {
                v["violated"] = json!({"S": viol.s.element_string(), "excess": rational_to_string(&viol.excess)});
            }
        }
        v
    }
}

pub fn examine(x: &[Rational], leaves: &[LeafPolytope]) -> SampleRecord {
    let assignment = assign_region(x);
    let member = assignment.as_ref().ok().map(|a| {
        let leaf = leaves.iter().find(|l| l.pair.i() == a.i).expect("every region has a leaf");
        membership_in(&leaf.polytope, x)
    });
    let interior = leaves.iter().filter(|l| contains_strictly(&l.polytope, x)).map(|l| l.pair).collect();
    SampleRecord { x: x.to_vec(), assignment, member, interior }
}

#[derive(Clone, Debug)]
pub struct LeafSummary {
    pub pair: AllowedPair,
    pub w: usize,
    pub w_complement: usize,
    pub feasible_count: usize,
    pub multiplicity: Option<LatticeIndex>,
    /// Samples assigned to this leaf.
    pub assigned: usize,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub n: usize,
    pub leaves: Vec<LeafSummary>,
    pub samples: Vec<SampleRecord>,
    pub terms: Vec<ClassTerm>,
}

impl DecompositionReport {
    pub fn build(n: usize, leaves: &[LeafPolytope], points: &[Vec<Rational>]) -> Result<Self, DecompError> {
        let samples: Vec<SampleRecord> = points.par_iter().map(|x| examine(x, leaves)).collect();
        let mut assigned: BTreeMap<Subset, usize> = BTreeMap::new();
        for s in &samples {
            if let Ok(a) = &s.assignment {
                *assigned.entry(a.i).or_default() += 1;
            }
        }
        let leaves = leaves
            .iter()
            .map(|l| {
                let multiplicity = (n <= 6).then(|| vertex_lattice_index(&polytope_v(&l.chart.entries))).transpose()?;
                Ok(LeafSummary {
                    pair: l.pair,
                    w: codim_w(l.pair.i()),
                    w_complement: codim_w(l.pair.iprime()),
                    feasible_count: l.feasible.len(),
                    multiplicity,
                    assigned: assigned.get(&l.pair.i()).copied().unwrap_or(0),
                })
            })
            .collect::<Result<Vec<_>, DecompError>>()?;
        Ok(DecompositionReport { n, leaves, samples, terms: class_formula(n) })
    }

    pub fn assigned(&self) -> usize {
        self.samples.iter().filter(|s| s.assignment.is_ok()).count()
    }

    pub fn boundary(&self) -> usize {
        self.samples.iter().filter(|s| s.is_boundary()).count()
    }

    pub fn members(&self) -> usize {
        self.samples.iter().filter(|s| matches!(s.member, Some(Ok(())))).count()
    }

    pub fn interior_unique(&self) -> usize {
        self.samples.iter().filter(|s| s.is_clean()).count()
    }

    /// Every sample off the walls is assigned, a member of its leaf, and interior to it alone.
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(|s| s.is_boundary() || s.is_clean())
            && self.leaves.iter().all(|l| l.multiplicity.as_ref().is_none_or(LatticeIndex::is_one))
    }

    /// Membership only; grid points may sit on facets.
    pub fn all_members(&self) -> bool {
        self.samples.iter().all(|s| s.is_boundary() || matches!(s.member, Some(Ok(()))))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "samples": self.samples.len(),
            "assigned": self.assigned(),
            "boundary": self.boundary(),
            "members": self.members(),
            "interior_unique": self.interior_unique(),
            "all_pass": self.all_pass(),
            "leaves": self.leaves.iter().map(|l| json!({
                "I": l.pair.i().to_vec(),
                "Iprime": l.pair.iprime().to_vec(),
                "w": l.w,
                "w_complement": l.w_complement,
                "feasible_sets": l.feasible_count,
                "multiplicity": l.multiplicity,
                "assigned": l.assigned,
            })).collect::<Vec<_>>(),
            "sample_records": self.samples.iter().map(SampleRecord::to_json).collect::<Vec<_>>(),
            "class_formula": self.terms.iter().map(ClassTerm::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "# Decomposition of [0,1]^{}\n\nsamples {}, assigned {}, boundary {}, members {}, interior-unique {}\n\n",
            self.n,
            self.samples.len(),
            self.assigned(),
            self.boundary(),
            self.members(),
            self.interior_unique()
        );
        out.push_str("| leaf | w(I) | w(I^c) | multiplicity | samples |\n|---|---|---|---|---|\n");
        for l in &self.leaves {
            let mult = match &l.multiplicity {
                Some(LatticeIndex::Finite(v)) => v.to_string(),
                Some(LatticeIndex::Infinite) => "inf".into(),
                None => "-".into(),
            };
            let _ = writeln!(out, "| {} | {} | {} | {} | {} |", l.pair.label(), l.w, l.w_complement, mult, l.assigned);
        }
        out
    }
}

/// Smallest prime strictly greater than m.
pub fn next_prime(m: u64) -> u64 {
    let is_prime = |p: u64| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (m + 1..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

/// First prime above 1000 · 2^{n-1}.
pub fn jitter_modulus(n: usize) -> u64 {
    next_prime(1000 * (1u64 << (n - 1)))
}

/// 1/p for the first prime p > max(den, n), so k/den + q/p is never an integer for 1 ≤ q ≤ n.
pub fn grid_jitter(n: usize, den: usize) -> Rational {
    frac(1, next_prime(den.max(n) as u64) as i64)
}

/// x_q = k_q/1000 + 2^{q-1}/M with k_q uniform in [0, 999].
///
/// M is a prime coprime to 1000 and larger than 2^n, so x(S) is never an integer for
/// nonempty S: no sample lies on a facet of any leaf polytope or on a wall.
pub fn generic_samples(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let m = jitter_modulus(n) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|q| frac(rng.gen_range(0..1000i64), 1000) + frac(1 << q, m))
                .collect()
        })
        .collect()
}

/// The grid {0, 1/den, …, (den-1)/den}^n shifted by `jitter` in every coordinate.
pub fn grid_points(n: usize, den: usize, jitter: &Rational) -> Vec<Vec<Rational>> {
    let total = den.pow(n as u32);
    (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let (rest, d) = k.div_rem(&den);
                    k = rest;
                    frac(d as i64, den as i64) + jitter
                })
                .collect()
        })
        .collect()
}

pub fn coverage_test(n: usize, den: usize, jitter: &Rational, seed: u64) -> Result<DecompositionReport, DecompError> {
    let leaves = leaf_polytopes(n, seed)?;
    DecompositionReport::build(n, &leaves, &grid_points(n, den, jitter))
}

pub fn random_coverage(n: usize, count: usize, seed: u64) -> Result<DecompositionReport, DecompError> {
    let leaves = leaf_polytopes(n, seed)?;
    DecompositionReport::build(n, &leaves, &generic_samples(n, count, seed))
}

/// Vertex lattice index of every leaf polytope reached by a cascade.
pub fn multiplicity_report(cascade: &CascadeReport) -> Result<BTreeMap<AllowedPair, LatticeIndex>, DecompError> {
    cascade
        .leaves
        .iter()
        .map(|l| Ok((l.pair, vertex_lattice_index(&polytope_v(&l.chart.entries))?)))
        .collect()
}

/// One term σ_I σ_{I^c} of the class of the diagonal degeneration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTerm {
    pub pair: AllowedPair,
    pub w: usize,
    pub w_complement: usize,
    /// n(n+1)/2 - w(I) - w(I^c).
    pub dimension: usize,
    /// Free coordinates of the chart.
    pub plus_count: usize,
}

impl ClassTerm {
    /// Degrees add to n(n-1)/2 and the Richardson variety has dimension n.
    pub fn is_consistent(&self) -> bool {
        let n = self.pair.n();
        self.w + self.w_complement == n * (n - 1) / 2 && self.dimension == n && self.plus_count == n
    }

    pub fn to_json(&self) -> Value {
        json!({
            "I": self.pair.i().to_vec(),
            "Ic": self.pair.iprime().to_vec(),
            "w": self.w,
            "w_complement": self.w_complement,
            "dimension": self.dimension,
            "plus_count": self.plus_count,
            "ok": self.is_consistent(),
        })
    }
}

pub fn class_formula(n: usize) -> Vec<ClassTerm> {
    saturated_pairs(n)
        .into_iter()
        .map(|pair| {
            let (w, wc) = (codim_w(pair.i()), codim_w(pair.iprime()));
            ClassTerm { pair, w, w_complement: wc, dimension: n * (n + 1) / 2 - w - wc, plus_count: build_shape(&pair).plus_count() }
        })
        .collect()
}

/// x(S) for the point, exposed for reports on individual constraints.
pub fn evaluate(x: &[Rational], s: &AdmissibleSet) -> Rational {
    x_of(x, s)
}

/// The nine-dimensional point (9,9,1,9,9,9,1,1,9)/10.
pub fn example_point_n9() -> Vec<Rational> {
    [9, 9, 1, 9, 9, 9, 1, 1, 9].iter().map(|&k| frac(k, 10)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(p, q)| frac(p, q)).collect()
    }

    #[test]
    fn n9_example() {
        let a = assign_region(&example_point_n9()).unwrap();
        assert_eq!(a.sc, vec![2, 4, 5, 6, 9]);
        assert_eq!(a.i, Subset::from_slice(&[1, 4, 5, 6, 8]));
        assert_eq!(a.iprime, Subset::from_slice(&[2, 3, 7]));
        // λ' = (7, 3, 2): y'_2 < 1 ≤ y'_3, y'_6 < 2 ≤ y'_7, y'_7 < 3 ≤ y'_8.
        a.check_dual().unwrap();
    }

    #[test]
    fn origin_and_corner() {
        let a = assign_region(&vec![int(0); 4]).unwrap();
        assert!(a.i.is_empty() && a.sc.is_empty());
        assert_eq!(a.check_dual(), Err(DecompError::DualInequality { m: 1 }));
        let a = assign_region(&vec![int(1); 4]).unwrap();
        assert_eq!(a.i, Subset::interval(1, 3));
    }

    #[test]
    fn walls_and_outside_points() {
        assert!(matches!(assign_region(&pt(&[(1, 2), (1, 2), (1, 3)])), Err(DecompError::BoundaryPoint { q: 2, .. })));
        assert_eq!(assign_region(&pt(&[(3, 2), (0, 1)])), Err(DecompError::NotInCube(1)));
        // Either side of the wall y_2 = 1 gets a different region.
        let below = assign_region(&pt(&[(1, 2), (49, 100), (1, 3)])).unwrap();
        let above = assign_region(&pt(&[(1, 2), (51, 100), (1, 3)])).unwrap();
        assert_ne!(below.i, above.i);
    }

    #[test]
    fn jitter_modulus_is_prime_above_bound() {
        assert_eq!(jitter_modulus(2), 2003);
        assert!(jitter_modulus(6) > 32000);
    }

    #[test]
    fn class_formula_n4() {
        let t = class_formula(4);
        assert_eq!(t.len(), 8);
        assert!(t.iter().all(|c| c.is_consistent() && c.w + c.w_complement == 6));
        let t = class_formula(2);
        assert_eq!(t.iter().map(|c| (c.w, c.w_complement)).collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn grid_size() {
        assert_eq!(grid_points(3, 5, &frac(1, 11)).len(), 125);
        assert_eq!(grid_jitter(3, 5), frac(1, 7));
    }
}
