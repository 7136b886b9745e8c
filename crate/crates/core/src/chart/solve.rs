//! Star solver, chart reconstruction and incidence checks.

use rand::Rng;

use super::{bar_position, iso_dot, ChartError, ChartMatrix, PlusAssignment, Symbol, SymbolShape};
use crate::combin::AllowedPair;
use crate::exactnum::{int, ExactMatrix, Field, LinearSolution, Rational};

/// Solves for the star entries so that all rows become orthogonal.
///
/// Rows are processed top to bottom. The stars of row p are determined by pairing
/// row p with every row r ≤ p that has a nonzero symbol opposite one of them.
pub fn solve_stars<F: Field>(shape: &SymbolShape, plus: &PlusAssignment<F>) -> Result<ChartMatrix<F>, ChartError> {
    let n = shape.n();
    let w = shape.width();
    if plus.len() != shape.plus_count() {
        return Err(ChartError::PlusCount { expected: shape.plus_count(), got: plus.len() });
    }
    let mut m = ExactMatrix::<F>::zeros(n, w);
    for r in 0..n {
        m.set(r, shape.one_position(r), F::one());
    }
    for (&(r, c), v) in shape.plus_positions().iter().zip(&plus.values) {
        m.set(r, c, v.clone());
    }
    for sys in star_systems(shape) {
        let (p, unknowns) = (sys.row, &sys.unknowns);
        let mut coeffs = Vec::new();
        let mut rhs = Vec::new();
        for &r in &sys.partners {
            let factor = if r == p { F::from_i64(2) } else { F::one() };
            coeffs.extend(unknowns.iter().map(|&c| factor.clone() * m.get(r, bar_position(n, c)).clone()));
            rhs.push(-iso_dot(m.row(p), m.row(r))?);
        }
        let system = ExactMatrix::new(rhs.len(), unknowns.len(), coeffs)?;
        let reason = match system.solve(&rhs)? {
            LinearSolution::Unique(x) => {
                for (&c, v) in unknowns.iter().zip(x) {
                    m.set(p, c, v);
                }
                continue;
            }
            LinearSolution::Underdetermined { rank } => {
                format!("singular ({} equations, {} unknowns, rank {rank})", rhs.len(), unknowns.len())
            }
            LinearSolution::Inconsistent => "inconsistent".to_string(),
        };
        return Err(ChartError::NotNice { row: p + 1, reason });
    }
    if let Some((a, b)) = check_isotropic(&m) {
        return Err(ChartError::NotIsotropic(a + 1, b + 1));
    }
    Ok(ChartMatrix { shape: shape.clone(), entries: m })
}

/// The linear system that determines the stars of one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSystem {
    /// 0-based row.
    pub row: usize,
    /// Positions of the row's stars.
    pub unknowns: Vec<usize>,
    /// Rows r ≤ row whose pairing with `row` involves a star.
    pub partners: Vec<usize>,
}

/// Structural layout of the per-row systems, independent of the values.
pub fn star_systems(shape: &SymbolShape) -> Vec<StarSystem> {
    let n = shape.n();
    (0..n)
        .filter_map(|p| {
            let unknowns: Vec<usize> = (0..shape.width()).filter(|&c| shape.symbol(p, c) == Symbol::Star).collect();
            if unknowns.is_empty() {
                return None;
            }
            let partners = (0..=p)
                .filter(|&r| unknowns.iter().any(|&c| shape.symbol(r, bar_position(n, c)) != Symbol::Zero))
                .collect();
            Some(StarSystem { row: p, unknowns, partners })
        })
        .collect()
}

/// First pair of rows (0-based) that fails to be orthogonal, including self-pairings.
pub fn check_isotropic<F: Field>(m: &ExactMatrix<F>) -> Option<(usize, usize)> {
    for a in 0..m.rows() {
        for b in a..m.rows() {
            if !iso_dot(m.row(a), m.row(b)).map(|v| v.is_zero()).unwrap_or(false) {
                return Some((a, b));
            }
        }
    }
    None
}

/// The entry at the leftmost non-Zero symbol of every row is nonzero.
pub fn check_leftmost_nonzero<F: Field>(a: &ChartMatrix<F>) -> bool {
    (0..a.shape.n()).all(|r| !a.entries.get(r, a.shape.window(r).0).is_zero())
}

fn dim_meet(a: &ExactMatrix<Rational>, killed: &[usize]) -> usize {
    a.rows() - a.select_columns(killed).rank()
}

/// All incidence conditions of the open Schubert cells for both standard flags.
///
/// Every flag member and its orthogonal complement is a coordinate subspace, so each
/// condition reads `dim(Λ ∩ H) = n - rank(A restricted to the columns H kills)`.
pub fn verify_richardson_membership(a: &ExactMatrix<Rational>, pair: &AllowedPair) -> bool {
    let n = pair.n();
    let w = 2 * n + 1;
    if a.rows() != n || a.cols() != w || a.rank() != n || check_isotropic(a).is_some() {
        return false;
    }
    let first = |m: usize| (0..m).collect::<Vec<_>>();
    let last = |m: usize| (w - m..w).collect::<Vec<_>>();
    let lam = pair.partitions();
    let lamp = pair.partitions_prime();
    for h in 1..=n {
        // F_q = first q positions; F_q^⊥ kills the last q.
        let d = if h <= lam.s() { dim_meet(a, &last(w - (n + 1 - lam.lambda_at(h)))) } else { dim_meet(a, &last(lam.mu_at(h))) };
        if d != h {
            return false;
        }
        // F'_q = last q positions; F'_q^⊥ kills the first q.
        let d = if h <= lamp.s() {
            dim_meet(a, &first(w - (n + 1 - lamp.lambda_at(h))))
        } else {
            dim_meet(a, &first(lamp.mu_at(h)))
        };
        if d != h {
            return false;
        }
    }
    true
}

/// The unique matrix of the pair's shape with the same row span as `b`.
pub fn reconstruct_chart<F: Field>(b: &ExactMatrix<F>, pair: &AllowedPair) -> Result<ChartMatrix<F>, ChartError> {
    let shape = super::build_shape(pair);
    let n = pair.n();
    let w = 2 * n + 1;
    if b.rows() != n || b.cols() != w {
        return Err(ChartError::NotInCell(format!("expected a {n}x{w} matrix, got {}x{}", b.rows(), b.cols())));
    }
    if b.rank() != n {
        return Err(ChartError::NotInCell("rows are dependent".into()));
    }
    let mut out = ExactMatrix::<F>::zeros(n, w);
    for p in 0..n {
        let (lo, hi) = shape.window(p);
        let outside: Vec<usize> = (0..w).filter(|c| *c < lo || *c > hi).collect();
        let kernel = b.select_columns(&outside).transpose().null_space();
        if kernel.len() != 1 {
            return Err(ChartError::NotInCell(format!(
                "row {}: span meets the row's coordinate window in dimension {}",
                p + 1,
                kernel.len()
            )));
        }
        let coeffs = &kernel[0];
        let v: Vec<F> = (0..w)
            .map(|c| {
                (0..n)
                    .filter(|&r| !coeffs[r].is_zero())
                    .fold(F::zero(), |acc, r| acc + coeffs[r].clone() * b.get(r, c).clone())
            })
            .collect();
        if v[hi].is_zero() {
            return Err(ChartError::NotInCell(format!("row {}: entry at the one position vanishes", p + 1)));
        }
        let s = F::one() / v[hi].clone();
        for (c, x) in v.into_iter().enumerate() {
            out.set(p, c, x * s.clone());
        }
    }
    Ok(ChartMatrix { shape, entries: out })
}

/// Uniform nonzero integers in [-99, 99].
pub fn random_plus<R: Rng>(shape: &SymbolShape, rng: &mut R) -> PlusAssignment<Rational> {
    PlusAssignment::new(
        (0..shape.plus_count())
            .map(|_| {
                let v = rng.gen_range(1..=99i64);
                int(if rng.gen_bool(0.5) { v } else { -v })
            })
            .collect(),
    )
}

/// A nice chart found by seeded sampling.
#[derive(Clone, Debug)]
pub struct RandomDraw {
    pub chart: ChartMatrix<Rational>,
    /// Number of draws used, including the successful one.
    pub attempts: usize,
}

/// Draws plus entries until the solver succeeds with nonzero leftmost entries.
pub fn nice_chart<R: Rng>(shape: &SymbolShape, rng: &mut R, max_draws: usize) -> Result<RandomDraw, ChartError> {
    for attempt in 1..=max_draws {
        let plus = random_plus(shape, rng);
        if let Ok(chart) = solve_stars(shape, &plus) {
            if check_leftmost_nonzero(&chart) {
                return Ok(RandomDraw { chart, attempts: attempt });
            }
        }
    }
    Err(ChartError::NoNiceDraw(max_draws))
}

/// A nice chart of a uniformly chosen allowed pair; its rows span a random isotropic subspace.
pub fn random_isotropic<R: Rng>(n: usize, rng: &mut R) -> Result<ChartMatrix<Rational>, ChartError> {
    let nodes = crate::combin::enumerate_tree(n).map_err(|e| ChartError::NotInCell(e.to_string()))?.nodes();
    let (_, pair) = nodes[rng.gen_range(0..nodes.len())];
    Ok(nice_chart(&super::build_shape(&pair), rng, 32)?.chart)
}
