use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use ogdegen::exactnum::{frac, int, smith_normal_form, ExactMatrix, Poly, Rational, RationalFunction};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

/// Square rational matrices, often singular because entries are small.
fn square(max: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(rat(), n * n).prop_map(move |v| ExactMatrix::new(n, n, v).unwrap()))
}

/// Matrices of bounded rank: a product of an r × k and a k × c factor.
fn low_rank(max: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, k, c)| {
        (prop::collection::vec(-3i64..=3, r * k), prop::collection::vec(-3i64..=3, k * c)).prop_map(move |(a, b)| {
            let a = ExactMatrix::new(r, k, a.into_iter().map(int).collect()).unwrap();
            let b = ExactMatrix::new(k, c, b.into_iter().map(int).collect()).unwrap();
            a.mul(&b).unwrap()
        })
    })
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(-4i64..=4, 1..=3), prop::collection::vec(-4i64..=4, 1..=3))
        .prop_filter_map("nonzero denominator", |(n, d)| RationalFunction::new(Poly::from_i64s(&n), Poly::from_i64s(&d)).ok())
}

/// Functions regular at t = 0.
fn regular() -> impl Strategy<Value = RationalFunction> {
    ratfunc().prop_filter("regular at 0", |f| !f.den().constant_term().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solve_square_inverts_multiplication(m in square(5), x in prop::collection::vec(rat(), 5)) {
        let n = m.rows();
        prop_assume!(m.rank() == n);
        let x = &x[..n];
        let b = m.mul_vec(x).unwrap();
        prop_assert_eq!(m.solve_square(&b).unwrap(), x.to_vec());
    }

    #[test]
    fn bareiss_rank_matches_naive(m in low_rank(8)) {
        prop_assert_eq!(m.rank(), m.rank_naive());
    }

    #[test]
    fn bareiss_rank_matches_naive_over_qt(n in 1usize..=4, c in 1usize..=4, seed in prop::collection::vec(ratfunc(), 16)) {
        // Duplicate a row half the time to force rank drops.
        let mut rows: Vec<Vec<RationalFunction>> = (0..n).map(|r| seed[r * 4..r * 4 + c].to_vec()).collect();
        if n > 1 && seed[0].degree() % 2 == 0 {
            rows[n - 1] = rows[0].iter().map(|f| f.clone() * RationalFunction::t()).collect();
        }
        let m = ExactMatrix::from_rows(rows, c).unwrap();
        prop_assert_eq!(m.rank(), m.rank_naive());
    }

    #[test]
    fn eval_at_zero_is_a_homomorphism(f in regular(), g in regular()) {
        let (f0, g0) = (f.eval_at_zero().unwrap(), g.eval_at_zero().unwrap());
        prop_assert_eq!((f.clone() + g.clone()).eval_at_zero().unwrap(), f0.clone() + g0.clone());
        prop_assert_eq!((f.clone() - g.clone()).eval_at_zero().unwrap(), f0.clone() - g0.clone());
        prop_assert_eq!((f.clone() * g.clone()).eval_at_zero().unwrap(), f0.clone() * g0.clone());
        if !g0.is_zero() {
            prop_assert_eq!((f / g).eval_at_zero().unwrap(), f0 / g0);
        }
    }

    #[test]
    fn smith_form_divisibility_and_determinant(n in 1usize..=4, v in prop::collection::vec(-9i64..=9, 16)) {
        let m = ExactMatrix::new(n, n, v[..n * n].iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let s = smith_normal_form(&m);
        prop_assert!(s.diagonal.iter().all(|d| d.is_positive()));
        prop_assert!(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let q = m.map(|x| Rational::from_integer(x.clone()));
        let det = q.determinant().unwrap();
        let prod = if s.rank == n { s.diagonal.iter().fold(BigInt::one(), |a, d| a * d) } else { BigInt::zero() };
        prop_assert_eq!(det.abs(), Rational::from_integer(prod));
    }
}
