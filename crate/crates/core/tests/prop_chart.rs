use std::collections::BTreeSet;

use ogdegen::chart::{
    build_shape, check_isotropic, check_leftmost_nonzero, nice_chart, reconstruct_chart, solve_stars, verify_richardson_membership,
    PlusAssignment, Symbol,
};
use ogdegen::combin::{enumerate_tree, validate_pair, AllowedPair, PartitionData, Subset};
use ogdegen::exactnum::{int, ExactMatrix, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random node of the tree for some n in the range.
fn node(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = AllowedPair> {
    ns.prop_flat_map(|n| {
        let nodes: Vec<AllowedPair> = enumerate_tree(n).unwrap().nodes().into_iter().map(|(_, p)| p).collect();
        prop::sample::select(nodes)
    })
}

fn saturated(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = AllowedPair> {
    node(ns).prop_filter("saturated", AllowedPair::is_saturated)
}

#[test]
fn tree_sizes_and_leaves() {
    for n in 2..=8 {
        let tree = enumerate_tree(n).unwrap();
        let nodes = tree.nodes();
        let distinct: BTreeSet<AllowedPair> = nodes.iter().map(|(_, p)| *p).collect();
        assert_eq!(distinct.len(), nodes.len());
        assert_eq!(nodes.len(), (1 << n) - 1);
        let leaves = tree.leaves();
        assert_eq!(leaves.len(), 1 << (n - 1));
        assert!(leaves.iter().all(|(_, p)| p.is_saturated() && p.i().union(p.iprime()) == Subset::interval(1, n - 1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn children_are_allowed(p in node(2..=8)) {
        if !p.is_saturated() {
            for c in [p.left_child().unwrap(), p.right_child().unwrap()] {
                prop_assert_eq!(validate_pair(c.n(), c.i(), c.iprime()).unwrap(), c);
            }
        }
    }

    #[test]
    fn j_and_k_depend_only_on_the_sets(p in node(2..=8)) {
        let q = validate_pair(p.n(), p.i(), p.iprime()).unwrap();
        prop_assert_eq!((q.j(), q.k()), (p.j(), p.k()));
    }

    #[test]
    fn mu_is_the_complement(n in 2usize..=10, bits in any::<u32>()) {
        let set = Subset::from_bits(bits & ((1 << (n - 1)) - 1));
        let pd = PartitionData::new(n, set);
        let removed: Vec<usize> = set.iter().map(|l| n - l).collect();
        let mut brute: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        brute.reverse();
        prop_assert_eq!(&pd.mu, &brute);
        prop_assert_eq!(pd.lambda.len() + pd.mu.len(), n);
    }

    #[test]
    fn plus_count_is_the_dimension(p in node(2..=8)) {
        let n = p.n();
        prop_assert_eq!(build_shape(&p).plus_count(), n * (n + 1) / 2 - p.i().sum() - p.iprime().sum());
    }

    #[test]
    fn inner_box_is_a_smaller_shape(p in node(2..=8)) {
        let ib = build_shape(&p).inner_box();
        prop_assume!(ib.k >= 1);
        let small = if p.j() == 0 {
            AllowedPair::root(ib.k)
        } else {
            validate_pair(ib.k, Subset::empty(), Subset::from_slice(&[p.j()])).unwrap()
        };
        // The box keeps zeros and stars; a row whose 1 lies right of the box shows a + there.
        let coarse = |g: &[Vec<Symbol>]| -> Vec<Vec<Symbol>> {
            g.iter().map(|r| r.iter().map(|&s| if s == Symbol::One { Symbol::Plus } else { s }).collect()).collect()
        };
        prop_assert_eq!(coarse(&build_shape(&p).inner_grid()), coarse(build_shape(&small).grid()));
    }

    #[test]
    fn nice_charts_are_isotropic_members(p in node(2..=7), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = nice_chart(&build_shape(&p), &mut rng, 32).unwrap().chart;
        prop_assert!(check_isotropic(&a.entries).is_none());
        prop_assert_eq!(a.entries.rank(), p.n());
        prop_assert!(check_leftmost_nonzero(&a));
        prop_assert!(verify_richardson_membership(&a.entries, &p));
    }

    #[test]
    fn saturated_charts_solve_for_small_values(p in saturated(2..=6), v in prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 2]), 6)) {
        let shape = build_shape(&p);
        let plus = PlusAssignment::new(v[..shape.plus_count()].iter().map(|&x| int(x)).collect());
        let a = solve_stars(&shape, &plus).unwrap();
        for &(r, c) in shape.star_positions() {
            prop_assert!(*a.entries.get(r, c) != int(0));
        }
        prop_assert!(check_isotropic(&a.entries).is_none());
    }

    #[test]
    fn reconstruction_undoes_row_operations(p in node(2..=6), seed in any::<u64>(), g in prop::collection::vec(-3i64..=3, 36)) {
        let n = p.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = nice_chart(&build_shape(&p), &mut rng, 32).unwrap().chart;
        let g = ExactMatrix::new(n, n, g[..n * n].iter().map(|&x| int(x)).collect::<Vec<Rational>>()).unwrap();
        prop_assume!(g.rank() == n);
        let b = g.mul(&a.entries).unwrap();
        prop_assert_eq!(reconstruct_chart(&b, &p).unwrap().entries, a.entries);
    }
}
