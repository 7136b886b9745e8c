use ogdegen::chart::{build_shape, random_plus, reconstruct_chart, solve_stars, torus_scale, ColumnIndex, PlusAssignment};
use ogdegen::combin::{enumerate_tree, validate_pair, AllowedPair, Subset};
use ogdegen::degen::*;
use ogdegen::exactnum::{int, Rational, RationalFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair(n: usize, i: &[usize], ip: &[usize]) -> AllowedPair {
    validate_pair(n, Subset::from_slice(i), Subset::from_slice(ip)).unwrap()
}

fn nicest_draw(p: &AllowedPair, rng: &mut ChaCha8Rng) -> PlusAssignment<Rational> {
    let shape = build_shape(p);
    (0..MAX_ROOT_DRAWS).map(|_| random_plus(&shape, rng)).find(|x| is_nicest(p, x)).expect("nicest draw")
}

#[test]
fn cascades_reach_every_leaf_once() {
    for n in 2..=5 {
        for seed in 0..5 {
            let rep = cascade(n, seed, &CascadeOptions::default()).unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(rep.leaves_complete(), "n={n} seed={seed}");
            assert_eq!(rep.steps.len(), (1 << (n - 1)) - 1);
            assert_eq!(rep.steps[0].path, "");
        }
    }
}

#[test]
fn n6_cascade() {
    let rep = cascade(6, 7, &CascadeOptions { dump_matrices: true }).unwrap();
    assert!(rep.leaves_complete());
    assert!(rep.steps.iter().all(|s| s.matrices.is_some()));
    let v = rep.to_json(true);
    assert_eq!(v["leaf_count"], 32);
}

#[test]
fn right_limit_entry_for_empty_three() {
    let p = pair(6, &[], &[3]);
    let n = 6;
    let shape = build_shape(&p);
    assert_eq!(p.right_child().unwrap(), pair(6, &[4, 5], &[3]));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let plus = nicest_draw(&p, &mut rng);
        let f = build_family(&p, &plus).unwrap();
        let left = left_limit_matrix(&f.at.entries).unwrap();
        let right = right_limit_matrix(&p, &f.at.entries).unwrap();
        let a = |c: ColumnIndex| plus.values[shape.plus_index(0, c.position(n)).unwrap()].clone();
        let alpha44 = left.get(3, ColumnIndex::Pos(4).position(n)).clone();
        let expected = -alpha44 * a(ColumnIndex::Neg(4)) / a(ColumnIndex::Neg(3));
        assert_eq!(right.get(3, ColumnIndex::Pos(3).position(n)), &expected);
        // The plain limit kills the same entry.
        assert_eq!(left.get(3, ColumnIndex::Pos(3).position(n)), &int(0));
    }
}

#[test]
fn limits_commute_with_constant_torus() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=4 {
        for (_, p) in enumerate_tree(n).unwrap().nodes() {
            if p.is_saturated() {
                continue;
            }
            let plus = nicest_draw(&p, &mut rng);
            let f = build_family(&p, &plus).unwrap();
            let tc: Vec<Rational> = (1..=n as i64).map(|q| int(q + 1)).collect();
            let tf: Vec<RationalFunction> = tc.iter().map(RationalFunction::from_rational).collect();
            let scaled = torus_scale(&f.at.entries, &tf).unwrap();
            let (lp, l) = limit_left(&f).unwrap();
            let (rp, r) = limit_right(&f).unwrap();
            let ls = reconstruct_chart(&left_limit_matrix(&scaled).unwrap(), &lp).unwrap();
            let rs = reconstruct_chart(&right_limit_matrix(&p, &scaled).unwrap(), &rp).unwrap();
            assert_eq!(ls.entries, reconstruct_chart(&torus_scale(&l.entries, &tc).unwrap(), &lp).unwrap().entries);
            assert_eq!(rs.entries, reconstruct_chart(&torus_scale(&r.entries, &tc).unwrap(), &rp).unwrap().entries);
        }
    }
}

#[test]
fn right_projection_is_dominant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=6 {
        for (_, p) in enumerate_tree(n).unwrap().nodes() {
            if p.is_saturated() {
                continue;
            }
            let plus = nicest_draw(&p, &mut rng);
            let child = p.right_child().unwrap();
            assert_eq!(pr_right_jacobian_rank(&p, &plus).unwrap(), build_shape(&child).plus_count(), "{}", p.label());
            assert_eq!(pr_left(&p, &plus).unwrap().len() + 1, plus.len());
        }
    }
}

#[test]
fn nicest_failure_reports_path() {
    let p = AllowedPair::root(3);
    let shape = build_shape(&p);
    let mut plus = PlusAssignment::new(vec![int(1); shape.plus_count()]);
    plus.values[0] = int(0);
    let err = nicest_check(&p, &plus).unwrap_err();
    assert_eq!(err.path, "");
    assert!(solve_stars(&shape, &nicest_draw(&p, &mut ChaCha8Rng::seed_from_u64(1))).is_ok());
}
