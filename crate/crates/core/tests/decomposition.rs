use ogdegen::combin::{AdmissibleSet, Subset};
use ogdegen::decomp::*;
use ogdegen::degen::{cascade, CascadeOptions};
use ogdegen::dmatroid::{g_of, polytope_v, rank_of};
use ogdegen::exactnum::{frac, int};

#[test]
fn generic_samples_land_in_one_interior() {
    for n in 2..=5 {
        let t = std::time::Instant::now();
        let rep = random_coverage(n, 1000, 17 + n as u64).unwrap();
        eprintln!("n={n}: {:?} {}", t.elapsed(), rep.to_markdown());
        assert_eq!(rep.assigned(), 1000);
        assert_eq!(rep.members(), 1000);
        assert_eq!(rep.interior_unique(), 1000);
        assert!(rep.all_pass());
    }
}

#[test]
fn jittered_grid_is_covered() {
    let rep = coverage_test(3, 5, &frac(1, 11), 1).unwrap();
    assert_eq!(rep.samples.len(), 125);
    assert_eq!(rep.boundary(), 0);
    assert_eq!(rep.members(), 125);
    assert!(rep.all_members());
}

#[test]
fn unjittered_grid_hits_walls_on_integral_sums() {
    let rep = coverage_test(3, 2, &int(0), 1).unwrap();
    assert!(rep.boundary() > 0);
    for s in rep.samples.iter().filter(|s| s.is_boundary()) {
        let mut y = int(0);
        let on_wall = s.x.iter().any(|v| {
            y += v;
            y.is_integer() && y >= int(1)
        });
        assert!(on_wall);
    }
    assert!(rep.all_members());
}

#[test]
fn cube_vertices_are_covered() {
    for n in 2..=4 {
        let leaves = leaf_polytopes(n, 3).unwrap();
        for bits in 0u32..1 << n {
            let x: Vec<_> = (0..n).map(|q| int((bits >> q & 1) as i64)).collect();
            let rec = examine(&x, &leaves);
            let inside = leaves.iter().any(|l| verify_membership(&x, &l.chart).is_ok());
            assert!(inside, "vertex {bits:b} of the {n}-cube");
            if let Ok(a) = &rec.assignment {
                assert_eq!(rec.member, Some(Ok(())), "{:?}", a.i);
            }
        }
    }
}

#[test]
fn n9_example_lies_in_its_leaf() {
    let x = example_point_n9();
    let a = assign_region(&x).unwrap();
    let leaf = LeafPolytope::draw(&a.pair(), &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5)).unwrap();
    // (x1+x2+x8+x9) - (x4+x5+x6) ≤ rk(A_S) - 3.
    let s = AdmissibleSet::new(9, Subset::from_slice(&[1, 2, 8, 9]), Subset::from_slice(&[4, 5, 6])).unwrap();
    assert_eq!(rank_of(&leaf.chart.entries, &s), 5);
    assert_eq!(g_of(&leaf.chart.entries, &s), 2);
    assert_eq!(evaluate(&x, &s), frac(1, 10));
    assert_eq!(verify_membership(&x, &leaf.chart), Ok(()));
}

#[test]
fn cascade_leaves_have_index_one() {
    for n in 2..=5 {
        let rep = cascade(n, 2, &CascadeOptions::default()).unwrap();
        let m = multiplicity_report(&rep).unwrap();
        assert_eq!(m.len(), 1 << (n - 1));
        assert!(m.values().all(|i| i.is_one()));
        // Same polytope as an independent leaf draw.
        let leaves = leaf_polytopes(n, 9).unwrap();
        for l in &rep.leaves {
            let other = leaves.iter().find(|x| x.pair == l.pair).unwrap();
            assert_eq!(polytope_v(&l.chart.entries), polytope_v(&other.chart.entries));
        }
    }
}

#[test]
fn class_formula_up_to_ten() {
    for n in 2..=10 {
        let t = class_formula(n);
        assert_eq!(t.len(), 1 << (n - 1));
        assert!(t.iter().all(ClassTerm::is_consistent));
    }
}
