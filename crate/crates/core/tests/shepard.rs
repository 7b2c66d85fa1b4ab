use landmark_interp::bench::{gen_case, CaseKind, CaseSpec, EvaluationGrid, Reference};
use landmark_interp::shepard::{build_nodal_interpolants, nearest_landmarks};
use landmark_interp::{solve_transform, Landmark, LandmarkSet, RadialKernel, ShepardConfig, ShepardTransform};
use proptest::prelude::*;

fn lcg(seed: u64) -> impl FnMut() -> f64 {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn random_set(n: usize, seed: u64) -> LandmarkSet {
    let mut r = lcg(seed);
    let pairs = (0..n)
        .map(|_| {
            let s = vec![r(), r()];
            let t = vec![s[0] + 0.1 * (r() - 0.5), s[1] + 0.1 * (r() - 0.5)];
            Landmark::new(s, t)
        })
        .collect();
    LandmarkSet::new(2, pairs).unwrap()
}

fn tps_cfg(n_l: usize, n_w: usize) -> ShepardConfig {
    ShepardConfig::new(n_l, n_w, RadialKernel::thin_plate_spline())
}

#[test]
fn nearest_neighbor_ordering() {
    let line = LandmarkSet::new(
        1,
        [0.0, 1.0, 2.0, 3.0, 4.0, 5.0].iter().map(|&x| Landmark::new(vec![x], vec![x])).collect(),
    )
    .unwrap();
    assert_eq!(nearest_landmarks(&line, &[0.9], 1).unwrap(), vec![1]);
    // 2.5 is equidistant to indices 2 and 3; the lower index wins
    assert_eq!(nearest_landmarks(&line, &[2.5], 1).unwrap(), vec![2]);
    assert_eq!(nearest_landmarks(&line, &[4.2], 6).unwrap(), vec![4, 5, 3, 2, 1, 0]);
}

#[test]
fn full_neighborhoods_reproduce_global_interpolant() {
    let set = random_set(12, 3);
    let global = solve_transform(&RadialKernel::thin_plate_spline(), &set).unwrap();
    let nodal = build_nodal_interpolants(&set, &tps_cfg(12, 4)).unwrap();
    let mut r = lcg(9);
    for node in &nodal {
        for _ in 0..10 {
            let x = [r(), r()];
            let (a, b) = (node.evaluate(&x), global.evaluate(&x));
            assert!((a[0] - b[0]).abs() < 1e-9 && (a[1] - b[1]).abs() < 1e-9);
        }
    }
    let sh = ShepardTransform::build(&set, tps_cfg(12, 4)).unwrap();
    for j in 0..set.len() {
        assert_eq!(sh.evaluate(set.source(j)), set.target(j));
    }
}

#[test]
fn single_point_gaussian_nodes() {
    let set = random_set(8, 5);
    let nodal = build_nodal_interpolants(&set, &ShepardConfig::new(1, 3, RadialKernel::gaussian(1.0).unwrap())).unwrap();
    for (j, node) in nodal.iter().enumerate() {
        assert_eq!(node.neighbors(), &[j]);
        assert_eq!(node.local().coefficients(0)[0], set.target(j)[0]);
        assert_eq!(node.evaluate(set.source(j)), set.target(j));
    }
}

#[test]
fn nodal_residuals_on_shift_case() {
    let case = gen_case(&CaseSpec::new(CaseKind::SquareShift32)).unwrap();
    let sh = ShepardTransform::build(&case.landmarks, tps_cfg(25, 25)).unwrap();
    assert_eq!(sh.nodal().len(), 36);
    assert!(sh.nodal().iter().all(|n| n.local().report().residual <= 1e-6));
    let score = case.rmse(&landmark_interp::Transformation::from(sh), Reference::Identity).unwrap();
    assert!(score.is_finite() && score < 1.0);
}

#[test]
fn symmetric_pair_splits_weight() {
    let set = LandmarkSet::new(
        1,
        [0.0, 1.0, 5.0, 6.0, 7.0].iter().map(|&x| Landmark::new(vec![x], vec![x])).collect(),
    )
    .unwrap();
    let sh = ShepardTransform::build(&set, ShepardConfig::new(1, 2, RadialKernel::gaussian(1.0).unwrap())).unwrap();
    assert_eq!(sh.weights(&[0.5]), vec![0.5, 0.5, 0.0, 0.0, 0.0]);
}

#[test]
fn cardinality_and_interpolation() {
    let set = random_set(40, 11);
    let sh = ShepardTransform::build(&set, tps_cfg(10, 8)).unwrap();
    for j in 0..set.len() {
        let w = sh.weights(set.source(j));
        for (i, v) in w.iter().enumerate() {
            assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
        }
        assert_eq!(sh.evaluate(set.source(j)), set.target(j));
    }
}

#[test]
fn identity_targets_give_identity() {
    let set = random_set(30, 17).identity_targets();
    let sh = ShepardTransform::build(&set, tps_cfg(10, 10)).unwrap();
    let mut r = lcg(1);
    for _ in 0..200 {
        let x = [r(), r()];
        let f = sh.evaluate(&x);
        assert!((f[0] - x[0]).abs() < 1e-8 && (f[1] - x[1]).abs() < 1e-8);
    }
}

#[test]
fn grid_evaluation_is_finite() {
    let set = random_set(50, 23);
    let sh: landmark_interp::Transformation = ShepardTransform::build(&set, tps_cfg(12, 6)).unwrap().into();
    let grid = EvaluationGrid::default();
    assert!(grid.mapped(&sh).points().iter().all(|p| p[0].is_finite() && p[1].is_finite()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weights_are_a_partition_of_unity(seed in any::<u64>(), n in 8usize..40, nw in 1usize..8, x in prop::array::uniform2(-0.2f64..1.2)) {
        let set = random_set(n, seed);
        let sh = ShepardTransform::build(&set, ShepardConfig::new(3, nw, RadialKernel::gaussian(1.0).unwrap())).unwrap();
        let w = sh.weights(&x);
        prop_assert!(w.iter().all(|&v| v >= 0.0));
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(w.iter().filter(|&&v| v > 0.0).count() <= nw);
    }

    #[test]
    fn distant_targets_do_not_matter(seed in any::<u64>(), x in prop::array::uniform2(0.0f64..1.0)) {
        let set = random_set(60, seed);
        let cfg = tps_cfg(6, 4);
        let sh = ShepardTransform::build(&set, cfg).unwrap();
        let mut reach: Vec<usize> = sh.active(&x).iter().flat_map(|&i| sh.nodal()[i].neighbors().to_vec()).collect();
        reach.sort_unstable();
        reach.dedup();
        let outside: Vec<usize> = (0..set.len()).filter(|j| !reach.contains(j)).collect();
        prop_assume!(!outside.is_empty());
        let mut moved = set.clone();
        for &j in &outside {
            moved = moved.with_target(j, &[3.0, -2.0]).unwrap();
        }
        let before = sh.evaluate(&x);
        let after = ShepardTransform::build(&moved, cfg).unwrap().evaluate(&x);
        prop_assert_eq!(before.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), after.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }
}
