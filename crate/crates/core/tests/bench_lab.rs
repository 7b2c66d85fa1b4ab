use landmark_interp::bench::{
    convex_hull, gen_case, in_convex_polygon, published, real_life_run, rmse, rmse_between, sweep, CaseKind, CaseSpec,
    EvaluationGrid, GroundTruth, Identity, Method, MethodSpec, ParamKind, ParamRange, Point2, PointMap, Reference,
};
use landmark_interp::Error;
use proptest::prelude::*;

struct Offset(Point2);

impl PointMap for Offset {
    fn map(&self, p: Point2) -> Point2 {
        [p[0] + self.0[0], p[1] + self.0[1]]
    }
}

#[test]
fn rmse_examples() {
    let grid = EvaluationGrid::default();
    assert_eq!(rmse(&Identity, grid.points(), &Identity), 0.0);
    assert!((rmse(&Offset([0.3, 0.4]), grid.points(), &Identity) - 0.5).abs() < 1e-15);
    assert!((rmse(&Identity, grid.points(), &Offset([0.25, 0.0])) - 0.25).abs() < 1e-15);
    let moved = grid.mapped(&Offset([0.0, 0.1]));
    assert!((rmse_between(grid.points(), moved.points()).unwrap() - 0.1).abs() < 1e-15);
    assert!(rmse_between(grid.points(), &moved.points()[1..]).is_err());
}

#[test]
fn grid_layout() {
    let g = EvaluationGrid::unit(3, 5).unwrap();
    assert_eq!(g.points().len(), 15);
    assert_eq!(g.point(0, 0), [0.0, 0.0]);
    assert_eq!(g.point(2, 4), [1.0, 1.0]);
    assert_eq!(g.point(1, 2), [0.5, 0.5]);
    assert!(EvaluationGrid::unit(1, 5).is_err());
    assert_eq!(EvaluationGrid::default().points().len(), 1600);
}

#[test]
fn case_cardinalities() {
    for (kind, n, quasi) in [
        (CaseKind::SquareShift32, 36, 4),
        (CaseKind::SquareScale32, 32, 0),
        (CaseKind::SquareShift64, 68, 4),
        (CaseKind::SquareScale64, 64, 0),
        (CaseKind::CircleExpand, 60, 40),
        (CaseKind::CircleContract, 60, 40),
        (CaseKind::RealLife, 18, 12),
    ] {
        let case = gen_case(&CaseSpec::new(kind)).unwrap();
        assert_eq!(case.landmarks.len(), n, "{}", kind.name());
        let q: Vec<usize> = (0..n).filter(|&j| case.landmarks.is_quasi(j)).collect();
        assert_eq!(q.len(), quasi, "{}", kind.name());
        for j in q {
            assert_eq!(case.landmarks.source(j), case.landmarks.target(j));
        }
        assert_eq!(CaseKind::from_name(kind.name()), Some(kind));
    }
}

#[test]
fn real_life_first_landmark() {
    let case = gen_case(&CaseSpec::new(CaseKind::RealLife)).unwrap();
    assert_eq!(case.landmarks.source(0), &[0.3135, 0.8232]);
    assert_eq!(case.landmarks.target(0), &[0.3467, 0.8525]);
    assert!(case.truth.is_none());
    assert!(matches!(case.evaluation_points(Reference::Truth), Err(Error::Config(_))));
}

#[test]
fn landmarks_follow_ground_truth() {
    for kind in [CaseKind::SquareShift32, CaseKind::SquareScale64, CaseKind::CircleExpand, CaseKind::CircleContract] {
        let case = gen_case(&CaseSpec::new(kind)).unwrap();
        let truth = case.truth.unwrap();
        for j in (0..case.landmarks.len()).filter(|&j| !case.landmarks.is_quasi(j)) {
            let s = case.landmarks.source(j);
            let want = truth.map([s[0], s[1]]);
            let t = case.landmarks.target(j);
            assert!((t[0] - want[0]).abs() < 1e-15 && (t[1] - want[1]).abs() < 1e-15, "{} #{j}", kind.name());
        }
    }
}

#[test]
fn geometry_outside_domain_rejected() {
    let mut spec = CaseSpec::new(CaseKind::SquareShift32);
    spec.square.shift = [0.0, 0.9];
    assert!(matches!(gen_case(&spec), Err(Error::Domain(_))));
}

#[test]
fn hull_membership() {
    let hull = convex_hull(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.2], [1.0, 1.0], [0.0, 1.0]]);
    assert_eq!(hull.len(), 4);
    assert!(in_convex_polygon(&hull, [0.5, 0.5]));
    assert!(in_convex_polygon(&hull, [1.0, 0.5]));
    assert!(!in_convex_polygon(&hull, [1.1, 0.5]));
}

#[test]
fn parameter_ranges() {
    let v = ParamKind::Alpha.default_range().values().unwrap();
    assert_eq!(v.len(), 10);
    assert_eq!((v[0], v[9]), (0.2, 2.0));
    let c = ParamKind::C.default_range().values().unwrap();
    assert_eq!((c[0], c[9]), (0.1, 1.0));
    for w in [v, c] {
        let step = w[1] - w[0];
        for pair in w.windows(2) {
            assert!(pair[1] > pair[0]);
            assert!((pair[1] - pair[0] - step).abs() < 1e-15);
        }
    }
    assert!(ParamRange { start: 1.0, stop: 2.0, count: 1 }.values().is_err());
    assert!(ParamRange { start: 2.0, stop: 1.0, count: 5 }.values().is_err());
}

#[test]
fn quasi_landmarks_stay_fixed() {
    for kind in CaseKind::ALL {
        let case = gen_case(&CaseSpec::new(kind)).unwrap();
        for method in Method::ALL {
            let t = MethodSpec::for_case(method, &case)
                .build(&case.landmarks, published::parameter(method, kind))
                .unwrap();
            for j in (0..case.landmarks.len()).filter(|&j| case.landmarks.is_quasi(j)) {
                let q = case.landmarks.source(j);
                let f = t.evaluate(q);
                assert!((f[0] - q[0]).abs() < 1e-6 && (f[1] - q[1]).abs() < 1e-6, "{} {}", kind.name(), method.name());
            }
        }
    }
}

#[test]
fn parameter_free_sweep_has_one_row() {
    let case = gen_case(&CaseSpec::new(CaseKind::SquareShift32)).unwrap();
    let r = sweep(&MethodSpec::for_case(Method::Tps, &case), &case, None, Reference::Identity).unwrap();
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.optimum, 0);
    assert!(r.param_name().is_none());
}

#[test]
fn lobachevsky_sweep() {
    let case = gen_case(&CaseSpec::new(CaseKind::CircleExpand)).unwrap();
    let r = sweep(&MethodSpec::for_case(Method::L4, &case), &case, None, Reference::Truth).unwrap();
    assert_eq!(r.rows.len(), 10);
    assert!(r.rows.iter().all(|row| row.rmse.is_some_and(f64::is_finite)));
    let best = r.best().rmse.unwrap();
    assert!(r.rows.iter().all(|row| row.rmse.unwrap() >= best));
}

#[test]
fn sweep_is_deterministic() {
    let case = gen_case(&CaseSpec::new(CaseKind::SquareScale32)).unwrap();
    let spec = MethodSpec::for_case(Method::ShepardGaussian, &case);
    let a = sweep(&spec, &case, None, Reference::Identity).unwrap();
    let b = sweep(&spec, &case, None, Reference::Identity).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tps_beats_no_registration_on_shift_cases() {
    for kind in [CaseKind::SquareShift32, CaseKind::SquareShift64] {
        let case = gen_case(&CaseSpec::new(kind)).unwrap();
        let r = sweep(&MethodSpec::for_case(Method::Tps, &case), &case, None, Reference::Truth).unwrap();
        let none = case.rmse(&Identity, Reference::Truth).unwrap();
        assert!(r.best().rmse.unwrap() < none, "{}", kind.name());
    }
}

#[test]
fn identity_rmse_of_scaling_cases() {
    // without quasi-landmarks TPS reproduces the affine scaling exactly, so
    // its identity-reference RMSE is the displacement of x ↦ c + 1.5 (x − c)
    // over the grid: 0.5 · sqrt(2 var(grid coordinate))
    let n: f64 = 40.0;
    let var = (n * n - 1.0) / (12.0 * (n - 1.0) * (n - 1.0));
    let expected = 0.5 * (2.0 * var).sqrt();
    for kind in [CaseKind::SquareScale32, CaseKind::SquareScale64] {
        let case = gen_case(&CaseSpec::new(kind)).unwrap();
        let r = sweep(&MethodSpec::for_case(Method::Tps, &case), &case, None, Reference::Identity).unwrap();
        assert!((r.best().rmse.unwrap() - expected).abs() < 1e-9);
        assert!((expected - published::rmse(Method::Tps, kind).unwrap()).abs() < 5e-5);
    }
}

#[test]
fn scaling_cases_match_published_optima() {
    // the scaling geometry is recovered well enough that methods with
    // moderate conditioning land on the published optimum and RMSE
    let methods = [
        Method::Tps,
        Method::ShepardTps,
        Method::W2Radial,
        Method::W4Radial,
        Method::W2Tensor,
        Method::W4Tensor,
        Method::L4,
        Method::L6,
    ];
    for kind in [CaseKind::SquareScale32, CaseKind::SquareScale64] {
        let case = gen_case(&CaseSpec::new(kind)).unwrap();
        for m in methods {
            let r = sweep(&MethodSpec::for_case(m, &case), &case, None, Reference::Identity).unwrap();
            let best = r.best();
            let want = published::rmse(m, kind).unwrap();
            let got = best.rmse.unwrap();
            assert!(((got - want) / want).abs() < 1e-3, "{} {}: {got:.5e} vs {want:.5e}", kind.name(), m.name());
            if let Some(v) = best.value {
                let p = published::parameter(m, kind).unwrap();
                assert!((v - p).abs() < 1e-9, "{} {}: optimum {v} vs {p}", kind.name(), m.name());
            }
        }
    }
}

#[test]
fn real_life_rows() {
    let rows = real_life_run(&Method::REAL_LIFE).unwrap();
    assert_eq!(rows.len(), 6);
    for (row, m) in rows.iter().zip(Method::REAL_LIFE) {
        assert_eq!(row.method, m);
        assert!(row.rmse.is_finite());
        assert!(row.residual < 1e-6);
        assert!(row.published_rmse.is_some());
    }
    assert_eq!(rows[0].published_rmse, Some(1.0314e-1));
    assert_eq!(rows[1].published_rmse, Some(1.9685e-2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rmse_nonnegative_and_zero_only_on_match(dx in -1.0f64..1.0, dy in -1.0f64..1.0) {
        let grid = EvaluationGrid::unit(7, 9).unwrap();
        let e = rmse(&Offset([dx, dy]), grid.points(), &Identity);
        prop_assert!(e >= 0.0);
        prop_assert!((e - dx.hypot(dy)).abs() < 1e-14);
        prop_assert_eq!(e == 0.0, dx == 0.0 && dy == 0.0);
    }

    #[test]
    fn generation_is_deterministic(side in 0.1f64..0.4, dx in -0.05f64..0.05, dy in -0.05f64..0.05) {
        let mut spec = CaseSpec::new(CaseKind::SquareShift64);
        spec.square.center = [0.5, 0.5];
        spec.square.side = side;
        spec.square.shift = [dx, dy];
        let a = gen_case(&spec).unwrap();
        let b = gen_case(&spec).unwrap();
        prop_assert_eq!(a.landmarks, b.landmarks);
        let is_shift = matches!(a.truth, Some(GroundTruth::Shift { .. }));
        prop_assert!(is_shift);
    }
}
