use landmark_interp::lobachevsky::{eval_fn_explicit, eval_fn_recurrence, eval_fn_star};
use landmark_interp::{Error, LobachevskySpec, RadialKernel, UnivariateKernel};
use proptest::prelude::*;

// Irwin-Hall density of a sum of n uniforms on [-a, a], written from the
// B-spline form sum_k (-1)^k C(n,k) (y - k)_+^(n-1) / (n-1)! where y is the
// distance to the nearer end of the support in units of 2a (less cancellation).
fn irwin_hall(n: u32, a: f64, x: f64) -> f64 {
    let y = (f64::from(n) * a - x.abs()) / (2.0 * a);
    if y <= 0.0 || y >= f64::from(n) {
        return 0.0;
    }
    let mut fact = 1.0;
    for i in 1..n {
        fact *= f64::from(i);
    }
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        let t = y - f64::from(k);
        if t > 0.0 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom * t.powi(n as i32 - 1);
        }
        binom = binom * f64::from(n - k) / f64::from(k + 1);
    }
    sum / fact / (2.0 * a)
}

fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(lo + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn radial_kernel_values() {
    assert_eq!(RadialKernel::thin_plate_spline().value(1.0), 0.0);
    assert_eq!(RadialKernel::thin_plate_spline().value(0.0), 0.0);
    let g = RadialKernel::gaussian(1.0).unwrap();
    assert_eq!(g.value(0.0), 1.0);
    assert!((g.value(1.0) - 0.36787944117).abs() < 1e-11);
    let w = RadialKernel::wendland(2, 1, 1.0).unwrap();
    assert!((w.value(0.5) - 0.1875).abs() < 1e-15);
    assert_eq!(w.value(1.2), 0.0);
    let mq = RadialKernel::multiquadric(2.0, 1).unwrap();
    assert!((mq.value(1.5) - 2.5).abs() < 1e-15);
}

#[test]
fn univariate_wendland_values() {
    let k = UnivariateKernel::wendland(1, 1.0).unwrap();
    assert_eq!(k.value(0.0), 1.0);
    assert!((k.value(0.5) - 0.3125).abs() < 1e-15);
    assert_eq!(k.value(-0.5), k.value(0.5));
}

#[test]
fn tails_and_supports() {
    assert_eq!(RadialKernel::gaussian(1.0).unwrap().polynomial_tail_degree(), None);
    assert_eq!(RadialKernel::thin_plate_spline().polynomial_tail_degree(), Some(1));
    assert_eq!(RadialKernel::multiquadric(1.0, 1).unwrap().polynomial_tail_degree(), Some(0));
    assert_eq!(RadialKernel::multiquadric(1.0, -1).unwrap().polynomial_tail_degree(), None);
    assert_eq!(RadialKernel::wendland(2, 1, 0.5).unwrap().support_radius(), 2.0);
    assert_eq!(RadialKernel::wendland(2, 1, 2.0).unwrap().support_radius(), 0.5);
    assert_eq!(RadialKernel::gaussian(1.0).unwrap().support_radius(), f64::INFINITY);
}

#[test]
fn invalid_parameters_rejected() {
    assert!(matches!(RadialKernel::gaussian(0.0), Err(Error::Config(_))));
    assert!(RadialKernel::gaussian(f64::NAN).is_err());
    assert!(RadialKernel::multiquadric(1.0, 2).is_err());
    assert!(RadialKernel::wendland(2, 1, -1.0).is_err());
    assert!(RadialKernel::wendland(4, 1, 1.0).is_err());
    assert!(UnivariateKernel::wendland(9, 1.0).is_err());
    assert!(RadialKernel::gaussian(1.0).unwrap().eval(-0.1).is_err());
}

#[test]
fn wendland_boundary_smoothness() {
    // φ_{m,h} is C^{2h}: the order-2h one-sided difference quotient at t = 1
    // tends to zero, so each tenfold smaller step shrinks it at least fivefold
    for (m, h) in [(1u8, 1u8), (2, 1), (2, 2), (3, 3)] {
        let k = RadialKernel::wendland(m, h, 1.0).unwrap();
        let order = 2 * usize::from(h);
        let mut last = f64::INFINITY;
        for step in [1e-2, 1e-3, 1e-4] {
            // backward difference of order `order` ending at the boundary
            let mut d = 0.0;
            let mut binom = 1.0;
            for i in 0..=order {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                d += sign * binom * k.value(1.0 - i as f64 * step);
                binom = binom * (order - i) as f64 / (i + 1) as f64;
            }
            let quotient = (d / step.powi(order as i32)).abs();
            assert!(quotient * 5.0 < last, "m={m} h={h} step={step}: {quotient} vs {last}");
            last = quotient;
        }
    }
}

#[test]
fn lobachevsky_examples() {
    assert_eq!(eval_fn_explicit(1, 0.5, 0.0).unwrap(), 1.0);
    assert_eq!(eval_fn_explicit(4, 1.0, 4.0).unwrap(), 0.0);
    assert!((eval_fn_explicit(2, 1.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
    assert!((eval_fn_recurrence(2, 1.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(eval_fn_recurrence(4, 1.0, -4.0).unwrap(), 0.0);
    let r = eval_fn_recurrence(6, 0.5, 0.37).unwrap();
    assert!((r - eval_fn_explicit(6, 0.5, 0.37).unwrap()).abs() < 1e-12);
    assert_eq!(eval_fn_star(4, 12f64.sqrt()).unwrap(), 0.0);
    let peak = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    assert!((eval_fn_star(4, 0.0).unwrap() - peak).abs() < 0.05);
    assert!((eval_fn_star(2, 0.0).unwrap() - (2.0f64 / 3.0).sqrt() * 0.5).abs() < 1e-15);
    assert!(eval_fn_recurrence(0, 1.0, 0.0).is_err());
    assert!(eval_fn_recurrence(3, 0.0, 0.0).is_err());
}

#[test]
fn lobachevsky_supports() {
    assert_eq!(LobachevskySpec::by_a(4, 1.0).unwrap().support(), (-4.0, 4.0));
    let s = LobachevskySpec::by_alpha(6, 1.0).unwrap().support();
    assert!((s.1 - 18f64.sqrt()).abs() < 1e-15 && s.0 == -s.1);
    let s = LobachevskySpec::by_alpha(4, 2.0).unwrap().support();
    assert!((s.1 - 12f64.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn lobachevsky_matches_irwin_hall() {
    for n in 1..=10 {
        for a in [0.5, 1.0, 2.0] {
            for i in 0..=200 {
                let x = -f64::from(n) * a * 1.1 + i as f64 * f64::from(n) * a * 2.2 / 200.0;
                let want = irwin_hall(n, a, x);
                let got = eval_fn_recurrence(n, a, x).unwrap();
                // the base density is half-open, so n = 1 differs only at x = a
                if n == 1 && (x - a).abs() < 1e-12 {
                    continue;
                }
                assert!((got - want).abs() < 1e-12, "n={n} a={a} x={x}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn lobachevsky_continuous_at_rounding_scale() {
    // 1 - 6.4e-17 and -1 - 6.4e-17 round to different sides of the knots
    // at +-1, which once made both f_1 samples live near the origin
    for n in 2..=10 {
        let at0 = eval_fn_star(n, 0.0).unwrap();
        for x in [5.551115123125783e-17, -5.551115123125783e-17, 1e-300, 2.2e-16] {
            let v = eval_fn_star(n, x).unwrap();
            assert!((v - at0).abs() <= 1e-14 * at0, "n={n} x={x:e}: {v} vs {at0}");
        }
        for a in [1.0, 0.54, 3.0] {
            let at0 = eval_fn_recurrence(n, a, 0.0).unwrap();
            let v = eval_fn_recurrence(n, a, 5.551115123125783e-17).unwrap();
            assert!((v - at0).abs() <= 1e-14 * at0, "n={n} a={a}");
        }
    }
}

#[test]
fn lobachevsky_integrates_to_one() {
    for n in 2..=12 {
        for a in [0.5, 1.0, 2.0] {
            let half = f64::from(n) * a;
            // integrate piecewise between knots where f_n is a polynomial
            let total: f64 = (0..n)
                .map(|k| {
                    let lo = -half + 2.0 * a * f64::from(k);
                    simpson(|x| eval_fn_recurrence(n, a, x).unwrap(), lo, lo + 2.0 * a, 64)
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-8, "n={n} a={a}: {total}");
        }
    }
}

#[test]
fn star_form_tends_to_normal_density() {
    let normal = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut last = f64::INFINITY;
    for n in [4, 8, 16, 32] {
        let gap = (0..=8000)
            .map(|i| -4.0 + i as f64 * 1e-3)
            .map(|x| (eval_fn_star(n, x).unwrap() - normal(x)).abs())
            .fold(0.0, f64::max);
        assert!(gap < last, "n={n}: {gap} !< {last}");
        last = gap;
    }
}

proptest! {
    #[test]
    fn wendland_zero_outside_support(m in 1u8..=3, h in 0u8..=3, c in 0.05f64..5.0, extra in 0.0f64..10.0) {
        let k = RadialKernel::wendland(m, h, c).unwrap();
        let r = k.support_radius() * (1.0 + extra);
        prop_assert_eq!(k.value(r), 0.0);
        let u = UnivariateKernel::wendland(h, c).unwrap();
        prop_assert_eq!(u.value(r), 0.0);
        prop_assert_eq!(u.value(-r), 0.0);
    }

    #[test]
    fn wendland_m1_radial_is_univariate(h in 0u8..=3, c in 0.05f64..5.0, x in -3.0f64..3.0) {
        let radial = RadialKernel::wendland(1, h, c).unwrap();
        let uni = UnivariateKernel::wendland(h, c).unwrap();
        prop_assert!((radial.value(x.abs()) - uni.value(x)).abs() <= 1e-15);
    }

    #[test]
    fn explicit_and_recurrence_agree(n in 2u32..=8, ai in 0usize..3, x in -20.0f64..20.0) {
        let a = [0.5, 1.0, 2.0][ai];
        let e = eval_fn_explicit(n, a, x).unwrap();
        let r = eval_fn_recurrence(n, a, x).unwrap();
        prop_assert!((e - r).abs() <= 1e-12, "n={} a={} x={}: {} vs {}", n, a, x, e, r);
    }

    #[test]
    fn lobachevsky_even_and_nonnegative(n in 2u32..=16, a in 0.1f64..3.0, x in -50.0f64..50.0) {
        let v = eval_fn_recurrence(n, a, x).unwrap();
        prop_assert!(v >= 0.0);
        prop_assert_eq!(v, eval_fn_recurrence(n, a, -x).unwrap());
    }

    #[test]
    fn radial_kernels_finite(r in 0.0f64..100.0, alpha in 0.01f64..10.0) {
        for k in [RadialKernel::gaussian(alpha).unwrap(), RadialKernel::thin_plate_spline(),
                  RadialKernel::multiquadric(alpha, -1).unwrap(), RadialKernel::wendland(2, 2, alpha).unwrap()] {
            prop_assert!(k.value(r).is_finite());
        }
    }
}
