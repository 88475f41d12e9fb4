use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;
use spirallike::extremal::{caratheodory_disc, f_lambda, p_lambda, p_lambda_inverse, q_lambda};
use spirallike::radii::{omega_avoidance_margin, r2_value, radius_r1, MIN_R2};
use spirallike::samples::{sample_measure, HerglotzMeasure, RobertsonSample};
use spirallike::subordination::{psi, BoundaryCurve, DEFAULT_GRID_N};
use spirallike::{Angle, Complex64, DiscPoint};

fn angle() -> impl Strategy<Value = Angle> {
    (-FRAC_PI_2 + 1e-3..FRAC_PI_2 - 1e-3).prop_map(|l| Angle::new(l).unwrap())
}

fn disc_point(max_r: f64) -> impl Strategy<Value = DiscPoint> {
    (0.0..max_r, 0.0..TAU).prop_map(|(r, t)| DiscPoint::from_polar(r, t).unwrap())
}

fn conj(z: DiscPoint) -> DiscPoint {
    DiscPoint::new(z.value().conj()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conjugation_symmetry(a in angle(), z in disc_point(0.99)) {
        let tol = 1e-12;
        prop_assert!((q_lambda(a, conj(z)).conj() - q_lambda(a.neg(), z)).norm() <= tol * q_lambda(a, z).norm().max(1.0));
        prop_assert!((p_lambda(a, conj(z)).conj() - p_lambda(a.neg(), z)).norm() <= tol * p_lambda(a, z).norm().max(1.0));
        prop_assert!((f_lambda(a, conj(z)).conj() - f_lambda(a.neg(), z)).norm() <= tol * f_lambda(a, z).norm().max(1.0));
    }

    #[test]
    fn inverse_round_trip(a in angle(), z in disc_point(0.99)) {
        let back = p_lambda_inverse(a, p_lambda(a, z)).unwrap();
        prop_assert!((back - z.value()).norm() <= 1e-12);
    }

    #[test]
    fn half_plane_image(a in angle(), z in disc_point(0.999)) {
        prop_assert!((a.rotation().conj() * p_lambda(a, z)).re > 0.0);
    }

    #[test]
    fn inverse_lands_in_disc_iff_in_half_plane(a in angle(), re in -5.0..5.0f64, im in -5.0..5.0f64) {
        let w = Complex64::new(re, im);
        let h = (a.rotation().conj() * w).re;
        prop_assume!(h.abs() > 1e-9);
        let z = p_lambda_inverse(a, w).unwrap();
        prop_assert_eq!(z.norm() < 1.0, h > 0.0);
    }

    #[test]
    fn zero_tilt_collapse(z in disc_point(0.99)) {
        let a = Angle::new(0.0).unwrap();
        let zv = z.value();
        let one = Complex64::new(1.0, 0.0);
        let q = one / (one - zv);
        let f = zv / (one - zv);
        prop_assert!((q_lambda(a, z) - q).norm() <= 1e-12 * q.norm());
        prop_assert!((f_lambda(a, z) - f).norm() <= 1e-12 * f.norm().max(1.0));
    }

    #[test]
    fn extremal_attains_caratheodory_bound(a in angle(), r in 0.0..0.95f64, t in 0.0..TAU, x in 0.0..TAU) {
        let d = caratheodory_disc(a, r).unwrap();
        let z = Complex64::from_polar(r, t) * Complex64::from_polar(1.0, x);
        let p = p_lambda(a, DiscPoint::new(z).unwrap());
        prop_assert!(((p - d.center).norm() - d.radius).abs() <= 1e-12 * d.radius.max(1.0));
    }

    #[test]
    fn robertson_samples_are_members(seed in any::<u64>(), n in 1usize..=8, a in angle(), z in disc_point(0.999)) {
        let s = RobertsonSample::new(a, sample_measure(seed, n).unwrap());
        prop_assert!((a.rotation().conj() * s.p_of_f(z)).re > 0.0);
    }

    #[test]
    fn measure_json_round_trip(seed in any::<u64>(), n in 1usize..=8) {
        let m = sample_measure(seed, n).unwrap();
        prop_assert_eq!(HerglotzMeasure::from_json(&m.to_json()).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_is_even_in_lambda(l in 0.0..1.5f64, r in 0.01..0.99f64) {
        let a = Angle::new(l).unwrap();
        let p = psi(a, r, DEFAULT_GRID_N, 1e-12).unwrap().value;
        let m = psi(a.neg(), r, DEFAULT_GRID_N, 1e-12).unwrap().value;
        prop_assert!((p - m).abs() <= 1e-10, "{} vs {}", p, m);
    }

    #[test]
    fn identity_chain_for_samples(seed in any::<u64>(), n in 1usize..=8, a in angle(), z in disc_point(0.8)) {
        // Q_f + z Q_f'/Q_f = P_f with Q_f' by central differences.
        let s = RobertsonSample::new(a, sample_measure(seed, n).unwrap());
        let h = 1e-5;
        let zv = z.value();
        let q = |w: Complex64| s.q_of_f(DiscPoint::new(w).unwrap(), 1e-13).unwrap();
        let dq = (q(zv + h) - q(zv - h)) / (2.0 * h);
        let lhs = q(zv) + zv * dq / q(zv);
        prop_assert!((lhs - s.p_of_f(z)).norm() <= 1e-5, "residual {:e}", (lhs - s.p_of_f(z)).norm());
    }

    #[test]
    fn quadrature_converges(seed in any::<u64>(), n in 1usize..=8, a in angle(), z in disc_point(0.95)) {
        let s = RobertsonSample::new(a, sample_measure(seed, n).unwrap());
        let scale = s.f_value(z, 1e-6).unwrap().norm().max(1.0);
        for tol in [1e-6, 1e-8, 1e-10] {
            let coarse = s.f_value(z, tol).unwrap();
            let fine = s.f_value(z, tol / 2.0).unwrap();
            prop_assert!((coarse - fine).norm() <= tol * scale);
        }
    }
}

/// Even–odd ray casting along +x on the polygon through the samples.
fn ray_crossing_inside(point: Complex64, curve: &BoundaryCurve) -> bool {
    let pts: Vec<Complex64> = curve.samples().iter().map(|s| s.1).collect();
    let n = pts.len();
    let mut inside = false;
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        if (p.im > point.im) != (q.im > point.im) {
            let x = p.re + (point.im - p.im) * (q.re - p.re) / (q.im - p.im);
            if x > point.re {
                inside = !inside;
            }
        }
    }
    inside
}

#[test]
fn winding_agrees_with_ray_crossing() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 100 {
        // Simple star-shaped curves: radius modulated by a few harmonics.
        let k1: f64 = rng.random_range(0.0..0.4);
        let k2: f64 = rng.random_range(0.0..0.3);
        let phase: f64 = rng.random_range(0.0..TAU);
        let center = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let curve = BoundaryCurve::uniform(257, |t| {
            center + Complex64::from_polar(1.0 + k1 * (3.0 * t + phase).cos() + k2 * (5.0 * t).sin(), t)
        })
        .unwrap();
        let point = center + Complex64::new(rng.random_range(-2.5..2.5), rng.random_range(-2.5..2.5));
        let (winding, distance) = curve.locate(point);
        if distance < 1e-6 {
            continue;
        }
        assert_eq!(winding != 0, ray_crossing_inside(point, &curve), "point {point}, winding {winding}");
        checked += 1;
    }
}

const LAMBDAS_FOR_PSI: [f64; 4] = [0.0, PI / 6.0, PI / 4.0, PI / 3.0];

#[test]
fn psi_is_nondecreasing_in_r() {
    for l in LAMBDAS_FOR_PSI {
        let a = Angle::new(l).unwrap();
        let values: Vec<f64> =
            (1..=50).map(|k| psi(a, 0.02 * k as f64 - 0.001, DEFAULT_GRID_N, 1e-12).unwrap().value).collect();
        for w in values.windows(2) {
            assert!(w[0] <= w[1] + 1e-9, "lambda {l}: {} > {}", w[0], w[1]);
        }
    }
}

#[test]
fn psi_zero_tilt_closed_form() {
    let a = Angle::new(0.0).unwrap();
    for k in 1..=9 {
        let r = k as f64 / 10.0;
        let v = psi(a, r, DEFAULT_GRID_N, 1e-12).unwrap().value;
        assert!((v - 1.0 / (2.0 - r)).abs() <= 1e-9);
    }
}

#[test]
fn psi_grid_stability() {
    let tol = 1e-10;
    for l in [0.2, PI / 4.0, 1.3] {
        let a = Angle::new(l).unwrap();
        for r in [0.4, 0.9, 0.99] {
            let coarse = psi(a, r, 1024, tol).unwrap().value;
            let fine = psi(a, r, 2048, tol).unwrap().value;
            assert!((coarse - fine).abs() < 10.0 * tol, "lambda {l} r {r}: {coarse} vs {fine}");
        }
    }
}

#[test]
fn r1_consistent_with_psi() {
    let tol = 1e-10;
    for l in [PI / 12.0, PI / 4.0, PI / 3.0] {
        let a = Angle::new(l).unwrap();
        let r1 = radius_r1(a, tol).unwrap().value;
        for k in 1..=10 {
            let below = (r1 - tol) * k as f64 / 10.0 - 1e-9;
            assert!(psi(a, below, DEFAULT_GRID_N, tol / 100.0).unwrap().value < 1.0);
            let above = r1 + 2.0 * tol + (1.0 - r1 - 4.0 * tol) * (k - 1) as f64 / 10.0;
            assert!(psi(a, above, DEFAULT_GRID_N, tol / 100.0).unwrap().value > 1.0, "lambda {l}, r {above}");
        }
    }
}

#[test]
fn r2_bounds_on_grid() {
    for k in 0..21 {
        let l = -FRAC_PI_2 + PI * (k as f64 + 0.5) / 21.0;
        let v = r2_value(Angle::new(l).unwrap());
        assert!(v >= MIN_R2 - 1e-15 && v <= 1.0);
    }
}

#[test]
fn omega_avoidance_never_violated() {
    let s3 = 3f64.sqrt();
    let grid: Vec<f64> = (0..=50_000)
        .flat_map(|k| {
            let t = s3 * (100.0 / s3).powf(k as f64 / 50_000.0);
            [t, -t]
        })
        .collect();
    for k in 0..11 {
        let l = -1.5 + 3.0 * k as f64 / 10.0;
        let m = omega_avoidance_margin(Angle::new(l).unwrap(), &grid).unwrap();
        assert!(m >= -1e-12, "lambda {l}: margin {m:e}");
    }
}
