use std::f64::consts::PI;

use proptest::prelude::*;
use spectral_fe::quad::{integrate, QuadOptions};
use spectral_fe::window::{
    alpha_theta, cardinal_bspline, check_lemmas, lemma_bounds, lemma_constant, side_lobe_area, sinc_power_integral,
    window_time_samples, window_value, BroadeningKernel, WindowSpec,
};

// ∫ sinc^Θ(x) dx = π·M_Θ(Θ/2), so α_Θ = 1/(Δe·M_Θ(Θ/2)) independently of any
// oscillatory quadrature.
fn alpha_from_bspline(order: u32, resolution: f64) -> f64 {
    1.0 / (resolution * cardinal_bspline(order, order as f64 / 2.0))
}

#[test]
fn alpha_matches_bspline_identity() {
    for order in 1..=60u32 {
        let spec = WindowSpec::from_resolution(order, 0.37).unwrap();
        let got = alpha_theta(&spec).unwrap();
        let want = alpha_from_bspline(order, 0.37);
        assert!((got / want - 1.0).abs() < 1e-8, "Θ = {order}: {got} vs {want}");
    }
}

#[test]
fn low_orders_have_unit_alpha() {
    for order in [1, 2] {
        let spec = WindowSpec::from_resolution(order, 0.5).unwrap();
        assert!((alpha_theta(&spec).unwrap() * 0.5 - 1.0).abs() < 1e-9);
        assert!((sinc_power_integral(order).unwrap().value - PI).abs() < 1e-9);
    }
}

#[test]
fn side_lobe_area_for_triangle() {
    let spec = WindowSpec::from_resolution(2, 1.0).unwrap();
    let main = integrate(
        |x: f64| {
            let s = if x == 0.0 { 1.0 } else { x.sin() / x };
            s * s
        },
        -PI,
        PI,
        QuadOptions::default(),
    )
    .unwrap()
    .value;
    let want = 1.0 - main / PI;
    assert!((side_lobe_area(&spec).unwrap() - want).abs() < 1e-10);
    assert!((want - 0.0972).abs() < 1e-4);
}

#[test]
fn lemmas_hold_for_even_orders() {
    let mut last_side = f64::INFINITY;
    for order in (2..=60).step_by(2) {
        let row = check_lemmas(order).unwrap();
        assert!(row.margin > 0.0, "Θ = {order}: {row:?}");
        assert!(row.alpha < row.alpha_bound && row.side_area < row.side_bound);
        assert!(row.side_area < last_side, "side lobes must shrink with Θ");
        last_side = row.side_area;
    }
}

#[test]
fn lemma_bound_formulas() {
    let c = lemma_constant();
    assert!((c - 2.0367).abs() < 5e-5);
    let b = lemma_bounds(4, 0.123);
    assert!((b.side_bound - c / PI * (4.0 / (6.0 * PI)).sqrt()).abs() < 1e-15);
    let a = lemma_bounds(10, 1.0).alpha_bound;
    let h = lemma_bounds(10, 2.0).alpha_bound;
    assert!((a / h - 2.0).abs() < 1e-14);
}

/// Trapezoid-rule Fourier transform of the sampled window,
/// `(1/2π)∫ b(t) e^{iEt} dt`, with the support edge on a grid point.
fn transformed_window(order: u32, base_width: f64, per_half_width: usize, energy: f64) -> f64 {
    let spec = WindowSpec::new(order, base_width).unwrap();
    let edge = spec.support() / 2.0;
    let steps = per_half_width * order as usize;
    let dt = edge / steps as f64;
    let mut acc = 0.5 * window_value(&spec, 0.0);
    for l in 1..=steps {
        let w = if l == steps { 0.5 } else { 1.0 };
        acc += w * window_value(&spec, l as f64 * dt) * (energy * l as f64 * dt).cos();
    }
    2.0 * acc * dt / (2.0 * PI)
}

#[test]
fn window_and_kernel_are_a_fourier_pair() {
    for order in [1u32, 2, 4] {
        let t0 = 2.0;
        let spec = WindowSpec::new(order, t0).unwrap();
        let kernel = BroadeningKernel::new(&spec).unwrap();
        let de = spec.resolution();
        for k in 0..20 {
            let e = -0.95 * de + k as f64 * 0.1 * de;
            let want = kernel.eval(e);
            let got = transformed_window(order, t0, 4000, e);
            assert!((got / want - 1.0).abs() < 1e-4, "Θ = {order}, E = {e}: {got} vs {want}");
        }
    }
}

#[test]
fn kernel_has_unit_area() {
    for order in [2u32, 3, 6, 11] {
        let spec = WindowSpec::from_resolution(order, 0.8).unwrap();
        let kernel = BroadeningKernel::new(&spec).unwrap();
        let span = 40.0 * 0.8;
        let opts = QuadOptions {
            max_intervals: 20_000,
            ..QuadOptions::default()
        };
        let area = integrate(|e| kernel.eval(e), -span, span, opts).unwrap().value;
        // truncated tails are below 1e-6 for these orders, except Θ = 2
        let tol = if order == 2 { 2e-2 } else { 1e-5 };
        assert!((area - 1.0).abs() < tol, "Θ = {order}: area {area}");
    }
}

#[test]
fn samples_cover_support() {
    let spec = WindowSpec::new(6, 1.0).unwrap();
    let s = window_time_samples(&spec, 0.25).unwrap();
    assert_eq!(s.weights().len(), 13);
    assert_eq!(s.weights()[0], 1.0);
    assert_eq!(*s.weights().last().unwrap(), 0.0);
    assert_eq!(s.weight(100), 0.0);
}

proptest! {
    #[test]
    fn window_is_even_and_unimodal(order in 1u32..40, t0 in 0.1f64..10.0, t in 0.0f64..1.0, dt in 0.0f64..1.0) {
        let spec = WindowSpec::new(order, t0).unwrap();
        let half = spec.support() / 2.0;
        let a = t * half;
        let b = a + dt * half;
        prop_assert_eq!(window_value(&spec, a), window_value(&spec, -a));
        prop_assert!(window_value(&spec, b) <= window_value(&spec, a) + 1e-15);
        let v = window_value(&spec, a);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn bspline_partition_of_unity(order in 1u32..30, x in 0.0f64..1.0) {
        // Σ_k M_Θ(x + k) = 1
        let s: f64 = (0..order).map(|k| cardinal_bspline(order, x + k as f64)).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }
}
