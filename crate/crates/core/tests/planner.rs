use std::f64::consts::PI;

use proptest::prelude::*;
use spectral_fe::plan::{
    kappa, kappa_prime, mu, plan_deterministic, plan_row, planned_order, scaling_study, ErrorBudget,
};
use spectral_fe::window::{lemma_bounds, side_lobe_area, WindowSpec};

#[test]
fn regression_fixture_n8() {
    // Frozen from an independent evaluation of the planner formulas.
    let b = ErrorBudget::new(8, 1.0, 0.1, 0.1).unwrap();
    let p = plan_deterministic(&b, 32.0).unwrap();
    assert!((b.xi() - 0.550_671_035_882_778_4).abs() < 1e-15);
    assert!((p.resolution() - 0.243_209_295_318_732).abs() < 1e-14);
    assert_eq!(p.order(), 56);
    assert_eq!(p.total_samples(), 7370);
    assert!((p.dt() - 2.0 * PI / 32.0).abs() < 1e-15);
    assert!((p.base_width() * p.resolution() - 2.0 * PI).abs() < 1e-12);
    assert_eq!(p.max_index(), 3685);
}

#[test]
fn derived_constants() {
    assert!((kappa() - 2.9443).abs() < 5e-5);
    assert!((kappa_prime() - mu() * kappa() * PI.ln()).abs() < 1e-15);
}

fn sufficient_conditions_hold(b: &ErrorBudget, bandwidth: f64) {
    let p = plan_deterministic(b, bandwidth).unwrap();
    let xi = b.xi();
    assert!((b.beta * p.resolution() - (xi / 2.0).ln_1p()).abs() < 1e-15);
    let bound = lemma_bounds(p.order(), p.resolution()).side_bound;
    let target = xi / 2.0 * (-b.beta * bandwidth).exp();
    assert!(bound < target, "side bound {bound} ≥ {target}");
    if p.order() <= 60 {
        let area = side_lobe_area(&WindowSpec::from_resolution(p.order(), p.resolution()).unwrap()).unwrap();
        assert!(area < target);
    }
    let theta = p.order() as f64;
    let lp = PI.ln();
    assert!(theta - theta.ln() / (2.0 * lp) > b.beta * bandwidth / lp + (1.0 / xi).ln() / lp + kappa());
    // N is ⌈ΘΔE/Δe⌉ bumped to even: within two samples of the exact count.
    let exact = theta * bandwidth / p.resolution();
    let n = p.total_samples() as f64;
    assert!(n >= exact - 1e-9 && n < exact + 2.0, "N = {n}, ΘΔE/Δe = {exact}");
    assert_eq!(p.total_samples() % 2, 0);
}

#[test]
fn emitted_plans_meet_sufficient_conditions() {
    for &(n, beta, gamma, de) in &[
        (4, 1.0, 0.1, 8.0),
        (8, 1.0, 0.1, 32.0),
        (3, 0.5, 0.01, 5.0),
        (10, 2.0, 0.05, 40.0),
        (6, 0.3, 0.2, 2.0),
    ] {
        sufficient_conditions_hold(&ErrorBudget::new(n, beta, gamma, 0.1).unwrap(), de);
    }
}

#[test]
fn doubling_beta_roughly_quadruples_samples() {
    let b1 = ErrorBudget::new(10, 2.0, 0.01, 0.1).unwrap();
    let b2 = ErrorBudget { beta: 4.0, ..b1 };
    let n1 = plan_row(&b1, 200.0).unwrap().samples as f64;
    let n2 = plan_row(&b2, 200.0).unwrap().samples as f64;
    let ratio = n2 / n1;
    assert!((3.6..4.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn scaling_table_rows() {
    let template = ErrorBudget::new(1, 1.0, 0.1, 0.1).unwrap();
    let study = scaling_study(&template, &[4, 8, 16], |n| n as f64).unwrap();
    assert_eq!(study.rows.len(), 3);
    for row in &study.rows {
        let b = ErrorBudget { spins: row.spins, ..template };
        assert_eq!(row.order, planned_order(&b, row.bandwidth).unwrap());
        assert_eq!(row.samples, plan_deterministic(&b, row.bandwidth).unwrap().total_samples());
    }
    assert!(study.exponent.unwrap() > 0.0);
}

proptest! {
    #[test]
    fn plan_is_monotone(n in 1usize..12, beta in 0.1f64..3.0, gamma in 0.005f64..0.5, de in 0.5f64..40.0, k in 1.01f64..2.0) {
        let b = ErrorBudget::new(n, beta, gamma, 0.1).unwrap();
        let run = |b: &ErrorBudget, de: f64| plan_row(b, de).unwrap().samples;
        let base = run(&b, de);
        let hotter = ErrorBudget { beta: beta * k, ..b };
        let looser = ErrorBudget { gamma: gamma * k, ..b };
        prop_assert!(run(&hotter, de) >= base);
        prop_assert!(run(&b, de * k) >= base);
        prop_assert!(run(&looser, de) <= base);
    }
}
