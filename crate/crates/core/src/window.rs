//! Order-Θ time windows and their broadening kernels.
//!
//! The window `b_Θ(t)` is the Θ-fold convolution of rectangles of width
//! `T₀`, peak-normalized so `b_Θ(0) = 1`. Its transform is the unit-area
//! broadening kernel `α_Θ sinc^Θ(πE/Δe)` with `Δe = 2π/T₀`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{erf, sinc};
use crate::quad::{integrate, QuadEstimate, QuadOptions};

/// Lobes integrated explicitly before the tail estimate takes over.
const MAX_LOBES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    order: u32,
    base_width: f64,
}

impl WindowSpec {
    pub fn new(order: u32, base_width: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::param("order", "window order must be at least 1"));
        }
        if !(base_width > 0.0 && base_width.is_finite()) {
            return Err(Error::param("T0", format!("must be positive and finite, got {base_width}")));
        }
        Ok(Self { order, base_width })
    }

    /// Window whose kernel has main-lobe half-width `resolution` (`T₀ = 2π/Δe`).
    pub fn from_resolution(order: u32, resolution: f64) -> Result<Self> {
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(Error::param("delta_e", format!("must be positive and finite, got {resolution}")));
        }
        Self::new(order, 2.0 * PI / resolution)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base_width(&self) -> f64 {
        self.base_width
    }

    pub fn resolution(&self) -> f64 {
        2.0 * PI / self.base_width
    }

    /// Total support width `Θ T₀`.
    pub fn support(&self) -> f64 {
        self.order as f64 * self.base_width
    }

    pub fn value(&self, t: f64) -> f64 {
        window_value(self, t)
    }
}

/// Cardinal B-spline `M_k` of order `k` (k-fold convolution of the unit
/// box), supported on `[0, k)`, via the all-positive two-term recurrence
/// `M_k(x) = [x M_{k−1}(x) + (k − x) M_{k−1}(x − 1)] / (k − 1)`.
pub fn cardinal_bspline(order: u32, x: f64) -> f64 {
    let k = order as usize;
    if k == 0 || !(x >= 0.0 && x < k as f64) {
        return 0.0;
    }
    let cell = x.floor() as usize;
    // m[j] holds M_level(x − j); only j ∈ (x − level, x] can be non-zero.
    let mut m = vec![0.0; k + 1];
    m[cell] = 1.0;
    for level in 2..=k {
        let lo = (cell + 1).saturating_sub(level);
        let hi = cell.min(k - level);
        let inv = 1.0 / (level - 1) as f64;
        for j in lo..=hi {
            let y = x - j as f64;
            m[j] = (y * m[j] + (level as f64 - y) * m[j + 1]) * inv;
        }
    }
    m[0]
}

pub fn window_value(spec: &WindowSpec, t: f64) -> f64 {
    let theta = spec.order;
    let u = t.abs() / spec.base_width;
    if theta == 1 {
        return if u <= 0.5 { 1.0 } else { 0.0 };
    }
    let half = theta as f64 / 2.0;
    if u >= half {
        return 0.0;
    }
    cardinal_bspline(theta, half + u) / cardinal_bspline(theta, half)
}

/// Window weights `b_{Θ,ℓ} = b_Θ(ℓΔt)` for `ℓ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSamples {
    spec: WindowSpec,
    dt: f64,
    weights: Vec<f64>,
}

impl WindowSamples {
    pub fn spec(&self) -> &WindowSpec {
        &self.spec
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight at index `l`; zero past the stored range.
    pub fn weight(&self, l: usize) -> f64 {
        self.weights.get(l).copied().unwrap_or(0.0)
    }
}

/// Samples the window on `ℓ = 0 … ⌈ΘT₀/(2Δt)⌉`.
pub fn window_time_samples(spec: &WindowSpec, dt: f64) -> Result<WindowSamples> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::param("dt", format!("must be positive and finite, got {dt}")));
    }
    let last = (spec.support() / (2.0 * dt)).ceil() as usize;
    Ok(sample_window(spec, dt, last + 1))
}

pub(crate) fn sample_window(spec: &WindowSpec, dt: f64, count: usize) -> WindowSamples {
    let theta = spec.order;
    let half = theta as f64 / 2.0;
    let peak = cardinal_bspline(theta, half);
    let weight = |l: usize| {
        if theta == 1 {
            return window_value(spec, l as f64 * dt);
        }
        let u = l as f64 * dt / spec.base_width;
        if u >= half {
            0.0
        } else {
            cardinal_bspline(theta, half + u) / peak
        }
    };
    #[cfg(feature = "parallel")]
    let weights: Vec<f64> = (0..count).into_par_iter().map(weight).collect();
    #[cfg(not(feature = "parallel"))]
    let weights: Vec<f64> = (0..count).map(weight).collect();
    WindowSamples {
        spec: *spec,
        dt,
        weights,
    }
}

/// Lobe decomposition of `∫_0^∞ sinc^Θ(x) dx`: the main lobe `[0, π]` and
/// everything beyond it, each with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincPowerLobes {
    pub main: QuadEstimate,
    pub side: QuadEstimate,
}

impl SincPowerLobes {
    /// `I_Θ = ∫_ℝ sinc^Θ`.
    pub fn total(&self) -> QuadEstimate {
        QuadEstimate {
            value: 2.0 * (self.main.value + self.side.value),
            error: 2.0 * (self.main.error + self.side.error),
        }
    }
}

fn lobe(order: u32, k: usize) -> Result<QuadEstimate> {
    let a = k as f64 * PI;
    integrate(
        |x| sinc(x).powi(order as i32),
        a,
        a + PI,
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-13,
            max_intervals: 500,
        },
    )
}

fn central_binomial_mean(order: u32) -> f64 {
    // mean of sin^Θ over a period for even Θ: C(Θ, Θ/2) / 2^Θ
    let half = order / 2;
    (1..=half).fold(1.0, |acc, j| acc * (half + j) as f64 / (4.0 * j as f64))
}

/// Integrates `sinc^Θ` lobe by lobe (`[kπ, (k+1)π]`, adaptive Gauss–Kronrod
/// per lobe), truncating once the remaining tail is negligible.
///
/// The tail beyond lobe `K` is bounded by `(Kπ)^{1−Θ}/(Θ−1)` per side. When
/// that bound is still too coarse at the lobe cap, even orders add the
/// mean-value estimate `m_Θ (Kπ)^{1−Θ}/(Θ−1)` and odd orders (alternating
/// lobes) add nothing; the residual of either enters the error.
pub fn sinc_power_lobes(order: u32) -> Result<SincPowerLobes> {
    if order < 2 {
        return Err(Error::param("order", "lobe decomposition needs Θ ≥ 2"));
    }
    let theta = order as f64;
    let main = lobe(order, 0)?;
    let mut side_value = 0.0;
    let mut side_error = 0.0;
    let mut k = 1;
    loop {
        let q = lobe(order, k)?;
        side_value += q.value;
        side_error += q.error;
        k += 1;
        let start = k as f64 * PI;
        let tail_bound = start.powf(1.0 - theta) / (theta - 1.0);
        if tail_bound <= 1e-13 * side_value.abs() {
            side_error += tail_bound;
            break;
        }
        if k == MAX_LOBES {
            if order.is_multiple_of(2) {
                side_value += central_binomial_mean(order) * tail_bound;
                side_error += theta * PI * PI * start.powf(-theta - 1.0);
            } else {
                side_error += PI * start.powf(-theta);
            }
            break;
        }
    }
    Ok(SincPowerLobes {
        main,
        side: QuadEstimate {
            value: side_value,
            error: side_error,
        },
    })
}

/// `I_Θ = ∫_ℝ sinc^Θ(x) dx`. Θ = 1 is the Dirichlet integral π.
pub fn sinc_power_integral(order: u32) -> Result<QuadEstimate> {
    match order {
        0 => Err(Error::param("order", "window order must be at least 1")),
        1 => Ok(QuadEstimate { value: PI, error: 0.0 }),
        _ => Ok(sinc_power_lobes(order)?.total()),
    }
}

/// Kernel amplitude `α_Θ = π / (Δe I_Θ)`, relative accuracy ≤ 1e-8.
pub fn alpha_theta(spec: &WindowSpec) -> Result<f64> {
    let integral = sinc_power_integral(spec.order)?;
    if integral.error > 1e-8 * integral.value.abs() {
        return Err(Error::Quadrature(format!(
            "∫sinc^{} relative error {:e} exceeds 1e-8",
            spec.order,
            integral.error / integral.value
        )));
    }
    Ok(PI / (spec.resolution() * integral.value))
}

/// Area of the kernel outside its main lobe `[−Δe, Δe]`. Independent of
/// `Δe`; computed as side-lobe area over total so tiny values keep their
/// relative accuracy.
pub fn side_lobe_area(spec: &WindowSpec) -> Result<f64> {
    let lobes = sinc_power_lobes(spec.order)?;
    let total = lobes.main.value + lobes.side.value;
    let area = lobes.side.value / total;
    let err = (lobes.side.error + area * (lobes.main.error + lobes.side.error)) / total;
    if err > 1e-10 {
        return Err(Error::Quadrature(format!("side-lobe area error {err:e} exceeds 1e-10")));
    }
    Ok(area)
}

/// Unit-area broadening kernel `α_Θ sinc^Θ(πE/Δe)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BroadeningKernel {
    pub order: u32,
    pub resolution: f64,
    pub alpha: f64,
}

impl BroadeningKernel {
    pub fn new(spec: &WindowSpec) -> Result<Self> {
        Ok(Self {
            order: spec.order,
            resolution: spec.resolution(),
            alpha: alpha_theta(spec)?,
        })
    }

    pub fn eval(&self, energy: f64) -> f64 {
        self.alpha * sinc(PI * energy / self.resolution).powi(self.order as i32)
    }
}

/// `c = e^{−1} (1 − 6/π²)^{−π²/6} / erf(1) ≈ 2.0367`.
pub fn lemma_constant() -> f64 {
    let p = PI * PI / 6.0;
    (-1.0f64).exp() * (1.0 - 6.0 / (PI * PI)).powf(-p) / erf(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaBounds {
    /// Upper bound on `α_Θ`: `cπ/Δe · √(Θ/6π)`.
    pub alpha_bound: f64,
    /// Upper bound on the side-lobe area, `c π^{3−Θ} √(Θ/6π)`; proven for even Θ.
    pub side_bound: f64,
}

pub fn lemma_bounds(order: u32, resolution: f64) -> LemmaBounds {
    let c = lemma_constant();
    let theta = order as f64;
    let root = (theta / (6.0 * PI)).sqrt();
    LemmaBounds {
        alpha_bound: c * PI / resolution * root,
        side_bound: c * PI.powf(3.0 - theta) * root,
    }
}

/// One row of a lemma verification sweep (Δe = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub order: u32,
    pub alpha: f64,
    pub alpha_bound: f64,
    pub side_area: f64,
    pub side_bound: f64,
    /// Smaller of the two relative margins `1 − value/bound`.
    pub margin: f64,
}

pub fn check_lemmas(order: u32) -> Result<LemmaCheck> {
    let spec = WindowSpec::from_resolution(order, 1.0)?;
    let alpha = alpha_theta(&spec)?;
    let side_area = side_lobe_area(&spec)?;
    let bounds = lemma_bounds(order, 1.0);
    let margin = (1.0 - alpha / bounds.alpha_bound).min(1.0 - side_area / bounds.side_bound);
    Ok(LemmaCheck {
        order,
        alpha,
        alpha_bound: bounds.alpha_bound,
        side_area,
        side_bound: bounds.side_bound,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_rectangle() {
        let t0 = 1.7;
        let tri = WindowSpec::new(2, t0).unwrap();
        for &t in &[0.0, 0.3, 0.85, 1.2, 1.7, 2.5] {
            let want = if t <= t0 { 1.0 - t / t0 } else { 0.0 };
            assert!((tri.value(t) - want).abs() < 1e-14);
            assert!((tri.value(-t) - want).abs() < 1e-14);
        }
        let rect = WindowSpec::new(1, t0).unwrap();
        assert_eq!(rect.value(0.85), 1.0);
        assert_eq!(rect.value(-0.85), 1.0);
        assert_eq!(rect.value(0.86), 0.0);
    }

    #[test]
    fn bspline_known_values() {
        // M_3 at 1.5 is 3/4; M_4 at 2 is 2/3.
        assert!((cardinal_bspline(3, 1.5) - 0.75).abs() < 1e-15);
        assert!((cardinal_bspline(4, 2.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(cardinal_bspline(4, 4.0), 0.0);
        assert_eq!(cardinal_bspline(4, -0.1), 0.0);
    }

    #[test]
    fn peak_is_one_for_large_orders() {
        for theta in [1, 2, 7, 60, 151] {
            let spec = WindowSpec::new(theta, 0.9).unwrap();
            assert_eq!(spec.value(0.0), 1.0);
        }
    }

    #[test]
    fn samples_cover_support() {
        let spec = WindowSpec::new(4, 2.0).unwrap();
        let s = window_time_samples(&spec, 0.5).unwrap();
        assert_eq!(s.weights().len(), 9);
        assert_eq!(s.weights()[0], 1.0);
        assert_eq!(*s.weights().last().unwrap(), 0.0);
        assert_eq!(s.weight(100), 0.0);
    }

    #[test]
    fn alpha_low_orders() {
        let spec = WindowSpec::from_resolution(1, 0.4).unwrap();
        assert!((alpha_theta(&spec).unwrap() * 0.4 - 1.0).abs() < 1e-15);
        let spec = WindowSpec::from_resolution(2, 0.4).unwrap();
        assert!((alpha_theta(&spec).unwrap() * 0.4 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn side_area_of_triangle() {
        // ∫_{−π}^{π} sinc² = 2 Si(2π) with Si(2π) = 1.41815157613262...
        let spec = WindowSpec::from_resolution(2, 1.0).unwrap();
        let a = side_lobe_area(&spec).unwrap();
        let si_2pi = 1.418_151_576_132_628_5;
        assert!((a - (1.0 - 2.0 * si_2pi / PI)).abs() < 1e-10, "{a}");
    }

    #[test]
    fn constant_c() {
        assert!((lemma_constant() - 2.0367).abs() < 5e-5);
    }

    #[test]
    fn lemma_bound_formulas() {
        let b = lemma_bounds(4, 0.3);
        let c = lemma_constant();
        assert!((b.side_bound - c / PI * (4.0 / (6.0 * PI)).sqrt()).abs() < 1e-15);
        let b2 = lemma_bounds(4, 0.6);
        assert!((b.alpha_bound / b2.alpha_bound - 2.0).abs() < 1e-14);
    }

    #[test]
    fn order_zero_rejected() {
        assert!(WindowSpec::new(0, 1.0).is_err());
        assert!(WindowSpec::new(2, 0.0).is_err());
        assert!(sinc_power_integral(0).is_err());
    }
}
