use spectral_fe_demo::{ising_dos, noise_sensitivity, window_view};

#[test]
fn dos_peaks_sit_on_levels() {
    // Zero field: the ring has well separated levels, so the highest DOS
    // value lands within one resolution of the ground level cluster or above.
    let v = ising_dos(8, 1.0, 0.0, 1.0, 0.1, 0.0, 3, 2048).unwrap();
    let e = v.energies();
    let d = v.dos();
    let (i, _) = d.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let nearest = v
        .level_energies()
        .iter()
        .map(|l| (l - e[i]).abs())
        .fold(f64::INFINITY, f64::min);
    assert!(nearest < v.resolution(), "peak at {} is {nearest} from a level", e[i]);
}

#[test]
fn noise_raises_the_error() {
    let clean = ising_dos(6, 1.0, 0.5, 1.0, 0.1, 0.0, 5, 256).unwrap();
    let noisy = ising_dos(6, 1.0, 0.5, 1.0, 0.1, 0.05, 5, 256).unwrap();
    assert!(noisy.r() > clean.r());
}

#[test]
fn required_sigma_close_to_closed_form() {
    let v = noise_sensitivity(8, 1.0, 0.5, 1.0, 0.1, 0.1, 32).unwrap();
    let ratio = v.required() / v.closed_form();
    assert!(ratio > 0.3 && ratio < 3.0, "{ratio}");
}

#[test]
fn higher_order_narrows_the_kernel() {
    let a = window_view(2, 1.0, 64).unwrap();
    let b = window_view(12, 1.0, 64).unwrap();
    assert!(b.side_area() < a.side_area());
    assert!(b.alpha() > a.alpha());
}
