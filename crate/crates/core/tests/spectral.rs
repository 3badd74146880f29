use std::f64::consts::PI;

use proptest::prelude::*;
use sqg::diagnostics::sobolev_norm;
use sqg::oracle::{apply_symbol, direct_dft, direct_idft, l2_quadrature, Symbol};
use sqg::spectral::*;

fn tau() -> GridSpec {
    GridSpec::new(16, 2.0 * PI).unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let scale = b.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(1e-300);
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * scale)
}

fn rel_coeffs(a: &SpectralField, b: &SpectralField) -> f64 {
    let scale = b.max_abs().max(1e-300);
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

#[test]
fn constant_maps_to_unit_zero_mode() {
    for (n, l) in [(8, 1.0), (16, 100.0), (32, 7.5)] {
        let g = GridSpec::new(n, l).unwrap();
        let f = to_spectral(&vec![1.0; n * n], &g).unwrap();
        assert!((f.coeff(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(f.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
    }
}

#[test]
fn cosine_has_two_half_coefficients() {
    let g = GridSpec::new(16, 3.0).unwrap();
    let v = sample(&g, |x, _| (2.0 * PI * x / 3.0).cos());
    let f = to_spectral(&v, &g).unwrap();
    assert!((f.coeff(1, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    assert!((f.coeff(-1, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    let rest: f64 = f.coeffs().iter().map(|c| c.norm()).sum::<f64>() - 1.0;
    assert!(rest.abs() < 1e-14);

    let back = to_physical(&SpectralField::from_modes(g, &[(1, 0, Complex64::new(0.5, 0.0))])).unwrap();
    assert!(close(&back, &v, 1e-15));
    assert!(to_physical(&SpectralField::zeros(g)).unwrap().iter().all(|x| *x == 0.0));
}

#[test]
fn transforms_match_direct_summation() {
    let g = GridSpec::new(8, 2.5).unwrap();
    let values: Vec<f64> = (0..64).map(|i| ((i * 37 % 11) as f64 - 5.0) / 3.0).collect();
    let f = to_spectral(&values, &g).unwrap();
    let reference = direct_dft(&values, 8);
    let err = f.coeffs().iter().zip(&reference).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12 * reference.iter().map(|c| c.norm()).fold(0.0, f64::max));

    let back: Vec<f64> = direct_idft(f.coeffs(), 8).iter().map(|z| z.re).collect();
    assert!(close(&to_physical(&f).unwrap(), &back, 1e-12));
}

#[test]
fn fractional_laplacian_on_single_modes() {
    let g = tau();
    let cos_x = SpectralField::from_modes(g, &[(1, 0, Complex64::new(0.5, 0.0))]);
    for a in [0.25, 0.5, 0.9] {
        assert!(rel_coeffs(&fractional_laplacian(&cos_x, a).unwrap(), &cos_x) < 1e-15);
    }
    let mode = SpectralField::from_modes(g, &[(3, 4, Complex64::new(0.5, 0.0))]);
    let out = fractional_laplacian(&mode, 0.5).unwrap();
    let factor = out.coeff(3, 4).re / 0.5;
    assert!((factor - 5f64.sqrt()).abs() < 1e-14);
    assert!((factor - 2.2360680).abs() < 1e-7);
}

#[test]
fn lambda_one_then_minus_one_removes_mean() {
    let g = GridSpec::new(16, 5.0).unwrap();
    let f = to_spectral(&sample(&g, |x, y| 2.0 + (x * 1.2566370614359172).sin() * (y * 2.5132741228718345).cos()), &g)
        .unwrap();
    let round = fractional_laplacian(&fractional_laplacian(&f, 1.0).unwrap(), -1.0).unwrap();
    let mut expected = f.clone().into_coeffs();
    expected[0] = Complex64::new(0.0, 0.0);
    let expected = SpectralField::from_coeffs(g, expected).unwrap();
    assert!(rel_coeffs(&round, &expected) < 1e-12);
}

#[test]
fn riesz_and_gradient_single_modes() {
    let g = tau();
    let v = sample(&g, |x, _| x.sin());
    let u = riesz_perp(&to_spectral(&v, &g).unwrap());
    let (u1, u2) = (to_physical(&u.u1).unwrap(), to_physical(&u.u2).unwrap());
    assert!(u1.iter().all(|x| x.abs() < 1e-15));
    assert!(close(&u2, &sample(&g, |x, _| -x.cos()), 1e-14));

    let d = gradient(&to_spectral(&sample(&g, |x, _| x.cos()), &g).unwrap());
    assert!(close(&to_physical(&d.u1).unwrap(), &sample(&g, |x, _| -x.sin()), 1e-14));
    assert!(to_physical(&d.u2).unwrap().iter().all(|x| x.abs() < 1e-15));

    let c = to_spectral(&vec![3.0; 256], &g).unwrap();
    for w in [riesz_perp(&c), gradient(&c)] {
        assert_eq!(w.u1.max_abs(), 0.0);
        assert_eq!(w.u2.max_abs(), 0.0);
    }
}

#[test]
fn operators_match_per_mode_oracle() {
    let g = GridSpec::new(8, 4.0).unwrap();
    let values: Vec<f64> = (0..64).map(|i| ((i * 13 % 17) as f64).sin()).collect();
    let f = to_spectral(&values, &g).unwrap();
    let check = |got: &SpectralField, sym: Symbol| {
        let want: Vec<f64> = apply_symbol(&values, &g, sym).iter().map(|z| z.re).collect();
        assert!(close(&to_physical(got).unwrap(), &want, 1e-12), "{sym:?}");
    };
    check(&fractional_laplacian(&f, 0.7).unwrap(), Symbol::Fractional(0.7));
    let u = riesz_perp(&f);
    check(&u.u1, Symbol::RieszPerp1);
    check(&u.u2, Symbol::RieszPerp2);
    let d = gradient(&f);
    check(&d.u1, Symbol::Gradient1);
    check(&d.u2, Symbol::Gradient2);
}

/// Max error of the spectral gradient against second-order centered
/// differences of `sin(x)cos(2y) + cos(3x+y)`.
fn fd_gap(n: usize) -> f64 {
    let g = GridSpec::new(n, 2.0 * PI).unwrap();
    let f = |x: f64, y: f64| x.sin() * (2.0 * y).cos() + (3.0 * x + y).cos();
    let v = sample(&g, f);
    let d = gradient(&to_spectral(&v, &g).unwrap());
    let (d1, d2) = (to_physical(&d.u1).unwrap(), to_physical(&d.u2).unwrap());
    let at = |i: usize, j: usize| v[(i % n) * n + (j % n)];
    let h = g.dx();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let fx = (at(i + 1, j) - at(i + n - 1, j)) / (2.0 * h);
            let fy = (at(i, j + 1) - at(i, j + n - 1)) / (2.0 * h);
            worst = worst.max((fx - d1[i * n + j]).abs()).max((fy - d2[i * n + j]).abs());
        }
    }
    worst
}

#[test]
fn gradient_matches_centered_differences_at_second_order() {
    let gaps: Vec<f64> = [16, 32, 64].iter().map(|&n| fd_gap(n)).collect();
    for w in gaps.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 2.0).abs() < 0.1, "order {order}, gaps {gaps:?}");
    }
}

#[test]
fn dealias_examples() {
    let g = GridSpec::new(16, 1.0).unwrap();
    let low = SpectralField::from_modes(g, &[(5, -3, Complex64::new(0.2, 0.1)), (0, 4, Complex64::new(1.0, 0.0))]);
    assert_eq!(dealias(&low), low);
    assert!(is_dealiased(&low));
    let high = SpectralField::from_modes(g, &[(7, 0, Complex64::new(1.0, 0.0))]);
    assert_eq!(dealias(&high).max_abs(), 0.0);
}

#[test]
fn parseval_matches_quadrature() {
    let g = GridSpec::new(8, 3.3).unwrap();
    let v: Vec<f64> = (0..64).map(|i| ((i * i) % 7) as f64 - 3.0).collect();
    let f = to_spectral(&v, &g).unwrap();
    let spectral = sobolev_norm(&f, 0.0, true).unwrap();
    assert!((spectral / l2_quadrature(&v, &g) - 1.0).abs() < 1e-12);
}

fn grid_and_values() -> impl Strategy<Value = (GridSpec, Vec<f64>)> {
    (prop::sample::select(vec![8usize, 10, 16]), 0.5f64..50.0).prop_flat_map(|(n, l)| {
        let g = GridSpec::new(n, l).unwrap();
        prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| (g, v))
    })
}

fn zero_mean(f: &SpectralField) -> SpectralField {
    let mut c = f.clone().into_coeffs();
    c[0] = Complex64::new(0.0, 0.0);
    SpectralField::from_coeffs(*f.grid(), c).unwrap()
}

fn max_gap(a: &SpectralField, b: &SpectralField) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip((g, v) in grid_and_values()) {
        let back = to_physical(&to_spectral(&v, &g).unwrap()).unwrap();
        prop_assert!(close(&back, &v, 1e-13));
    }

    #[test]
    fn multipliers_commute((g, v) in grid_and_values(), a in -2.0f64..2.0) {
        let f = zero_mean(&to_spectral(&v, &g).unwrap());
        let lap = |h: &SpectralField| fractional_laplacian(h, a).unwrap();
        let ops: [&dyn Fn(&SpectralField) -> SpectralField; 5] = [
            &lap,
            &|h| riesz_perp(h).u1,
            &|h| riesz_perp(h).u2,
            &|h| gradient(h).u1,
            &|h| gradient(h).u2,
        ];
        for p in &ops {
            for q in &ops {
                let pq = p(&q(&f));
                let qp = q(&p(&f));
                prop_assert!(max_gap(&pq, &qp) <= 1e-12 * pq.max_abs().max(1e-300));
            }
        }
    }

    #[test]
    fn fractional_powers_compose((g, v) in grid_and_values(), a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let f = zero_mean(&to_spectral(&v, &g).unwrap());
        let two = fractional_laplacian(&fractional_laplacian(&f, a).unwrap(), b).unwrap();
        let one = fractional_laplacian(&f, a + b).unwrap();
        prop_assert!(max_gap(&two, &one) <= 1e-12 * one.max_abs().max(1e-300));
    }

    #[test]
    fn riesz_perp_is_divergence_free((g, v) in grid_and_values()) {
        let f = to_spectral(&v, &g).unwrap();
        let u = riesz_perp(&f);
        // per mode |k·û| ≤ |k||û| times a few ulps
        let scale = g.wavenumber_unit() * g.n() as f64 * f.max_abs();
        prop_assert!(u.max_divergence() <= 4.0 * f64::EPSILON * scale);
    }

    #[test]
    fn parseval((g, v) in grid_and_values()) {
        let spectral = sobolev_norm(&to_spectral(&v, &g).unwrap(), 0.0, true).unwrap();
        let quad = l2_quadrature(&v, &g);
        prop_assert!((spectral - quad).abs() <= 1e-12 * quad.max(1e-300));
    }

    #[test]
    fn dealias_is_idempotent((g, v) in grid_and_values()) {
        let once = dealias(&to_spectral(&v, &g).unwrap());
        prop_assert_eq!(dealias(&once), once);
    }
}
