mod common;

use num_complex::Complex64;

use tropica::amoeba::{curve_window, distance_to_curve, RESIDUAL_TOLERANCE};
use tropica::error::AmoebaError;
use tropica::number::{int, rat};
use tropica::*;

/// Deviation of the sampled line amoeba at t = 2, 8, 32, 128 with the
/// default grid, recorded from the first run of the pipeline.
const LINE_DEV: [f64; 4] = [0.992125984252, 0.330708661417, 0.195351701399, 0.141732283465];
const LINE_FIT_C: f64 = 0.687;

fn line_family() -> CoefficientFamily {
    CoefficientFamily::constant(&[((1, 0), (1, 0)), ((0, 1), (-1, 0)), ((0, 0), (1, 0))]).unwrap()
}

/// `Σ t^{a_ij} x^i y^j` with the exponents of the smooth conic.
fn conic_family() -> CoefficientFamily {
    let exps = [((0, 0), 3), ((1, 0), 2), ((0, 1), 2), ((1, 1), 3), ((2, 0), 0), ((0, 2), 0)];
    CoefficientFamily::new(exps.map(|(e, r)| (e, vec![SeriesTerm { r: int(r), beta: (int(1), int(0)) }]))).unwrap()
}

fn ts(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&t| int(t)).collect()
}

#[test]
fn log_map_fixtures() {
    let t = 5.0;
    assert_eq!(log_map(&[(Complex64::new(t, 0.0), Complex64::new(0.0, t))], t).unwrap(), vec![(1.0, 1.0)]);
    assert_eq!(log_map(&[(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))], 3.0).unwrap(), vec![(0.0, 0.0)]);
    let e = std::f64::consts::E;
    let got = log_map(&[(Complex64::new(e * e, 0.0), Complex64::new(e.powi(3), 0.0))], e).unwrap();
    assert!((got[0].0 - 2.0).abs() < 1e-14 && (got[0].1 - 3.0).abs() < 1e-14);
    assert_eq!(log_map(&[(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))], 1.0), Err(AmoebaError::BaseNotAboveOne));
}

#[test]
fn tropical_limit_of_constant_line_family() {
    let limit = line_family().tropical_limit();
    assert_eq!(limit, BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0)]));
    let c = tropical_curve(&limit);
    assert_eq!(c.vertices[0].position, Point::from_ints(0, 0));
}

#[test]
fn line_amoeba_has_three_tentacles() {
    let f = line_family();
    let s = sample_amoeba(&f, &rat(27_183, 10_000), &GridSpec { window: None, ..GridSpec::default() }).unwrap();
    let far = |pred: &dyn Fn(&(f64, f64)) -> bool| s.points.iter().any(pred);
    // left: y ≈ 0, x ≪ 0; down: x ≈ 0, y ≪ 0; diagonal: x ≈ y ≫ 0
    assert!(far(&|p| p.0 < -1.5 && p.1.abs() < 0.2));
    assert!(far(&|p| p.1 < -1.0 && p.0.abs() < 0.2));
    assert!(far(&|p| p.0 > 1.5 && (p.0 - p.1).abs() < 0.2));
}

#[test]
fn samples_satisfy_residual_and_sandwich_bounds() {
    let f = line_family();
    for t in [2i64, 8, 32, 128] {
        let s = sample_amoeba(&f, &int(t), &GridSpec::default()).unwrap();
        assert!(s.max_residual < RESIDUAL_TOLERANCE);
        let slack = 2f64.ln() / (t as f64).ln() + 1e-9;
        for &(x, y) in &s.points {
            // each monomial of x - y + 1 is bounded by the sum of the other two
            let m = [x, y, 0.0];
            for k in 0..3 {
                let others = m.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| *v).fold(f64::MIN, f64::max);
                assert!(m[k] <= others + slack, "t = {t}: ({x}, {y})");
            }
        }
    }
}

#[test]
fn line_convergence_regression() {
    let report = convergence_report(&line_family(), &ts(&[2, 8, 32, 128]), &GridSpec::default()).unwrap();
    assert!(report.strictly_decreasing);
    for (row, expected) in report.rows.iter().zip(LINE_DEV) {
        assert!((row.dev - expected).abs() < 1e-9, "t = {}: dev {}", row.t, row.dev);
        assert!(row.max_residual < RESIDUAL_TOLERANCE);
    }
    assert!(report.rows[3].dev < report.rows[0].dev / 3.0);
    assert!((report.fit_c - LINE_FIT_C).abs() < 1e-3);
    for row in &report.rows {
        assert!(row.dev <= report.envelope_c / row.t.ln() + 1e-12);
    }
}

#[test]
fn deviation_shrinks_when_t_quadruples() {
    for f in [line_family(), conic_family()] {
        let report = convergence_report(&f, &ts(&[2, 8, 32, 128, 512]), &GridSpec::default()).unwrap();
        for w in report.rows.windows(2) {
            assert!(w[1].dev <= w[0].dev + 1e-9);
        }
        let curve = tropical_curve(&f.tropical_limit());
        let s = sample_amoeba(&f, &int(512), &GridSpec::default()).unwrap();
        let dev = s.points.iter().map(|&p| distance_to_curve(&curve, p)).fold(0.0, f64::max);
        assert!(dev <= report.rows[4].dev + 1e-12);
    }
}

#[test]
fn window_follows_the_limit_curve() {
    let c = tropical_curve(&conic_family().tropical_limit());
    let w = curve_window(&c, 2.0).unwrap();
    assert_eq!((w.x0, w.y0, w.x1, w.y1), (-3.0, -3.0, 4.0, 4.0));
    let s = sample_amoeba(&conic_family(), &int(16), &GridSpec::default()).unwrap();
    assert!(s.points.iter().all(|&p| p.0 >= w.x0 - 1e-9 && p.0 <= w.x1 + 1e-9));
}

#[test]
fn unsupported_inputs() {
    let mono = CoefficientFamily::constant(&[((2, 1), (3, 0))]).unwrap();
    assert_eq!(convergence_report(&mono, &ts(&[2]), &GridSpec::default()), Err(AmoebaError::EmptyLimit));
    let cubic = CoefficientFamily::constant(&[((0, 0), (1, 0)), ((0, 3), (1, 0)), ((1, 0), (1, 0))]).unwrap();
    assert_eq!(sample_amoeba(&cubic, &int(2), &GridSpec::default()), Err(AmoebaError::DegreeTooHigh(3)));
    assert!(matches!(
        sample_amoeba(&line_family(), &int(2), &GridSpec { moduli: 1, ..GridSpec::default() }),
        Err(AmoebaError::BadGrid(_))
    ));
    assert_eq!(sample_amoeba(&line_family(), &int(1), &GridSpec::default()), Err(AmoebaError::BaseNotAboveOne));
}
