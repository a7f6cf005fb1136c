use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use symopt::field::{sample1d, Field1D, Grid1D};
use symopt::phase_space::{husimi, tomogram_direct, wigner};
use symopt::special::hermite_gaussian;
use symopt::symplectic::{compose, from_sr, q_forward, q_of_matrix, sr_compose, to_sr, BeamQ, RayMatrix};
use symopt::transforms::{fresnel_apply, frft};
use symopt::wavelets::{c_psi, wavelet_eval, wt_energy, wt_inverse, wt_map, MotherWavelet1D, MotherWaveletC, ScaleGrid};

fn unimodular() -> impl Strategy<Value = RayMatrix> {
    (0.5f64..1.5, prop::bool::ANY, 0.5f64..1.5, prop::bool::ANY, -1.0f64..1.0).prop_map(|(a, sa, b, sb, c)| {
        let a = if sa { a } else { -a };
        let b = if sb { b } else { -b };
        RayMatrix::new(a, b, c, (1.0 + b * c) / a).unwrap()
    })
}

/// Normalized superposition of the first four Hermite-Gaussians.
fn state() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 0.05)
        .prop_map(|v| {
            let n = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            v.into_iter().map(|(a, b)| Complex64::new(a, b) / n).collect()
        })
}

fn superpose(coef: &[Complex64], g: Grid1D) -> Field1D {
    sample1d(g, |x| coef.iter().enumerate().map(|(n, c)| c * hermite_gaussian(n, x).unwrap()).sum()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sr_parameters_round_trip_and_compose(m1 in unimodular(), m2 in unimodular()) {
        let (p1, p2) = (to_sr(&m1), to_sr(&m2));
        prop_assert!((p1.invariant() - 1.0).abs() < 1e-12);
        prop_assert!(from_sr(&p1).unwrap().max_diff(&m1) < 1e-12);
        let prod = to_sr(&compose(&m1, &m2));
        let rule = sr_compose(&p1, &p2);
        prop_assert!((prod.s - rule.s).norm() < 1e-12 && (prod.r - rule.r).norm() < 1e-12);
        prop_assert!((compose(&m1, &m2).det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn q_law_agrees_with_squeezed_vacuum_parameter(m1 in unimodular(), m2 in unimodular()) {
        let lhs = q_of_matrix(&compose(&m2, &m1)).unwrap().q;
        let rhs = -q_forward(&m2, BeamQ::new(-q_of_matrix(&m1).unwrap().q)).unwrap().q;
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn fresnel_is_unitary(m in unimodular(), coef in state()) {
        let g = Grid1D::default();
        let f = superpose(&coef, g);
        let out = fresnel_apply(&m, &f, &g).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-8, "{}", out.norm());
    }

    #[test]
    fn frft_is_additive(a in -3.0f64..3.0, b in -3.0f64..3.0, coef in state()) {
        let g = Grid1D::default();
        let f = superpose(&coef, g);
        let two = frft(a, &frft(b, &f, &g).unwrap(), &g).unwrap();
        let e = two.relative_l2(&frft(a + b, &f, &g).unwrap());
        prop_assert!(e < 1e-6, "{e}");
    }

    #[test]
    fn wigner_integrates_to_norm(coef in state()) {
        let g = Grid1D::default();
        let w = wigner(&superpose(&coef, g), &g, &g).unwrap();
        let total: f64 = w.values.iter().map(|v| v.re).sum::<f64>() * g.dx * g.dx;
        prop_assert!((total - 1.0).abs() < 1e-8);
    }

    #[test]
    fn tomogram_rows_are_probability_densities(m in unimodular(), coef in state()) {
        // M⁻¹ magnifies by up to |D| ≈ 3, so the output window is wider; the
        // finer input spacing keeps the output's periodic images outside it.
        let g = Grid1D::centered(512, 0.05);
        let x = Grid1D::centered(512, 0.1);
        let row = tomogram_direct(&superpose(&coef, g), &m, &x).unwrap();
        prop_assert!(row.iter().all(|v| *v >= 0.0));
        let total = row.iter().sum::<f64>() * x.dx;
        prop_assert!((total - 1.0).abs() < 1e-8, "{total} {m:?}");
    }

    #[test]
    fn husimi_is_nonnegative(kappa in 0.3f64..3.0, coef in state()) {
        let g = Grid1D::default();
        let probe = Grid1D::centered(12, 0.5);
        let h = husimi(&superpose(&coef, g), kappa, &probe, &probe).unwrap();
        prop_assert!(h.values.iter().all(|v| v.re > -1e-12));
    }

    #[test]
    fn admissible_wavelets_have_zero_mean(g2 in -2.0f64..2.0, g4 in -2.0f64..2.0, g6 in -1.0f64..1.0, g1 in -1.0f64..1.0, g3 in -1.0f64..1.0) {
        let g0 = -(g2 + 3.0 * g4 + 15.0 * g6);
        let w = MotherWavelet1D::new(vec![g0, g1, g2, g3, g4, 0.0, g6]).unwrap();
        let dx = 0.02;
        let mean: f64 = (-1000..=1000).map(|k| wavelet_eval(&w, k as f64 * dx)).sum::<f64>() * dx;
        prop_assert!(mean.abs() < 1e-9, "{mean}");
    }

    #[test]
    fn admissible_laguerre_gaussians_have_zero_mean(k1 in -2.0f64..2.0, k2 in -1.0f64..1.0) {
        // Σ n! K_n (-1)^n = 0 fixes K_0.
        let k0 = k1 - 2.0 * k2;
        let w = MotherWaveletC::new(vec![k0, k1, k2]).unwrap();
        let h = 0.1;
        let mean: f64 = (-100..=100).flat_map(|i| (-100..=100).map(move |j| (i as f64 * h).hypot(j as f64 * h))).map(|r| w.radial(r)).sum::<f64>() * h * h;
        prop_assert!(mean.abs() < 1e-9, "{mean}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // k₀σ >= 3.75 keeps the DC content below e^{-7}, inside the μ <= 100 band.
    #[test]
    fn wt_parseval_and_inversion_for_band_limited_signals(k0 in 2.5f64..4.0, centre in -2.0f64..2.0, width in 1.5f64..2.0, phase in 0.0f64..PI) {
        let g = Grid1D::default();
        let f = sample1d(g, |x| Complex64::new((-(x - centre).powi(2) / (2.0 * width * width)).exp() * (k0 * x + phase).cos(), 0.0)).unwrap();
        let w = MotherWavelet1D::mexican_hat();
        let scales = ScaleGrid::log_spaced(0.01, 100.0, 128).unwrap();
        let map = wt_map(&f, &w, &scales, &g).unwrap();
        let parseval = wt_energy(&map, &w) / (2.0 * c_psi(&w).unwrap() * f.norm().powi(2)) - 1.0;
        prop_assert!(parseval.abs() < 1e-2, "{parseval}");
        let back = wt_inverse(&map, &w, &g).unwrap().relative_l2(&f);
        prop_assert!(back < 1e-2, "{back}");
    }
}
