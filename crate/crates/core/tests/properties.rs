use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

use bipolariton::analysis::bunching_from_profile;
use bipolariton::blockade::orthonormality_residuals;
use bipolariton::io::{fmt_float, set_param, Scenario, SweepAxis};
use bipolariton::linalg::eigh;
use bipolariton::{derive_params, ParamsConfig};

fn hermitian(n: usize, seed: Vec<(f64, f64)>) -> DMatrix<C64> {
    let mut h = DMatrix::<C64>::zeros(n, n);
    let mut it = seed.into_iter().cycle();
    for i in 0..n {
        for j in i..n {
            let (a, b) = it.next().unwrap();
            if i == j {
                h[(i, i)] = C64::new(a, 0.0);
            } else {
                h[(i, j)] = C64::new(a, b);
                h[(j, i)] = C64::new(a, -b);
            }
        }
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn eigendecomposition_reconstructs(seed in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 997)) {
        let h = hermitian(300, seed);
        let e = eigh(&h).unwrap();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(300, e.values.iter().map(|&x| C64::new(x, 0.0))));
        let r = &e.vectors * d * e.vectors.adjoint() - &h;
        prop_assert!(r.norm() <= 1e-9 * h.norm(), "{:e}", r.norm() / h.norm());
    }
}

proptest! {
    #[test]
    fn delta_a_ignores_scale_and_mirror(
        half in prop::collection::vec(0.0f64..1.0, 4..30),
        scale in 0.01f64..100.0,
        zero in 0.0f64..2.0,
    ) {
        // Even profile over n = -N/2+1 .. N/2 with n = 0 at index N/2-1.
        let m = half.len();
        let mut prof = vec![0.0; 2 * m];
        prof[m - 1] = zero;
        for (i, &x) in half.iter().enumerate() {
            prof[m + i] = x;
            if i + 1 < m {
                prof[m - 2 - i] = x;
            }
        }
        let (d0, f0) = bunching_from_profile(&prof, m - 1);
        let scaled: Vec<f64> = prof.iter().map(|x| x * scale).collect();
        let (d1, f1) = bunching_from_profile(&scaled, m - 1);
        prop_assert_eq!(f0, f1);
        prop_assert!((d0 - d1).abs() <= 1e-9 * (1.0 + d0.abs()));
        let mirrored: Vec<f64> = (0..2 * m as i64).map(|i| prof[(2 * m as i64 - 2 - i).rem_euclid(2 * m as i64) as usize]).collect();
        let (d2, f2) = bunching_from_profile(&mirrored, m - 1);
        prop_assert_eq!(f0, f2);
        prop_assert!((d0 - d2).abs() <= 1e-12 * (1.0 + d0.abs()));
        prop_assert!(d0 >= 0.0);
    }

    #[test]
    fn blockade_states_orthonormal(half in 4usize..40, ell_frac in 0.0f64..1.0) {
        let n = 2 * half;
        let ell = ((half - 2) as f64 * ell_frac) as usize;
        let p = derive_params(&ParamsConfig { n_sites: Some(n), blockade_cells: Some(ell), ..Default::default() }).unwrap();
        let (a, b) = orthonormality_residuals(&p);
        prop_assert!(a.max(b) < 1e-10, "N={} ell={}: {} {}", n, ell, a, b);
    }

    #[test]
    fn floats_survive_text(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn scenario_round_trips(
        n in 5usize..60,
        delta in -2.0f64..2.0,
        ells in prop::collection::vec(0usize..3, 1..4),
        d in -5.0f64..5.0,
    ) {
        let mut cfg = ParamsConfig::default();
        set_param(&mut cfg, "n_sites", (2 * n) as f64).unwrap();
        set_param(&mut cfg, "detuning", delta).unwrap();
        set_param(&mut cfg, "d_strength", d).unwrap();
        let sc = Scenario {
            params: cfg,
            sweep: vec![SweepAxis { parameter: "blockade_cells".into(), values: ells.iter().map(|&x| x as f64).collect() }],
            ..Default::default()
        };
        sc.validate().unwrap();
        let back = Scenario::from_json(&sc.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &sc);
        prop_assert_eq!(back.sweep_points().unwrap().len(), ells.len());
    }
}
