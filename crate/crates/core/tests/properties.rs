//! Property tests for the structural invariants: scaling covariance into
//! the unit well, parity algebra, unit-modulus transmission, transform
//! parities, grid construction, and quadrature exactness on polynomials.

use num_complex::Complex;
use proptest::prelude::*;
use reflectionless::{
    continuum_defect_diagonal, expansion_grid, ft_sech2, ft_tanh, integrate_interval,
    lorentzian_ft, lorentzian_ft_derivative, momentum_matrix_element_regular, parity_even,
    parity_odd, psi0, psi_k, trapezoid_weights, transmission_amplitude, Params64,
    PotentialParams, QuadratureSpec,
};

fn params(kappa: f64) -> Params64 {
    PotentialParams::with_kappa(kappa).unwrap()
}

fn nonzero_k() -> impl Strategy<Value = f64> {
    prop_oneof![0.05f64..8.0, -8.0f64..-0.05]
}

proptest! {
    // The well at depth parameter kappa is the unit well in stretched
    // coordinates: psi_k(x; kappa) = psi_{k/kappa}(kappa x; 1) exactly.
    #[test]
    fn continuum_states_scale_into_the_unit_well(
        kappa in 0.3f64..3.0,
        k in nonzero_k(),
        x in -6.0f64..6.0,
    ) {
        let a = psi_k(k, x, &params(kappa)).unwrap();
        let b = psi_k(k / kappa, kappa * x, &params(1.0)).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn bound_state_scales_into_the_unit_well(
        kappa in 0.3f64..3.0,
        x in -6.0f64..6.0,
    ) {
        let a = psi0(x, &params(kappa));
        let b = kappa.sqrt() * psi0(kappa * x, &params(1.0));
        prop_assert!((a - b).abs() < 1e-13 * kappa.sqrt());
    }

    #[test]
    fn transmission_has_unit_modulus(kappa in 0.3f64..3.0, k in nonzero_k()) {
        let t = transmission_amplitude(k, &params(kappa)).unwrap();
        prop_assert!((t.norm() - 1.0).abs() < 1e-14);
    }

    // Parity eigenstates are the symmetric and antisymmetric combinations
    // of the running state evaluated at +-x.
    #[test]
    fn parity_states_are_reflections(
        kappa in 0.3f64..3.0,
        k in 0.05f64..8.0,
        x in -6.0f64..6.0,
    ) {
        let p = params(kappa);
        let rt2 = std::f64::consts::SQRT_2;
        let plus = psi_k(k, x, &p).unwrap();
        let minus = psi_k(k, -x, &p).unwrap();
        let even = parity_even(k, x, &p).unwrap();
        let odd = parity_odd(k, x, &p).unwrap();
        prop_assert!(((plus + minus) / rt2 - even).norm() < 1e-13);
        prop_assert!(((plus - minus) / rt2 - odd).norm() < 1e-13);
    }

    #[test]
    fn transform_parities(kappa in 0.3f64..3.0, k in 0.01f64..10.0) {
        let p = params(kappa);
        prop_assert!((ft_sech2(k, &p) - ft_sech2(-k, &p)).abs() < 1e-14);
        let plus = ft_tanh(k, &p).unwrap();
        let minus = ft_tanh(-k, &p).unwrap();
        prop_assert_eq!(plus.re, 0.0);
        prop_assert!((plus.im + minus.im).abs() < 1e-14);
    }

    // kappa * ft_sech2 = -ik * ft_tanh at every depth.
    #[test]
    fn transform_identity_holds_at_any_depth(kappa in 0.3f64..3.0, k in 0.01f64..10.0) {
        let p = params(kappa);
        let lhs = kappa * ft_sech2(k, &p);
        let rhs = (Complex::new(0.0, -k) * ft_tanh(k, &p).unwrap()).re;
        prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn lorentzian_pair_is_a_derivative_pair(
        kappa in 0.3f64..3.0,
        d in prop_oneof![0.05f64..3.0, -3.0f64..-0.05],
    ) {
        let p = params(kappa);
        let h = 1e-6;
        let fd = (lorentzian_ft(d + h, &p) - lorentzian_ft(d - h, &p)) / (2.0 * h);
        let closed = lorentzian_ft_derivative(d, &p).unwrap();
        prop_assert!((closed + fd).abs() < 1e-7);
    }

    #[test]
    fn defect_diagonal_is_the_ground_density(
        kappa in 0.3f64..3.0,
        x in -6.0f64..6.0,
    ) {
        let p = params(kappa);
        let d = continuum_defect_diagonal(x, &p);
        let g = psi0(x, &p);
        prop_assert!(d >= 0.0);
        prop_assert!((d - g * g).abs() < 1e-12 * kappa);
    }

    #[test]
    fn momentum_element_diagonal_is_real(kappa in 0.3f64..3.0, k in 0.05f64..8.0) {
        let p = params(kappa);
        let m = momentum_matrix_element_regular(k, k, &p).unwrap();
        let expect = k * kappa / std::f64::consts::PI / (kappa * kappa + k * k);
        prop_assert_eq!(m.im, 0.0);
        prop_assert!((m.re - expect).abs() < 1e-12 * expect.max(1e-3));
    }

    #[test]
    fn trapezoid_weights_sum_to_the_span(
        increments in prop::collection::vec(0.01f64..1.0, 2..40),
        start in -5.0f64..5.0,
    ) {
        let mut nodes = vec![start];
        for inc in &increments {
            nodes.push(nodes.last().unwrap() + inc);
        }
        let w = trapezoid_weights(&nodes);
        let span = nodes.last().unwrap() - nodes[0];
        let total: f64 = w.iter().sum();
        prop_assert!((total - span).abs() < 1e-12 * span.max(1.0));
        prop_assert!(w.iter().all(|&wi| wi > 0.0));
    }

    #[test]
    fn expansion_grid_is_symmetric_with_a_bridged_hole(
        k_max in 3.0f64..50.0,
        m in 33usize..400,
        kappa in 0.3f64..1.4,
    ) {
        let p = params(kappa);
        let grid = expansion_grid(k_max, m, &p).unwrap();
        prop_assert_eq!(grid.len() % 2, 0);
        prop_assert!(grid.windows(2).all(|w| w[0] < w[1]));
        let n = grid.len();
        for i in 0..n {
            prop_assert!((grid[i] + grid[n - 1 - i]).abs() < 1e-12 * k_max);
        }
        // No node inside the hole, and the innermost pair sits at its edge.
        let k_min = 1e-3 * kappa;
        prop_assert!(grid.iter().all(|&k| k.abs() >= k_min * (1.0 - 1e-12)));
        prop_assert!((grid[n / 2] - k_min).abs() < 1e-12 * k_min.max(1e-9));
        // Trapezoid weights cover the full band, hole included.
        let w = trapezoid_weights(&grid);
        let total: f64 = w.iter().sum();
        prop_assert!((total - 2.0 * k_max).abs() < 1e-10 * k_max);
    }

    // The 15-point panel rule is exact on low-degree polynomials, so the
    // adaptive driver must reproduce their integrals at machine accuracy.
    #[test]
    fn quadrature_is_exact_on_cubics(
        c0 in -2.0f64..2.0,
        c1 in -2.0f64..2.0,
        c2 in -2.0f64..2.0,
        c3 in -2.0f64..2.0,
        a in -3.0f64..0.0,
        b in 0.1f64..3.0,
    ) {
        let spec = QuadratureSpec::default();
        let (v, _) = integrate_interval(
            |x: f64| Complex::new(c0 + x * (c1 + x * (c2 + x * c3)), 0.0),
            a,
            b,
            &spec,
        )
        .unwrap();
        let anti = |x: f64| c0 * x + c1 * x * x / 2.0 + c2 * x * x * x / 3.0 + c3 * x * x * x * x / 4.0;
        let truth = anti(b) - anti(a);
        prop_assert!((v.re - truth).abs() < 1e-12 * truth.abs().max(1.0));
    }
}

// Deterministic sweeps that want specific dense coverage rather than
// random sampling.

#[test]
fn transmission_phase_crosses_quadrature_at_kappa() {
    // arg t(k) runs from ~pi (k -> 0+) through pi/2 at k = kappa toward 0.
    let p = params(1.0);
    let at_kappa = transmission_amplitude(1.0, &p).unwrap();
    assert!((at_kappa - Complex::new(0.0, 1.0)).norm() < 1e-15);
    let mut last = std::f64::consts::PI;
    for i in 1..400 {
        let k = 0.05 * i as f64;
        let arg = transmission_amplitude(k, &p).unwrap().arg();
        assert!(arg <= last + 1e-12, "phase must fall monotonically");
        last = arg;
    }
    // arg t = 2 atan(kappa / k), so by k = 19.95 the phase is ~0.1.
    assert!(last < 0.11, "large-k phase should approach zero, got {last}");
}

#[test]
fn defect_trace_is_depth_independent() {
    // integral of the defect diagonal is the bound-state count, so it must
    // not move with kappa.
    let spec = QuadratureSpec::default();
    for kappa in [0.4, 0.9, 1.7, 2.8] {
        let p = params(kappa);
        let window = 40.0 / kappa;
        let (v, _) = integrate_interval(
            |x: f64| Complex::new(continuum_defect_diagonal(x, &p), 0.0),
            -window,
            window,
            &spec,
        )
        .unwrap();
        assert!((v.re - 1.0).abs() < 1e-10, "trace at kappa = {kappa}: {}", v.re);
    }
}
