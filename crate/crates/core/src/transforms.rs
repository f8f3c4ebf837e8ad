//! Closed-form Fourier transforms of the potential profile and related
//! kernels.
//!
//! Conventions: `ft_f(k)` denotes `integral f(x) e^{+ikx} dx`, and the
//! momentum-to-position direction carries the `1/(2 pi)` weight. Every
//! formula here has a quadrature cross-check in the test module, including
//! the oscillatory tail corrections those checks need at finite truncation
//! windows.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::params::PotentialParams;
use crate::scalar::Real;

/// The even kernel `q / sinh(pi q / (2 kappa))` with its removable
/// singularity at q = 0 filled by a short series (value `2 kappa / pi`).
///
/// The series takes over for |q| below `k_eps * kappa`; its truncation
/// error there is far below machine precision, so the seam is continuous.
/// Both the potential transform and the momentum matrix elements reduce
/// to sums of this kernel at shifted arguments.
pub fn q_over_sinh<R: Real>(q: R, p: &PotentialParams<R>) -> R {
    let kap = p.kappa();
    let u = R::PI() * q / (R::of(2.0) * kap);
    if q.abs() < p.k_eps() * kap {
        // (2 kappa / pi) * u/sinh(u) = (2 kappa / pi)(1 - u^2/6 + 7 u^4/360 - ...)
        let u2 = u * u;
        let series = R::one() - u2 / R::of(6.0) + u2 * u2 * R::of(7.0 / 360.0);
        R::of(2.0) * kap / R::PI() * series
    } else {
        q / u.sinh()
    }
}

/// Fourier transform of sech^2(kappa x):
/// `(pi k / kappa^2) / sinh(pi k / (2 kappa))`.
///
/// Even in k; the k = 0 limit is the total area 2/kappa.
pub fn ft_sech2<R: Real>(k: R, p: &PotentialParams<R>) -> R {
    let kap = p.kappa();
    R::PI() / (kap * kap) * q_over_sinh(k, p)
}

/// Fourier transform of tanh(kappa x), regularized:
/// `i (pi / kappa) / sinh(pi k / (2 kappa))`, purely imaginary and odd.
///
/// The k = 0 singularity is a genuine distributional part (the transform
/// of the odd step), so k = 0 is a domain error rather than a value.
pub fn ft_tanh<R: Real>(k: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    if k == R::zero() {
        return Err(Error::DivergentAtZero);
    }
    let kap = p.kappa();
    let u = R::PI() * k / (R::of(2.0) * kap);
    Ok(Complex::new(R::zero(), R::PI() / kap / u.sinh()))
}

/// Inverse transform of the Lorentzian `1/(k^2 + kappa^2)` evaluated at
/// separation d: `(1 / 2 pi) integral e^{ikd} / (k^2 + kappa^2) dk =
/// e^{-kappa |d|} / (2 kappa)`.
pub fn lorentzian_ft<R: Real>(d: R, p: &PotentialParams<R>) -> R {
    let kap = p.kappa();
    (-kap * d.abs()).exp() / (R::of(2.0) * kap)
}

/// Inverse transform of `-ik / (k^2 + kappa^2)` at separation d:
/// `sgn(d) e^{-kappa |d|} / 2`. Equals minus the d-derivative of
/// [`lorentzian_ft`]; d = 0 sits on the jump and is a domain error.
pub fn lorentzian_ft_derivative<R: Real>(d: R, p: &PotentialParams<R>) -> Result<R> {
    if d == R::zero() {
        return Err(Error::ZeroSeparation);
    }
    let kap = p.kappa();
    Ok(d.signum() * (-kap * d.abs()).exp() / R::of(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_interval, QuadratureSpec};
    use crate::scalar::sech;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex;

    fn params(kappa: f64) -> PotentialParams<f64> {
        PotentialParams::with_kappa(kappa).unwrap()
    }

    #[test]
    fn sech2_transform_frozen_values() {
        let p = params(1.0);
        assert_relative_eq!(ft_sech2(1.0, &p), 1.3651389006617156, max_relative = 1e-14);
        assert_relative_eq!(ft_sech2(2.5, &p), 0.30961219759392633, max_relative = 1e-14);
        assert_relative_eq!(ft_sech2(0.0, &p), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn sech2_transform_zero_limit_is_total_area() {
        // integral sech^2(kappa x) dx = 2/kappa
        for kappa in [0.5, 1.0, 3.0] {
            let p = params(kappa);
            assert_relative_eq!(ft_sech2(0.0, &p), 2.0 / kappa, max_relative = 1e-15);
        }
    }

    #[test]
    fn sech2_series_seam_is_continuous() {
        for kappa in [0.5, 1.0, 3.0] {
            let p = params(kappa);
            let k_seam = p.k_eps() * kappa;
            let below = ft_sech2(k_seam * (1.0 - 1e-9), &p);
            let above = ft_sech2(k_seam * (1.0 + 1e-9), &p);
            assert_relative_eq!(below, above, max_relative = 1e-12);
        }
    }

    #[test]
    fn sech2_transform_is_even_tanh_is_odd() {
        let p = params(1.7);
        for k in [0.03, 0.4, 1.0, 2.9, 8.0] {
            assert_relative_eq!(ft_sech2(k, &p), ft_sech2(-k, &p), max_relative = 1e-15);
            let plus = ft_tanh(k, &p).unwrap();
            let minus = ft_tanh(-k, &p).unwrap();
            assert_eq!(plus.re, 0.0);
            assert_relative_eq!(plus.im, -minus.im, max_relative = 1e-15);
        }
    }

    #[test]
    fn tanh_transform_rejects_zero() {
        assert!(matches!(ft_tanh(0.0, &params(1.0)), Err(Error::DivergentAtZero)));
    }

    #[test]
    fn sech2_transform_matches_quadrature() {
        // Direct windowed quadrature; the integrand decays like e^{-2 kappa |x|}.
        let spec = QuadratureSpec { decay_cutoff: 30.0, ..QuadratureSpec::default() };
        for kappa in [0.5, 1.0, 2.3] {
            let p = params(kappa);
            for k in [0.2, 1.0, 3.7] {
                let (v, _) = integrate_interval(
                    |x: f64| Complex::from_polar(sech(kappa * x).powi(2), k * x),
                    -spec.decay_cutoff / kappa,
                    spec.decay_cutoff / kappa,
                    &spec,
                )
                .unwrap();
                // The integrator stops on its absolute tolerance, so compare
                // absolutely; the transform value itself can be ~1e-4.
                assert_abs_diff_eq!(v.re, ft_sech2(k, &p), epsilon = 1e-9);
                assert!(v.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tanh_transform_matches_regularized_quadrature() {
        // tanh is not integrable; transform the difference tanh(kx) - sgn(x)
        // (which decays) and add the closed-form sgn transform 2/(ik).
        let spec = QuadratureSpec { decay_cutoff: 30.0, ..QuadratureSpec::default() };
        for kappa in [0.5, 1.0, 2.3] {
            let p = params(kappa);
            for k in [0.2, 1.0, 3.7] {
                let (diff, _) = integrate_interval(
                    |x: f64| {
                        let rem = (kappa * x).tanh() - x.signum();
                        Complex::from_polar(1.0, k * x) * rem
                    },
                    -spec.decay_cutoff / kappa,
                    spec.decay_cutoff / kappa,
                    &spec,
                )
                .unwrap();
                // transform(tanh) = transform(tanh - sgn) + transform(sgn),
                // and the regularized sgn transform under e^{+ikx} is 2i/k.
                let total = diff + Complex::new(0.0, 2.0 / k);
                let expected = ft_tanh(k, &p).unwrap();
                assert!(total.re.abs() < 1e-10);
                assert_relative_eq!(total.im, expected.im, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn lorentzian_value_frozen_and_cross_checked() {
        let p = params(1.0);
        // e^{-1}/2 at d = 1, kappa = 1.
        assert_relative_eq!(lorentzian_ft(1.0, &p), 0.18393972058572117, max_relative = 1e-15);
        assert_relative_eq!(lorentzian_ft(-1.0, &p), lorentzian_ft(1.0, &p), max_relative = 1e-15);

        // Quadrature over [-K, K] plus the integration-by-parts tail term
        // -sin(K d) / (pi d (K^2 + kappa^2)); without it the truncation error
        // at K = 200 is ~1e-5 and the check would be meaningless.
        let kappa = 1.0;
        let d = 0.5;
        let big_k = 200.0;
        let spec = QuadratureSpec { decay_cutoff: big_k, ..QuadratureSpec::default() };
        let (v, _) = integrate_interval(
            |k: f64| Complex::new((k * d).cos() / (k * k + kappa * kappa), 0.0),
            -big_k,
            big_k,
            &spec,
        )
        .unwrap();
        let tail = -(big_k * d).sin() / (std::f64::consts::PI * d * (big_k * big_k + kappa * kappa));
        let numeric = v.re / (2.0 * std::f64::consts::PI) + tail;
        assert!((numeric - lorentzian_ft(d, &p)).abs() < 1e-6);
    }

    #[test]
    fn lorentzian_derivative_frozen_and_cross_checked() {
        let p = params(1.0);
        assert_relative_eq!(
            lorentzian_ft_derivative(0.3, &p).unwrap(),
            0.5 * (-0.3f64).exp(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            lorentzian_ft_derivative(-0.3, &p).unwrap(),
            -0.5 * (-0.3f64).exp(),
            max_relative = 1e-15
        );
        assert!(matches!(lorentzian_ft_derivative(0.0, &p), Err(Error::ZeroSeparation)));

        // (1/2 pi) int -ik e^{ikd} / (k^2 + kappa^2) dk = sgn(d) e^{-kappa|d|} / 2.
        // Truncation of k sin(kd)/(k^2+kappa^2) decays like 1/K, so subtract
        // the slowly-converging Dirichlet part: the integrand minus
        // sin(kd)/k leaves an absolutely convergent remainder, and
        // int_0^inf sin(kd)/k dk = pi/2 sgn(d) exactly.
        let kappa = 1.0;
        let d = 0.3;
        let big_k = 200.0;
        let spec = QuadratureSpec { decay_cutoff: big_k, ..QuadratureSpec::default() };
        let (rem, _) = integrate_interval(
            |k: f64| {
                if k == 0.0 {
                    return Complex::new(0.0, 0.0);
                }
                let val = k * (k * d).sin() / (k * k + kappa * kappa) - (k * d).sin() / k;
                Complex::new(val, 0.0)
            },
            0.0,
            big_k,
            &spec,
        )
        .unwrap();
        // remainder integrand = -kappa^2 sin(kd) / (k (k^2+kappa^2)); its own
        // truncation tail is O(1/K^3) and negligible at K = 200.
        let numeric = (rem.re + std::f64::consts::PI / 2.0 * d.signum()) / std::f64::consts::PI;
        assert!((numeric - lorentzian_ft_derivative(d, &p).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn lorentzian_derivative_is_minus_d_derivative() {
        for kappa in [0.5, 1.0, 3.0] {
            let p = params(kappa);
            for d in [0.1, 0.7, 2.0, -1.3] {
                let h = 1e-6;
                let fd = (lorentzian_ft(d + h, &p) - lorentzian_ft(d - h, &p)) / (2.0 * h);
                assert_relative_eq!(
                    -fd,
                    lorentzian_ft_derivative(d, &p).unwrap(),
                    max_relative = 1e-8
                );
            }
        }
    }

    #[test]
    fn transform_identity_couples_tanh_and_sech2() {
        // kappa * ft_sech2(k) = -ik * ft_tanh(k): d/dx tanh(kappa x) =
        // kappa sech^2(kappa x) in transform language. At kappa = 1 the
        // prefactor drops and the identity reads ft_sech2 = -ik ft_tanh.
        for kappa in [0.5, 1.0, 2.3] {
            let p = params(kappa);
            for k in [0.05, 0.3, 1.0, 4.0, 11.0] {
                let lhs = Complex::new(kappa * ft_sech2(k, &p), 0.0);
                let rhs = Complex::new(0.0, -k) * ft_tanh(k, &p).unwrap();
                assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-13);
                assert!(lhs.im.abs() < 1e-15 && rhs.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn f32_transforms_agree_with_f64() {
        let p64 = params(1.0);
        let p32 = PotentialParams::<f32>::with_kappa(1.0).unwrap();
        assert_relative_eq!(
            ft_sech2(1.0f32, &p32) as f64,
            ft_sech2(1.0f64, &p64),
            max_relative = 1e-6
        );
    }
}
