//! Closed-form eigenstates of the sech^2 well and the ladder operators
//! that generate them.
//!
//! The well supports exactly one bound state psi0 at energy -kappa^2 and a
//! reflectionless continuum psi_k at energy k^2. The continuum states come
//! from applying the raising operator to plane waves, which is why they are
//! available in closed form. Delta-normalization conventions:
//!
//! * full-line states satisfy <psi_k1, psi_k2> = delta(k1 - k2), k != 0;
//! * parity-resolved states are indexed by k > 0, one even and one odd
//!   family, each delta-normalized on the half line.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::params::PotentialParams;
use crate::scalar::{sech, Real};

/// V(x) = -2 kappa^2 sech^2(kappa x).
pub fn potential_v<R: Real>(x: R, p: &PotentialParams<R>) -> R {
    let s = sech(p.kappa() * x);
    -R::of(2.0) * p.kappa() * p.kappa() * s * s
}

/// Energy of the single bound state: -kappa^2.
pub fn bound_energy<R: Real>(p: &PotentialParams<R>) -> R {
    -p.kappa() * p.kappa()
}

/// Normalized bound state sqrt(kappa/2) sech(kappa x). Annihilated by
/// [`apply_a`]; positive everywhere.
pub fn psi0<R: Real>(x: R, p: &PotentialParams<R>) -> R {
    (p.kappa() / R::of(2.0)).sqrt() * sech(p.kappa() * x)
}

fn require_nonzero<R: Real>(k: R) -> Result<()> {
    if k == R::zero() {
        Err(Error::ExcludedWavenumber)
    } else {
        Ok(())
    }
}

fn require_positive<R: Real>(k: R) -> Result<()> {
    if k > R::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveWavenumber {
            k: k.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Raising operator applied to the plane wave e^{ikx}/sqrt(2 pi):
/// e^{ikx} (k + i kappa tanh(kappa x)) / sqrt(2 pi). Not delta-normalized;
/// its norm square carries the factor (k^2 + kappa^2).
pub fn phi_unnormalized<R: Real>(k: R, x: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    require_nonzero(k)?;
    let kap = p.kappa();
    let osc = Complex::from_polar(R::one(), k * x);
    let amp = Complex::new(k, kap * (kap * x).tanh());
    Ok(osc * amp / (R::of(2.0) * R::PI()).sqrt())
}

/// Delta-normalized continuum state phi_k / (kappa + i k).
pub fn psi_k<R: Real>(k: R, x: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    let phi = phi_unnormalized(k, x, p)?;
    Ok(phi / Complex::new(p.kappa(), k))
}

/// Analytic x-derivative of [`psi_k`]:
/// e^{ikx} [ik (k + i kappa tanh) + i kappa^2 sech^2] / (sqrt(2 pi) (kappa + ik)).
pub fn psi_k_dx<R: Real>(k: R, x: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    require_nonzero(k)?;
    let kap = p.kappa();
    let t = (kap * x).tanh();
    let s = sech(kap * x);
    let osc = Complex::from_polar(R::one(), k * x);
    let ik = Complex::new(R::zero(), k);
    let inner = ik * Complex::new(k, kap * t) + Complex::new(R::zero(), kap * kap * s * s);
    Ok(osc * inner / Complex::new(kap, k) / (R::of(2.0) * R::PI()).sqrt())
}

/// Transmission amplitude t(k) = (k + i kappa)/(k - i kappa). Unit modulus
/// for every real k != 0; the reflection amplitude vanishes identically.
pub fn transmission_amplitude<R: Real>(k: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    require_nonzero(k)?;
    let kap = p.kappa();
    Ok(Complex::new(k, kap) / Complex::new(k, -kap))
}

/// Even-parity continuum state, k > 0:
/// (1/sqrt(pi)) [k cos(kx) - kappa sin(kx) tanh(kappa x)] / (kappa + ik).
pub fn parity_even<R: Real>(k: R, x: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    require_positive(k)?;
    let kap = p.kappa();
    let t = (kap * x).tanh();
    let num = k * (k * x).cos() - kap * (k * x).sin() * t;
    Ok(Complex::new(num / R::PI().sqrt(), R::zero()) / Complex::new(kap, k))
}

/// Odd-parity continuum state, k > 0:
/// (i/sqrt(pi)) [k sin(kx) + kappa cos(kx) tanh(kappa x)] / (kappa + ik).
pub fn parity_odd<R: Real>(k: R, x: R, p: &PotentialParams<R>) -> Result<Complex<R>> {
    require_positive(k)?;
    let kap = p.kappa();
    let t = (kap * x).tanh();
    let num = k * (k * x).sin() + kap * (k * x).cos() * t;
    Ok(Complex::new(R::zero(), num / R::PI().sqrt()) / Complex::new(kap, k))
}

/// A function the ladder operators can act on: `eval` yields the value and
/// the first derivative at x.
pub trait DifferentiableFn<R: Real> {
    fn eval(&self, x: R) -> (Complex<R>, Complex<R>);

    fn value(&self, x: R) -> Complex<R> {
        self.eval(x).0
    }

    fn derivative(&self, x: R) -> Complex<R> {
        self.eval(x).1
    }
}

impl<R: Real, F> DifferentiableFn<R> for F
where
    F: Fn(R) -> (Complex<R>, Complex<R>),
{
    fn eval(&self, x: R) -> (Complex<R>, Complex<R>) {
        self(x)
    }
}

/// Central-difference adapter for functions whose derivative is not known
/// analytically. Step: eps^(1/3) * max(1, |x|), which balances truncation
/// against cancellation.
pub struct CentralDifference<F> {
    f: F,
}

impl<F> CentralDifference<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

impl<R: Real, F: Fn(R) -> Complex<R>> DifferentiableFn<R> for CentralDifference<F> {
    fn eval(&self, x: R) -> (Complex<R>, Complex<R>) {
        let h = R::cd_step(x);
        let d = ((self.f)(x + h) - (self.f)(x - h)) / (R::of(2.0) * h);
        ((self.f)(x), d)
    }
}

/// The bound state packaged with its analytic derivative,
/// psi0'(x) = -kappa tanh(kappa x) psi0(x).
pub struct BoundState<R: Real> {
    p: PotentialParams<R>,
}

impl<R: Real> BoundState<R> {
    pub fn new(p: PotentialParams<R>) -> Self {
        Self { p }
    }
}

impl<R: Real> DifferentiableFn<R> for BoundState<R> {
    fn eval(&self, x: R) -> (Complex<R>, Complex<R>) {
        let kap = self.p.kappa();
        let v = psi0(x, &self.p);
        (
            Complex::new(v, R::zero()),
            Complex::new(-kap * (kap * x).tanh() * v, R::zero()),
        )
    }
}

/// Lowering operator a = -i d/dx - i kappa tanh(kappa x), pointwise:
/// (a f)(x) = -i f'(x) - i kappa tanh(kappa x) f(x).
/// Annihilates [`psi0`]; a^dagger a = H + kappa^2.
pub fn apply_a<R: Real>(f: &impl DifferentiableFn<R>, x: R, p: &PotentialParams<R>) -> Complex<R> {
    let (v, d) = f.eval(x);
    let kap = p.kappa();
    let minus_i = Complex::new(R::zero(), -R::one());
    minus_i * (d + v * (kap * (kap * x).tanh()))
}

/// Raising operator a^dagger = -i d/dx + i kappa tanh(kappa x), pointwise:
/// (a^dagger f)(x) = -i f'(x) + i kappa tanh(kappa x) f(x).
/// Maps plane waves onto [`phi_unnormalized`]; a a^dagger = H0 + kappa^2.
pub fn apply_a_dagger<R: Real>(
    f: &impl DifferentiableFn<R>,
    x: R,
    p: &PotentialParams<R>,
) -> Complex<R> {
    let (v, d) = f.eval(x);
    let kap = p.kappa();
    let i = Complex::new(R::zero(), R::one());
    i * (v * (kap * (kap * x).tanh()) - d)
}
