//! Completeness of the spectral family and everything downstream of it:
//! smeared orthonormality checks, expansion and reconstruction on a hybrid
//! wavenumber grid, the continuum completeness defect with bound-state
//! extraction, the parity-resolved route to the same defect, and the
//! regular part of the momentum matrix elements between parity eigenstates.

use std::cell::Cell;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::PotentialParams;
use crate::quad::{integrate_interval, trapezoid_weights, QuadratureSpec};
use crate::scalar::{sech, Real};
use crate::states::{parity_odd, psi0, psi_k, psi_k_dx};
use crate::transforms::{lorentzian_ft, lorentzian_ft_derivative, q_over_sinh};

/// A smooth wavenumber weight with compact numerical support, used to
/// build square-integrable superpositions of continuum states.
pub struct PacketProfile<R: Real> {
    weight_fn: Box<dyn Fn(R) -> Complex<R>>,
    k_cut: R,
}

impl<R: Real> PacketProfile<R> {
    /// Wraps an arbitrary weight; `k_cut` bounds its numerical support.
    pub fn new(weight: impl Fn(R) -> Complex<R> + 'static, k_cut: R) -> Result<Self> {
        if !(k_cut > R::zero()) || !k_cut.is_finite() {
            return Err(Error::InvalidParams(format!("k_cut must be positive, got {k_cut}")));
        }
        Ok(Self { weight_fn: Box::new(weight), k_cut })
    }

    /// Gaussian bump `exp(-(k - center)^2 / (2 width^2))`. The support is
    /// cut ten widths out, where the envelope is below 2e-22.
    pub fn gaussian_bump(center: R, width: R) -> Result<Self> {
        if !(width > R::zero()) || !width.is_finite() || !center.is_finite() {
            return Err(Error::InvalidParams(format!(
                "gaussian bump needs finite center and positive width, got ({center}, {width})"
            )));
        }
        let cut = center.abs() + width * R::of(10.0);
        Self::new(
            move |k: R| {
                let z = (k - center) / width;
                Complex::new((-z * z / R::of(2.0)).exp(), R::zero())
            },
            cut,
        )
    }

    pub fn weight(&self, k: R) -> Complex<R> {
        (self.weight_fn)(k)
    }

    pub fn k_cut(&self) -> R {
        self.k_cut
    }
}

/// A position-space test function with compact numerical support.
pub struct SpatialProfile<R: Real> {
    f: Box<dyn Fn(R) -> Complex<R>>,
    support_cutoff: R,
}

impl<R: Real> SpatialProfile<R> {
    pub fn new(f: impl Fn(R) -> Complex<R> + 'static, support_cutoff: R) -> Result<Self> {
        if !(support_cutoff > R::zero()) || !support_cutoff.is_finite() {
            return Err(Error::InvalidParams(format!(
                "support_cutoff must be positive, got {support_cutoff}"
            )));
        }
        Ok(Self { f: Box::new(f), support_cutoff })
    }

    /// Normalized Gaussian packet
    /// `(pi sigma^2)^{-1/4} exp(-(x - x0)^2 / (2 sigma^2)) exp(i k0 x)`,
    /// which has unit L2 norm. Support is cut ten sigmas from the center.
    pub fn gaussian(sigma: R, x0: R, k0: R) -> Result<Self> {
        if !(sigma > R::zero()) || !sigma.is_finite() || !x0.is_finite() || !k0.is_finite() {
            return Err(Error::InvalidParams(format!(
                "gaussian needs positive sigma and finite center/boost, got ({sigma}, {x0}, {k0})"
            )));
        }
        let norm = (R::PI() * sigma * sigma).powf(R::of(-0.25));
        let cut = x0.abs() + sigma * R::of(10.0);
        Self::new(
            move |x: R| {
                let z = (x - x0) / sigma;
                Complex::from_polar(norm * (-z * z / R::of(2.0)).exp(), k0 * x)
            },
            cut,
        )
    }

    pub fn eval(&self, x: R) -> Complex<R> {
        (self.f)(x)
    }

    pub fn support_cutoff(&self) -> R {
        self.support_cutoff
    }
}

/// The superposition `integral w(k) psi_k(x) dk` over the profile's band.
/// The integral is split at k = 0 so the excluded wavenumber is never
/// touched (the panel rule only samples interior points).
pub fn packet_state<R: Real>(
    profile: &PacketProfile<R>,
    x: R,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<Complex<R>> {
    band_integral(profile, spec, |k| psi_k(k, x, p))
}

/// Spatial derivative of [`packet_state`], from the closed-form state
/// derivative under the same weight.
pub fn packet_state_derivative<R: Real>(
    profile: &PacketProfile<R>,
    x: R,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<Complex<R>> {
    band_integral(profile, spec, |k| psi_k_dx(k, x, p))
}

fn band_integral<R: Real>(
    profile: &PacketProfile<R>,
    spec: &QuadratureSpec<R>,
    state: impl Fn(R) -> Result<Complex<R>>,
) -> Result<Complex<R>> {
    let cut = profile.k_cut();
    let fail: Cell<Option<Error>> = Cell::new(None);
    let mut integrand = |k: R| match state(k) {
        Ok(v) => profile.weight(k) * v,
        Err(e) => {
            fail.set(Some(e));
            Complex::zero()
        }
    };
    let (lo, _) = integrate_interval(&mut integrand, -cut, R::zero(), spec)?;
    let (hi, _) = integrate_interval(&mut integrand, R::zero(), cut, spec)?;
    if let Some(e) = fail.take() {
        return Err(e);
    }
    Ok(lo + hi)
}

/// Overlap of two packet states next to the overlap of their weights.
///
/// Orthonormality of the continuum family with flat dk measure means
/// `<Phi_1, Phi_2> = integral conj(w1(k)) w2(k) dk`; the first slot is
/// antilinear. Returns (position-side overlap, weight-side overlap); the
/// position integral is truncated at the spec's decay cutoff, which the
/// caller picks from the packets' spatial spread.
pub fn smeared_orthonormality<R: Real>(
    first: &PacketProfile<R>,
    second: &PacketProfile<R>,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<(Complex<R>, Complex<R>)> {
    let fail: Cell<Option<Error>> = Cell::new(None);
    let mut outer = |x: R| {
        let a = packet_state(first, x, p, spec);
        let b = packet_state(second, x, p, spec);
        match (a, b) {
            (Ok(a), Ok(b)) => a.conj() * b,
            (Err(e), _) | (_, Err(e)) => {
                fail.set(Some(e));
                Complex::zero()
            }
        }
    };
    let (position_side, _) =
        integrate_interval(&mut outer, -spec.decay_cutoff, spec.decay_cutoff, spec)?;
    if let Some(e) = fail.take() {
        return Err(e);
    }
    let cut = first.k_cut().min(second.k_cut());
    let mut wprod = |k: R| first.weight(k).conj() * second.weight(k);
    let (weight_side, _) = integrate_interval(&mut wprod, -cut, cut, spec)?;
    Ok((position_side, weight_side))
}

/// Same check for the transmission-unnormalized states, whose overlap
/// carries the extra `k^2 + kappa^2` density:
/// `<Phi_1, Phi_2> = integral conj(w1) w2 (k^2 + kappa^2) dk`.
pub fn smeared_orthonormality_unnormalized<R: Real>(
    first: &PacketProfile<R>,
    second: &PacketProfile<R>,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<(Complex<R>, Complex<R>)> {
    use crate::states::phi_unnormalized;
    let fail: Cell<Option<Error>> = Cell::new(None);
    let packet = |x: R, profile: &PacketProfile<R>| -> Result<Complex<R>> {
        band_integral(profile, spec, |k| phi_unnormalized(k, x, p))
    };
    let mut outer = |x: R| {
        match (packet(x, first), packet(x, second)) {
            (Ok(a), Ok(b)) => a.conj() * b,
            (Err(e), _) | (_, Err(e)) => {
                fail.set(Some(e));
                Complex::zero()
            }
        }
    };
    let (position_side, _) =
        integrate_interval(&mut outer, -spec.decay_cutoff, spec.decay_cutoff, spec)?;
    if let Some(e) = fail.take() {
        return Err(e);
    }
    let kap = p.kappa();
    let cut = first.k_cut().min(second.k_cut());
    let mut wprod = |k: R| {
        first.weight(k).conj() * second.weight(k) * (k * k + kap * kap)
    };
    let (weight_side, _) = integrate_interval(&mut wprod, -cut, cut, spec)?;
    Ok((position_side, weight_side))
}

/// Symmetric wavenumber grid for expansion sums.
///
/// Each side runs a uniform (linear) stretch from `1e-3 kappa` out to
/// `k_max / 2`, then a geometric stretch covering the tail up to `k_max`.
/// The uniform run matters: trapezoid error on a uniform segment telescopes
/// to boundary derivative terms, and the integrand of a smooth expansion is
/// regular through k = 0, so the only interior spacing breaks sit at the
/// hole edges +-1e-3 kappa where their contributions nearly cancel. Any
/// spacing change at a scale where coefficients are still live would leave
/// a non-cancelling O(h^2) boundary term, which is why the refined segment
/// goes in the decayed tail rather than near the origin.
///
/// The interval around zero holds no nodes, but trapezoid weights on the
/// returned list integrate straight across it; bridging that panel costs
/// O(k_min^3) where dropping it would cost O(k_min) times the coefficient
/// at the origin.
///
/// `m` is the target node count; the actual grid has `2 * ceil(m / 2)`
/// nodes. Callers pick `k_max` well beyond the expanded function's
/// bandwidth; coefficients must have decayed by `k_max / 2` where the
/// spacing switches over.
pub fn expansion_grid<R: Real>(k_max: R, m: usize, p: &PotentialParams<R>) -> Result<Vec<R>> {
    let kap = p.kappa();
    if !k_max.is_finite() || !(k_max > kap * R::of(2.0)) {
        return Err(Error::InvalidParams(format!(
            "k_max must exceed 2 kappa = {}, got {k_max}",
            kap * R::of(2.0)
        )));
    }
    if m < 32 {
        return Err(Error::InvalidParams(format!("grid needs at least 32 nodes, got {m}")));
    }
    let per_side = m.div_ceil(2);
    let n_log = (per_side / 16).clamp(8, 64).min(per_side / 4);
    let n_lin = per_side - n_log;
    let k_min = kap * R::of(1e-3);
    let k_lin = k_max / R::of(2.0);

    let mut plus: Vec<R> = Vec::with_capacity(per_side);
    let step = (k_lin - k_min) / R::of((n_lin - 1) as f64);
    for i in 0..n_lin {
        plus.push(k_min + step * R::of(i as f64));
    }
    let step_log = (k_max / k_lin).ln() / R::of(n_log as f64);
    for j in 1..=n_log {
        plus.push(k_lin * (step_log * R::of(j as f64)).exp());
    }

    let mut grid: Vec<R> = plus.iter().rev().map(|&k| -k).collect();
    grid.extend(plus.iter().copied());
    Ok(grid)
}

/// Spectral coefficients of a test function: the bound-state coefficient
/// and continuum coefficients on a weighted wavenumber grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients<R: Real> {
    pub c0: Complex<R>,
    pub k_grid: Vec<R>,
    pub weights: Vec<R>,
    pub c: Vec<Complex<R>>,
}

/// Bound-state coefficient `<psi_0, f> = integral psi_0(x) f(x) dx`
/// (the ground state is real).
pub fn bound_coefficient<R: Real>(
    f: &SpatialProfile<R>,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<Complex<R>> {
    let w = f.support_cutoff();
    let mut g = |x: R| f.eval(x) * psi0(x, p);
    integrate_interval(&mut g, -w, w, spec).map(|(v, _)| v)
}

/// Continuum coefficient `<psi_k, f> = integral conj(psi_k(x)) f(x) dx`.
pub fn continuum_coefficient<R: Real>(
    f: &SpatialProfile<R>,
    k: R,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<Complex<R>> {
    if k == R::zero() {
        return Err(Error::ExcludedWavenumber);
    }
    let w = f.support_cutoff();
    let mut g = |x: R| match psi_k(k, x, p) {
        Ok(v) => v.conj() * f.eval(x),
        Err(_) => Complex::zero(),
    };
    integrate_interval(&mut g, -w, w, spec).map(|(v, _)| v)
}

/// Expands f over the bound state plus the continuum on a hybrid grid.
pub fn expand<R: Real>(
    f: &SpatialProfile<R>,
    k_max: R,
    m: usize,
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<ExpansionCoefficients<R>> {
    let k_grid = expansion_grid(k_max, m, p)?;
    let weights = trapezoid_weights(&k_grid);
    let mut c = Vec::with_capacity(k_grid.len());
    for &k in &k_grid {
        c.push(continuum_coefficient(f, k, p, spec)?);
    }
    let c0 = bound_coefficient(f, p, spec)?;
    Ok(ExpansionCoefficients { c0, k_grid, weights, c })
}

/// Resums the expansion at one point:
/// `c0 psi_0(x) + sum_i w_i c_i psi_{k_i}(x)`.
pub fn reconstruct<R: Real>(
    coeffs: &ExpansionCoefficients<R>,
    x: R,
    p: &PotentialParams<R>,
) -> Result<Complex<R>> {
    let mut acc = coeffs.c0 * psi0(x, p);
    for ((&k, &w), &ck) in coeffs.k_grid.iter().zip(&coeffs.weights).zip(&coeffs.c) {
        acc = acc + psi_k(k, x, p)? * ck * w;
    }
    Ok(acc)
}

/// Weighted coefficient power `|c0|^2 + sum_i w_i |c_i|^2`, which matches
/// the squared norm of the expanded function when the family is complete.
pub fn parseval_sum<R: Real>(coeffs: &ExpansionCoefficients<R>) -> R {
    let mut acc = coeffs.c0.norm_sqr();
    for (&w, &ck) in coeffs.weights.iter().zip(&coeffs.c) {
        acc = acc + ck.norm_sqr() * w;
    }
    acc
}

/// Squared L2 norm of a test function over its support window.
pub fn norm_squared<R: Real>(f: &SpatialProfile<R>, spec: &QuadratureSpec<R>) -> Result<R> {
    let w = f.support_cutoff();
    let mut g = |x: R| Complex::new(f.eval(x).norm_sqr(), R::zero());
    integrate_interval(&mut g, -w, w, spec).map(|(v, _)| v.re)
}

/// Diagonal of the continuum completeness defect,
/// `delta(x - y) - integral conj(psi_k(x)) psi_k(y) dk` at y = x.
///
/// Assembled from the Lorentzian transform the k-integral reduces to:
/// `kappa^2 (1 - tanh^2(kappa x)) * lorentzian_ft(0)`, which simplifies to
/// `(kappa / 2) sech^2(kappa x) = psi_0(x)^2`. The assembled form is kept
/// so the identity stays a computation rather than an assumption.
pub fn continuum_defect_diagonal<R: Real>(x: R, p: &PotentialParams<R>) -> R {
    let kap = p.kappa();
    let t = (kap * x).tanh();
    kap * kap * (R::one() - t * t) * lorentzian_ft(R::zero(), p)
}

/// Off-diagonal continuum completeness defect at separation y - x.
///
/// The k-integral splits into an even Lorentzian part and an odd
/// first-moment part; both have closed transforms. The assembled value is
/// checked on the spot against its simplification
/// `psi_0(x) psi_0(y)`, and disagreement beyond the configured tolerance
/// reports the internal inconsistency instead of returning a number.
/// Coincident points are a domain error (the odd part sits on its jump);
/// use [`continuum_defect_diagonal`] for the diagonal.
pub fn defect_offdiagonal<R: Real>(x: R, y: R, p: &PotentialParams<R>) -> Result<R> {
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    let kap = p.kappa();
    let d = y - x;
    let tx = (kap * x).tanh();
    let ty = (kap * y).tanh();
    let even_part = kap * kap * (R::one() - tx * ty) * lorentzian_ft(d, p);
    let odd_part = kap * (ty - tx) * lorentzian_ft_derivative(d, p)?;
    let assembled = even_part + odd_part;

    let simplified = kap / R::of(2.0) * sech(kap * x) * sech(kap * y);
    let scale = R::one().max(simplified.abs());
    if (assembled - simplified).abs() > p.tol() * scale {
        return Err(Error::InternalInconsistency {
            x: x.to_f64().unwrap_or(f64::NAN),
            detail: format!(
                "defect disagrees with its rank-1 simplification: {assembled} vs {simplified}"
            ),
        });
    }
    Ok(assembled)
}

/// Diagonal completeness defect computed through the parity-resolved
/// route: the even and odd continuum densities over k > 0 sum to
/// `(k^2 + kappa^2 tanh^2) / (pi (k^2 + kappa^2))`, whose deficit against
/// the free density integrates to
/// `(1/pi) kappa^2 (1 - tanh^2(kappa x)) * (pi / (2 kappa))`; the odd/even
/// cross terms cancel exactly. Algebraically equal to
/// [`continuum_defect_diagonal`], through different floating steps.
pub fn parity_defect_diagonal<R: Real>(x: R, p: &PotentialParams<R>) -> R {
    let kap = p.kappa();
    let t = (kap * x).tanh();
    let arc = R::PI() / (R::of(2.0) * kap);
    kap * kap * (R::one() - t * t) * arc / R::PI()
}

/// Counts bound states as the trace of the completeness defect. The trace
/// must land near a nonnegative integer; anything else reports an
/// internal inconsistency.
pub fn count_bound_states<R: Real>(
    p: &PotentialParams<R>,
    spec: &QuadratureSpec<R>,
) -> Result<usize> {
    let window = spec.decay_cutoff / p.kappa();
    let mut g = |x: R| Complex::new(continuum_defect_diagonal(x, p), R::zero());
    let (tr, _) = integrate_interval(&mut g, -window, window, spec)?;
    let trace = tr.re;
    let nearest = trace.round();
    if (trace - nearest).abs() > R::of(0.01) || nearest < R::zero() {
        return Err(Error::InternalInconsistency {
            x: trace.to_f64().unwrap_or(f64::NAN),
            detail: "defect trace is not near a nonnegative integer".into(),
        });
    }
    Ok(nearest.to_f64().unwrap_or(0.0) as usize)
}

/// Recovers the bound-state wavefunction from the completeness defect
/// diagonal as its positive square root. A negative diagonal would mean
/// the defect lost positivity and is reported instead of masked.
pub fn extract_bound_state<R: Real>(x: R, p: &PotentialParams<R>) -> Result<R> {
    let d = continuum_defect_diagonal(x, p);
    if d < R::zero() {
        return Err(Error::InternalInconsistency {
            x: x.to_f64().unwrap_or(f64::NAN),
            detail: format!("defect diagonal is negative: {d}"),
        });
    }
    Ok(d.sqrt())
}

/// One extraction sample: position and recovered wavefunction value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectSample<R: Real> {
    pub x: R,
    pub value: R,
}

/// Extracted bound state on a uniform grid over [-half_width, half_width].
pub fn extraction_profile<R: Real>(
    half_width: R,
    n: usize,
    p: &PotentialParams<R>,
) -> Result<Vec<DefectSample<R>>> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("profile needs at least 2 samples, got {n}")));
    }
    if !(half_width > R::zero()) || !half_width.is_finite() {
        return Err(Error::InvalidParams(format!(
            "half_width must be positive, got {half_width}"
        )));
    }
    let step = R::of(2.0) * half_width / R::of((n - 1) as f64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = -half_width + step * R::of(i as f64);
        out.push(DefectSample { x, value: extract_bound_state(x, p)? });
    }
    Ok(out)
}

/// Regular part of the momentum matrix element between an odd continuum
/// state (bra, wavenumber `k_odd`) and the anomaly left over when the
/// momentum operator acts on an even continuum state (ket, wavenumber
/// `k_even`); see [`momentum_on_even_decomposition`].
///
/// Closed form, with `D = k_even - k_odd`, `S = k_even + k_odd`, and
/// `q(Q) = Q / sinh(pi Q / (2 kappa))`:
///
/// ```text
/// [(k_odd / 2)(q(D) - q(S)) + (1/4)(D q(D) + S q(S))]
///   / ((kappa + i k_even)(kappa - i k_odd))
/// ```
///
/// The element decays like `exp(-pi |D| / (2 kappa))` in the wavenumber
/// mismatch, and its equal-wavenumber value is the real number
/// `(k kappa / pi) / (kappa^2 + k^2)`.
pub fn momentum_matrix_element_regular<R: Real>(
    k_odd: R,
    k_even: R,
    p: &PotentialParams<R>,
) -> Result<Complex<R>> {
    if !(k_odd > R::zero()) {
        return Err(Error::NonPositiveWavenumber { k: k_odd.to_f64().unwrap_or(f64::NAN) });
    }
    if !(k_even > R::zero()) {
        return Err(Error::NonPositiveWavenumber { k: k_even.to_f64().unwrap_or(f64::NAN) });
    }
    let kap = p.kappa();
    let delta = k_even - k_odd;
    let sigma = k_even + k_odd;
    let qd = q_over_sinh(delta, p);
    let qs = q_over_sinh(sigma, p);
    let numerator =
        k_odd / R::of(2.0) * (qd - qs) + (delta * qd + sigma * qs) / R::of(4.0);
    let denominator = Complex::new(kap, k_even) * Complex::new(kap, -k_odd);
    Ok(Complex::new(numerator, R::zero()) / denominator)
}

/// Splits the momentum operator's action on an even continuum state into
/// the skew piece proportional to the odd partner and the rest:
/// `-i d/dx psi^e_k = k psi^o_k + extra`, with
/// `extra(k, x) = (i / sqrt(pi)) (kappa^2 / (kappa + i k)) sin(kx) sech^2(kappa x)`.
/// Returns `(k psi^o_k(x), extra(k, x))`.
pub fn momentum_on_even_decomposition<R: Real>(
    k: R,
    x: R,
    p: &PotentialParams<R>,
) -> Result<(Complex<R>, Complex<R>)> {
    let skew = parity_odd(k, x, p)? * k;
    let kap = p.kappa();
    let s = sech(kap * x);
    let amp = kap * kap / R::PI().sqrt() * (k * x).sin() * s * s;
    let extra = Complex::new(R::zero(), amp) / Complex::new(kap, k);
    Ok((skew, extra))
}
