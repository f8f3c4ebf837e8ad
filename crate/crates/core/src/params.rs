//! Well parameters.
//!
//! Units are natural throughout the crate: hbar = 1 and 2m = 1, so the
//! Hamiltonian reads H = -d^2/dx^2 - 2 kappa^2 sech^2(kappa x) and energies
//! are squared wavenumbers.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameters of the sech^2 well plus the numeric thresholds that depend
/// on them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams<R: Real> {
    kappa: R,
    tol: R,
    k_eps: R,
}

impl<R: Real> PotentialParams<R> {
    /// `kappa` is the inverse width of the well, `tol` the default check
    /// tolerance, `k_eps` the relative threshold below which removable
    /// small-k singularities switch to their series branch.
    pub fn new(kappa: R, tol: R, k_eps: R) -> Result<Self> {
        if !(kappa > R::zero()) || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!(
                "kappa must be positive and finite, got {kappa}"
            )));
        }
        if !(tol > R::zero()) || !tol.is_finite() {
            return Err(Error::InvalidParams(format!(
                "tol must be positive and finite, got {tol}"
            )));
        }
        if !(k_eps > R::zero()) || !(k_eps < R::of(1e-2)) {
            return Err(Error::InvalidParams(format!(
                "k_eps must lie in (0, 1e-2), got {k_eps}"
            )));
        }
        Ok(Self { kappa, tol, k_eps })
    }

    /// Well of the given inverse width with default thresholds.
    pub fn with_kappa(kappa: R) -> Result<Self> {
        Self::new(kappa, R::of(1e-6), R::of(1e-4))
    }

    pub fn kappa(&self) -> R {
        self.kappa
    }

    pub fn tol(&self) -> R {
        self.tol
    }

    pub fn k_eps(&self) -> R {
        self.k_eps
    }
}

impl<R: Real> Default for PotentialParams<R> {
    fn default() -> Self {
        Self {
            kappa: R::one(),
            tol: R::of(1e-6),
            k_eps: R::of(1e-4),
        }
    }
}
