//! Run configuration shared by every subcommand, plus the seeded sampler
//! used to draw probe points. A run is reproducible from its config alone:
//! identical settings and seed produce byte-identical output.

use std::path::PathBuf;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflectionless::{Grid64, Params64, PotentialParams, Quad64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything a run depends on. Captured once from flags/environment and
/// echoed into JSON output so results stay traceable to their settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kappa: f64,
    pub tol: f64,
    pub grid_l: f64,
    pub grid_n: usize,
    pub k_max: f64,
    pub k_points: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    pub fn params(&self) -> Result<Params64, String> {
        PotentialParams::new(self.kappa, self.tol, 1e-4).map_err(|e| e.to_string())
    }

    pub fn grid(&self) -> Result<Grid64, String> {
        Grid64::new(self.grid_l, self.grid_n).map_err(|e| e.to_string())
    }

    /// Quadrature runs well below the check tolerances so that integration
    /// error never masquerades as a physics discrepancy.
    pub fn quad(&self) -> Quad64 {
        let tight = (self.tol * 1e-3).clamp(1e-13, 1e-10);
        Quad64 {
            abs_tol: tight,
            rel_tol: tight,
            ..Quad64::default()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(format!("tol must be positive and finite, got {}", self.tol));
        }
        if !(self.k_max > 0.0) || !self.k_max.is_finite() {
            return Err(format!("k-max must be positive and finite, got {}", self.k_max));
        }
        if self.k_points < 32 {
            return Err(format!("k-points must be at least 32, got {}", self.k_points));
        }
        self.params()?;
        self.grid()?;
        Ok(())
    }
}

/// Deterministic probe-point source. All randomness in the CLI flows
/// through this; the stream depends only on the seed.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform draw in [lo, hi) with full 53-bit resolution.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }

    /// Log-uniform draw in [lo, hi), for wavenumber sweeps spanning decades.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo * (hi / lo).powf(self.uniform(0.0, 1.0))
    }
}
