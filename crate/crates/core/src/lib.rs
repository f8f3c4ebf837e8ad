//! Spectral toolkit for the single-well reflectionless potential
//! `V(x) = -2 kappa^2 sech^2(kappa x)` in units where hbar = 1 and 2m = 1.
//!
//! The crate carries the closed-form spectrum (one bound state at
//! `-kappa^2` plus a reflectionless continuum), ladder operators that
//! factorize the Hamiltonian, Fourier-transform identities, completeness
//! and orthonormality checks for the continuum family, bound-state
//! recovery from the continuum completeness defect, parity-resolved
//! spectral decompositions, and momentum matrix elements between parity
//! eigenstates. A finite-difference boxed Hamiltonian and an ODE-driven
//! scattering integrator provide independent numerical routes against
//! which every closed form is tested.
//!
//! Everything is generic over the floating-point scalar through the
//! [`scalar::Real`] trait; `f64` aliases for the common types sit at the
//! crate root.

// Validation guards use `!(x > lo)` so that NaN is rejected; `x <= lo`
// would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod completeness;
pub mod error;
pub mod numeric;
pub mod params;
pub mod quad;
pub mod scalar;
pub mod states;
pub mod transforms;

pub use completeness::{
    bound_coefficient, continuum_coefficient, continuum_defect_diagonal, count_bound_states,
    defect_offdiagonal, expand, expansion_grid, extract_bound_state, extraction_profile,
    momentum_matrix_element_regular, momentum_on_even_decomposition, norm_squared,
    packet_state, packet_state_derivative, parity_defect_diagonal, parseval_sum, reconstruct,
    smeared_orthonormality, smeared_orthonormality_unnormalized, DefectSample,
    ExpansionCoefficients, PacketProfile, SpatialProfile,
};
pub use error::{Error, Result};
pub use numeric::scattering::{
    reflection_for_potential, required_steps, transfer_matrix_reflection, Scattering,
};
pub use numeric::tridiag::{
    eig_tridiagonal, inverse_iteration, lowest_eigenvalue_bisect, sturm_count, Eigen,
    TridiagonalMatrix,
};
pub use numeric::{bound_energies, build_hamiltonian, ground_state, GridSpec, GroundState};
pub use params::PotentialParams;
pub use quad::{integrate_interval, integrate_real_line, trapezoid_weights, QuadratureSpec};
pub use scalar::{sech, Real};
pub use states::{
    apply_a, apply_a_dagger, bound_energy, parity_even, parity_odd, phi_unnormalized,
    potential_v, psi0, psi_k, psi_k_dx, transmission_amplitude, BoundState,
    CentralDifference, DifferentiableFn,
};
pub use transforms::{ft_sech2, ft_tanh, lorentzian_ft, lorentzian_ft_derivative, q_over_sinh};

pub use num_complex::{Complex, Complex32, Complex64};

/// Potential parameters over `f64`.
pub type Params64 = PotentialParams<f64>;
/// Quadrature controls over `f64`.
pub type Quad64 = QuadratureSpec<f64>;
/// Finite-difference grid over `f64`.
pub type Grid64 = GridSpec<f64>;
