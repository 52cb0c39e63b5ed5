//! Bosonic phase-space functions (polynomial × Gaussian × Grassmann) and
//! the Moyal family of star products.

mod function;
mod gaussian;
mod oscillator;
mod polynomial;
mod product;

pub use function::{Block, PhaseFunction};
pub use gaussian::{gaussian_integral, gaussian_moment, phase_space_integral, LinearSubstitution};
pub use oscillator::{
    holomorphic_hamiltonian, holomorphic_measure, holomorphic_to_canonical, holomorphic_wigner, landau_problem,
    laguerre_wigner, oscillator_energy, oscillator_hamiltonian, oscillator_hamiltonian_polynomial, oscillator_wigner,
    LandauProblem, LANDAU_VARS,
};
pub use polynomial::{laguerre, Exponents, Polynomial};
pub use product::{moyal_product, MoyalKind, MoyalSpec};

/// `f ⋆ g` in holomorphic coordinates `(a, ā)`.
pub fn holomorphic_product(f: &PhaseFunction, g: &PhaseFunction) -> crate::Result<PhaseFunction> {
    moyal_product(f, g, &MoyalSpec::holomorphic())
}
