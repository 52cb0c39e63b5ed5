//! Circle products, Clifford maps, the Wick isomorphism, and star
//! exponentials over Grassmann algebras.

mod exponential;
mod wick;

pub use exponential::{left_multiplication_matrix, star_exp, star_exp_complex, star_exp_matrix, star_exp_series, StarExpPath};
pub use wick::{
    double_contraction, grassmann_exp, scalar_equivalence_check, solve_wick_form, t_transformation_counterexample, wick_conjugate,
    ScalarEquivalence, WickForm,
};

use crate::error::{Error, Result};
use crate::grassmann::{circle_product, pauli_form, BilinearForm, Multivector};
use crate::scalar::{Coeff, Exact};

/// A star product on a Grassmann algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum StarProductSpec<S> {
    /// `∘_B` for an arbitrary form.
    Circle(BilinearForm<S>),
    /// `⋆_P`, the circle product with `B = (ħ/2)δ`.
    Pauli { dim: usize, hbar: S },
}

impl StarProductSpec<Exact> {
    pub fn pauli_exact(dim: usize) -> Self {
        StarProductSpec::Pauli { dim, hbar: Exact::hbar() }
    }
}

impl<S: Coeff> StarProductSpec<S> {
    pub fn dim(&self) -> usize {
        match self {
            StarProductSpec::Circle(b) => b.dim(),
            StarProductSpec::Pauli { dim, .. } => *dim,
        }
    }

    pub fn form(&self) -> BilinearForm<S> {
        match self {
            StarProductSpec::Circle(b) => b.clone(),
            StarProductSpec::Pauli { dim, hbar } => pauli_form(*dim, hbar.clone()),
        }
    }

    pub fn product(&self, u: &Multivector<S>, v: &Multivector<S>) -> Result<Multivector<S>> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: u.dim(), right: self.dim() });
        }
        circle_product(u, v, &self.form())
    }

    /// Left-to-right product of a sequence; the empty product is 1.
    pub fn product_all<'a>(&self, factors: impl IntoIterator<Item = &'a Multivector<S>>) -> Result<Multivector<S>> {
        let form = self.form();
        factors
            .into_iter()
            .try_fold(Multivector::one(self.dim()), |acc, f| circle_product(&acc, f, &form))
    }

    /// `u ⋆ u ⋆ ⋯` (`n` factors).
    pub fn power(&self, u: &Multivector<S>, n: u32) -> Result<Multivector<S>> {
        let form = self.form();
        (0..n).try_fold(Multivector::one(u.dim()), |acc, _| circle_product(&acc, u, &form))
    }

    /// `[u, v] = u⋆v − v⋆u`.
    pub fn commutator(&self, u: &Multivector<S>, v: &Multivector<S>) -> Result<Multivector<S>> {
        Ok(self.product(u, v)? - self.product(v, u)?)
    }

    pub fn anticommutator(&self, u: &Multivector<S>, v: &Multivector<S>) -> Result<Multivector<S>> {
        Ok(self.product(u, v)? + self.product(v, u)?)
    }

    pub fn map<T: Coeff>(&self, f: impl Fn(&S) -> T) -> StarProductSpec<T> {
        match self {
            StarProductSpec::Circle(b) => StarProductSpec::Circle(b.map(f)),
            StarProductSpec::Pauli { dim, hbar } => StarProductSpec::Pauli { dim: *dim, hbar: f(hbar) },
        }
    }
}

/// Clifford map `γ_v u = v ∘_B u`.
pub fn clifford_map<S: Coeff>(v: &Multivector<S>, u: &Multivector<S>, b: &BilinearForm<S>) -> Result<Multivector<S>> {
    circle_product(v, u, b)
}

/// `ε(u)`, the coefficient of the unit monomial.
pub fn scalar_part<S: Coeff>(u: &Multivector<S>) -> S {
    u.scalar_part()
}
