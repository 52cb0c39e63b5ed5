use nalgebra::DMatrix;
use num_complex::Complex64;

use super::StarProductSpec;
use crate::error::{Error, Result};
use crate::grassmann::{circle_product, BilinearForm, Mask, Multivector};
use crate::scalar::{Bindings, Coeff, Exact};

/// Which evaluation path `star_exp` took.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarExpPath {
    /// `X⋆X` is a scalar `s`: `cos(√s t/ħ) − i(X/√s) sin(√s t/ħ)`.
    ClosedForm,
    /// Matrix exponential of the left-multiplication operator.
    Matrix,
}

/// Matrix of `u ↦ X ∘_B u` on the monomial basis, indexed by mask.
pub fn left_multiplication_matrix(x: &Multivector<Complex64>, b: &BilinearForm<Complex64>) -> Result<DMatrix<Complex64>> {
    let d = x.dim();
    let n = 1usize << d;
    let mut m = DMatrix::zeros(n, n);
    for col in 0..n {
        let e = Multivector::monomial(d, col as Mask, Complex64::new(1.0, 0.0));
        for (row, c) in circle_product(x, &e, b)?.terms() {
            m[(row as usize, col)] = *c;
        }
    }
    Ok(m)
}

/// `Exp(Xt) = exp(−(it/ħ) L_X)·1`, Padé scaling-and-squaring on the
/// `2^d × 2^d` left-multiplication matrix.
pub fn star_exp_matrix(
    x: &Multivector<Complex64>,
    b: &BilinearForm<Complex64>,
    hbar: f64,
    t: f64,
) -> Result<Multivector<Complex64>> {
    if x.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: b.dim() });
    }
    let l = left_multiplication_matrix(x, b)?;
    let e = (l * Complex64::new(0.0, -t / hbar)).exp();
    Ok(Multivector::from_terms(x.dim(), e.column(0).iter().enumerate().map(|(k, c)| (k as Mask, *c))))
}

/// Terminating series `Σ τⁿ Xⁿ/n!` for `X` nilpotent under `∘_B`, with
/// `τ = −it/ħ` supplied by the caller.
pub fn star_exp_series<S: Coeff>(x: &Multivector<S>, b: &BilinearForm<S>, tau: &S) -> Result<Multivector<S>> {
    let limit = (1usize << x.dim()) + 1;
    let mut out = Multivector::one(x.dim());
    let mut term = Multivector::one(x.dim());
    for n in 1..=limit {
        term = circle_product(&term, x, b)?.scale(&(tau.clone() * S::from_ratio(1, n as i64)));
        if term.is_zero() {
            return Ok(out);
        }
        out += term.clone();
    }
    Err(Error::InvalidParameter("element is not nilpotent under the star product".into()))
}

/// Star exponential of an exact element evaluated at time `t` with `ħ`
/// and `c` bound by `env`. See [`star_exp_complex`].
pub fn star_exp(
    x: &Multivector<Exact>,
    spec: &StarProductSpec<Exact>,
    t: f64,
    env: &Bindings,
) -> Result<(Multivector<Complex64>, StarExpPath)> {
    let form = spec.map(|s| s.to_complex(env)).form();
    star_exp_complex(&x.to_complex(env), &form, env.hbar, t)
}

/// `Exp(Xt) = Σ (t/iħ)ⁿ X^{⋆n}/n!`. Uses the closed form when `X⋆X` is a
/// scalar up to rounding, with the principal square root, and the matrix
/// path otherwise.
pub fn star_exp_complex(
    x: &Multivector<Complex64>,
    b: &BilinearForm<Complex64>,
    hbar: f64,
    t: f64,
) -> Result<(Multivector<Complex64>, StarExpPath)> {
    let square = circle_product(x, x, b)?;
    let scale = square.norm1().max(x.norm1() * x.norm1()).max(f64::MIN_POSITIVE);
    let off_scalar: f64 = square.terms().filter(|(m, _)| *m != 0).map(|(_, c)| c.norm()).sum();
    if off_scalar <= 1e-13 * scale {
        let s = square.scalar_part();
        let one = Multivector::one(x.dim());
        let i = Complex64::new(0.0, 1.0);
        if s.norm() <= 1e-13 * scale {
            return Ok((one - x.scale(&(i * t / hbar)), StarExpPath::ClosedForm));
        }
        let r = s.sqrt();
        let phase = r * t / hbar;
        let out = one.scale(&phase.cos()) - x.scale(&(i * phase.sin() / r));
        return Ok((out, StarExpPath::ClosedForm));
    }
    Ok((star_exp_matrix(x, b, hbar, t)?, StarExpPath::Matrix))
}
