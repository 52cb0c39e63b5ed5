use num_complex::Complex64;

use super::function::PhaseFunction;
use super::gaussian::LinearSubstitution;
use super::polynomial::{laguerre, Polynomial};
use super::product::MoyalSpec;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Exact};

/// `2(−1)ⁿ e^{Q} L_n(x)` for polynomials `x` and `Q`.
pub fn laguerre_wigner(vars: &[&str], grass_dim: usize, n: u32, x: &Polynomial, q: &Polynomial) -> Result<PhaseFunction> {
    let sign = if n % 2 == 0 { 2 } else { -2 };
    let p = Polynomial::horner(&laguerre(n), x).scale(&Exact::from(sign));
    PhaseFunction::gaussian_times(vars, grass_dim, &p, q)
}

fn hbar_inv() -> Exact {
    Exact::hbar().inverse().expect("ħ is a unit")
}

fn nonzero(name: &str, x: &Exact) -> Result<Exact> {
    x.inverse().ok_or_else(|| Error::InvalidParameter(format!("{name} must be a nonzero single-term scalar")))
}

/// `H = p²/2m + mω²q²/2` in `(q, p)`.
pub fn oscillator_hamiltonian_polynomial(m: &Exact, omega: &Exact) -> Result<Polynomial> {
    let m_inv = nonzero("m", m)?;
    let q = Polynomial::var(2, 0);
    let p = Polynomial::var(2, 1);
    Ok(p.pow(2).scale(&(m_inv * Exact::rational(1, 2)))
        + q.pow(2).scale(&(m.clone() * omega.clone() * omega.clone() * Exact::rational(1, 2))))
}

pub fn oscillator_hamiltonian(m: &Exact, omega: &Exact) -> Result<PhaseFunction> {
    Ok(MoyalSpec::moyal().from_polynomial(&oscillator_hamiltonian_polynomial(m, omega)?))
}

/// `π_n = 2(−1)ⁿ e^{−2H/ħω} L_n(4H/ħω)`.
pub fn oscillator_wigner(n: i64, m: &Exact, omega: &Exact) -> Result<PhaseFunction> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!("level {n} is negative")));
    }
    let h = oscillator_hamiltonian_polynomial(m, omega)?;
    let scale = hbar_inv() * nonzero("ω", omega)?;
    let x = h.scale(&(scale.clone() * Exact::from(4)));
    let q = h.scale(&(scale * Exact::from(-2)));
    laguerre_wigner(&["q", "p"], 0, n as u32, &x, &q)
}

/// `E_n = ħω(n + ½)`.
pub fn oscillator_energy(n: u32, omega: &Exact) -> Exact {
    Exact::hbar() * omega.clone() * Exact::rational(2 * n as i64 + 1, 2)
}

/// Charged particle in a constant magnetic field along `q₃`, in the
/// symmetric gauge, with phase variables `(q₁, q₂, p̃₁, p̃₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LandauProblem {
    pub m: Exact,
    pub omega: Exact,
    pub spec: MoyalSpec,
    /// `q̃₁ = q₁ + p̃₂/mω`, `q̃₂ = q₂ − p̃₁/mω`.
    pub q_tilde: [Polynomial; 2],
    pub hamiltonian: Polynomial,
    /// `J = q₁p₂ − q₂p₁` rewritten with `p = p̃ + (e/c)A`.
    pub angular_momentum: Polynomial,
}

pub const LANDAU_VARS: [&str; 4] = ["q1", "q2", "pt1", "pt2"];

pub fn landau_problem(m: &Exact, omega: &Exact) -> Result<LandauProblem> {
    if omega.is_zero() {
        return Err(Error::InvalidParameter("ω = eB/mc must be nonzero".into()));
    }
    let mw = m.clone() * omega.clone();
    let mw_inv = nonzero("mω", &mw)?;
    let m_inv = nonzero("m", m)?;
    let v = |i| Polynomial::var(4, i);
    let q_tilde = [v(0) + v(3).scale(&mw_inv), v(1) - v(2).scale(&mw_inv)];
    let hamiltonian = (v(2).pow(2) + v(3).pow(2)).scale(&(m_inv * Exact::rational(1, 2)));
    let half_mw = mw.clone() * Exact::rational(1, 2);
    // p₁ = p̃₁ − (mω/2)q₂, p₂ = p̃₂ + (mω/2)q₁
    let p1 = v(2) - v(1).scale(&half_mw);
    let p2 = v(3) + v(0).scale(&half_mw);
    let angular_momentum = &v(0) * &p2 - &v(1) * &p1;
    Ok(LandauProblem { m: m.clone(), omega: omega.clone(), spec: MoyalSpec::tilde(m, omega), q_tilde, hamiltonian, angular_momentum })
}

impl LandauProblem {
    /// `q̃₁² + q̃₂²`.
    pub fn q_tilde_squared(&self) -> Polynomial {
        self.q_tilde[0].pow(2) + self.q_tilde[1].pow(2)
    }

    /// `π_n(p̃) = 2(−1)ⁿ e^{−2H_L/ħω} L_n(4H_L/ħω)`.
    pub fn momentum_wigner(&self, n: u32) -> Result<PhaseFunction> {
        let scale = hbar_inv() * nonzero("ω", &self.omega)?;
        let x = self.hamiltonian.scale(&(scale.clone() * Exact::from(4)));
        let q = self.hamiltonian.scale(&(scale * Exact::from(-2)));
        laguerre_wigner(&LANDAU_VARS, 0, n, &x, &q)
    }

    /// `π_l(q̃) = 2(−1)^l e^{−(mω/ħ)q̃²} L_l(2mω q̃²/ħ)`.
    pub fn center_wigner(&self, l: u32) -> Result<PhaseFunction> {
        let k = self.m.clone() * self.omega.clone() * hbar_inv();
        let r2 = self.q_tilde_squared();
        laguerre_wigner(&LANDAU_VARS, 0, l, &r2.scale(&(k.clone() * Exact::from(2))), &r2.scale(&-k))
    }

    /// `π_{nl} = π_l(q̃) π_n(p̃)`.
    pub fn wigner(&self, n: u32, l: u32) -> Result<PhaseFunction> {
        self.center_wigner(l)?.mul(&self.momentum_wigner(n)?)
    }

    pub fn energy(&self, n: u32) -> Exact {
        oscillator_energy(n, &self.omega)
    }

    /// `j_{nl} = ħ(l − n)`.
    pub fn angular_eigenvalue(&self, n: u32, l: u32) -> Exact {
        Exact::hbar() * Exact::from(l as i64 - n as i64)
    }

    pub fn function(&self, p: &Polynomial) -> PhaseFunction {
        self.spec.from_polynomial(p)
    }

    /// Residuals `H_L⋆π − E_nπ` and `J⋆π − j_{nl}π`.
    pub fn eigen_residuals(&self, n: u32, l: u32) -> Result<(PhaseFunction, PhaseFunction)> {
        let pi = self.wigner(n, l)?;
        let h = self.spec.product(&self.function(&self.hamiltonian), &pi)?.sub(&pi.scale(&self.energy(n)))?;
        let j = self
            .spec
            .product(&self.function(&self.angular_momentum), &pi)?
            .sub(&pi.scale(&self.angular_eigenvalue(n, l)))?;
        Ok((h, j))
    }
}

/// `a = r(q + ip/mω)`, `ā = r(q − ip/mω)` with `r² = mω/2`, as polynomials
/// in `(q, p)`.
pub fn holomorphic_to_canonical(m: &Exact, omega: &Exact, r: &Exact) -> Result<[Polynomial; 2]> {
    let mw = m.clone() * omega.clone();
    if r.clone() * r.clone() != mw.clone() * Exact::rational(1, 2) {
        return Err(Error::InvalidParameter(format!("r² = {} differs from mω/2", r.clone() * r.clone())));
    }
    let ip = Exact::imag_unit() * nonzero("mω", &mw)?;
    let q = Polynomial::var(2, 0);
    let p = Polynomial::var(2, 1);
    Ok([
        (q.clone() + p.scale(&ip)).scale(r),
        (q - p.scale(&ip)).scale(r),
    ])
}

/// Float substitution `(a, ā) = M (q, p)` for integrating holomorphic
/// functions over `dq dp`.
pub fn holomorphic_measure(m: f64, omega: f64) -> LinearSubstitution {
    let r = (m * omega / 2.0).sqrt();
    let s = r / (m * omega);
    LinearSubstitution {
        matrix: vec![
            Complex64::new(r, 0.0),
            Complex64::new(0.0, s),
            Complex64::new(r, 0.0),
            Complex64::new(0.0, -s),
        ],
        new_vars: 2,
    }
}

/// `H = ω ā a` in `(a, ā)`.
pub fn holomorphic_hamiltonian(omega: &Exact) -> Polynomial {
    (&Polynomial::var(2, 0) * &Polynomial::var(2, 1)).scale(omega)
}

/// `π_n` in holomorphic variables: `2(−1)ⁿ e^{−2āa/ħ} L_n(4āa/ħ)`.
pub fn holomorphic_wigner(n: u32, grass_dim: usize) -> Result<PhaseFunction> {
    let aa = &Polynomial::var(2, 0) * &Polynomial::var(2, 1);
    let k = hbar_inv();
    laguerre_wigner(&["a", "abar"], grass_dim, n, &aa.scale(&(k.clone() * Exact::from(4))), &aa.scale(&(k * Exact::from(-2))))
}
