//! Pauli star product on three Grassmann generators: σ functions, the
//! fermionic oscillator, spin expectations, precession and rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{circle_product, pauli_form, BilinearForm, Multivector};
use crate::scalar::{Coeff, Exact};
use crate::star::star_exp_matrix;

fn cyclic(i: usize) -> (usize, usize) {
    match i {
        1 => (2, 3),
        2 => (3, 1),
        3 => (1, 2),
        _ => panic!("σ index {i} outside 1..=3"),
    }
}

/// `2/(iħ)`.
fn two_over_i_hbar<S: Coeff>(hbar: &S) -> S {
    let inv = hbar.inverse().expect("ħ must be invertible");
    S::imag_unit() * S::from_int(-2) * inv
}

/// `σ^i = (2/iħ) θ_j θ_k` for cyclic `(i,j,k)` built from the first three
/// of `dim` generators, or from `base+1..=base+3` with [`sigma_on`].
pub fn sigma_in<S: Coeff>(dim: usize, i: usize, hbar: &S) -> Multivector<S> {
    sigma_on(dim, 0, i, hbar)
}

pub fn sigma_on<S: Coeff>(dim: usize, base: usize, i: usize, hbar: &S) -> Multivector<S> {
    let (j, k) = cyclic(i);
    Multivector::product_of(dim, &[base + j, base + k]).scale(&two_over_i_hbar(hbar))
}

/// `σ^i` on three generators with exact `ħ`.
pub fn sigma(i: usize) -> Multivector<Exact> {
    sigma_in(3, i, &Exact::hbar())
}

/// `S_i = (ħ/2) σ^i`.
pub fn spin_component<S: Coeff>(dim: usize, i: usize, hbar: &S) -> Multivector<S> {
    sigma_in(dim, i, hbar).scale(&(hbar.clone() * S::from_ratio(1, 2)))
}

/// Coefficients `(c₀, c₁, c₂, c₃)` of `u = c₀ + Σ cᵢσ^i`; `None` if `u` has
/// components outside the even subalgebra of the first three generators.
pub fn pauli_components<S: Coeff>(u: &Multivector<S>, hbar: &S) -> Option<[S; 4]> {
    let mut out = [u.scalar_part(), S::zero(), S::zero(), S::zero()];
    let mut rest = u.clone() - Multivector::scalar(u.dim(), u.scalar_part());
    // σ^i = (2/iħ)θ_jθ_k, so θ_jθ_k carries iħ/2 of σ^i
    let back = S::imag_unit() * hbar.clone() * S::from_ratio(1, 2);
    for i in 1..=3 {
        let (j, k) = cyclic(i);
        let (lo, hi, sign) = if j < k { (j, k, S::one()) } else { (k, j, -S::one()) };
        let mask = (1 << (lo - 1)) | (1 << (hi - 1));
        let c = rest.coeff(mask);
        out[i] = c.clone() * sign * back.clone();
        rest = rest - Multivector::monomial(u.dim(), mask, c);
    }
    rest.prune();
    rest.is_zero().then_some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinLabel {
    Up,
    Down,
}

impl SpinLabel {
    pub fn sign(self) -> i64 {
        match self {
            SpinLabel::Up => 1,
            SpinLabel::Down => -1,
        }
    }
}

/// Wigner function `π_{±1/2} = (1 ± σ³)/2` of a spin state.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    pub wigner: Multivector<Exact>,
    pub label: SpinLabel,
}

impl SpinState {
    pub fn new(label: SpinLabel) -> Self {
        let s3 = sigma(3).scale(&Exact::from(label.sign()));
        let wigner = (Multivector::one(3) + s3).scale(&Exact::rational(1, 2));
        Self { wigner, label }
    }
}

/// Two-level fermionic oscillator `H = −iωθ1θ2 = ωS₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionicOscillator {
    pub hamiltonian: Multivector<Exact>,
    /// `(E, π)` for spin up then spin down.
    pub levels: [(Exact, SpinState); 2],
}

pub fn fermionic_oscillator(omega: &Exact) -> FermionicOscillator {
    let hamiltonian = Multivector::product_of(3, &[1, 2]).scale(&(-Exact::imag_unit() * omega.clone()));
    let e = Exact::hbar() * omega.clone() * Exact::rational(1, 2);
    FermionicOscillator {
        hamiltonian,
        levels: [(e.clone(), SpinState::new(SpinLabel::Up)), (-e, SpinState::new(SpinLabel::Down))],
    }
}

pub fn pauli3() -> BilinearForm<Exact> {
    pauli_form(3, Exact::hbar())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinExpectations {
    pub s: [Exact; 3],
    pub s_squared: Exact,
}

/// `⟨S_i⟩ = Tr(π ⋆_P S_i)` and `⟨S^{2⋆}⟩`.
pub fn spin_expectations(state: &SpinState) -> SpinExpectations {
    let b = pauli3();
    let hbar = Exact::hbar();
    let mut s_sq = Multivector::zero(3);
    let s = [1, 2, 3].map(|i| {
        let si = spin_component(3, i, &hbar);
        s_sq += circle_product(&si, &si, &b).expect("d=3");
        circle_product(&state.wigner, &si, &b).expect("d=3").trace(&hbar)
    });
    let s_squared = circle_product(&state.wigner, &s_sq, &b).expect("d=3").trace(&hbar);
    SpinExpectations { s, s_squared }
}

fn float_pauli(hbar: f64) -> BilinearForm<Complex64> {
    pauli_form(3, Complex64::new(hbar, 0.0))
}

fn float_hamiltonian(omega: f64) -> Multivector<Complex64> {
    Multivector::product_of(3, &[1, 2]).scale(&Complex64::new(0.0, -omega))
}

/// `σ^i(t) = Exp_P(−Ht) ⋆ σ^i ⋆ Exp_P(Ht)` for `H = −iωθ1θ2`.
pub fn evolve_sigma(i: usize, omega: f64, t: f64, hbar: f64) -> Result<Multivector<Complex64>> {
    let b = float_pauli(hbar);
    let h = float_hamiltonian(omega);
    let fwd = star_exp_matrix(&h, &b, hbar, t)?;
    let back = star_exp_matrix(&h, &b, hbar, -t)?;
    let s = sigma_in(3, i, &Complex64::new(hbar, 0.0));
    circle_product(&circle_product(&back, &s, &b)?, &fwd, &b)
}

/// Closed form: `σ¹cos ωt − σ²sin ωt`, `σ¹sin ωt + σ²cos ωt`, `σ³`.
pub fn evolve_sigma_closed(i: usize, omega: f64, t: f64, hbar: f64) -> Multivector<Complex64> {
    let h = Complex64::new(hbar, 0.0);
    let (c, s) = ((omega * t).cos(), (omega * t).sin());
    let s1 = sigma_in(3, 1, &h);
    let s2 = sigma_in(3, 2, &h);
    match i {
        1 => s1.scale(&c.into()) - s2.scale(&s.into()),
        2 => s1.scale(&s.into()) + s2.scale(&c.into()),
        _ => sigma_in(3, 3, &h),
    }
}

/// `dσ^i/dt` of the closed form.
pub fn evolve_sigma_rate(i: usize, omega: f64, t: f64, hbar: f64) -> Multivector<Complex64> {
    let h = Complex64::new(hbar, 0.0);
    let (c, s) = ((omega * t).cos() * omega, (omega * t).sin() * omega);
    let s1 = sigma_in(3, 1, &h);
    let s2 = sigma_in(3, 2, &h);
    match i {
        1 => -(s1.scale(&s.into()) + s2.scale(&c.into())),
        2 => s1.scale(&c.into()) - s2.scale(&s.into()),
        _ => Multivector::zero(3),
    }
}

/// `iħ dσ/dt − [σ(t), H]_⋆` at time `t`.
pub fn heisenberg_residual(i: usize, omega: f64, t: f64, hbar: f64) -> Result<Multivector<Complex64>> {
    let b = float_pauli(hbar);
    let h = float_hamiltonian(omega);
    let st = evolve_sigma(i, omega, t, hbar)?;
    let comm = circle_product(&st, &h, &b)? - circle_product(&h, &st, &b)?;
    Ok(evolve_sigma_rate(i, omega, t, hbar).scale(&Complex64::new(0.0, hbar)) - comm)
}

/// One sample of spin precession in `B = (0,0,B₃)` with `ω = eB₃/mc`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecessionSample {
    pub t: f64,
    /// `σ^k(t)` expanded as `(c₀, c₁, c₂, c₃)` in the basis `{1, σ¹, σ², σ³}`.
    pub sigma: [[Complex64; 4]; 3],
    /// Largest coefficient of `dS/dt − (e/mc) B × S` with `S = (ħ/2)σ(t)`.
    pub residual: f64,
}

pub fn precession(omega: f64, hbar: f64, times: &[f64]) -> Result<Vec<PrecessionSample>> {
    let h = Complex64::new(hbar, 0.0);
    let half = Complex64::new(hbar / 2.0, 0.0);
    times
        .iter()
        .map(|&t| {
            let s: Vec<_> = (1..=3).map(|k| evolve_sigma(k, omega, t, hbar)).collect::<Result<_>>()?;
            let rate: Vec<_> = (1..=3).map(|k| evolve_sigma_rate(k, omega, t, hbar).scale(&half)).collect();
            let spin: Vec<_> = s.iter().map(|x| x.scale(&half)).collect();
            let w = Complex64::new(omega, 0.0);
            let cross = [-spin[1].scale(&w), spin[0].scale(&w), Multivector::zero(3)];
            let residual = (0..3).map(|k| rate[k].max_abs_diff(&cross[k])).fold(0.0, f64::max);
            let mut sigma = [[Complex64::new(0.0, 0.0); 4]; 3];
            for k in 0..3 {
                sigma[k] = pauli_components(&s[k], &h)
                    .ok_or_else(|| Error::InvalidParameter("σ(t) left the even subalgebra".into()))?;
            }
            Ok(PrecessionSample { t, sigma, residual })
        })
        .collect()
}

/// Active rotation matrix about unit `n` by `φ`:
/// `Rv = n(n·v) + cos φ (v − n(n·v)) + sin φ (n × v)`.
pub fn rotation_matrix<S: Coeff>(cos: &S, sin: &S, n: &[S; 3]) -> [[S; 3]; 3] {
    let one_minus = S::one() - cos.clone();
    let mut r: [[S; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for i in 0..3 {
        for j in 0..3 {
            let mut v = n[i].clone() * n[j].clone() * one_minus.clone();
            if i == j {
                v = v + cos.clone();
            }
            // (n × e_j)_i = ε_{ikj} n_k
            if i != j {
                let k = 3 - i - j;
                let eps = if (i + 1) % 3 == k { S::one() } else { -S::one() };
                v = v + eps * n[k].clone() * sin.clone();
            }
            r[i][j] = v;
        }
    }
    r
}

/// Apply a 3×3 matrix to the generator triple: `θ_i ↦ Σ_j R_ji θ_j`
/// extended as an algebra automorphism to every monomial.
pub fn apply_to_generators<S: Coeff>(r: &[[S; 3]; 3], u: &Multivector<S>) -> Result<Multivector<S>> {
    let d = u.dim();
    let images: Vec<Multivector<S>> = (0..3)
        .map(|i| (0..3).fold(Multivector::zero(d), |acc, j| acc + Multivector::theta(d, j + 1).scale(&r[j][i])))
        .collect();
    let mut out = Multivector::zero(d);
    for (m, c) in u.terms() {
        let mut term = Multivector::scalar(d, c.clone());
        for bit in 0..d {
            if m >> bit & 1 == 1 {
                let g = if bit < 3 { images[bit].clone() } else { Multivector::theta(d, bit + 1) };
                term = term.wedge(&g)?;
            }
        }
        out += term;
    }
    out.prune();
    Ok(out)
}

fn check_axis(n: [f64; 3]) -> Result<()> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!("rotation axis has norm {norm}, expected 1")));
    }
    Ok(())
}

/// `Exp_P(φ n·S) ⋆ u ⋆ Exp_P(−φ n·S)` on three generators.
pub fn rotate(phi: f64, n: [f64; 3], u: &Multivector<Complex64>, hbar: f64) -> Result<Multivector<Complex64>> {
    check_axis(n)?;
    if u.dim() != 3 {
        return Err(Error::DimensionMismatch { left: u.dim(), right: 3 });
    }
    let h = Complex64::new(hbar, 0.0);
    let b = float_pauli(hbar);
    let x = (1..=3).fold(Multivector::zero(3), |acc, i| {
        acc + spin_component(3, i, &h).scale(&Complex64::new(phi * n[i - 1], 0.0))
    });
    let fwd = star_exp_matrix(&x, &b, hbar, 1.0)?;
    let back = star_exp_matrix(&x, &b, hbar, -1.0)?;
    circle_product(&circle_product(&fwd, u, &b)?, &back, &b)
}

/// Exact rotation `U = a − i b (n·σ)` with `cos(φ/2) : sin(φ/2) = a : b`;
/// the normalization cancels in `U ⋆ u ⋆ U⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactRotor {
    pub a: Exact,
    pub b: Exact,
    pub n: [Exact; 3],
}

impl ExactRotor {
    pub fn new(a: Exact, b: Exact, n: [Exact; 3]) -> Result<Self> {
        let norm = n.iter().fold(Exact::zero(), |acc, x| acc + x.clone() * x.clone());
        if norm != Exact::one() {
            return Err(Error::InvalidParameter(format!("rotation axis has squared norm {norm}")));
        }
        Ok(Self { a, b, n })
    }

    fn n_sigma(&self) -> Multivector<Exact> {
        (1..=3).fold(Multivector::zero(3), |acc, i| acc + sigma(i).scale(&self.n[i - 1]))
    }

    pub fn element(&self) -> Multivector<Exact> {
        Multivector::scalar(3, self.a.clone()) - self.n_sigma().scale(&(Exact::imag_unit() * self.b.clone()))
    }

    pub fn inverse_element(&self) -> Multivector<Exact> {
        let norm = self.a.clone() * self.a.clone() + self.b.clone() * self.b.clone();
        let inv = norm.inverse().expect("a² + b² must be a single invertible term");
        (Multivector::scalar(3, self.a.clone()) + self.n_sigma().scale(&(Exact::imag_unit() * self.b.clone())))
            .scale(&inv)
    }

    /// `cos φ = (a²−b²)/(a²+b²)`, `sin φ = 2ab/(a²+b²)`.
    pub fn cos_sin(&self) -> (Exact, Exact) {
        let (a, b) = (&self.a, &self.b);
        let inv = (a * a + b * b).inverse().expect("invertible");
        ((a * a - b * b) * inv.clone(), a * b * Exact::from(2) * inv)
    }

    /// Rotor of the composition about the same axis.
    pub fn compose(&self, other: &Self) -> Self {
        let a = &self.a * &other.a - &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self { a, b, n: self.n.clone() }
    }

    pub fn apply(&self, u: &Multivector<Exact>) -> Result<Multivector<Exact>> {
        let b = pauli3();
        circle_product(&circle_product(&self.element(), u, &b)?, &self.inverse_element(), &b)
    }
}
