//! Spin coupled to bosonic phase space: the Moyal-Pauli product with the
//! Feynman trick, the spinful Landau system, and the supersymmetric
//! oscillator with its supercharges and Witten index.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{pauli_form_exact, Multivector};
use crate::phase::{
    holomorphic_hamiltonian, holomorphic_measure, holomorphic_wigner, landau_problem, phase_space_integral, LandauProblem,
    MoyalKind, MoyalSpec, PhaseFunction, Polynomial,
};
use crate::scalar::{Bindings, Coeff, Exact};
use crate::spin::{sigma, SpinLabel, SpinState};

/// `F ⋆_MP G` on `(q₁,q₂,q₃,p₁,p₂,p₃; θ₁,θ₂,θ₃)`.
pub fn moyal_pauli_product(f: &PhaseFunction, g: &PhaseFunction) -> Result<PhaseFunction> {
    MoyalSpec::moyal_pauli().product(f, g)
}

fn inv(x: &Exact, what: &str) -> Result<Exact> {
    x.inverse().ok_or_else(|| Error::NotInvertible(format!("{what} = {x}")))
}

/// Both sides of `[(p − eA/c)·σ]^{2⋆MP} = (p − eA/c)^{2⋆M} − (ħe/c)σ·B`
/// for a constant field `B` in the symmetric gauge `A = B×q/2`.
#[derive(Clone, Debug)]
pub struct FeynmanTrick {
    pub lhs: PhaseFunction,
    pub rhs: PhaseFunction,
}

impl FeynmanTrick {
    pub fn residual(&self) -> Result<PhaseFunction> {
        self.lhs.sub(&self.rhs)
    }
}

/// Kinetic momenta `p_i − (e/c)A_i` with `A = B×q/2`, in the variables of
/// [`MoyalSpec::moyal_dof`]`(3)`.
pub fn kinetic_momenta(e: &Exact, c: &Exact, b: &[Exact; 3]) -> Result<[Polynomial; 3]> {
    let k = e.clone() * inv(c, "c")? * Exact::rational(1, 2);
    let q = |i: usize| Polynomial::var(6, i);
    Ok(std::array::from_fn(|i| {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        // (B×q)_i = B_j q_l − B_l q_j
        let a = q(l).scale(&b[j]) - q(j).scale(&b[l]);
        Polynomial::var(6, 3 + i) - a.scale(&k)
    }))
}

pub fn feynman_trick(e: &Exact, c: &Exact, b: &[Exact; 3]) -> Result<FeynmanTrick> {
    let spec = MoyalSpec::moyal_pauli();
    let vars = spec.vars();
    let pi = kinetic_momenta(e, c, b)?;
    let mut pi_sigma = spec.zero();
    let mut pi_squared = spec.zero();
    for (i, p) in pi.iter().enumerate() {
        let f = spec.from_polynomial(p);
        pi_sigma.add_scaled(&f.mul(&spec.grassmann_element(sigma(i + 1))?)?, None)?;
        pi_squared.add_scaled(&spec.product(&f, &f)?, None)?;
    }
    let lhs = spec.product(&pi_sigma, &pi_sigma)?;
    let sigma_b = (0..3).fold(Multivector::zero(3), |acc, i| acc + sigma(i + 1).scale(&b[i]));
    let coupling = Exact::hbar() * e.clone() * inv(c, "c")?;
    let rhs = pi_squared.sub(&PhaseFunction::from_multivector(&vars, sigma_b.scale(&coupling)))?;
    Ok(FeynmanTrick { lhs, rhs })
}

/// `H_I = −(eħ/2mc) B σ³`.
pub fn interaction_term(e: &Exact, c: &Exact, b: &Exact, m: &Exact) -> Result<Multivector<Exact>> {
    let k = -(e.clone() * Exact::hbar() * b.clone() * inv(&(m.clone() * c.clone() * Exact::from(2)), "2mc")?);
    Ok(sigma(3).scale(&k))
}

/// Landau problem with spin: `H = H_L − iωθ₁θ₂` under tilde-Moyal ⊗ Pauli.
#[derive(Clone, Debug)]
pub struct SpinfulLandau {
    pub orbital: LandauProblem,
    pub spec: MoyalSpec,
    pub hamiltonian: PhaseFunction,
}

pub fn spinful_landau(m: &Exact, omega: &Exact) -> Result<SpinfulLandau> {
    let orbital = landau_problem(m, omega)?;
    let spec = MoyalSpec::tilde(m, omega).with_grassmann(MoyalKind::TildePauli, pauli_form_exact(3));
    let h_i = Multivector::product_of(3, &[1, 2]).scale(&(-Exact::imag_unit() * omega.clone()));
    let hamiltonian = spec
        .from_polynomial(&orbital.hamiltonian)
        .add(&PhaseFunction::from_multivector(&spec.vars(), h_i))?;
    Ok(SpinfulLandau { orbital, spec, hamiltonian })
}

impl SpinfulLandau {
    /// `π_{n,l} π_{±1/2}`.
    pub fn wigner(&self, n: u32, l: u32, spin: SpinLabel) -> Result<PhaseFunction> {
        let orbital = self.orbital.wigner(n, l)?.map_grassmann(3, |u| Multivector::scalar(3, u.scalar_part()));
        orbital.mul(&PhaseFunction::from_multivector(&self.spec.vars(), SpinState::new(spin).wigner))
    }

    /// `ħω(n + 1/2 ± 1/2)`.
    pub fn energy(&self, n: u32, spin: SpinLabel) -> Exact {
        let twice = Exact::from(2 * n as i64 + 1 + spin.sign());
        Exact::hbar() * self.orbital.omega.clone() * twice * Exact::rational(1, 2)
    }

    /// `H ⋆ π − E π`.
    pub fn eigen_residual(&self, n: u32, l: u32, spin: SpinLabel) -> Result<PhaseFunction> {
        let pi = self.wigner(n, l, spin)?;
        self.spec.product(&self.hamiltonian, &pi)?.sub(&pi.scale(&self.energy(n, spin)))
    }
}

/// Holomorphic bosonic kernel on `(a, ā)` with the Pauli kernel on
/// `(θ₁, θ₂)`; in `f = (θ₂ + iθ₁)/√2` the fermionic part reads
/// `(ħ/2)(∂←_f∂→_f̄ + ∂←_f̄∂→_f)`.
pub fn susy_spec() -> MoyalSpec {
    MoyalSpec::holomorphic().with_grassmann(MoyalKind::Supersymmetric, pauli_form_exact(2))
}

pub fn susy_product(f: &PhaseFunction, g: &PhaseFunction) -> Result<PhaseFunction> {
    susy_spec().product(f, g)
}

fn inv_sqrt2() -> Exact {
    Exact::sqrt2() * Exact::rational(1, 2)
}

/// `f = (θ₂ + iθ₁)/√2`.
pub fn fermion_f() -> Multivector<Exact> {
    let i = Exact::imag_unit();
    (Multivector::theta(2, 2) + Multivector::theta(2, 1).scale(&i)).scale(&inv_sqrt2())
}

/// `f̄ = (θ₂ − iθ₁)/√2`.
pub fn fermion_fbar() -> Multivector<Exact> {
    let i = Exact::imag_unit();
    (Multivector::theta(2, 2) - Multivector::theta(2, 1).scale(&i)).scale(&inv_sqrt2())
}

/// `f̄ f`.
pub fn fermion_number() -> Multivector<Exact> {
    fermion_fbar().wedge(&fermion_f()).expect("same dimension")
}

/// `π_{±1/2} = 1/2 ± f̄f/ħ`.
pub fn fermion_projector(spin: SpinLabel) -> Multivector<Exact> {
    let k = Exact::from(spin.sign()) * Exact::hbar().inverse().expect("ħ is a monomial");
    Multivector::scalar(2, Exact::rational(1, 2)) + fermion_number().scale(&k)
}

/// `H = ω(āa + f̄f)`.
pub fn susy_hamiltonian(omega: &Exact) -> PhaseFunction {
    let spec = susy_spec();
    let bosonic = spec.from_polynomial(&holomorphic_hamiltonian(omega));
    let fermionic = PhaseFunction::from_multivector(&spec.vars(), fermion_number().scale(omega));
    bosonic.add(&fermionic).expect("same variables")
}

/// Product state `π_{n_B} π_{n_F}` of the supersymmetric oscillator.
#[derive(Clone, Debug)]
pub struct SusyState {
    pub n_b: u32,
    pub n_f: SpinLabel,
    pub wigner: PhaseFunction,
}

impl SusyState {
    pub fn new(n_b: u32, n_f: SpinLabel) -> Result<Self> {
        let spec = susy_spec();
        let wigner = holomorphic_wigner(n_b, 2)?.mul(&PhaseFunction::from_multivector(&spec.vars(), fermion_projector(n_f)))?;
        Ok(Self { n_b, n_f, wigner })
    }

    /// `ħω(n_B + 1/2 + n_F)`.
    pub fn energy(&self, omega: &Exact) -> Exact {
        susy_energy(self.n_b, self.n_f, omega)
    }

    /// `E/ħω`.
    pub fn level(&self) -> u32 {
        match self.n_f {
            SpinLabel::Up => self.n_b + 1,
            SpinLabel::Down => self.n_b,
        }
    }
}

pub fn susy_energy(n_b: u32, n_f: SpinLabel, omega: &Exact) -> Exact {
    let twice = Exact::from(2 * n_b as i64 + 1 + n_f.sign());
    Exact::hbar() * omega.clone() * twice * Exact::rational(1, 2)
}

/// The states with `E = ħω·level`.
pub fn susy_level(level: u32) -> Vec<(u32, SpinLabel)> {
    let mut out = vec![(level, SpinLabel::Down)];
    if level > 0 {
        out.push((level - 1, SpinLabel::Up));
    }
    out
}

/// `(Q₊, Q₋) = (a f̄, ā f)/√ħ`.
pub fn supercharges() -> (PhaseFunction, PhaseFunction) {
    let spec = susy_spec();
    let k = Exact::sqrt_hbar().inverse().expect("√ħ is a monomial");
    let a = spec.var("a").expect("holomorphic variable");
    let abar = spec.var("abar").expect("holomorphic variable");
    let vars = spec.vars();
    let q_plus = a.mul(&PhaseFunction::from_multivector(&vars, fermion_fbar().scale(&k))).expect("same variables");
    let q_minus = abar.mul(&PhaseFunction::from_multivector(&vars, fermion_f().scale(&k))).expect("same variables");
    (q_plus, q_minus)
}

/// `Q₊ ⋆ π ⋆ Q₋` when `raise`, otherwise `Q₋ ⋆ π ⋆ Q₊`.
pub fn ladder(state: &SusyState, raise: bool) -> Result<PhaseFunction> {
    let spec = susy_spec();
    let (qp, qm) = supercharges();
    let (l, r) = if raise { (&qp, &qm) } else { (&qm, &qp) };
    spec.product_all(&[l, &state.wigner, r])
}

/// Where [`ladder`] lands: `ħ·n_B·π_{+1/2, n_B−1}` for raising and
/// `ħ(n_B+1)·π_{−1/2, n_B+1}` for lowering; `None` when the image is zero.
pub fn ladder_image(n_b: u32, n_f: SpinLabel, raise: bool) -> Option<(Exact, u32, SpinLabel)> {
    match (n_f, raise) {
        (SpinLabel::Down, true) if n_b > 0 => Some((Exact::hbar() * Exact::from(n_b as i64), n_b - 1, SpinLabel::Up)),
        (SpinLabel::Up, false) => Some((Exact::hbar() * Exact::from(n_b as i64 + 1), n_b + 1, SpinLabel::Down)),
        _ => None,
    }
}

/// Named residuals of the Fredholm quadruple relations
/// `π⋆π = π`, `Q_±⋆π_∓ = Q_±`, `π_±⋆Q_± = Q_±`.
pub fn fredholm_residuals() -> Result<Vec<(&'static str, PhaseFunction)>> {
    let spec = susy_spec();
    let vars = spec.vars();
    let up = PhaseFunction::from_multivector(&vars, fermion_projector(SpinLabel::Up));
    let down = PhaseFunction::from_multivector(&vars, fermion_projector(SpinLabel::Down));
    let (qp, qm) = supercharges();
    Ok(vec![
        ("pi+ * pi+ - pi+", spec.product(&up, &up)?.sub(&up)?),
        ("pi- * pi- - pi-", spec.product(&down, &down)?.sub(&down)?),
        ("Q+ * pi- - Q+", spec.product(&qp, &down)?.sub(&qp)?),
        ("Q- * pi+ - Q-", spec.product(&qm, &up)?.sub(&qm)?),
        ("pi+ * Q+ - Q+", spec.product(&up, &qp)?.sub(&qp)?),
        ("pi- * Q- - Q-", spec.product(&down, &qm)?.sub(&qm)?),
    ])
}

/// One energy level of the index sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelEntry {
    pub level: u32,
    /// `Σ_level tr[π₋ − Q₊⋆Q₋/ħ]`.
    pub bracket1: f64,
    /// `Σ_level tr[π₊ − Q₋⋆Q₊/ħ]`.
    pub bracket2: f64,
    pub contribution: f64,
    /// Same difference with the brackets replaced by `π_∓(1/2 − aā/ħ)`.
    pub simplified_contribution: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SusyPhase {
    ExactSusy,
    BrokenSusy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WittenIndex {
    pub levels: Vec<LevelEntry>,
    pub index: f64,
    pub classification: SusyPhase,
}

impl WittenIndex {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Nearest integer to the accumulated index.
    pub fn rounded(&self) -> i64 {
        self.index.round() as i64
    }
}

/// `∫d²a Tr(π_s ⋆ F)` for a state `s`.
fn state_trace(state: &SusyState, f: &PhaseFunction, env: &Bindings) -> Result<f64> {
    let spec = susy_spec();
    let prod = spec.product(&state.wigner, f)?;
    let sub = holomorphic_measure(1.0, 1.0);
    let hbar = Complex64::new(env.hbar, 0.0);
    let value = phase_space_integral(&prod, env, Some(&sub))?.trace(&hbar);
    Ok(value.re)
}

/// Index `tr[π₋ − Q₊⋆Q₋/ħ] − tr[π₊ − Q₋⋆Q₊/ħ]` with the state sum grouped
/// by energy level `0..=n_trunc`.
pub fn witten_index(n_trunc: u32, env: &Bindings) -> Result<WittenIndex> {
    if n_trunc < 1 {
        return Err(Error::InvalidParameter("truncation level must be at least 1".into()));
    }
    let spec = susy_spec();
    let vars = spec.vars();
    let (qp, qm) = supercharges();
    let hbar_inv = Exact::hbar().inverse().expect("ħ is a monomial");
    let up = PhaseFunction::from_multivector(&vars, fermion_projector(SpinLabel::Up));
    let down = PhaseFunction::from_multivector(&vars, fermion_projector(SpinLabel::Down));
    let arg1 = down.sub(&spec.product(&qp, &qm)?.scale(&hbar_inv))?;
    let arg2 = up.sub(&spec.product(&qm, &qp)?.scale(&hbar_inv))?;
    let half_minus = {
        let aa = &Polynomial::var(2, 0) * &Polynomial::var(2, 1);
        spec.from_polynomial(&(Polynomial::constant(2, Exact::rational(1, 2)) - aa.scale(&hbar_inv)))
    };
    let simp1 = down.mul(&half_minus)?;
    let simp2 = up.mul(&half_minus)?;

    let mut levels = Vec::new();
    for level in 0..=n_trunc {
        let (mut b1, mut b2, mut s1, mut s2) = (0.0, 0.0, 0.0, 0.0);
        for (n_b, n_f) in susy_level(level) {
            let state = SusyState::new(n_b, n_f)?;
            b1 += state_trace(&state, &arg1, env)?;
            b2 += state_trace(&state, &arg2, env)?;
            s1 += state_trace(&state, &simp1, env)?;
            s2 += state_trace(&state, &simp2, env)?;
        }
        levels.push(LevelEntry { level, bracket1: b1, bracket2: b2, contribution: b1 - b2, simplified_contribution: s1 - s2 });
    }
    let index: f64 = levels.iter().map(|l| l.contribution).sum();
    let classification = if index.round() != 0.0 { SusyPhase::ExactSusy } else { SusyPhase::BrokenSusy };
    Ok(WittenIndex { levels, index, classification })
}
