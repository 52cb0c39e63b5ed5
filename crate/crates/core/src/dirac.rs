//! Dirac algebra on four, five or six Grassmann generators under the Pauli
//! star product: γ functions, Lorentz generators, boosts, parity, energy
//! and spin projectors, the Dirac star exponential and Zitterbewegung.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::Multivector;
use crate::scalar::{Bindings, Coeff, Exact};
use crate::spin::sigma_on;
use crate::star::{star_exp_complex, StarExpPath, StarProductSpec};

type Mv<S> = Multivector<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiracKind {
    /// `α^i = σ^iσ⁴`, `β = σ⁶` with two σ triples on `θ₁…θ₆`.
    D6,
    /// `α^i = √(2/ħ)σ^iθ₅`, `β = (2i/ħ)θ₄θ₅`.
    D5,
    /// `α^i = √(2/ħ)θ_i`, `β = √(2/ħ)θ₄`.
    D4,
}

impl DiracKind {
    pub const ALL: [DiracKind; 3] = [DiracKind::D6, DiracKind::D5, DiracKind::D4];

    pub fn dim(self) -> usize {
        match self {
            DiracKind::D6 => 6,
            DiracKind::D5 => 5,
            DiracKind::D4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DiracKind::D6 => "D6",
            DiracKind::D5 => "D5",
            DiracKind::D4 => "D4",
        }
    }
}

/// `g^{μν} = diag(1, −1, −1, −1)`.
pub fn metric(mu: usize, nu: usize) -> i64 {
    match (mu, nu) {
        (0, 0) => 1,
        (a, b) if a == b => -1,
        _ => 0,
    }
}

/// `ε_{ijk}` on 1-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// α, β and the derived γ functions of one representation.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracRep<S> {
    pub kind: DiracKind,
    pub hbar: S,
    pub spec: StarProductSpec<S>,
    pub alpha: [Mv<S>; 3],
    pub beta: Mv<S>,
    /// `γ⁰ = β`, `γ^i = β⋆α^i`.
    pub gamma: [Mv<S>; 4],
    /// `γ⁵ = iγ⁰γ¹γ²γ³`.
    pub gamma5: Mv<S>,
}

/// Build a representation with exact `ħ` and check the Dirac algebra.
pub fn build_rep(kind: DiracKind) -> Result<DiracRep<Exact>> {
    let d = kind.dim();
    let hbar = Exact::hbar();
    // √(2/ħ) = 1/h
    let root = Exact::h_pow(-1);
    let (alpha, beta) = match kind {
        DiracKind::D6 => {
            let s4 = sigma_on(d, 3, 1, &hbar);
            let alpha = std::array::from_fn(|i| sigma_on(d, 0, i + 1, &hbar).wedge(&s4).expect("same dimension"));
            (alpha, sigma_on(d, 3, 3, &hbar))
        }
        DiracKind::D5 => {
            let t5 = Mv::theta(d, 5).scale(&root);
            let alpha = std::array::from_fn(|i| sigma_on(d, 0, i + 1, &hbar).wedge(&t5).expect("same dimension"));
            let k = Exact::imag_unit() * Exact::from(2) * hbar.inverse().expect("ħ is a monomial");
            (alpha, Mv::product_of(d, &[4, 5]).scale(&k))
        }
        DiracKind::D4 => {
            let alpha = std::array::from_fn(|i| Mv::theta(d, i + 1).scale(&root));
            (alpha, Mv::theta(d, 4).scale(&root))
        }
    };
    let rep = DiracRep::from_alpha_beta(kind, hbar, alpha, beta)?;
    let bad: Vec<String> = rep.algebra_residuals()?.into_iter().filter(|(_, r)| !r.is_zero()).map(|(n, _)| n).collect();
    if !bad.is_empty() {
        return Err(Error::InvalidParameter(format!("Dirac algebra fails: {}", bad.join(", "))));
    }
    Ok(rep)
}

impl DiracRep<Exact> {
    pub fn to_complex(&self, env: &Bindings) -> DiracRep<Complex64> {
        let f = |u: &Mv<Exact>| u.to_complex(env);
        DiracRep {
            kind: self.kind,
            hbar: Complex64::new(env.hbar, 0.0),
            spec: self.spec.map(|s| s.to_complex(env)),
            alpha: self.alpha.each_ref().map(f),
            beta: f(&self.beta),
            gamma: self.gamma.each_ref().map(f),
            gamma5: f(&self.gamma5),
        }
    }
}

impl<S: Coeff> DiracRep<S> {
    fn from_alpha_beta(kind: DiracKind, hbar: S, alpha: [Mv<S>; 3], beta: Mv<S>) -> Result<Self> {
        let spec = StarProductSpec::Pauli { dim: kind.dim(), hbar: hbar.clone() };
        let g = |i: usize| spec.product(&beta, &alpha[i]);
        let gamma = [beta.clone(), g(0)?, g(1)?, g(2)?];
        let gamma5 = spec.product_all(&gamma)?.scale(&S::imag_unit());
        Ok(Self { kind, hbar, spec, alpha, beta, gamma, gamma5 })
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn star(&self, u: &Mv<S>, v: &Mv<S>) -> Result<Mv<S>> {
        self.spec.product(u, v)
    }

    pub fn star_all(&self, factors: &[&Mv<S>]) -> Result<Mv<S>> {
        self.spec.product_all(factors.iter().copied())
    }

    pub fn scalar(&self, s: S) -> Mv<S> {
        Mv::scalar(self.dim(), s)
    }

    /// Named `{α,α} − 2δ`, `{α,β}`, `β⋆β − 1` and `{γ,γ} − 2g` residuals.
    pub fn algebra_residuals(&self) -> Result<Vec<(String, Mv<S>)>> {
        let mut out = Vec::new();
        let two = |k: i64| self.scalar(S::from_int(2 * k));
        for k in 0..3 {
            for l in k..3 {
                let r = self.spec.anticommutator(&self.alpha[k], &self.alpha[l])? - two(i64::from(k == l));
                out.push((format!("{{alpha{},alpha{}}}", k + 1, l + 1), r));
            }
            out.push((format!("{{alpha{},beta}}", k + 1), self.spec.anticommutator(&self.alpha[k], &self.beta)?));
        }
        out.push(("beta*beta".into(), self.star(&self.beta, &self.beta)? - self.scalar(S::one())));
        for mu in 0..4 {
            for nu in mu..4 {
                let r = self.spec.anticommutator(&self.gamma[mu], &self.gamma[nu])? - two(metric(mu, nu));
                out.push((format!("{{gamma{mu},gamma{nu}}}"), r));
            }
        }
        Ok(out)
    }

    /// `Tr F = (4/ħ^d)∫⋆F`, i.e. four times the scalar part.
    pub fn trace(&self, u: &Mv<S>) -> S {
        u.trace_with(&S::from_int(4), &self.hbar)
    }

    /// `γ_μ = g_{μμ}γ^μ`.
    pub fn gamma_lower(&self, mu: usize) -> Mv<S> {
        self.gamma[mu].scale(&S::from_int(metric(mu, mu)))
    }

    /// `v̸ = γ^μ v_μ` for a contravariant `v`.
    pub fn slash(&self, v: &[S; 4]) -> Mv<S> {
        (0..4).fold(Mv::zero(self.dim()), |acc, mu| acc + self.gamma_lower(mu).scale(&v[mu]))
    }

    /// `K_i = i(ħ/2)α^i`, 1-based.
    pub fn boost_generator(&self, i: usize) -> Mv<S> {
        self.alpha[i - 1].scale(&(S::imag_unit() * self.hbar.clone() * S::from_ratio(1, 2)))
    }

    /// `S_i = −i(ħ/4)ε_{ijk}α^j⋆α^k`, 1-based.
    pub fn spin_generator(&self, i: usize) -> Result<Mv<S>> {
        let k = -S::imag_unit() * self.hbar.clone() * S::from_ratio(1, 4);
        let mut out = Mv::zero(self.dim());
        for j in 1..=3 {
            for l in 1..=3 {
                let e = levi_civita(i, j, l);
                if e != 0 {
                    out += self.star(&self.alpha[j - 1], &self.alpha[l - 1])?.scale(&(k.clone() * S::from_int(e)));
                }
            }
        }
        Ok(out)
    }

    /// `σ^{μν} = (i/2)[γ^μ, γ^ν]`.
    pub fn sigma_mu_nu(&self, mu: usize, nu: usize) -> Result<Mv<S>> {
        Ok(self.spec.commutator(&self.gamma[mu], &self.gamma[nu])?.scale(&(S::imag_unit() * S::from_ratio(1, 2))))
    }

    /// `P(X) = β⋆X⋆β`.
    pub fn parity(&self, x: &Mv<S>) -> Result<Mv<S>> {
        self.star_all(&[&self.beta, x, &self.beta])
    }

    /// `Λ^μ_ν` from images of the γ functions, `Tr(image(γ^μ)⋆γ_ν)/4`.
    pub fn lambda_from(&self, image: impl Fn(&Mv<S>) -> Result<Mv<S>>) -> Result<[[S; 4]; 4]> {
        let quarter = S::from_ratio(1, 4);
        let mut out: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
        for mu in 0..4 {
            let img = image(&self.gamma[mu])?;
            for nu in 0..4 {
                out[mu][nu] = self.trace(&self.star(&img, &self.gamma_lower(nu))?) * quarter.clone();
            }
        }
        Ok(out)
    }

    /// `U = a − ib(n·σ)` with `σ^i = (2/ħ)S_i` and its inverse
    /// `(a + ib(n·σ))/(a² + b²)`; conjugation `U⋆X⋆U⁻¹` rotates by the
    /// angle with `cos φ = (a²−b²)/(a²+b²)`, `sin φ = 2ab/(a²+b²)`.
    pub fn rotor(&self, a: &S, b: &S, n: &[S; 3]) -> Result<(Mv<S>, Mv<S>)> {
        let two_over_hbar = S::from_int(2) * self.hbar.inverse().ok_or_else(|| Error::NotInvertible("ħ".into()))?;
        let mut n_sigma = Mv::zero(self.dim());
        for i in 0..3 {
            n_sigma += self.spin_generator(i + 1)?.scale(&(n[i].clone() * two_over_hbar.clone()));
        }
        let norm = (a.clone() * a.clone() + b.clone() * b.clone())
            .inverse()
            .ok_or_else(|| Error::NotInvertible("a² + b²".into()))?;
        let ib = S::imag_unit() * b.clone();
        let u = self.scalar(a.clone()) - n_sigma.scale(&ib);
        let u_inv = (self.scalar(a.clone()) + n_sigma.scale(&ib)).scale(&norm);
        Ok((u, u_inv))
    }

    /// `H_D = cα·p + βmc²`.
    pub fn hamiltonian(&self, kin: &Kinematics<S>) -> Mv<S> {
        let c = kin.c.clone();
        let mut h = self.beta.scale(&(kin.m.clone() * c.clone() * c.clone()));
        for i in 0..3 {
            h += self.alpha[i].scale(&(c.clone() * kin.p[i].clone()));
        }
        h
    }

    /// `H_D⁻¹ = H_D/E²`.
    pub fn hamiltonian_inverse(&self, kin: &Kinematics<S>) -> Result<Mv<S>> {
        let e2 = kin.energy.clone() * kin.energy.clone();
        Ok(self.hamiltonian(kin).scale(&e2.inverse().ok_or_else(|| Error::NotInvertible("E²".into()))?))
    }

    /// `π_{±E} = (1 ± H_D/E)/2`, returned as `(π₊, π₋)`.
    pub fn energy_projectors(&self, kin: &Kinematics<S>) -> Result<(Mv<S>, Mv<S>)> {
        let e_inv = kin.energy.inverse().ok_or_else(|| Error::InvalidParameter("zero energy".into()))?;
        let half = S::from_ratio(1, 2);
        let h = self.hamiltonian(kin).scale(&(e_inv * half.clone()));
        let one = self.scalar(half);
        Ok((one.clone() + h.clone(), one - h))
    }

    /// `S_u = (ħ/2)γ⁵⋆(γ·u)`.
    pub fn spin_operator(&self, u: &[S; 3]) -> Result<Mv<S>> {
        let gu = (0..3).fold(Mv::zero(self.dim()), |acc, i| acc + self.gamma[i + 1].scale(&u[i]));
        Ok(self.star(&self.gamma5, &gu)?.scale(&(self.hbar.clone() * S::from_ratio(1, 2))))
    }

    /// `π_{±s} = 1/2 ± S_u/ħ` as `(π₊, π₋)`; `u` must be a unit vector
    /// orthogonal to the momentum.
    pub fn spin_projectors(&self, kin: &Kinematics<S>, u: &[S; 3]) -> Result<(Mv<S>, Mv<S>)> {
        let dot = |a: &[S; 3], b: &[S; 3]| (0..3).fold(S::zero(), |acc, i| acc + a[i].clone() * b[i].clone());
        if (dot(u, u) - S::one()).magnitude() > 1e-12 {
            return Err(Error::InvalidParameter("spin axis is not a unit vector".into()));
        }
        if dot(u, &kin.p).magnitude() > 1e-12 * (1.0 + dot(&kin.p, &kin.p).magnitude()) {
            return Err(Error::InvalidParameter("spin axis is not orthogonal to the momentum".into()));
        }
        let s = self.spin_operator(u)?.scale(&self.hbar.inverse().expect("ħ checked nonzero"));
        let half = self.scalar(S::from_ratio(1, 2));
        Ok((half.clone() + s.clone(), half - s))
    }

    /// `π_{±m}(p) = (±p̸ + mc)/2mc` as `(π₊, π₋)` for an on-shell
    /// contravariant `p`.
    pub fn covariant_energy_projectors(&self, kin: &Kinematics<S>) -> Result<(Mv<S>, Mv<S>)> {
        let p4 = kin.four_momentum()?;
        let mc = kin.m.clone() * kin.c.clone();
        let k = (mc.clone() * S::from_int(2)).inverse().ok_or_else(|| Error::InvalidParameter("mc = 0".into()))?;
        let ps = self.slash(&p4).scale(&k);
        let half = self.scalar(S::from_ratio(1, 2));
        Ok((half.clone() + ps.clone(), half - ps))
    }

    /// `π_{±s}(u) = (1 ∓ γ⁵⋆u̸)/2` as `(π₊, π₋)` for `u^μu_μ = −1`,
    /// `u^μp_μ = 0`.
    pub fn covariant_spin_projectors(&self, kin: &Kinematics<S>, u: &[S; 4]) -> Result<(Mv<S>, Mv<S>)> {
        let p4 = kin.four_momentum()?;
        let mink = |a: &[S; 4], b: &[S; 4]| {
            (0..4).fold(S::zero(), |acc, mu| acc + a[mu].clone() * b[mu].clone() * S::from_int(metric(mu, mu)))
        };
        if (mink(u, u) + S::one()).magnitude() > 1e-12 {
            return Err(Error::InvalidParameter("u^μ u_μ must be −1".into()));
        }
        if mink(u, &p4).magnitude() > 1e-12 * (1.0 + mink(&p4, &p4).magnitude()) {
            return Err(Error::InvalidParameter("u^μ p_μ must vanish".into()));
        }
        let g5u = self.star(&self.gamma5, &self.slash(u))?.scale(&S::from_ratio(1, 2));
        let half = self.scalar(S::from_ratio(1, 2));
        Ok((half.clone() - g5u.clone(), half + g5u))
    }

    /// Trace identities for the γ functions, each with its expected value.
    pub fn gamma_trace_suite(&self) -> Result<Vec<TraceCheck<S>>> {
        let mut out = Vec::new();
        let mut push = |name: String, value: S, expected: i64| {
            let expected = S::from_int(expected);
            let pass = (value.clone() - expected.clone()).magnitude() <= 1e-12;
            out.push(TraceCheck { name, value, expected, pass });
        };
        push("Tr(1)".into(), self.trace(&self.scalar(S::one())), 4);
        push("Tr(gamma5)".into(), self.trace(&self.gamma5), 0);
        for mu in 0..4 {
            push(format!("Tr(g{mu})"), self.trace(&self.gamma[mu]), 0);
            for nu in 0..4 {
                let two = self.star(&self.gamma[mu], &self.gamma[nu])?;
                push(format!("Tr(g{mu} g{nu})"), self.trace(&two), 4 * metric(mu, nu));
                for rho in 0..4 {
                    let three = self.star(&two, &self.gamma[rho])?;
                    push(format!("Tr(g{mu} g{nu} g{rho})"), self.trace(&three), 0);
                    for sigma in 0..4 {
                        let four = self.star(&three, &self.gamma[sigma])?;
                        let g = metric;
                        let want = 4 * (g(mu, nu) * g(rho, sigma) - g(mu, rho) * g(nu, sigma) + g(mu, sigma) * g(nu, rho));
                        push(format!("Tr(g{mu} g{nu} g{rho} g{sigma})"), self.trace(&four), want);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceCheck<S> {
    pub name: String,
    pub value: S,
    pub expected: S,
    pub pass: bool,
}

/// Mass, light speed, momentum and `E = √(c²p² + m²c⁴)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kinematics<S> {
    pub m: S,
    pub c: S,
    pub p: [S; 3],
    pub energy: S,
}

impl Kinematics<Exact> {
    /// Exact kinematics with a supplied positive energy; fails unless
    /// `E² = c²p² + m²c⁴`.
    pub fn exact(m: Exact, c: Exact, p: [Exact; 3], energy: Exact) -> Result<Self> {
        let kin = Self { m, c, p, energy };
        if kin.energy.clone() * kin.energy.clone() != kin.energy_squared() {
            return Err(Error::InvalidParameter(format!("E = {} is off shell", kin.energy)));
        }
        Ok(kin)
    }

    pub fn to_complex(&self, env: &Bindings) -> Kinematics<Complex64> {
        let f = |s: &Exact| s.to_complex(env);
        Kinematics { m: f(&self.m), c: f(&self.c), p: self.p.each_ref().map(f), energy: f(&self.energy) }
    }
}

impl Kinematics<Complex64> {
    pub fn float(m: f64, c: f64, p: [f64; 3]) -> Result<Self> {
        if m <= 0.0 || c <= 0.0 {
            return Err(Error::InvalidParameter("mass and light speed must be positive".into()));
        }
        let p2: f64 = p.iter().map(|x| x * x).sum();
        let energy = (c * c * p2 + m * m * c.powi(4)).sqrt();
        let r = |x: f64| Complex64::new(x, 0.0);
        Ok(Self { m: r(m), c: r(c), p: p.map(r), energy: r(energy) })
    }

    /// Rapidity `ω` with `Exp(−ω·K)⋆γ⁰⋆Exp(ω·K) = p̸/mc`.
    pub fn rapidity(&self) -> [f64; 3] {
        let p = self.p.map(|x| x.re);
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return [0.0; 3];
        }
        let w = (norm / (self.m.re * self.c.re)).asinh();
        p.map(|x| -w * x / norm)
    }
}

impl<S: Coeff> Kinematics<S> {
    pub fn energy_squared(&self) -> S {
        let c2 = self.c.clone() * self.c.clone();
        let p2 = self.p.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
        c2.clone() * p2 + self.m.clone() * self.m.clone() * c2.clone() * c2
    }

    /// `p^μ = (E/c, p)`.
    pub fn four_momentum(&self) -> Result<[S; 4]> {
        let c_inv = self.c.inverse().ok_or_else(|| Error::NotInvertible("c".into()))?;
        Ok([self.energy.clone() * c_inv, self.p[0].clone(), self.p[1].clone(), self.p[2].clone()])
    }
}

impl DiracRep<Complex64> {
    fn hbar_f(&self) -> f64 {
        self.hbar.re
    }

    /// `Exp_P(X t) = Σ (t/iħ)ⁿ X^{⋆n}/n!`.
    pub fn star_exp(&self, x: &Mv<Complex64>, t: f64) -> Result<(Mv<Complex64>, StarExpPath)> {
        star_exp_complex(x, &self.spec.form(), self.hbar_f(), t)
    }

    fn dot_k(&self, w: &[f64; 3]) -> Mv<Complex64> {
        (0..3).fold(Mv::zero(self.dim()), |acc, i| acc + self.boost_generator(i + 1).scale(&Complex64::new(w[i], 0.0)))
    }

    /// `Exp_P(ω·K)`.
    pub fn boost_element(&self, w: &[f64; 3]) -> Result<Mv<Complex64>> {
        Ok(self.star_exp(&self.dot_k(w), 1.0)?.0)
    }

    /// `Exp_P(−ω·K)⋆X⋆Exp_P(ω·K)`.
    pub fn boost(&self, w: &[f64; 3], x: &Mv<Complex64>) -> Result<Mv<Complex64>> {
        let fwd = self.boost_element(w)?;
        let back = self.boost_element(&w.map(|v| -v))?;
        self.star_all(&[&back, x, &fwd])
    }

    /// `(ħ/4)σ^{μν}ω_{μν}` summed over all index pairs.
    pub fn lorentz_generator(&self, omega: &[[f64; 4]; 4]) -> Result<Mv<Complex64>> {
        let mut g = Mv::zero(self.dim());
        for mu in 0..4 {
            for nu in 0..4 {
                if mu != nu && omega[mu][nu] != 0.0 {
                    g += self.sigma_mu_nu(mu, nu)?.scale(&Complex64::new(self.hbar_f() * omega[mu][nu] / 4.0, 0.0));
                }
            }
        }
        Ok(g)
    }

    /// `Exp_P(−G)⋆X⋆Exp_P(G)` with `G = (ħ/4)σ^{μν}ω_{μν}` for antisymmetric
    /// covariant `ω_{μν}`.
    pub fn lorentz_transform(&self, omega: &[[f64; 4]; 4], x: &Mv<Complex64>) -> Result<Mv<Complex64>> {
        let g = self.lorentz_generator(omega)?;
        let fwd = self.star_exp(&g, 1.0)?.0;
        let back = self.star_exp(&g, -1.0)?.0;
        self.star_all(&[&back, x, &fwd])
    }

    /// `Exp_MP(H_D t) = π₋e^{itE/ħ} + π₊e^{−itE/ħ}`.
    pub fn dirac_star_exp(&self, kin: &Kinematics<Complex64>, t: f64) -> Result<Mv<Complex64>> {
        let (plus, minus) = self.energy_projectors(kin)?;
        let phase = Complex64::new(0.0, t * kin.energy.re / self.hbar_f());
        Ok(minus.scale(&phase.exp()) + plus.scale(&(-phase).exp()))
    }

    /// `x_i(t) − x_i`, the Grassmann-valued part of the Heisenberg position:
    /// `c²p_i t H⁻¹ + (iħc/2)(α_i − cp_iH⁻¹)⋆H⁻¹⋆(Exp(2H t) − 1)`.
    pub fn position_shift(&self, kin: &Kinematics<Complex64>, i: usize, t: f64) -> Result<Mv<Complex64>> {
        let (drift, osc) = self.position_parts(kin, i, t)?;
        Ok(drift + osc)
    }

    /// Drift `c²p_i t H⁻¹` and oscillating remainder of [`Self::position_shift`].
    pub fn position_parts(&self, kin: &Kinematics<Complex64>, i: usize, t: f64) -> Result<(Mv<Complex64>, Mv<Complex64>)> {
        let c = kin.c;
        let h_inv = self.hamiltonian_inverse(kin)?;
        let drift = h_inv.scale(&(c * c * kin.p[i - 1] * t));
        let a = self.alpha[i - 1].clone() - h_inv.scale(&(c * kin.p[i - 1]));
        let e2 = self.dirac_star_exp(kin, 2.0 * t)? - self.scalar(Complex64::new(1.0, 0.0));
        let k = Complex64::new(0.0, self.hbar_f() / 2.0) * c;
        let osc = self.star_all(&[&a, &h_inv, &e2])?.scale(&k);
        Ok((drift, osc))
    }

    /// `dx_i/dt = c²p_iH⁻¹ + c(α_i − cp_iH⁻¹)⋆Exp(2H t)`.
    pub fn velocity(&self, kin: &Kinematics<Complex64>, i: usize, t: f64) -> Result<Mv<Complex64>> {
        let c = kin.c;
        let h_inv = self.hamiltonian_inverse(kin)?;
        let a = self.alpha[i - 1].clone() - h_inv.scale(&(c * kin.p[i - 1]));
        let e2 = self.dirac_star_exp(kin, 2.0 * t)?;
        Ok(h_inv.scale(&(c * c * kin.p[i - 1])) + self.star(&a, &e2)?.scale(&c))
    }

    /// `iħẋ_i − [x_i(t), H_D]`, using `[x_i, H_D] = iħcα_i` for the
    /// phase-space part.
    pub fn heisenberg_residual(&self, kin: &Kinematics<Complex64>, i: usize, t: f64) -> Result<Mv<Complex64>> {
        let ih = Complex64::new(0.0, self.hbar_f());
        let h = self.hamiltonian(kin);
        let shift = self.position_shift(kin, i, t)?;
        let bracket = self.alpha[i - 1].scale(&(ih * kin.c)) + self.spec.commutator(&shift, &h)?;
        Ok(self.velocity(kin, i, t)?.scale(&ih) - bracket)
    }

    /// Drift velocity in the positive and negative energy sectors,
    /// `Tr(π_±⋆c²p_iH⁻¹)/Tr(π_±) = ±c²p_i/E`.
    pub fn drift_slopes(&self, kin: &Kinematics<Complex64>, i: usize) -> Result<(f64, f64)> {
        let (plus, minus) = self.energy_projectors(kin)?;
        let v = self.hamiltonian_inverse(kin)?.scale(&(kin.c * kin.c * kin.p[i - 1]));
        let slope = |pi: &Mv<Complex64>| -> Result<f64> { Ok((self.trace(&self.star(pi, &v)?) / self.trace(pi)).re) };
        Ok((slope(&plus)?, slope(&minus)?))
    }

    /// Samples of the drift `c²p_i t/E` (positive-energy sector) and the
    /// largest coefficient of the oscillating part, per component.
    pub fn zitterbewegung(&self, kin: &Kinematics<Complex64>, times: &[f64]) -> Result<Vec<ZitterSample>> {
        times
            .iter()
            .map(|&t| {
                let mut drift = [0.0; 3];
                let mut oscillation = [0.0; 3];
                for i in 1..=3 {
                    let (_, osc) = self.position_parts(kin, i, t)?;
                    let c = kin.c.re;
                    drift[i - 1] = c * c * kin.p[i - 1].re * t / kin.energy.re;
                    oscillation[i - 1] = osc.terms().map(|(_, z)| z.norm()).fold(0.0, f64::max);
                }
                Ok(ZitterSample { t, drift, oscillation })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZitterSample {
    pub t: f64,
    pub drift: [f64; 3],
    pub oscillation: [f64; 3],
}
