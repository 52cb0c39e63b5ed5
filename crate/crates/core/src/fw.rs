//! Foldy-Wouthuysen reduction of the Dirac Hamiltonian in static fields.
//! `c` stays a formal symbol and every series is truncated in powers of
//! `1/c`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dirac::{build_rep, levi_civita, DiracKind};
use crate::error::{Error, Result};
use crate::grassmann::{pauli_form_exact, Mask, Multivector};
use crate::phase::{Block, Exponents, MoyalKind, MoyalSpec, PhaseFunction, Polynomial};
use crate::scalar::{Coeff, Exact};
use crate::spin::sigma_on;

/// Highest power of `1/c` kept relative to the rest energy.
pub const DEFAULT_ORDER: i32 = 4;

/// Largest total degree accepted for `A` and `φ`.
pub const MAX_FIELD_DEGREE: u32 = 4;

/// Phase-space function whose coefficients are Laurent in `c`, with every
/// power of `1/c` above `order` dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct CSeries {
    f: PhaseFunction,
    order: i32,
}

impl CSeries {
    pub fn new(f: PhaseFunction, order: i32) -> Self {
        Self { f: f.map_scalars(|s| s.truncate_c(-order)), order }
    }

    pub fn function(&self) -> &PhaseFunction {
        &self.f
    }

    pub fn into_function(self) -> PhaseFunction {
        self.f
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    fn like(&self, f: PhaseFunction) -> Self {
        Self::new(f, self.order)
    }

    /// Coefficient of `(1/c)^k`, with the `c` factor stripped.
    pub fn coefficient(&self, k: i32) -> PhaseFunction {
        let ck = Exact::c_pow(k);
        self.f.map_scalars(|s| s.c_part(-k) * ck.clone())
    }

    /// Powers `k` of `1/c` carrying a nonzero coefficient.
    pub fn orders(&self) -> BTreeSet<i32> {
        let mut out = BTreeSet::new();
        for (_, block) in self.f.blocks() {
            for u in block.values() {
                for (_, s) in u.terms() {
                    out.extend(s.c_pows().into_iter().map(|l| -l));
                }
            }
        }
        out
    }

    /// Lowest power of `1/c` present.
    pub fn leading_order(&self) -> Option<i32> {
        self.orders().first().copied()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.f.add(&other.f)?, self.order.min(other.order)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.f.sub(&other.f)?, self.order.min(other.order)))
    }

    pub fn scale(&self, s: &Exact) -> Self {
        self.like(self.f.scale(s))
    }

    pub fn star(&self, other: &Self, spec: &MoyalSpec) -> Result<Self> {
        Ok(Self::new(spec.product(&self.f, &other.f)?, self.order.min(other.order)))
    }

    pub fn commutator(&self, other: &Self, spec: &MoyalSpec) -> Result<Self> {
        self.star(other, spec)?.sub(&other.star(self, spec)?)
    }

    /// Complex conjugation combined with Grassmann reversal.
    pub fn conj_reversal(&self) -> Self {
        self.like(self.f.map_coefficients(Multivector::involution))
    }
}

/// The four-generator Dirac representation embedded in the Moyal-Pauli
/// product on `(q₁, q₂, q₃, p₁, p₂, p₃)`.
#[derive(Clone, Debug)]
pub struct FwRep {
    pub spec: MoyalSpec,
    pub order: i32,
    pub beta: CSeries,
    pub alpha: [CSeries; 3],
    pub sigma: [CSeries; 3],
}

pub fn fw_rep(order: i32) -> Result<FwRep> {
    if order < 1 {
        return Err(Error::InvalidParameter(format!("truncation order {order} must be at least 1")));
    }
    let spec = MoyalSpec::moyal_dof(3).with_grassmann(MoyalKind::MoyalPauli, pauli_form_exact(4));
    let rep = build_rep(DiracKind::D4)?;
    let lift = |u: &Multivector<Exact>| -> Result<CSeries> { Ok(CSeries::new(spec.grassmann_element(u.clone())?, order)) };
    let hbar = Exact::hbar();
    Ok(FwRep {
        beta: lift(&rep.beta)?,
        alpha: [lift(&rep.alpha[0])?, lift(&rep.alpha[1])?, lift(&rep.alpha[2])?],
        sigma: [
            lift(&sigma_on(4, 0, 1, &hbar))?,
            lift(&sigma_on(4, 0, 2, &hbar))?,
            lift(&sigma_on(4, 0, 3, &hbar))?,
        ],
        spec,
        order,
    })
}

impl FwRep {
    pub fn series(&self, f: PhaseFunction) -> CSeries {
        CSeries::new(f, self.order)
    }

    pub fn constant(&self, s: Exact) -> CSeries {
        self.series(self.spec.constant(s))
    }

    /// Lift a polynomial in `(q₁, q₂, q₃)`.
    pub fn position_function(&self, p: &Polynomial) -> Result<CSeries> {
        if p.nvars() != 3 {
            return Err(Error::InvalidParameter(format!("expected a polynomial in 3 positions, got {} variables", p.nvars())));
        }
        let images: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(6, i)).collect();
        Ok(self.series(self.spec.from_polynomial(&p.compose(&images))))
    }

    pub fn momentum(&self, i: usize) -> CSeries {
        self.series(self.spec.from_polynomial(&Polynomial::var(6, 3 + i)))
    }

    pub fn star(&self, a: &CSeries, b: &CSeries) -> Result<CSeries> {
        a.star(b, &self.spec)
    }

    pub fn star_all(&self, factors: &[&CSeries]) -> Result<CSeries> {
        let mut out = self.constant(Exact::one());
        for f in factors {
            out = self.star(&out, f)?;
        }
        Ok(out)
    }

    pub fn commutator(&self, a: &CSeries, b: &CSeries) -> Result<CSeries> {
        a.commutator(b, &self.spec)
    }

    /// `β⋆X⋆β`.
    pub fn beta_conjugate(&self, x: &CSeries) -> Result<CSeries> {
        self.star_all(&[&self.beta, x, &self.beta])
    }

    /// `Σ v_i⋆σ^i`.
    pub fn sigma_dot(&self, v: &[CSeries; 3]) -> Result<CSeries> {
        let mut out = self.constant(Exact::zero());
        for (vi, si) in v.iter().zip(&self.sigma) {
            out = out.add(&self.star(vi, si)?)?;
        }
        Ok(out)
    }
}

/// Even and odd parts of `H/mc² = β + E + O` under conjugation by `β`.
pub fn parity_split(h: &CSeries, rep: &FwRep) -> Result<(CSeries, CSeries)> {
    let bhb = rep.beta_conjugate(h)?;
    let half = Exact::rational(1, 2);
    let even = h.add(&bhb)?.scale(&half).sub(&rep.beta)?;
    let odd = h.sub(&bhb)?.scale(&half);
    Ok((even, odd))
}

/// `U = Σ (1/n!)(β⋆O/2)^{⋆n}` and its inverse with `−β⋆O/2`.
pub fn fw_generator(odd: &CSeries, rep: &FwRep) -> Result<(CSeries, CSeries)> {
    if odd.is_zero() {
        let one = rep.constant(Exact::one());
        return Ok((one.clone(), one));
    }
    match odd.leading_order() {
        Some(k) if k >= 1 => {}
        other => {
            return Err(Error::InvalidParameter(format!("odd part must vanish as c → ∞; leading 1/c power {other:?}")))
        }
    }
    let x = rep.star(&rep.beta, odd)?.scale(&Exact::rational(1, 2));
    let series = |x: &CSeries| -> Result<CSeries> {
        let mut term = rep.constant(Exact::one());
        let mut sum = term.clone();
        for n in 1..=odd.order().max(rep.order) {
            term = rep.star(&term, x)?.scale(&Exact::rational(1, n as i64));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
        Ok(sum)
    };
    Ok((series(&x)?, series(&x.scale(&-Exact::one()))?))
}

fn require_polynomial(h: &CSeries) -> Result<()> {
    if h.function().is_polynomial() {
        Ok(())
    } else {
        Err(Error::UnsupportedClass("the Foldy-Wouthuysen step needs polynomial potentials".into()))
    }
}

/// One static transformation `H′ = U⋆H⋆U⁻¹` of `H/mc²`.
pub fn fw_step(h: &CSeries, rep: &FwRep) -> Result<CSeries> {
    require_polynomial(h)?;
    let (_, odd) = parity_split(h, rep)?;
    let (u, u_inv) = fw_generator(&odd, rep)?;
    rep.star_all(&[&u, h, &u_inv])
}

/// Closed rows of the static expansion:
/// even `β(1 + O²/2 − O⁴/8) + E − [O,[O,E]]/8`, odd `β[O,E]/2 − O³/3`.
pub fn expansion_rows(even: &CSeries, odd: &CSeries, rep: &FwRep) -> Result<(CSeries, CSeries)> {
    let o2 = rep.star(odd, odd)?;
    let o3 = rep.star(&o2, odd)?;
    let o4 = rep.star(&o2, &o2)?;
    let oe = rep.commutator(odd, even)?;
    let ooe = rep.commutator(odd, &oe)?;
    let inner = rep
        .constant(Exact::one())
        .add(&o2.scale(&Exact::rational(1, 2)))?
        .sub(&o4.scale(&Exact::rational(1, 8)))?;
    let e_row = rep.star(&rep.beta, &inner)?.add(even)?.sub(&ooe.scale(&Exact::rational(1, 8)))?;
    let o_row = rep.star(&rep.beta, &oe)?.scale(&Exact::rational(1, 2)).sub(&o3.scale(&Exact::rational(1, 3)))?;
    Ok((e_row, o_row))
}

/// Check that `U⋆conj-reversal(U) = 1` to the truncation order.
pub fn generator_is_unitary(odd: &CSeries, rep: &FwRep) -> Result<bool> {
    let (u, _) = fw_generator(odd, rep)?;
    Ok(rep.star(&u, &u.conj_reversal())? == rep.constant(Exact::one()))
}

/// Static potentials as polynomials in `(q₁, q₂, q₃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmField {
    pub a: [Polynomial; 3],
    pub phi: Polynomial,
}

fn lin3(coeffs: [Exact; 3]) -> Polynomial {
    Polynomial::linear(&coeffs)
}

impl EmField {
    pub fn new(a: [Polynomial; 3], phi: Polynomial) -> Result<Self> {
        for p in a.iter().chain(std::iter::once(&phi)) {
            if p.nvars() != 3 {
                return Err(Error::InvalidParameter(format!("potentials must depend on 3 positions, got {}", p.nvars())));
            }
            if p.degree() > MAX_FIELD_DEGREE {
                return Err(Error::InvalidParameter(format!(
                    "potential degree {} exceeds the bound {MAX_FIELD_DEGREE}",
                    p.degree()
                )));
            }
        }
        Ok(Self { a, phi })
    }

    pub fn free() -> Self {
        let z = Polynomial::zero(3);
        Self { a: [z.clone(), z.clone(), z.clone()], phi: z }
    }

    /// Symmetric gauge `A = B×q/2`.
    pub fn constant_b(b: [Exact; 3]) -> Self {
        let h = Exact::rational(1, 2);
        let z = Exact::zero();
        let a = [
            lin3([z.clone(), -(b[2].clone() * h.clone()), b[1].clone() * h.clone()]),
            lin3([b[2].clone() * h.clone(), z.clone(), -(b[0].clone() * h.clone())]),
            lin3([-(b[1].clone() * h.clone()), b[0].clone() * h, z]),
        ];
        Self { a, phi: Polynomial::zero(3) }
    }

    /// `φ = −E·q`.
    pub fn uniform_e(e: [Exact; 3]) -> Self {
        let mut f = Self::free();
        f.phi = lin3(e.map(|x| -x));
        f
    }

    pub fn electrostatic(phi: Polynomial) -> Result<Self> {
        Self::new(Self::free().a, phi)
    }

    /// `B = curl A`.
    pub fn magnetic(&self) -> [Polynomial; 3] {
        let d = |k: usize, i: usize| self.a[k].derivative(i);
        [d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)]
    }

    /// `E = −grad φ`.
    pub fn electric(&self) -> [Polynomial; 3] {
        std::array::from_fn(|i| -self.phi.derivative(i))
    }

    pub fn div_e(&self) -> Polynomial {
        let e = self.electric();
        (0..3).fold(Polynomial::zero(3), |acc, i| acc + e[i].derivative(i))
    }
}

/// Mass and charge; `c` is formal.
#[derive(Clone, Debug, PartialEq)]
pub struct FwParams {
    pub m: Exact,
    pub e: Exact,
}

fn inverse_mass(params: &FwParams) -> Result<Exact> {
    params.m.inverse().ok_or_else(|| Error::NotInvertible("m".into()))
}

/// Kinetic momenta `p_i − (e/c)A_i`.
pub fn kinetic_momenta(field: &EmField, params: &FwParams, rep: &FwRep) -> Result<[CSeries; 3]> {
    let k = params.e.clone() * Exact::c_pow(-1);
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        out.push(rep.momentum(i).sub(&rep.position_function(&field.a[i])?.scale(&k))?);
    }
    Ok(out.try_into().expect("three components"))
}

/// `H/mc² = β + α·(p − eA/c)/mc + eφ/mc²`.
pub fn dirac_em_hamiltonian(field: &EmField, params: &FwParams, rep: &FwRep) -> Result<CSeries> {
    let inv_m = inverse_mass(params)?;
    let pi = kinetic_momenta(field, params, rep)?;
    let mut h = rep.beta.clone();
    let k = inv_m.clone() * Exact::c_pow(-1);
    for i in 0..3 {
        h = h.add(&rep.star(&rep.alpha[i], &pi[i])?.scale(&k))?;
    }
    let pot = rep.position_function(&field.phi)?.scale(&(params.e.clone() * inv_m * Exact::c_pow(-2)));
    h.add(&pot)
}

/// Terms of the reduced Hamiltonian `H″` (in energy units) expected for
/// the given fields, each truncated to the kept orders.
pub fn reduced_hamiltonian_terms(field: &EmField, params: &FwParams, rep: &FwRep) -> Result<Vec<(&'static str, CSeries)>> {
    let inv_m = inverse_mass(params)?;
    let c = |l: i32| Exact::c_pow(l);
    let e = params.e.clone();
    let m = params.m.clone();
    let hbar = Exact::hbar();
    let r = |a: i64, b: i64| Exact::rational(a, b);
    // H″ keeps c² down to c^{2−order}
    let keep = |x: CSeries| CSeries::new(x.into_function(), rep.order - 2);

    let pi = kinetic_momenta(field, params, rep)?;
    let mut pi2 = rep.constant(Exact::zero());
    let mut p2 = rep.constant(Exact::zero());
    for i in 0..3 {
        pi2 = pi2.add(&rep.star(&pi[i], &pi[i])?)?;
        let p = rep.momentum(i);
        p2 = p2.add(&rep.star(&p, &p)?)?;
    }
    let p4 = rep.star(&p2, &p2)?;
    let b = field.magnetic();
    let ef = field.electric();
    let bs: Vec<CSeries> = b.iter().map(|x| rep.position_function(x)).collect::<Result<_>>()?;
    let es: Vec<CSeries> = ef.iter().map(|x| rep.position_function(x)).collect::<Result<_>>()?;
    let mut e_cross_p = Vec::with_capacity(3);
    for k in 0..3 {
        let mut acc = rep.constant(Exact::zero());
        for i in 0..3 {
            for j in 0..3 {
                let eps = levi_civita(k + 1, i + 1, j + 1);
                if eps != 0 {
                    acc = acc.add(&es[i].function().mul(rep.momentum(j).function()).map(|f| rep.series(f))?.scale(&Exact::from(eps)))?;
                }
            }
        }
        e_cross_p.push(acc);
    }
    let e_cross_p: [CSeries; 3] = e_cross_p.try_into().expect("three components");
    let bs: [CSeries; 3] = bs.try_into().expect("three components");

    let beta_times = |x: &CSeries| rep.star(&rep.beta, x);
    let inv_m2 = inv_m.clone() * inv_m.clone();
    let inv_m3 = inv_m2.clone() * inv_m.clone();

    let rest = rep.beta.scale(&(m.clone() * c(2)));
    let kinetic = beta_times(&pi2)?.scale(&(inv_m.clone() * r(1, 2)));
    let relativistic = beta_times(&p4)?.scale(&(-(inv_m3 * r(1, 8)) * c(-2)));
    let magnetic = beta_times(&rep.sigma_dot(&bs)?)?.scale(&(-(e.clone() * hbar.clone() * inv_m.clone() * r(1, 2)) * c(-1)));
    let electrostatic = rep.position_function(&field.phi)?.scale(&e);
    let spin_orbit = rep.sigma_dot(&e_cross_p)?.scale(&(-(e.clone() * hbar.clone() * inv_m2.clone() * r(1, 4)) * c(-2)));
    let darwin = rep
        .position_function(&field.div_e())?
        .scale(&(-(e * hbar.clone() * hbar * inv_m2 * r(1, 8)) * c(-2)));
    Ok(vec![
        ("rest energy", keep(rest)),
        ("kinetic", keep(kinetic)),
        ("relativistic correction", keep(relativistic)),
        ("magnetic moment", keep(magnetic)),
        ("electrostatic", keep(electrostatic)),
        ("spin-orbit", keep(spin_orbit)),
        ("darwin", keep(darwin)),
    ])
}

type Key = (Exponents, Mask, i32);

fn keys(f: &PhaseFunction) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for (_, block) in f.blocks() {
        for (e, u) in block {
            for (mask, s) in u.terms() {
                for l in s.c_pows() {
                    out.insert((e.clone(), mask, l));
                }
            }
        }
    }
    out
}

/// Part of `f` on the given (monomial, Grassmann mask, c power) keys,
/// or off them when `inside` is false.
fn restrict(f: &PhaseFunction, keys: &BTreeSet<Key>, inside: bool) -> PhaseFunction {
    let mut out = f.zero_like();
    for (q, block) in f.blocks() {
        let mut kept = Block::new();
        for (e, u) in block {
            let dim = u.dim();
            let terms: Vec<(Mask, Exact)> = u
                .terms()
                .map(|(mask, s)| {
                    let mut acc = Exact::zero();
                    for l in s.c_pows() {
                        if keys.contains(&(e.clone(), mask, l)) == inside {
                            acc = acc + s.c_part(l);
                        }
                    }
                    (mask, acc)
                })
                .collect();
            let v = Multivector::from_terms(dim, terms);
            if !v.is_zero() {
                kept.insert(e.clone(), v);
            }
        }
        out = out.add(&f.from_block(q, &kept)).expect("same variables");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FwTerm {
    pub term: String,
    pub expected_coefficient: String,
    pub computed_coefficient: String,
    pub residual: String,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FwReport {
    pub terms: Vec<FwTerm>,
    /// Part of `H″` not accounted for by any expected term.
    pub unmatched: String,
    /// Powers of `1/c` of the odd part after the first step.
    pub odd_orders_after_one: Vec<i32>,
    pub odd_vanishes_after_two: bool,
    pub unitary: bool,
    pub pass: bool,
    #[serde(skip)]
    pub reduced: CSeries,
}

/// Two transformation steps on `H/mc²`; returns `(H′, H″)`.
pub fn fw_two_steps(h: &CSeries, rep: &FwRep) -> Result<(CSeries, CSeries)> {
    let h1 = fw_step(h, rep)?;
    let h2 = fw_step(&h1, rep)?;
    Ok((h1, h2))
}

/// Reduce the Dirac Hamiltonian in the given fields and compare `H″`
/// term by term with the expected nonrelativistic expansion.
pub fn fw_dirac_em(field: &EmField, params: &FwParams, order: i32) -> Result<FwReport> {
    let field = EmField::new(field.a.clone(), field.phi.clone())?;
    let rep = fw_rep(order)?;
    let h = dirac_em_hamiltonian(&field, params, &rep)?;
    let (_, odd0) = parity_split(&h, &rep)?;
    let (h1, h2) = fw_two_steps(&h, &rep)?;
    let (_, odd1) = parity_split(&h1, &rep)?;
    let (_, odd2) = parity_split(&h2, &rep)?;
    let unitary = generator_is_unitary(&odd0, &rep)? && generator_is_unitary(&odd1, &rep)?;

    let mc2 = params.m.clone() * Exact::c_pow(2);
    let reduced = CSeries::new(h2.function().scale(&mc2), order - 2);
    let expected = reduced_hamiltonian_terms(&field, params, &rep)?;
    let mut total = reduced.function().zero_like();
    for (_, t) in &expected {
        total = total.add(t.function())?;
    }
    let diff = reduced.function().sub(&total)?;
    let mut all_keys = BTreeSet::new();
    let mut terms = Vec::new();
    for (name, t) in &expected {
        let k = keys(t.function());
        let computed = restrict(reduced.function(), &k, true);
        let residual = restrict(&diff, &k, true);
        terms.push(FwTerm {
            term: name.to_string(),
            expected_coefficient: t.function().to_string(),
            computed_coefficient: computed.to_string(),
            exact: residual.is_zero(),
            residual: residual.to_string(),
        });
        all_keys.extend(k);
    }
    let unmatched = restrict(&diff, &all_keys, false);
    let odd_vanishes_after_two = odd2.is_zero();
    let pass = unitary && odd_vanishes_after_two && diff.is_zero();
    Ok(FwReport {
        terms,
        unmatched: unmatched.to_string(),
        odd_orders_after_one: odd1.orders().into_iter().collect(),
        odd_vanishes_after_two,
        unitary,
        pass,
        reduced,
    })
}

/// The four reference configurations: free particle, constant `B`,
/// uniform `E` (linear `φ`) and a quadratic `φ`.
pub fn reference_cases() -> Vec<(&'static str, EmField)> {
    let r = Exact::rational;
    let quad = {
        let mut p = Polynomial::zero(3);
        for (e, k) in [([2, 0, 0], r(1, 2)), ([0, 2, 0], r(3, 2)), ([0, 0, 2], r(-1, 1)), ([1, 1, 0], r(2, 3)), ([0, 0, 1], r(1, 5))] {
            p = p + Polynomial::monomial(e.to_vec(), k);
        }
        p
    };
    vec![
        ("free", EmField::free()),
        ("constant-b", EmField::constant_b([Exact::zero(), Exact::zero(), r(3, 2)])),
        ("linear-phi", EmField::uniform_e([r(1, 3), r(-2, 1), r(1, 2)])),
        ("quadratic-phi", EmField { a: EmField::free().a, phi: quad }),
    ]
}
