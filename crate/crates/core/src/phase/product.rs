use super::function::PhaseFunction;
use crate::error::{Error, Result};
use crate::grassmann::{circle_product, pauli_form_exact, BilinearForm, Multivector};
use crate::scalar::{Coeff, Exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoyalKind {
    /// `(iħ/2)(∂←_q∂→_p − ∂←_p∂→_q)` per degree of freedom.
    Moyal,
    /// Moyal product in `(q₁, q₂, p̃₁, p̃₂)` with kinetic momenta.
    Tilde,
    /// `(ħ/2)(∂←_a∂→_ā − ∂←_ā∂→_a)`.
    Holomorphic,
    /// Moyal on `(q, p)` combined with the Pauli product on `θ`.
    MoyalPauli,
    /// Holomorphic bosonic combined with holomorphic fermionic.
    Supersymmetric,
    /// Tilde-Moyal combined with the Pauli product on `θ`.
    TildePauli,
    Custom,
}

/// Bidifferential kernel `exp(Σ P_ij ∂←_i ∂→_j)` on the bosonic variables,
/// with an optional circle product on the Grassmann coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MoyalSpec {
    kind: MoyalKind,
    vars: Vec<String>,
    pairing: Vec<Exact>,
    grassmann: Option<BilinearForm<Exact>>,
}

impl MoyalSpec {
    /// The bosonic table must be antisymmetric.
    pub fn new(
        kind: MoyalKind,
        vars: &[&str],
        pairing: Vec<Exact>,
        grassmann: Option<BilinearForm<Exact>>,
    ) -> Result<Self> {
        let n = vars.len();
        if pairing.len() != n * n {
            return Err(Error::InvalidParameter(format!("pairing table needs {} entries", n * n)));
        }
        for i in 0..n {
            for j in 0..n {
                if pairing[i * n + j].clone() + pairing[j * n + i].clone() != Exact::zero() {
                    return Err(Error::InvalidParameter(format!("pairing of {} and {} is not antisymmetric", vars[i], vars[j])));
                }
            }
        }
        Ok(Self { kind, vars: vars.iter().map(|s| s.to_string()).collect(), pairing, grassmann })
    }

    fn from_pairs(kind: MoyalKind, vars: &[&str], pairs: &[(usize, usize, Exact)], grassmann: Option<BilinearForm<Exact>>) -> Self {
        let n = vars.len();
        let mut table = vec![Exact::zero(); n * n];
        for (i, j, c) in pairs {
            table[i * n + j] = c.clone();
            table[j * n + i] = -c.clone();
        }
        Self::new(kind, vars, table, grassmann).expect("antisymmetric by construction")
    }

    /// Moyal product on `(q, p)`.
    pub fn moyal() -> Self {
        Self::from_pairs(MoyalKind::Moyal, &["q", "p"], &[(0, 1, i_hbar_half())], None)
    }

    /// Moyal product on `(q₁…q_n, p₁…p_n)`.
    pub fn moyal_dof(n: usize) -> Self {
        let names = canonical_names(n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let pairs: Vec<_> = (0..n).map(|i| (i, n + i, i_hbar_half())).collect();
        Self::from_pairs(MoyalKind::Moyal, &refs, &pairs, None)
    }

    /// Moyal product in `(q₁, q₂, p̃₁, p̃₂)` with `p̃ = p − (e/c)A` in the
    /// symmetric gauge.
    pub fn tilde(m: &Exact, omega: &Exact) -> Self {
        let mw = m.clone() * omega.clone();
        Self::from_pairs(
            MoyalKind::Tilde,
            &["q1", "q2", "pt1", "pt2"],
            &[(0, 2, i_hbar_half()), (1, 3, i_hbar_half()), (2, 3, i_hbar_half() * mw)],
            None,
        )
    }

    pub fn holomorphic() -> Self {
        Self::from_pairs(MoyalKind::Holomorphic, &["a", "abar"], &[(0, 1, Exact::hbar() * Exact::rational(1, 2))], None)
    }

    /// Moyal on three degrees of freedom with the Pauli product on three
    /// generators.
    pub fn moyal_pauli() -> Self {
        let mut s = Self::moyal_dof(3);
        s.kind = MoyalKind::MoyalPauli;
        s.grassmann = Some(pauli_form_exact(3));
        s
    }

    pub fn with_grassmann(mut self, kind: MoyalKind, form: BilinearForm<Exact>) -> Self {
        self.kind = kind;
        self.grassmann = Some(form);
        self
    }

    pub fn kind(&self) -> MoyalKind {
        self.kind
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn grass_dim(&self) -> usize {
        self.grassmann.as_ref().map_or(0, BilinearForm::dim)
    }

    pub fn grassmann(&self) -> Option<&BilinearForm<Exact>> {
        self.grassmann.as_ref()
    }

    pub fn pairing(&self, i: usize, j: usize) -> Exact {
        self.pairing[i * self.vars.len() + j].clone()
    }

    /// Zero function in this product's variables.
    pub fn zero(&self) -> PhaseFunction {
        PhaseFunction::zero(&self.vars(), self.grass_dim())
    }

    pub fn constant(&self, c: Exact) -> PhaseFunction {
        PhaseFunction::constant(&self.vars(), self.grass_dim(), c)
    }

    pub fn var(&self, name: &str) -> Result<PhaseFunction> {
        PhaseFunction::variable(&self.vars(), self.grass_dim(), name)
    }

    pub fn from_polynomial(&self, p: &super::Polynomial) -> PhaseFunction {
        PhaseFunction::from_polynomial(&self.vars(), self.grass_dim(), p)
    }

    pub fn grassmann_element(&self, u: Multivector<Exact>) -> Result<PhaseFunction> {
        if u.dim() != self.grass_dim() {
            return Err(Error::DimensionMismatch { left: u.dim(), right: self.grass_dim() });
        }
        Ok(PhaseFunction::from_multivector(&self.vars(), u))
    }

    pub fn product(&self, f: &PhaseFunction, g: &PhaseFunction) -> Result<PhaseFunction> {
        moyal_product(f, g, self)
    }

    pub fn product_all(&self, factors: &[&PhaseFunction]) -> Result<PhaseFunction> {
        factors.iter().try_fold(self.constant(Exact::one()), |acc, f| self.product(&acc, f))
    }

    pub fn commutator(&self, f: &PhaseFunction, g: &PhaseFunction) -> Result<PhaseFunction> {
        self.product(f, g)?.sub(&self.product(g, f)?)
    }
}

fn i_hbar_half() -> Exact {
    Exact::imag_unit() * Exact::hbar() * Exact::rational(1, 2)
}

fn canonical_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("q{i}")).chain((1..=n).map(|i| format!("p{i}"))).collect()
}

fn combine_for(spec: &MoyalSpec) -> impl Fn(&Multivector<Exact>, &Multivector<Exact>) -> Result<Multivector<Exact>> + '_ {
    move |u, v| match &spec.grassmann {
        Some(b) => circle_product(u, v, b),
        None => u.wedge(v),
    }
}

/// `Σ_j P_ij ∂_j` (right operator) or `Σ_i P_ij ∂_i` (left operator).
fn paired_derivative(f: &PhaseFunction, spec: &MoyalSpec, i: usize, left: bool) -> PhaseFunction {
    let n = f.nvars();
    let mut out = f.zero_like();
    for j in 0..n {
        let c = if left { spec.pairing(j, i) } else { spec.pairing(i, j) };
        if !c.is_zero() {
            out.add_scaled(&f.derivative(j), Some(&c)).expect("same variables");
        }
    }
    out
}

/// `Σ_α (1/α!) (∂^α p)(D^α g)` where `p` is polynomial; `poly_left` tells
/// whether `p` is the left factor.
fn expand(
    p: &PhaseFunction,
    g: &PhaseFunction,
    spec: &MoyalSpec,
    poly_left: bool,
    combine: &impl Fn(&Multivector<Exact>, &Multivector<Exact>) -> Result<Multivector<Exact>>,
) -> Result<PhaseFunction> {
    let n = p.nvars();
    let degrees: Vec<u32> = (0..n)
        .map(|i| p.blocks().flat_map(|(_, b)| b.keys().map(move |e| e[i])).max().unwrap_or(0))
        .collect();
    let mut acc = p.zero_like();
    recurse(0, p.clone(), g.clone(), Exact::one(), &degrees, spec, poly_left, combine, &mut acc)?;
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    var: usize,
    p: PhaseFunction,
    g: PhaseFunction,
    weight: Exact,
    degrees: &[u32],
    spec: &MoyalSpec,
    poly_left: bool,
    combine: &impl Fn(&Multivector<Exact>, &Multivector<Exact>) -> Result<Multivector<Exact>>,
    acc: &mut PhaseFunction,
) -> Result<()> {
    if p.is_zero() || g.is_zero() {
        return Ok(());
    }
    if var == degrees.len() {
        let term = if poly_left { p.pointwise_with(&g, combine)? } else { g.pointwise_with(&p, combine)? };
        acc.add_scaled(&term, Some(&weight))?;
        return Ok(());
    }
    let (mut dp, mut dg, mut w) = (p, g, weight);
    for k in 0..=degrees[var] {
        if k > 0 {
            dp = dp.derivative(var);
            if dp.is_zero() {
                break;
            }
            // the polynomial side takes the plain derivative; the other side
            // takes the paired one
            dg = paired_derivative(&dg, spec, var, !poly_left);
            w = w * Exact::rational(1, k as i64);
        }
        recurse(var + 1, dp.clone(), dg.clone(), w.clone(), degrees, spec, poly_left, combine, acc)?;
    }
    Ok(())
}

/// `f ⋆ g` for the kernel in `spec`. One factor of every pair of Gaussian
/// blocks must be polynomial, unless the two blocks depend on variables
/// with vanishing mutual pairing, in which case the product is pointwise.
pub fn moyal_product(f: &PhaseFunction, g: &PhaseFunction, spec: &MoyalSpec) -> Result<PhaseFunction> {
    f.check_compatible(g)?;
    if f.vars() != spec.vars.as_slice() {
        return Err(Error::VariableMismatch(format!("function in {:?}, product in {:?}", f.vars(), spec.vars)));
    }
    if f.grass_dim() != spec.grass_dim() {
        return Err(Error::DimensionMismatch { left: f.grass_dim(), right: spec.grass_dim() });
    }
    let combine = combine_for(spec);
    let mut out = f.zero_like();
    for (q1, b1) in f.blocks() {
        let fb = f.from_block(q1, b1);
        for (q2, b2) in g.blocks() {
            let gb = g.from_block(q2, b2);
            let term = if q1.is_zero() {
                expand(&fb, &gb, spec, true, &combine)?
            } else if q2.is_zero() {
                expand(&gb, &fb, spec, false, &combine)?
            } else {
                let (sf, sg) = (fb.support(), gb.support());
                let coupled = sf.iter().any(|&i| sg.iter().any(|&j| !spec.pairing(i, j).is_zero()));
                if coupled {
                    return Err(Error::UnsupportedClass(
                        "both factors carry Gaussians in paired variables; the star product leaves the polynomial×Gaussian class".into(),
                    ));
                }
                fb.pointwise_with(&gb, &combine)?
            };
            out.add_scaled(&term, None)?;
        }
    }
    Ok(out)
}
