use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::polynomial::{Exponents, Polynomial};
use crate::error::{Error, Result};
use crate::grassmann::Multivector;
use crate::scalar::{Coeff, Exact};

/// Polynomial part of one Gaussian block: monomial → Grassmann coefficient.
pub type Block = BTreeMap<Exponents, Multivector<Exact>>;

/// Finite sum `Σ P_Q(x, θ) e^{Q(x)}` where each `Q` has degree at most 2
/// and each `P_Q` is a polynomial in the phase variables `x` with
/// Grassmann-valued coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct PhaseFunction {
    vars: Vec<String>,
    grass_dim: usize,
    terms: BTreeMap<Polynomial, Block>,
}

fn add_to_block(block: &mut Block, e: Exponents, u: Multivector<Exact>) {
    if u.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match block.entry(e) {
        Entry::Vacant(v) => {
            v.insert(u);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + u;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl PhaseFunction {
    pub fn zero(vars: &[&str], grass_dim: usize) -> Self {
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), grass_dim, terms: BTreeMap::new() }
    }

    /// Empty function over the same variables and Grassmann dimension.
    pub fn zero_like(&self) -> Self {
        Self { vars: self.vars.clone(), grass_dim: self.grass_dim, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], grass_dim: usize, c: Exact) -> Self {
        Self::from_multivector(vars, Multivector::scalar(grass_dim, c))
    }

    pub fn from_multivector(vars: &[&str], u: Multivector<Exact>) -> Self {
        let mut f = Self::zero(vars, u.dim());
        let n = vars.len();
        f.insert(&Polynomial::zero(n), vec![0; n], u);
        f
    }

    pub fn from_polynomial(vars: &[&str], grass_dim: usize, p: &Polynomial) -> Self {
        Self::gaussian_times(vars, grass_dim, p, &Polynomial::zero(vars.len())).expect("zero exponent")
    }

    /// The variable called `name`.
    pub fn variable(vars: &[&str], grass_dim: usize, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {name}")))?;
        Ok(Self::from_polynomial(vars, grass_dim, &Polynomial::var(vars.len(), i)))
    }

    /// `P e^{Q}` with scalar polynomial `P` and quadratic `Q`.
    pub fn gaussian_times(vars: &[&str], grass_dim: usize, p: &Polynomial, q: &Polynomial) -> Result<Self> {
        if p.nvars() != vars.len() || q.nvars() != vars.len() {
            return Err(Error::VariableMismatch("polynomial arity differs from the variable list".into()));
        }
        if q.degree() > 2 {
            return Err(Error::InvalidParameter(format!("exponent of degree {} is not quadratic", q.degree())));
        }
        let mut f = Self::zero(vars, grass_dim);
        for (e, c) in p.terms() {
            f.insert(q, e.clone(), Multivector::scalar(grass_dim, c.clone()));
        }
        Ok(f)
    }

    fn insert(&mut self, q: &Polynomial, e: Exponents, u: Multivector<Exact>) {
        if u.is_zero() {
            return;
        }
        if !self.terms.contains_key(q) {
            self.terms.insert(q.clone(), Block::new());
        }
        let block = self.terms.get_mut(q).expect("inserted");
        add_to_block(block, e, u);
        if block.is_empty() {
            self.terms.remove(q);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn grass_dim(&self) -> usize {
        self.grass_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Blocks keyed by their Gaussian exponent.
    pub fn blocks(&self) -> impl Iterator<Item = (&Polynomial, &Block)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(BTreeMap::len).sum()
    }

    pub(crate) fn from_block(&self, q: &Polynomial, block: &Block) -> Self {
        let mut f = self.zero_like();
        if !block.is_empty() {
            f.terms.insert(q.clone(), block.clone());
        }
        f
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Polynomial::is_zero)
    }

    /// Variables the function depends on, through either factor.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for (q, block) in &self.terms {
            s.extend(q.support());
            for e in block.keys() {
                s.extend(e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i));
            }
        }
        s
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.vars, other.vars)));
        }
        if self.grass_dim != other.grass_dim {
            return Err(Error::DimensionMismatch { left: self.grass_dim, right: other.grass_dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, None)?;
        Ok(out)
    }

    /// `self += c·other` in place (`c = 1` when `None`).
    pub fn add_scaled(&mut self, other: &Self, c: Option<&Exact>) -> Result<()> {
        self.check_compatible(other)?;
        for (q, block) in &other.terms {
            for (e, u) in block {
                let v = match c {
                    Some(c) => u.scale(c),
                    None => u.clone(),
                };
                self.insert(q, e.clone(), v);
            }
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Exact::one()))
    }

    pub fn scale(&self, c: &Exact) -> Self {
        self.map_coefficients(|u| u.scale(c))
    }

    /// Apply `f` to every Grassmann coefficient, keeping the dimension.
    pub fn map_coefficients(&self, f: impl Fn(&Multivector<Exact>) -> Multivector<Exact>) -> Self {
        let mut out = self.zero_like();
        for (q, block) in &self.terms {
            for (e, u) in block {
                out.insert(q, e.clone(), f(u));
            }
        }
        out
    }

    /// Apply `f` to every Grassmann coefficient, changing the Grassmann
    /// dimension to `dim`.
    pub fn map_grassmann(&self, dim: usize, f: impl Fn(&Multivector<Exact>) -> Multivector<Exact>) -> Self {
        let mut out = self.zero_like();
        out.grass_dim = dim;
        for (q, block) in &self.terms {
            for (e, u) in block {
                out.insert(q, e.clone(), f(u));
            }
        }
        out
    }

    /// Pointwise product with coefficients combined by `combine`.
    pub fn pointwise_with(
        &self,
        other: &Self,
        combine: &impl Fn(&Multivector<Exact>, &Multivector<Exact>) -> Result<Multivector<Exact>>,
    ) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.zero_like();
        for (q1, b1) in &self.terms {
            for (q2, b2) in &other.terms {
                let q = q1.clone() + q2.clone();
                for (e1, u1) in b1 {
                    for (e2, u2) in b2 {
                        let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                        out.insert(&q, e, combine(u1, u2)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pointwise product; Grassmann coefficients multiply by wedge.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.pointwise_with(other, &|u, v| u.wedge(v))
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<Self> {
        self.mul(&Self::from_polynomial(&self.var_refs(), self.grass_dim, p))
    }

    pub(crate) fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// `∂(P e^Q)/∂x_i = (∂P + P ∂Q) e^Q`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = self.zero_like();
        for (q, block) in &self.terms {
            let dq = q.derivative(i);
            for (e, u) in block {
                if e[i] > 0 {
                    let mut f = e.clone();
                    f[i] -= 1;
                    out.insert(q, f, u.scale(&Exact::from(e[i] as i64)));
                }
                for (g, c) in dq.terms() {
                    let h = e.iter().zip(g).map(|(a, b)| a + b).collect();
                    out.insert(q, h, u.scale(c));
                }
            }
        }
        out
    }

    /// Apply `f` to every exact scalar coefficient, e.g. to extract one
    /// order in `h`.
    pub fn map_scalars(&self, f: impl Fn(&Exact) -> Exact) -> Self {
        self.map_coefficients(|u| u.map_coeffs(&f))
    }
}

impl fmt::Display for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, block) in &self.terms {
            for (e, u) in block {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{k}", self.vars[i]) })
                    .collect();
                let grass: Vec<String> = u.terms().map(|(m, c)| format!("({c})[{m:b}]")).collect();
                write!(f, "{{{}}}", grass.join(" + "))?;
                if !mono.is_empty() {
                    write!(f, "·{}", mono.join("·"))?;
                }
                if !q.is_zero() {
                    write!(f, "·exp({q})")?;
                }
            }
        }
        Ok(())
    }
}
