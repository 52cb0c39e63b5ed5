use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Coeff, Exact};

/// Exponent vector of a monomial, one entry per phase variable.
pub type Exponents = Vec<u32>;

/// Multivariate polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Exact>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Exact) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Exact::one())
    }

    /// The `i`-th variable, 0-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Exact::one())
    }

    pub fn monomial(exponents: Exponents, c: Exact) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[Exact]) -> Self {
        let n = coeffs.len();
        coeffs.iter().enumerate().fold(Self::zero(n), |acc, (i, c)| acc + Self::var(n, i).scale(c))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Exact)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Exact {
        self.terms.get(e).cloned().unwrap_or_else(Exact::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_term(&self) -> Exact {
        self.coeff(&vec![0; self.nvars])
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Exact) {
        if c.is_zero() {
            return;
        }
        assert_eq!(e.len(), self.nvars, "exponent vector length");
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables that occur with a nonzero exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|e| e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i)).collect()
    }

    pub fn scale(&self, c: &Exact) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, v.clone() * Exact::from(e[i] as i64));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Substitute polynomials for the variables.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let n = images.first().map_or(0, |p| p.nvars);
        let mut out = Polynomial::zero(n);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            out = out + t;
        }
        out
    }

    /// Evaluate a univariate coefficient list `Σ cₖ xᵏ` at this polynomial.
    pub fn horner(coeffs: &[Exact], x: &Polynomial) -> Polynomial {
        coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(x.nvars), |acc, c| &acc * x + Polynomial::constant(x.nvars, c.clone()))
    }

    /// Split a quadratic polynomial `Q = −½xᵀAx + bᵀx + c` into `(A, b, c)`;
    /// `None` if the degree exceeds 2.
    pub fn quadratic_parts(&self) -> Option<(Vec<Exact>, Vec<Exact>, Exact)> {
        if self.degree() > 2 {
            return None;
        }
        let n = self.nvars;
        let mut a = vec![Exact::zero(); n * n];
        let mut b = vec![Exact::zero(); n];
        let mut c = Exact::zero();
        for (e, v) in &self.terms {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect();
            match idx.as_slice() {
                [] => c = v.clone(),
                [i] => b[*i] = v.clone(),
                [i, j] if i == j => a[i * n + i] = -(v.clone() * Exact::from(2)),
                [i, j] => {
                    a[i * n + j] = -v.clone();
                    a[j * n + i] = -v.clone();
                }
                _ => unreachable!(),
            }
        }
        Some((a, b, c))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Exact::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let g = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(g, c * d);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{}", mono.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficients of the Laguerre polynomial `L_n`, lowest degree first, from
/// `(k+1)L_{k+1} = (2k+1−x)L_k − kL_{k−1}`.
pub fn laguerre(n: u32) -> Vec<Exact> {
    let mut prev: Vec<Exact> = vec![Exact::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Exact::one(), -Exact::one()];
    for k in 1..n as i64 {
        let mut next = vec![Exact::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += c.clone() * Exact::from(2 * k + 1);
            next[i + 1] -= c.clone();
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c.clone() * Exact::from(k);
        }
        let inv = Exact::rational(1, k + 1);
        prev = cur;
        cur = next.into_iter().map(|c| c * inv.clone()).collect();
    }
    cur
}
