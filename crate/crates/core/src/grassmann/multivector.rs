use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Bindings, Coeff, Exact};

/// Largest supported number of generators; a mask fits in one `u32`.
pub const MAX_DIM: usize = 16;

/// Bitmask of generators; bit `i` set means `θ_{i+1}` is present.
pub type Mask = u32;

/// Element of the Grassmann algebra on `dim` generators.
///
/// Monomials are stored in canonical ascending-index order keyed by their
/// mask. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<S> {
    dim: usize,
    terms: BTreeMap<Mask, S>,
}

/// `(-1)^n` as a sign flag.
#[inline]
pub(crate) fn odd(n: u32) -> bool {
    n & 1 == 1
}

/// Sign of `θ_a θ_b → θ_{a∪b}` for disjoint masks: the number of
/// transpositions needed to sort the concatenation.
#[inline]
pub fn wedge_sign(a: Mask, b: Mask) -> bool {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    odd(swaps)
}

#[inline]
pub(crate) fn signed<S: Coeff>(s: S, negative: bool) -> S {
    if negative {
        -s
    } else {
        s
    }
}

impl<S: Coeff> Multivector<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn try_zero(dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange(dim));
        }
        Ok(Self::zero(dim))
    }

    pub fn scalar(dim: usize, s: S) -> Self {
        Self::monomial(dim, 0, s)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn monomial(dim: usize, mask: Mask, s: S) -> Self {
        let mut out = Self::zero(dim);
        assert!(dim == MAX_DIM || mask >> dim == 0, "mask {mask:#b} outside dimension {dim}");
        out.add_term(mask, s);
        out
    }

    /// Generator `θ_i`, 1-based as in physics notation.
    pub fn theta(dim: usize, i: usize) -> Self {
        assert!((1..=dim).contains(&i), "generator θ_{i} outside dimension {dim}");
        Self::monomial(dim, 1 << (i - 1), S::one())
    }

    /// Ordered product `θ_{i1} θ_{i2} ⋯` of 1-based generators.
    pub fn product_of(dim: usize, indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::one(dim), |acc, &i| acc.wedge(&Self::theta(dim, i)).expect("same dimension"))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Mask, S)>) -> Self {
        let mut out = Self::zero(dim);
        for (m, s) in terms {
            out.add_term(m, s);
        }
        out.prune();
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &S)> {
        self.terms.iter().map(|(m, s)| (*m, s))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the mask-0 monomial.
    pub fn scalar_part(&self) -> S {
        self.coeff(0)
    }

    pub(crate) fn add_term(&mut self, mask: Mask, s: S) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(s);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + s;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Drop coefficients that are zero, or negligible relative to the
    /// largest one for the float backend.
    pub fn prune(&mut self) {
        if S::PRUNE_RELATIVE > 0.0 {
            let max = self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max);
            let cut = max * S::PRUNE_RELATIVE;
            self.terms.retain(|_, v| v.magnitude() > cut);
        } else {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Grade of a homogeneous element; `None` for zero or mixed grade.
    pub fn grade(&self) -> Option<u32> {
        let mut grades = self.terms.keys().map(|m| m.count_ones());
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }

    pub fn grade_part(&self, k: u32) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == k)
                .map(|(m, s)| (*m, s.clone()))
                .collect(),
        }
    }

    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.keys().map(|m| m.count_ones()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, v) in &self.terms {
            out.add_term(*m, v.clone() * s.clone());
        }
        out.prune();
        out
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        let mut out = Multivector::<T>::zero(self.dim);
        for (m, v) in &self.terms {
            out.add_term(*m, f(v));
        }
        out.prune();
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                out.add_term(a | b, signed(x.clone() * y.clone(), wedge_sign(a, b)));
            }
        }
        out.prune();
        Ok(out)
    }

    /// Conjugate-linear antiautomorphism with real generators: reverses
    /// every monomial and conjugates its coefficient.
    pub fn involution(&self) -> Self {
        self.map_monomials(|m, s| {
            let k = m.count_ones();
            signed(s.conj(), odd(k * k.saturating_sub(1) / 2))
        })
    }

    /// Grade automorphism `θ_i ↦ −θ_i`.
    pub fn grade_involution(&self) -> Self {
        self.map_monomials(|m, s| signed(s.clone(), odd(m.count_ones())))
    }

    fn map_monomials(&self, f: impl Fn(Mask, &S) -> S) -> Self {
        Self { dim: self.dim, terms: self.terms.iter().map(|(m, s)| (*m, f(*m, s))).collect() }
    }

    fn full_mask(&self) -> Mask {
        (1u32 << self.dim) - 1
    }

    /// Hodge dual: `θ_I ↦ ε_{I,I^c} θ_{I^c}` with the complement in
    /// ascending order, linearly extended.
    pub fn hodge(&self) -> Self {
        let full = self.full_mask();
        let mut out = Self::zero(self.dim);
        for (&m, s) in &self.terms {
            let comp = full & !m;
            out.add_term(comp, signed(s.clone(), wedge_sign(m, comp)));
        }
        out
    }

    /// Berezin integral `∫dθ_d⋯dθ_1 u` with `∫dθ_i θ_j = ħ δ_ij`, evaluated
    /// one variable at a time (innermost `dθ_1` first).
    pub fn berezin_integrate(&self, hbar: &S) -> S {
        let mut current = self.clone();
        for i in 0..self.dim {
            let bit = 1u32 << i;
            let mut next = Self::zero(self.dim);
            for (&m, s) in &current.terms {
                if m & bit == 0 {
                    continue;
                }
                // left derivative: move θ_{i+1} to the front
                let before = (m & (bit - 1)).count_ones();
                next.add_term(m & !bit, signed(s.clone() * hbar.clone(), odd(before)));
            }
            current = next;
        }
        current.scalar_part()
    }

    /// `(N/ħ^d)·∫dθ_d⋯dθ_1 ⋆u` with an explicit normalization `N`.
    pub fn trace_with(&self, normalization: &S, hbar: &S) -> S {
        let mut hd = S::one();
        for _ in 0..self.dim {
            hd = hd * hbar.clone();
        }
        let inv = hd.inverse().expect("ħ^d is invertible");
        normalization.clone() * inv * self.hodge().berezin_integrate(hbar)
    }

    /// Trace normalized so that `Tr(1) = 2^{⌊d/2⌋}`.
    pub fn trace(&self, hbar: &S) -> S {
        self.trace_with(&S::from_int(default_trace_normalization(self.dim)), hbar)
    }

    /// Sum of absolute coefficient sizes; a residual norm for float checks.
    pub fn norm1(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).sum()
    }
}

pub fn default_trace_normalization(dim: usize) -> i64 {
    1 << (dim / 2)
}

impl Multivector<Exact> {
    pub fn to_complex(&self, env: &Bindings) -> Multivector<Complex64> {
        self.map_coeffs(|s| s.to_complex(env))
    }
}

impl Multivector<Complex64> {
    /// Largest coefficient magnitude of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for m in self.terms.keys().chain(other.terms.keys()) {
            d = d.max((self.coeff(*m) - other.coeff(*m)).norm());
        }
        d
    }
}

/// `(c)θ1θ3 + …`, with `1` for the empty monomial.
impl<S: Coeff + std::fmt::Display> std::fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let gens: String = (0..32).filter(|i| m & (1 << i) != 0).map(|i| format!("θ{}", i + 1)).collect();
                if gens.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}){gens}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Coeff> Add for Multivector<S> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl<S: Coeff> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, o: Self) -> Multivector<S> {
        self.clone() + o.clone()
    }
}

impl<S: Coeff> AddAssign for Multivector<S> {
    fn add_assign(&mut self, o: Self) {
        assert_eq!(self.dim, o.dim, "dimension mismatch in addition");
        for (m, s) in o.terms {
            self.add_term(m, s);
        }
        self.prune();
    }
}

impl<S: Coeff> Sub for Multivector<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<S: Coeff> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, o: Self) -> Multivector<S> {
        self.clone() - o.clone()
    }
}

impl<S: Coeff> Neg for Multivector<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { dim: self.dim, terms: self.terms.into_iter().map(|(m, s)| (m, -s)).collect() }
    }
}

impl<S: Coeff> Mul<S> for Multivector<S> {
    type Output = Self;
    fn mul(self, s: S) -> Self {
        self.scale(&s)
    }
}

impl<S: Coeff> Mul<S> for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, s: S) -> Multivector<S> {
        self.scale(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Mv = Multivector<Exact>;

    fn t(d: usize, i: usize) -> Mv {
        Mv::theta(d, i)
    }

    /// Sign of a word of distinct generators by explicit adjacent swaps.
    fn bubble_sign(word: &[usize]) -> bool {
        let mut w = word.to_vec();
        let mut neg = false;
        for i in 0..w.len() {
            for j in 0..w.len() - 1 - i {
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    neg = !neg;
                }
            }
        }
        neg
    }

    #[test]
    fn nilpotent_and_anticommuting() {
        assert!(t(3, 1).wedge(&t(3, 1)).unwrap().is_zero());
        let a = t(3, 1).wedge(&t(3, 2)).unwrap();
        let b = t(3, 2).wedge(&t(3, 1)).unwrap();
        assert_eq!(a, -b);
    }

    #[test]
    fn wedge_sign_matches_transposition_count() {
        let a = t(4, 1).wedge(&t(4, 2)).unwrap();
        let b = t(4, 3).wedge(&t(4, 4)).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), Mv::monomial(4, 0b1111, Exact::one()));
        for word in [[3usize, 1, 4, 2], [4, 3, 2, 1], [2, 4, 1, 3]] {
            let prod = Mv::product_of(4, &word);
            let expected = signed(Exact::one(), bubble_sign(&word));
            assert_eq!(prod.coeff(0b1111), expected, "word {word:?}");
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(t(2, 1).wedge(&t(3, 1)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn involution_reverses() {
        let u = t(3, 1).wedge(&t(3, 2)).unwrap();
        assert_eq!(u.involution(), -u.clone());
        let c = Exact::gaussian((1, 2), (3, 1));
        assert_eq!(u.scale(&c).involution(), u.involution().scale(&c.conj()));
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(t(3, 1).hodge(), t(3, 2).wedge(&t(3, 3)).unwrap());
        assert_eq!(Mv::one(3).hodge(), Mv::product_of(3, &[1, 2, 3]));
        // brute force: double dual on each basis monomial of d = 3 is the identity
        for m in 0..8u32 {
            let u = Mv::monomial(3, m, Exact::one());
            assert_eq!(u.hodge().hodge(), u, "mask {m:#b}");
        }
    }

    #[test]
    fn berezin_examples() {
        let hbar = Exact::hbar();
        assert_eq!(t(1, 1).berezin_integrate(&hbar), hbar);
        assert_eq!(Mv::one(3).berezin_integrate(&hbar), Exact::zero());
        assert_eq!(Mv::product_of(3, &[1, 2, 3]).berezin_integrate(&hbar), hbar.pow(3));
        assert_eq!(Mv::product_of(3, &[2, 1, 3]).berezin_integrate(&hbar), -hbar.pow(3));
    }

    #[test]
    fn trace_normalization() {
        let hbar = Exact::hbar();
        assert_eq!(Mv::one(3).trace(&hbar), Exact::from(2));
        assert_eq!(Mv::one(4).trace(&hbar), Exact::from(4));
        assert_eq!(t(3, 2).trace(&hbar), Exact::zero());
        let h = Exact::hbar();
        assert_eq!(Mv::one(6).trace_with(&Exact::from(4), &h), Exact::from(4));
    }

    #[test]
    fn float_pruning_is_relative() {
        let u = Multivector::<Complex64>::from_terms(
            2,
            [(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(1e-16, 0.0)), (2, Complex64::new(1e-10, 0.0))],
        );
        assert_eq!(u.len(), 2);
    }
}
