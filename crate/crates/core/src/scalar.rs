//! Coefficient rings.
//!
//! Two backends share the [`Coeff`] interface:
//!
//! * [`Exact`]: finite sums of `(a + b·√2)·h^k·c^l` with `a, b` Gaussian
//!   rationals. `h` is the formal square root of `ħ/2` (so `ħ = 2h²` and
//!   `√ħ = √2·h`), `c` a formal light-speed symbol.
//! * [`num_complex::Complex64`]: numeric values with `ħ` and `c` bound.
//!
//! Promotion is one-way, exact to float, through [`Exact::to_complex`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ring operations needed by the Grassmann and phase-space layers.
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Coefficients whose magnitude falls below this fraction of the largest
    /// coefficient of a multivector are dropped on normalization.
    const PRUNE_RELATIVE: f64;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn imag_unit() -> Self;
    fn sqrt2() -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, when the ring provides one.
    fn inverse(&self) -> Option<Self>;
    /// Size estimate used for relative pruning.
    fn magnitude(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

/// Numeric values of the formal symbols, used when promoting to floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bindings {
    pub hbar: f64,
    pub c: f64,
}

impl Default for Bindings {
    fn default() -> Self {
        Self { hbar: 1.0, c: 1.0 }
    }
}

/// Gaussian rational `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => GaussRat::real(&self.re * &o.re),
            (true, false) => GaussRat { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => GaussRat { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => GaussRat {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Element `a + b·√2` of `Q(i)[√2]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QSqrt2 {
    pub a: GaussRat,
    pub b: GaussRat,
}

impl QSqrt2 {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn conj(&self) -> Self {
        Self { a: self.a.conj(), b: self.b.conj() }
    }

    /// `(a + b√2)⁻¹ = (a − b√2)/(a² − 2b²)`; the norm never vanishes for
    /// nonzero elements because √2 is not a Gaussian rational.
    fn inverse(&self) -> Option<Self> {
        let two = GaussRat::real(rat(2, 1));
        let norm = &(&self.a * &self.a) - &(&two * &(&self.b * &self.b));
        let inv = norm.inverse()?;
        Some(Self { a: &self.a * &inv, b: &(-&self.b) * &inv })
    }

    fn add(&self, o: &Self) -> Self {
        Self { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    fn mul(&self, o: &Self) -> Self {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => Self { a: &self.a * &o.a, b: GaussRat::default() },
            (true, false) => Self { a: GaussRat::default(), b: &self.a * &o.b }.plus_rational(&self.a, &o.a),
            (false, true) => Self { a: GaussRat::default(), b: &self.b * &o.a }.plus_rational(&self.a, &o.a),
            (false, false) => {
                let bb = &self.b * &o.b;
                Self { a: &(&self.a * &o.a) + &(&bb + &bb), b: &(&self.a * &o.b) + &(&self.b * &o.a) }
            }
        }
    }

    /// Adds `x·y` to the rational part.
    fn plus_rational(mut self, x: &GaussRat, y: &GaussRat) -> Self {
        if !x.is_zero() && !y.is_zero() {
            self.a = &self.a + &(x * y);
        }
        self
    }

    fn to_complex(&self) -> Complex64 {
        self.a.to_complex() + self.b.to_complex() * std::f64::consts::SQRT_2
    }
}

/// Exact scalar: Laurent polynomial in `h` and `c` over `Q(i)[√2]`.
///
/// Keys are `(k, l)` for the monomial `h^k·c^l`; zero coefficients are never
/// stored, so derived equality is ring equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exact {
    terms: BTreeMap<(i32, i32), QSqrt2>,
}

impl Exact {
    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_big(rat(num, den))
    }

    /// Parse an integer, a fraction `a/b` or a decimal `x.y` exactly.
    pub fn parse_rational(s: &str) -> crate::Result<Self> {
        let bad = || crate::Error::InvalidParameter(format!("'{s}' is not a rational number"));
        let s = s.trim();
        let r = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = whole.starts_with('-');
            let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                w => w.parse().map_err(|_| bad())?,
            };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac: BigInt = frac.parse().map_err(|_| bad())?;
            let mag = BigRational::new(whole * &scale + frac, scale);
            if neg {
                -mag
            } else {
                mag
            }
        } else {
            BigRational::from_integer(s.parse().map_err(|_| bad())?)
        };
        Ok(Self::from_big(r))
    }

    pub fn from_big(r: BigRational) -> Self {
        Self::monomial(QSqrt2 { a: GaussRat::real(r), b: GaussRat::default() }, 0, 0)
    }

    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::monomial(
            QSqrt2 { a: GaussRat::new(rat(re.0, re.1), rat(im.0, im.1)), b: GaussRat::default() },
            0,
            0,
        )
    }

    pub fn monomial(coeff: QSqrt2, h_pow: i32, c_pow: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((h_pow, c_pow), coeff);
        }
        Self { terms }
    }

    /// `h^k` with `h² = ħ/2`.
    pub fn h_pow(k: i32) -> Self {
        Self::monomial(QSqrt2 { a: GaussRat::real(rat(1, 1)), b: GaussRat::default() }, k, 0)
    }

    /// `c^l`.
    pub fn c_pow(l: i32) -> Self {
        Self::monomial(QSqrt2 { a: GaussRat::real(rat(1, 1)), b: GaussRat::default() }, 0, l)
    }

    /// `ħ = 2h²`.
    pub fn hbar() -> Self {
        Self::rational(2, 1) * Self::h_pow(2)
    }

    /// `√ħ = √2·h`.
    pub fn sqrt_hbar() -> Self {
        Self::sqrt2() * Self::h_pow(1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &QSqrt2)> {
        self.terms.iter()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    /// Integer power, negative exponents through [`Coeff::inverse`].
    pub fn powi(&self, n: i32) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            Some(self.inverse()?.pow((-n) as u32))
        }
    }

    /// The rational value, if the scalar is a plain rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (&(k, l), q) = self.terms.iter().next()?;
                (k == 0 && l == 0 && q.b.is_zero() && q.a.im.is_zero()).then(|| q.a.re.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of `h^k·c^l`.
    pub fn coefficient(&self, h_pow: i32, c_pow: i32) -> Option<&QSqrt2> {
        self.terms.get(&(h_pow, c_pow))
    }

    /// Drop every term whose power of `c` is below `min_c_pow`.
    pub fn truncate_c(&self, min_c_pow: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((_, l), _)| *l >= min_c_pow)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Lowest power of `c` present, if any.
    pub fn min_c_pow(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, l)| l).min()
    }

    pub fn max_c_pow(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, l)| l).max()
    }

    /// Terms carrying exactly `c^l`, with the `c` factor kept.
    pub fn c_part(&self, l: i32) -> Self {
        Self { terms: self.terms.iter().filter(|((_, k), _)| *k == l).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Powers of `c` present.
    pub fn c_pows(&self) -> std::collections::BTreeSet<i32> {
        self.terms.keys().map(|&(_, l)| l).collect()
    }

    pub fn to_complex(&self, env: &Bindings) -> Complex64 {
        let h = (env.hbar / 2.0).sqrt();
        self.terms
            .iter()
            .map(|(&(k, l), q)| q.to_complex() * h.powi(k) * env.c.powi(l))
            .sum()
    }

    fn add_term(&mut self, key: (i32, i32), q: QSqrt2) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                if !q.is_zero() {
                    e.insert(q);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&q);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl Coeff for Exact {
    const PRUNE_RELATIVE: f64 = 0.0;

    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::rational(1, 1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(num, den)
    }

    fn imag_unit() -> Self {
        Self::gaussian((0, 1), (1, 1))
    }

    fn sqrt2() -> Self {
        Self::monomial(QSqrt2 { a: GaussRat::default(), b: GaussRat::real(rat(1, 1)) }, 0, 0)
    }

    fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect() }
    }

    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(k, l), q) = self.terms.iter().next()?;
        Some(Self::monomial(q.inverse()?, -k, -l))
    }

    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(mut self, o: Exact) -> Exact {
        self += o;
        self
    }
}

impl AddAssign for Exact {
    fn add_assign(&mut self, o: Exact) {
        for (k, v) in o.terms {
            self.add_term(k, v);
        }
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, o: Exact) -> Exact {
        self + (-o)
    }
}

impl SubAssign for Exact {
    fn sub_assign(&mut self, o: Exact) {
        *self += -o;
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact {
            terms: self
                .terms
                .into_iter()
                .map(|(k, v)| (k, QSqrt2 { a: -&v.a, b: -&v.b }))
                .collect(),
        }
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, o: Exact) -> Exact {
        &self * &o
    }
}

impl Mul for &Exact {
    type Output = Exact;
    fn mul(self, o: &Exact) -> Exact {
        let mut out = Exact::default();
        for (&(k1, l1), a) in &self.terms {
            for (&(k2, l2), b) in &o.terms {
                out.add_term((k1 + k2, l1 + l2), a.mul(b));
            }
        }
        out
    }
}

impl MulAssign for Exact {
    fn mul_assign(&mut self, o: Exact) {
        *self = &*self * &o;
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Self {
        Exact::rational(n, 1)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_gauss(g: &GaussRat) -> String {
    let sign = if g.im.is_negative() { "-" } else { "+" };
    format!("{}{}{}i", fmt_rat(&g.re), sign, fmt_rat(&g.im.abs()))
}

/// Canonical form: terms `a+bi·√2^s·h^k·c^l` joined by `" + "`, `0` when empty.
impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(k, l), q) in &self.terms {
            for (s, g) in [(0, &q.a), (1, &q.b)] {
                if g.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}·√2^{}·h^{}·c^{}", fmt_gauss(g), s, k, l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exact({self})")
    }
}

impl Coeff for Complex64 {
    const PRUNE_RELATIVE: f64 = 1e-14;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn sqrt2() -> Self {
        Complex64::new(std::f64::consts::SQRT_2, 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn inverse(&self) -> Option<Self> {
        (!Coeff::is_zero(self)).then(|| Complex64::new(1.0, 0.0) / self)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}
