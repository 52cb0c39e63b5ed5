use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::function::PhaseFunction;
use super::polynomial::{Exponents, Polynomial};
use crate::error::{Error, Result};
use crate::grassmann::Multivector;
use crate::scalar::Bindings;

/// Linear change of variables `x_old = M · y_new` applied before
/// integrating over `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubstitution {
    /// Row-major `old × new` matrix.
    pub matrix: Vec<Complex64>,
    pub new_vars: usize,
}

type FloatPoly = HashMap<Exponents, Complex64>;

fn poly_mul(a: &FloatPoly, b: &FloatPoly) -> FloatPoly {
    let mut out = FloatPoly::new();
    for (e, x) in a {
        for (f, y) in b {
            let g: Exponents = e.iter().zip(f).map(|(p, q)| p + q).collect();
            *out.entry(g).or_default() += x * y;
        }
    }
    out
}

fn substituted(p: &Polynomial, env: &Bindings, sub: Option<&LinearSubstitution>) -> FloatPoly {
    let n_old = p.nvars();
    let Some(s) = sub else {
        return p.terms().map(|(e, c)| (e.clone(), c.to_complex(env))).collect();
    };
    let images: Vec<FloatPoly> = (0..n_old)
        .map(|i| {
            (0..s.new_vars)
                .filter(|&k| s.matrix[i * s.new_vars + k] != Complex64::new(0.0, 0.0))
                .map(|k| {
                    let mut e = vec![0; s.new_vars];
                    e[k] = 1;
                    (e, s.matrix[i * s.new_vars + k])
                })
                .collect()
        })
        .collect();
    let mut out = FloatPoly::new();
    for (e, c) in p.terms() {
        let mut t: FloatPoly = [(vec![0; s.new_vars], c.to_complex(env))].into_iter().collect();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = poly_mul(&t, &images[i]);
            }
        }
        for (f, v) in t {
            *out.entry(f).or_default() += v;
        }
    }
    out
}

/// Raw moments `E[y^α]` of a Gaussian with mean `mu` and covariance `cov`.
struct Moments {
    mu: Vec<Complex64>,
    cov: DMatrix<Complex64>,
    memo: HashMap<Exponents, Complex64>,
}

impl Moments {
    fn get(&mut self, alpha: &Exponents) -> Complex64 {
        if alpha.iter().all(|&k| k == 0) {
            return Complex64::new(1.0, 0.0);
        }
        if let Some(v) = self.memo.get(alpha) {
            return *v;
        }
        // E[y_i f] = μ_i E[f] + Σ_j Σ_ij E[∂_j f] with f = y^{α−e_i}
        let i = alpha.iter().position(|&k| k > 0).expect("nonzero");
        let mut rest = alpha.clone();
        rest[i] -= 1;
        let mut v = self.mu[i] * self.get(&rest);
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut r2 = rest.clone();
                r2[j] -= 1;
                v += self.cov[(i, j)] * rest[j] as f64 * self.get(&r2);
            }
        }
        self.memo.insert(alpha.clone(), v);
        v
    }
}

/// `∫ f d^n y` over the (substituted) variables, coefficientwise in the
/// Grassmann part, for Gaussians with positive-definite real quadratic part.
pub fn gaussian_integral(f: &PhaseFunction, env: &Bindings, sub: Option<&LinearSubstitution>) -> Result<Multivector<Complex64>> {
    let n = sub.map_or(f.nvars(), |s| s.new_vars);
    if let Some(s) = sub {
        if s.matrix.len() != f.nvars() * s.new_vars {
            return Err(Error::InvalidParameter("substitution matrix has the wrong shape".into()));
        }
    }
    let mut out = Multivector::zero(f.grass_dim());
    for (q, block) in f.blocks() {
        let qf = substituted(q, env, sub);
        // Q = −½ yᵀAy + bᵀy + c
        let mut a = DMatrix::<Complex64>::zeros(n, n);
        let mut b = DVector::<Complex64>::zeros(n);
        let mut c = Complex64::new(0.0, 0.0);
        for (e, v) in &qf {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect();
            match idx.as_slice() {
                [] => c += v,
                [i] => b[*i] += v,
                [i, j] if i == j => a[(*i, *i)] -= v * 2.0,
                [i, j] => {
                    a[(*i, *j)] -= v;
                    a[(*j, *i)] -= v;
                }
                _ => return Err(Error::InvalidParameter("exponent is not quadratic".into())),
            }
        }
        let re = a.map(|z| z.re);
        if n > 0 && re.clone().cholesky().is_none() {
            return Err(Error::NonDecaying(format!("quadratic form {q} is not negative definite")));
        }
        let inv = a.clone().try_inverse().ok_or_else(|| Error::NonDecaying("singular quadratic form".into()))?;
        let mu = &inv * &b;
        let prefactor = (c + (b.transpose() * &mu)[(0, 0)] * 0.5).exp()
            * (Complex64::new((2.0 * PI).powi(n as i32), 0.0) / a.determinant()).sqrt();
        let mut moments = Moments { mu: mu.iter().copied().collect(), cov: inv, memo: HashMap::new() };
        for (e, u) in block {
            let mono = Polynomial::monomial(e.clone(), crate::scalar::Exact::from(1));
            let mut value = Complex64::new(0.0, 0.0);
            for (alpha, coeff) in substituted(&mono, env, sub) {
                value += coeff * moments.get(&alpha);
            }
            out += u.to_complex(env).scale(&(value * prefactor));
        }
    }
    out.prune();
    Ok(out)
}

/// `(1/2πħ)^{n/2} ∫ f` over `n` phase variables, scalar part.
pub fn gaussian_moment(f: &PhaseFunction, env: &Bindings, sub: Option<&LinearSubstitution>) -> Result<Complex64> {
    Ok(phase_space_integral(f, env, sub)?.scalar_part())
}

/// `(1/2πħ)^{n/2} ∫ f` coefficientwise.
pub fn phase_space_integral(f: &PhaseFunction, env: &Bindings, sub: Option<&LinearSubstitution>) -> Result<Multivector<Complex64>> {
    let n = sub.map_or(f.nvars(), |s| s.new_vars);
    let norm = (2.0 * PI * env.hbar).powf(-(n as f64) / 2.0);
    Ok(gaussian_integral(f, env, sub)?.scale(&Complex64::new(norm, 0.0)))
}
