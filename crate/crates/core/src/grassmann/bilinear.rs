use crate::error::{Error, Result};
use crate::scalar::{Coeff, Exact};

/// Bilinear form `B(θ_i, θ_j)` on the generators with cached symmetric part
/// `g = (B + Bᵀ)/2` and antisymmetric part `A = (B − Bᵀ)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<S> {
    dim: usize,
    b: Vec<S>,
    g: Vec<S>,
    a: Vec<S>,
}

impl<S: Coeff> BilinearForm<S> {
    /// Build from a row-major `dim × dim` matrix.
    pub fn new(dim: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "bilinear form needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let half = S::from_ratio(1, 2);
        let mut g = Vec::with_capacity(dim * dim);
        let mut a = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let bij = entries[i * dim + j].clone();
                let bji = entries[j * dim + i].clone();
                g.push((bij.clone() + bji.clone()) * half.clone());
                a.push((bij - bji) * half.clone());
            }
        }
        Ok(Self { dim, b: entries, g, a })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self::new(dim, entries).expect("sized by construction")
    }

    /// `B = s·δ`.
    pub fn diagonal(dim: usize, s: S) -> Self {
        Self::from_fn(dim, |i, j| if i == j { s.clone() } else { S::zero() })
    }

    /// Symmetric plus antisymmetric parts.
    pub fn from_parts(g: &Self, a: &Self) -> Result<Self> {
        if g.dim != a.dim {
            return Err(Error::DimensionMismatch { left: g.dim, right: a.dim });
        }
        Ok(Self::from_fn(g.dim, |i, j| g.get(i, j) + a.get(i, j)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `B(θ_{i+1}, θ_{j+1})`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.b[i * self.dim + j].clone()
    }

    #[inline]
    pub(crate) fn get_ref(&self, i: usize, j: usize) -> &S {
        &self.b[i * self.dim + j]
    }

    pub fn g(&self, i: usize, j: usize) -> S {
        self.g[i * self.dim + j].clone()
    }

    pub fn a(&self, i: usize, j: usize) -> S {
        self.a[i * self.dim + j].clone()
    }

    pub fn symmetric(&self) -> Self {
        Self::new(self.dim, self.g.clone()).expect("sized")
    }

    pub fn antisymmetric(&self) -> Self {
        Self::new(self.dim, self.a.clone()).expect("sized")
    }

    pub fn map<T: Coeff>(&self, f: impl Fn(&S) -> T) -> BilinearForm<T> {
        BilinearForm::new(self.dim, self.b.iter().map(f).collect()).expect("sized")
    }

    /// Matrix inverse by Gauss-Jordan elimination over the coefficient ring.
    pub fn inverse_matrix(&self) -> Result<Vec<S>> {
        let n = self.dim;
        let mut m = self.b.clone();
        let mut inv: Vec<S> = (0..n * n).map(|k| if k / n == k % n { S::one() } else { S::zero() }).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m[r * n + col].inverse().is_some())
                .ok_or_else(|| {
                    if (col..n).all(|r| m[r * n + col].is_zero()) {
                        Error::SingularMetric(format!("column {} has no nonzero pivot", col + 1))
                    } else {
                        Error::SingularMetric(format!("column {} has no invertible pivot in the coefficient ring", col + 1))
                    }
                })?;
            if pivot != col {
                for k in 0..n {
                    m.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p_inv = m[col * n + col].inverse().expect("checked");
            for k in 0..n {
                m[col * n + k] = m[col * n + k].clone() * p_inv.clone();
                inv[col * n + k] = inv[col * n + k].clone() * p_inv.clone();
            }
            for r in 0..n {
                if r == col || m[r * n + col].is_zero() {
                    continue;
                }
                let f = m[r * n + col].clone();
                for k in 0..n {
                    m[r * n + k] = m[r * n + k].clone() - f.clone() * m[col * n + k].clone();
                    inv[r * n + k] = inv[r * n + k].clone() - f.clone() * inv[col * n + k].clone();
                }
            }
        }
        Ok(inv)
    }
}

/// The Pauli form `B = (ħ/2)·δ` on `dim` generators.
pub fn pauli_form<S: Coeff>(dim: usize, hbar: S) -> BilinearForm<S> {
    BilinearForm::diagonal(dim, hbar * S::from_ratio(1, 2))
}

pub fn pauli_form_exact(dim: usize) -> BilinearForm<Exact> {
    pauli_form(dim, Exact::hbar())
}
