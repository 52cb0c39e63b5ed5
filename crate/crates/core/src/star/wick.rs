use crate::error::{Error, Result};
use crate::grassmann::{circle_product, contract_rules, BilinearForm, Multivector};
use crate::scalar::Coeff;

/// Wedge exponential `Σ Fⁿ/n!` of a nilpotent even element.
pub fn grassmann_exp<S: Coeff>(f: &Multivector<S>) -> Result<Multivector<S>> {
    if let Some((m, _)) = f.terms().find(|(m, _)| m.count_ones() == 0 || m.count_ones() % 2 == 1) {
        return Err(Error::NotNilpotentEven(m.count_ones() as usize));
    }
    let mut out = Multivector::one(f.dim());
    let mut power = Multivector::one(f.dim());
    let mut n = 1;
    loop {
        power = power.wedge(f)?.scale(&S::from_ratio(1, n));
        if power.is_zero() {
            return Ok(out);
        }
        out += power.clone();
        n += 1;
    }
}

/// Grade-2 form `F = Σ F^{rs} θ_r θ_s` with
/// `Σ_{r,s} F^{rs} g(θ_i,θ_s) g(θ_j,θ_r) = A(θ_i,θ_j)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct WickForm<S> {
    f: Multivector<S>,
    coeffs: Vec<S>,
    g: BilinearForm<S>,
    a: BilinearForm<S>,
}

impl<S: Coeff> WickForm<S> {
    pub fn f(&self) -> &Multivector<S> {
        &self.f
    }

    /// `F^{ij}`, 0-based.
    pub fn coefficient(&self, i: usize, j: usize) -> S {
        self.coeffs[i * self.g.dim() + j].clone()
    }

    pub fn metric(&self) -> &BilinearForm<S> {
        &self.g
    }

    pub fn source(&self) -> &BilinearForm<S> {
        &self.a
    }

    /// Entries of `Σ F^{rs} g_{is} g_{jr} − A_{ij}/2`, row-major.
    pub fn defining_residual(&self) -> Vec<S> {
        let d = self.g.dim();
        let half = S::from_ratio(1, 2);
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut s = -(self.a.get(i, j) * half.clone());
                for r in 0..d {
                    for t in 0..d {
                        s = s + self.coefficient(r, t) * self.g.get(i, t) * self.g.get(j, r);
                    }
                }
                out.push(s);
            }
        }
        out
    }
}

/// Solve for `F = −g⁻¹ A g⁻¹ / 2`.
pub fn solve_wick_form<S: Coeff>(g: &BilinearForm<S>, a: &BilinearForm<S>) -> Result<WickForm<S>> {
    if g.dim() != a.dim() {
        return Err(Error::DimensionMismatch { left: g.dim(), right: a.dim() });
    }
    let d = g.dim();
    let gi = g.inverse_matrix()?;
    let minus_half = S::from_ratio(-1, 2);
    let mut coeffs = vec![S::zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut s = S::zero();
            for k in 0..d {
                for l in 0..d {
                    s = s + gi[i * d + k].clone() * a.get(k, l) * gi[l * d + j].clone();
                }
            }
            coeffs[i * d + j] = s * minus_half.clone();
        }
    }
    let mut f = Multivector::zero(d);
    for i in 0..d {
        for j in 0..d {
            if i != j {
                f += Multivector::monomial(d, 1 << i | 1 << j, coeffs[i * d + j].clone())
                    .scale(&if i < j { S::one() } else { -S::one() });
            }
        }
    }
    f.prune();
    Ok(WickForm { f, coeffs, g: g.clone(), a: a.clone() })
}

/// `e^{−F} ∧ u ∧ e^{F}`.
pub fn wick_conjugate<S: Coeff>(u: &Multivector<S>, w: &WickForm<S>) -> Result<Multivector<S>> {
    let plus = grassmann_exp(w.f())?;
    let minus = grassmann_exp(&-w.f().clone())?;
    minus.wedge(u)?.wedge(&plus)
}

/// Both sides of `ε[θ_{i1}∘_B⋯∘_Bθ_{in}] = ε[e^{−F}(θ_{i1}∘_g⋯∘_gθ_{in}∘_g e^F)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarEquivalence<S> {
    pub lhs: S,
    pub rhs: S,
    pub difference: S,
}

fn generator_chain<S: Coeff>(d: usize, indices: &[usize], b: &BilinearForm<S>) -> Result<Multivector<S>> {
    let mut acc = Multivector::one(d);
    for &i in indices {
        if i == 0 || i > d {
            return Err(Error::GeneratorOutOfRange { index: i, dim: d });
        }
        acc = circle_product(&acc, &Multivector::theta(d, i), b)?;
    }
    Ok(acc)
}

/// Evaluate both sides of the scalar-part equivalence for 1-based indices.
pub fn scalar_equivalence_check<S: Coeff>(indices: &[usize], b: &BilinearForm<S>) -> Result<ScalarEquivalence<S>> {
    let d = b.dim();
    let g = b.symmetric();
    let w = solve_wick_form(&g, &b.antisymmetric())?;
    let lhs = generator_chain(d, indices, b)?.scalar_part();
    let chain = generator_chain(d, indices, &g)?;
    let with_exp = circle_product(&chain, &grassmann_exp(w.f())?, &g)?;
    let rhs = grassmann_exp(&-w.f().clone())?.wedge(&with_exp)?.scalar_part();
    let difference = lhs.clone() - rhs.clone();
    Ok(ScalarEquivalence { lhs, rhs, difference })
}

/// `(e^{−F}(θ_i∘_gθ_j∘_g e^F), θ_i∘_Bθ_j)`: the first carries grade-2 terms
/// beyond `θ_iθ_j` whenever `F ≠ 0`, so the Wick isomorphism is not a
/// T-transformation of the circle product.
pub fn t_transformation_counterexample<S: Coeff>(
    i: usize,
    j: usize,
    b: &BilinearForm<S>,
) -> Result<(Multivector<S>, Multivector<S>)> {
    let d = b.dim();
    let g = b.symmetric();
    let w = solve_wick_form(&g, &b.antisymmetric())?;
    let chain = generator_chain(d, &[i, j], &g)?;
    let wick = grassmann_exp(&-w.f().clone())?.wedge(&circle_product(&chain, &grassmann_exp(w.f())?, &g)?)?;
    Ok((wick, generator_chain(d, &[i, j], b)?))
}

/// `θ_i ⌋_g (θ_j ⌋_g F)`, which equals `A(θ_i,θ_j)`.
pub fn double_contraction<S: Coeff>(i: usize, j: usize, w: &WickForm<S>) -> Result<S> {
    let d = w.f().dim();
    let inner = contract_rules(&Multivector::theta(d, j), w.f(), w.metric())?;
    Ok(contract_rules(&Multivector::theta(d, i), &inner, w.metric())?.scalar_part())
}
