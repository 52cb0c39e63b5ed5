//! Seeded generators of exact test data.

use rand::Rng;

use super::bilinear::BilinearForm;
use super::multivector::{Mask, Multivector};
use crate::scalar::{Coeff, Exact};

pub fn rng_index(rng: &mut impl Rng, n: usize) -> usize {
    rng.gen_range(0..n)
}

/// Small Gaussian rational, occasionally with a `√2` or `h` factor.
pub fn random_scalar(rng: &mut impl Rng) -> Exact {
    let re = Exact::rational(rng.gen_range(-5..=5), rng.gen_range(1..=3));
    let im = Exact::gaussian((0, 1), (rng.gen_range(-3..=3), rng.gen_range(1..=2)));
    let mut s = re + im;
    match rng.gen_range(0..4) {
        0 => s = s * Exact::sqrt2(),
        1 => s = s * Exact::h_pow(rng.gen_range(-1..=2)),
        _ => {}
    }
    if s.is_zero() {
        Exact::one()
    } else {
        s
    }
}

/// Dense random form, neither symmetric nor antisymmetric.
pub fn random_form(rng: &mut impl Rng, dim: usize) -> BilinearForm<Exact> {
    let entries = (0..dim * dim)
        .map(|_| if rng.gen_bool(0.2) { Exact::zero() } else { random_scalar(rng) })
        .collect();
    BilinearForm::new(dim, entries).expect("sized")
}

pub fn random_monomial(rng: &mut impl Rng, dim: usize) -> Multivector<Exact> {
    let mask: Mask = if dim == 0 { 0 } else { rng.gen_range(0..1u32 << dim) };
    Multivector::monomial(dim, mask, random_scalar(rng))
}

/// Up to 6 random monomials.
pub fn random_multivector(rng: &mut impl Rng, dim: usize) -> Multivector<Exact> {
    let n = rng.gen_range(1..=6);
    let mut out = Multivector::zero(dim);
    for _ in 0..n {
        out += random_monomial(rng, dim);
    }
    out
}

/// Form `h²·(G + A)` with `G` diagonally dominant symmetric and `A`
/// antisymmetric, so the metric `g = h²G` is always invertible.
pub fn invertible_form(rng: &mut impl Rng, d: usize) -> BilinearForm<Exact> {
    let h2 = Exact::h_pow(2);
    let mut e = vec![Exact::zero(); d * d];
    for i in 0..d {
        e[i * d + i] = Exact::from(rng.gen_range(3 * d as i64..6 * d as i64)) * h2.clone();
        for j in i + 1..d {
            let s = Exact::rational(rng.gen_range(-2..=2), rng.gen_range(1..=3));
            let a = Exact::gaussian((rng.gen_range(-4..=4), 3), (rng.gen_range(-2..=2), 5));
            e[i * d + j] = (s.clone() + a.clone()) * h2.clone();
            e[j * d + i] = (s - a) * h2.clone();
        }
    }
    BilinearForm::new(d, e).expect("sized")
}
