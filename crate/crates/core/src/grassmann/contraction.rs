//! The antiderivation `x ⌋_B u` in two independent forms, and the circle
//! product that shares the closed form's pairing enumeration.

use super::bilinear::BilinearForm;
use super::multivector::{odd, signed, wedge_sign, Mask, Multivector};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

fn check_form<S: Coeff>(u: &Multivector<S>, b: &BilinearForm<S>) -> Result<()> {
    if u.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: b.dim() });
    }
    Ok(())
}

/// `θ_i ⌋ v` for a monomial `v`, by recursion on its leading generator:
/// `θ_i⌋(θ_j w) = B(θ_i,θ_j) w − θ_j (θ_i⌋w)`.
fn generator_contract<S: Coeff>(i: usize, v: Mask, coeff: &S, b: &BilinearForm<S>, out: &mut Multivector<S>) {
    if v == 0 {
        return;
    }
    let j = v.trailing_zeros() as usize;
    let w = v & (v - 1);
    let bij = b.get_ref(i, j);
    if !bij.is_zero() {
        out.add_term(w, coeff.clone() * bij.clone());
    }
    // θ_j is the lowest generator, so prepending it to any monomial of w
    // needs no reordering; the minus sign is the graded Leibniz sign.
    let mut inner = Multivector::zero(out.dim());
    generator_contract(i, w, coeff, b, &mut inner);
    for (m, s) in inner.terms() {
        out.add_term(m | (1 << j), -s.clone());
    }
}

/// `x ⌋_B u` from the defining rules: generator pairing, graded Leibniz, and
/// `(θ_i x')⌋u = θ_i⌋(x'⌋u)`, extended linearly.
pub fn contract_rules<S: Coeff>(x: &Multivector<S>, u: &Multivector<S>, b: &BilinearForm<S>) -> Result<Multivector<S>> {
    x.check_same_dim(u)?;
    check_form(u, b)?;
    let mut out = Multivector::zero(u.dim());
    for (xm, xc) in x.terms() {
        let mut current = u.scale(xc);
        // peel generators of x from the right: θ_{i1}⋯θ_{ik} ⌋ u = θ_{i1}⌋(⋯(θ_{ik}⌋u))
        let mut gens: Vec<usize> = (0..u.dim()).filter(|k| xm >> k & 1 == 1).collect();
        while let Some(i) = gens.pop() {
            let mut next = Multivector::zero(u.dim());
            for (vm, vc) in current.terms() {
                generator_contract(i, vm, vc, b, &mut next);
            }
            current = next;
            if current.is_zero() {
                break;
            }
        }
        out += current;
    }
    out.prune();
    Ok(out)
}

/// Enumerate the contraction terms of `u ∘_B v` for monomials `u, v`:
/// every set of pairs (generator of u, generator of v), each pair weighted by
/// `B` and applied as a right derivative on `u` and a left derivative on `v`.
/// With `full` only terms that consume every generator of `u` are produced.
fn pairings<S: Coeff>(
    u: Mask,
    v: Mask,
    coeff: S,
    b: &BilinearForm<S>,
    full: bool,
    visit: &mut impl FnMut(Mask, Mask, S),
) {
    let next = u_lowest_unvisited(u, 0);
    pair_rec(u, v, coeff, b, full, next, visit);
}

fn u_lowest_unvisited(u: Mask, from: u32) -> Option<u32> {
    let rest = if from >= 32 { 0 } else { u >> from << from };
    (rest != 0).then(|| rest.trailing_zeros())
}

fn pair_rec<S: Coeff>(
    u: Mask,
    v: Mask,
    coeff: S,
    b: &BilinearForm<S>,
    full: bool,
    cursor: Option<u32>,
    visit: &mut impl FnMut(Mask, Mask, S),
) {
    let Some(i) = cursor else {
        visit(u, v, coeff);
        return;
    };
    let after = u_lowest_unvisited(u, i + 1);
    if !full {
        pair_rec(u, v, coeff.clone(), b, full, after, visit);
    }
    // right derivative ∂←_i on u: move θ_i to the right end
    let u_sign = odd((u >> (i + 1)).count_ones());
    let u_rest = u & !(1 << i);
    let mut rest = v;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let bij = b.get_ref(i as usize, j as usize);
        if bij.is_zero() {
            continue;
        }
        // left derivative ∂→_j on v: move θ_j to the front
        let v_sign = odd((v & ((1 << j) - 1)).count_ones());
        let c = signed(coeff.clone() * bij.clone(), u_sign ^ v_sign);
        let next_cursor = u_lowest_unvisited(u_rest, i + 1);
        pair_rec(u_rest, v & !(1 << j), c, b, full, next_cursor, visit);
    }
}

/// Closed form `u⌋_B v = (1/π(u)!)·u (Σ B ∂←∂→)^{π(u)} v`, applied per
/// monomial of `u` (hence per homogeneous component).
pub fn contract_closed<S: Coeff>(u: &Multivector<S>, v: &Multivector<S>, b: &BilinearForm<S>) -> Result<Multivector<S>> {
    u.check_same_dim(v)?;
    check_form(u, b)?;
    let mut out = Multivector::zero(u.dim());
    for (um, uc) in u.terms() {
        if um.count_ones() > 0 && v.terms().all(|(vm, _)| vm.count_ones() < um.count_ones()) {
            continue;
        }
        for (vm, vc) in v.terms() {
            pairings(um, vm, uc.clone() * vc.clone(), b, true, &mut |ur, vr, c| {
                debug_assert_eq!(ur, 0);
                out.add_term(vr, c);
            });
        }
    }
    out.prune();
    Ok(out)
}

/// Circle product `u ∘_B v = u exp(Σ B(θ_i,θ_j) ∂←_{θ_i} ∂→_{θ_j}) v`.
/// The series stops after `min(π(u), π(v))` contractions.
pub fn circle_product<S: Coeff>(u: &Multivector<S>, v: &Multivector<S>, b: &BilinearForm<S>) -> Result<Multivector<S>> {
    u.check_same_dim(v)?;
    check_form(u, b)?;
    let mut out = Multivector::zero(u.dim());
    for (um, uc) in u.terms() {
        for (vm, vc) in v.terms() {
            pairings(um, vm, uc.clone() * vc.clone(), b, false, &mut |ur, vr, c| {
                if ur & vr == 0 {
                    out.add_term(ur | vr, signed(c, wedge_sign(ur, vr)));
                }
            });
        }
    }
    out.prune();
    Ok(out)
}

/// Left multiplication by `θ_i` summed with contraction, i.e. the Clifford
/// map `γ_{θ_i} u = θ_i u + θ_i⌋_B u`.
pub fn gamma_generator<S: Coeff>(i: usize, u: &Multivector<S>, b: &BilinearForm<S>) -> Result<Multivector<S>> {
    let t = Multivector::theta(u.dim(), i);
    Ok(t.wedge(u)? + contract_rules(&t, u, b)?)
}
