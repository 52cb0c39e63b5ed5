//! Grassmann contraction, circle products, Pauli spin and the Wick
//! isomorphism.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Checker;
use crate::grassmann::random::{invertible_form, random_form, random_monomial, rng_index};
use crate::grassmann::{circle_product, contract_closed, contract_rules, BilinearForm, Multivector};
use crate::scalar::{Coeff, Exact};
use crate::spin::{pauli3, precession, sigma, spin_expectations, SpinLabel, SpinState};
use crate::star::{grassmann_exp, scalar_equivalence_check, solve_wick_form};

type Mv = Multivector<Exact>;

/// Monomial triples per dimension; eight dimensions give 1000 triples.
const TRIPLES_PER_DIM: usize = 125;

struct Tally {
    all_zero: bool,
    max: f64,
}

impl Tally {
    fn new() -> Self {
        Self { all_zero: true, max: 0.0 }
    }

    fn add_exact(&mut self, r: &Mv, env: &crate::Bindings) {
        if !r.is_zero() {
            self.all_zero = false;
            self.max = self.max.max(r.to_complex(env).norm1());
        }
    }

    fn add_float(&mut self, a: &Multivector<Complex64>, b: &Multivector<Complex64>) {
        let d = a.max_abs_diff(b);
        if d != 0.0 {
            self.all_zero = false;
        }
        self.max = self.max.max(d);
    }
}

pub(super) fn cliffordization(ck: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(ck.cfg.seed);
    let env = ck.env();
    for d in 1..=8usize {
        let b = random_form(&mut rng, d);
        let bf = b.map(|s| s.to_complex(&env));
        let mut closed = Tally::new();
        let mut axiom = Tally::new();
        let mut assoc = Tally::new();
        for _ in 0..TRIPLES_PER_DIM {
            let (u, v, w) = (random_monomial(&mut rng, d), random_monomial(&mut rng, d), random_monomial(&mut rng, d));
            if ck.float_backend() {
                let (uf, vf, wf) = (u.to_complex(&env), v.to_complex(&env), w.to_complex(&env));
                let f = |r: crate::Result<Multivector<Complex64>>| r.expect("same dimension");
                closed.add_float(&f(contract_closed(&uf, &wf, &bf)), &f(contract_rules(&uf, &wf, &bf)));
                let uv = f(uf.wedge(&vf));
                axiom.add_float(&f(contract_rules(&uv, &wf, &bf)), &f(contract_rules(&uf, &f(contract_rules(&vf, &wf, &bf)), &bf)));
                assoc.add_float(
                    &f(circle_product(&f(circle_product(&uf, &vf, &bf)), &wf, &bf)),
                    &f(circle_product(&uf, &f(circle_product(&vf, &wf, &bf)), &bf)),
                );
            } else {
                let f = |r: crate::Result<Mv>| r.expect("same dimension");
                closed.add_exact(&(f(contract_closed(&u, &w, &b)) - f(contract_rules(&u, &w, &b))), &env);
                let uv = f(u.wedge(&v));
                axiom.add_exact(&(f(contract_rules(&uv, &w, &b)) - f(contract_rules(&u, &f(contract_rules(&v, &w, &b)), &b))), &env);
                let left = f(circle_product(&f(circle_product(&u, &v, &b)), &w, &b));
                let right = f(circle_product(&u, &f(circle_product(&v, &w, &b)), &b));
                assoc.add_exact(&(left - right), &env);
            }
        }
        let inputs = format!("seed={} d={d} triples={TRIPLES_PER_DIM}", ck.cfg.seed);
        ck.aggregate(&format!("closed-vs-rules/d{d}"), "closed-form contraction equals rule-based contraction", &inputs, "u⌋w closed", "u⌋w rules", closed.all_zero, closed.max);
        ck.aggregate(&format!("contraction-axiom/d{d}"), "(u∧v)⌋w = u⌋(v⌋w)", &inputs, "(u∧v)⌋w", "u⌋(v⌋w)", axiom.all_zero, axiom.max);
        ck.aggregate(&format!("circle-associativity/d{d}"), "(u∘v)∘w = u∘(v∘w)", &inputs, "(u∘v)∘w", "u∘(v∘w)", assoc.all_zero, assoc.max);
    }
    spin(ck);
}

fn spin(ck: &mut Checker) {
    let b = pauli3();
    let hbar = Exact::hbar();
    let p = |u: &Mv, v: &Mv| circle_product(u, v, &b).expect("d=3");
    // σ^iσ^j = δ_ij + iε_ijk σ^k
    for i in 1..=3 {
        for j in 1..=3 {
            let mut want = if i == j { Mv::one(3) } else { Mv::zero(3) };
            for k in 1..=3 {
                let e = crate::dirac::levi_civita(i, j, k);
                if e != 0 {
                    want += sigma(k).scale(&(Exact::imag_unit() * Exact::from(e)));
                }
            }
            let got = p(&sigma(i), &sigma(j));
            ck.exact(&format!("pauli-product/{i}{j}"), "σ^i⋆σ^j = δ_ij + iε_ijk σ^k", &format!("i={i} j={j}"), &got, &want, &(got.clone() - want.clone()));
        }
    }
    let up = SpinState::new(SpinLabel::Up).wigner;
    let down = SpinState::new(SpinLabel::Down).wigner;
    let sum = up.clone() + down.clone();
    ck.exact("spin-projectors/complete", "π₊ + π₋ = 1", "", &sum, "1", &(sum.clone() - Mv::one(3)));
    for (name, pi) in [("up", &up), ("down", &down)] {
        let sq = p(pi, pi);
        ck.exact(&format!("spin-projectors/idempotent-{name}"), "π⋆π = π", name, &sq, pi, &(sq.clone() - pi.clone()));
        let tr = pi.trace(&hbar);
        ck.exact(&format!("spin-projectors/trace-{name}"), "Tr π = 1", name, &tr, "1", &(tr.clone() - Exact::one()));
    }
    let cross = p(&up, &down);
    ck.exact("spin-projectors/orthogonal", "π₊⋆π₋ = 0", "", &cross, "0", &cross);
    for label in [SpinLabel::Up, SpinLabel::Down] {
        let e = spin_expectations(&SpinState::new(label));
        let want_s3 = hbar.clone() * Exact::rational(label.sign(), 2);
        let name = if label == SpinLabel::Up { "up" } else { "down" };
        ck.exact(&format!("spin-expectation/s3-{name}"), "⟨S₃⟩ = ±ħ/2", name, &e.s[2], &want_s3, &(e.s[2].clone() - want_s3.clone()));
        let r12 = e.s[0].clone() * e.s[0].clone() + e.s[1].clone() * e.s[1].clone();
        ck.exact(&format!("spin-expectation/s12-{name}"), "⟨S₁⟩ = ⟨S₂⟩ = 0", name, &r12, "0", &r12);
        let want_sq = hbar.clone() * hbar.clone() * Exact::rational(3, 4);
        ck.exact(&format!("spin-expectation/s-squared-{name}"), "⟨S²⟩ = 3ħ²/4", name, &e.s_squared, &want_sq, &(e.s_squared.clone() - want_sq.clone()));
    }
    // precession of S in B = (0, 0, B₃) at ω = eB₃/mc
    let omega = 1.3;
    let times: Vec<f64> = (0..64).map(|k| 0.125 * k as f64).collect();
    let inputs = format!("omega={omega} hbar={} samples=64", ck.cfg.hbar);
    match precession(omega, ck.cfg.hbar, &times) {
        Ok(samples) => {
            let worst = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
            ck.float("spin-precession", "dS/dt = (e/mc) B×S over 64 samples", &inputs, "dS/dt", "(e/mc)B×S", worst, 1e-10);
        }
        Err(e) => ck.error("spin-precession", "dS/dt = (e/mc) B×S", &inputs, &e),
    }
}

/// `Σ_pairings sign · Π B(θ_a, θ_b)` over ordered positions: the
/// Wick-pairing value of the scalar part of a circle-product chain.
fn pairing_value(idx: &[usize], b: &BilinearForm<Exact>) -> Exact {
    if idx.is_empty() {
        return Exact::one();
    }
    if idx.len() % 2 == 1 {
        return Exact::zero();
    }
    let mut total = Exact::zero();
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|(j, _)| j + 1 != k).map(|(_, &x)| x).collect();
        let term = b.get(idx[0] - 1, idx[k] - 1) * pairing_value(&rest, b);
        total = if k % 2 == 1 { total + term } else { total - term };
    }
    total
}

pub(super) fn wick(ck: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(ck.cfg.seed ^ 0x5749_434b);
    let env = ck.env();
    for n in [2usize, 4, 6] {
        let draws = 200;
        let mut theorem = Tally::new();
        let mut pairing = Tally::new();
        let mut failure = None;
        for _ in 0..draws {
            let d = rng.gen_range(2..=6);
            let b = invertible_form(&mut rng, d);
            let idx: Vec<usize> = (0..n).map(|_| 1 + rng_index(&mut rng, d)).collect();
            match scalar_equivalence_check(&idx, &b) {
                Ok(r) => {
                    theorem.add_exact(&Mv::scalar(1, r.difference.clone()), &env);
                    pairing.add_exact(&Mv::scalar(1, r.lhs.clone() - pairing_value(&idx, &b)), &env);
                    pairing.add_exact(&Mv::scalar(1, r.rhs.clone() - pairing_value(&idx, &b)), &env);
                }
                Err(e) => failure = Some(e),
            }
        }
        let inputs = format!("seed={} n={n} draws={draws}", ck.cfg.seed);
        if let Some(e) = failure {
            ck.error(&format!("scalar-theorem/n{n}"), "scalar part of B-chain equals Wick-conjugated g-chain", &inputs, &e);
            continue;
        }
        ck.aggregate(
            &format!("scalar-theorem/n{n}"),
            "ε[θ∘_B⋯∘_Bθ] = ε[e^{−F}(θ∘_g⋯∘_gθ∘_g e^F)]",
            &inputs,
            "ε[B-chain]",
            "ε[Wick-conjugated g-chain]",
            theorem.all_zero,
            theorem.max,
        );
        ck.aggregate(
            &format!("wick-pairing/n{n}"),
            "both sides equal the signed sum over pairings of B",
            &inputs,
            "ε[B-chain]",
            "Σ_pairings sign ΠB",
            pairing.all_zero,
            pairing.max,
        );
    }
    // defining equation of F and the double contraction θ_i⌋(θ_j⌋F) = A_ij
    for d in [2usize, 3, 4, 5] {
        let b = invertible_form(&mut rng, d);
        let inputs = format!("seed={} d={d}", ck.cfg.seed);
        let g = b.symmetric();
        let a = b.antisymmetric();
        match solve_wick_form(&g, &a) {
            Ok(w) => {
                let res = w.defining_residual();
                let zero = res.iter().all(Coeff::is_zero);
                let mag = res.iter().map(|s| s.to_complex(&env).norm()).fold(0.0, f64::max);
                ck.aggregate(&format!("wick-form/d{d}"), "Σ F^{rs} g_is g_jr = A_ij/2", &inputs, "g F g", "A/2", zero, mag);
                let mut tally = Tally::new();
                for i in 1..=d {
                    for j in 1..=d {
                        match crate::star::double_contraction(i, j, &w) {
                            Ok(v) => tally.add_exact(&Mv::scalar(1, v - a.get(i - 1, j - 1)), &env),
                            Err(_) => tally.all_zero = false,
                        }
                    }
                }
                ck.aggregate(&format!("double-contraction/d{d}"), "θ_i⌋_g(θ_j⌋_g F) = A_ij", &inputs, "θ_i⌋(θ_j⌋F)", "A_ij", tally.all_zero, tally.max);
                match (grassmann_exp(w.f()), grassmann_exp(&-w.f().clone())) {
                    (Ok(e), Ok(ei)) => {
                        let prod = e.wedge(&ei).expect("same dimension");
                        ck.exact(&format!("grassmann-exp-inverse/d{d}"), "e^F ∧ e^{−F} = 1", &inputs, &prod, "1", &(prod.clone() - Mv::one(d)));
                    }
                    (Err(e), _) | (_, Err(e)) => ck.error(&format!("grassmann-exp-inverse/d{d}"), "e^F ∧ e^{−F} = 1", &inputs, &e),
                }
            }
            Err(e) => ck.error(&format!("wick-form/d{d}"), "Σ F^{rs} g_is g_jr = A_ij/2", &inputs, &e),
        }
    }
}
