//! Bosonic oscillator, Landau levels and the supersymmetric oscillator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Checker;
use crate::phase::{
    gaussian_moment, landau_problem, oscillator_energy, oscillator_hamiltonian, oscillator_wigner, MoyalSpec, Polynomial,
};
use crate::scalar::{Coeff, Exact};
use crate::spin::SpinLabel;
use crate::susy::{
    feynman_trick, fredholm_residuals, interaction_term, ladder, ladder_image, spinful_landau, susy_energy, susy_hamiltonian,
    susy_product, witten_index, SusyState,
};
use crate::grassmann::Multivector;

fn r(n: i64, d: i64) -> Exact {
    Exact::rational(n, d)
}

fn label_name(s: SpinLabel) -> &'static str {
    match s {
        SpinLabel::Up => "+1/2",
        SpinLabel::Down => "-1/2",
    }
}

pub(super) fn oscillator(ck: &mut Checker) {
    let (m, w) = (r(3, 2), r(2, 5));
    let spec = MoyalSpec::moyal();
    let h = match oscillator_hamiltonian(&m, &w) {
        Ok(h) => h,
        Err(e) => return ck.error("hamiltonian", "oscillator Hamiltonian", "m=3/2 omega=2/5", &e),
    };
    for n in 0..=12i64 {
        let inputs = format!("m=3/2 omega=2/5 n={n}");
        ck.guard(&format!("genvalue/n{n}"), |ck| {
            let pi = oscillator_wigner(n, &m, &w)?;
            let e = oscillator_energy(n as u32, &w);
            let left = spec.product(&h, &pi)?.sub(&pi.scale(&e))?;
            let right = spec.product(&pi, &h)?.sub(&pi.scale(&e))?;
            ck.exact(&format!("genvalue-left/n{n}"), "H⋆π_n = E_nπ_n", &inputs, "H⋆π_n", format!("({e})π_n"), &left);
            ck.exact(&format!("genvalue-right/n{n}"), "π_n⋆H = E_nπ_n", &inputs, "π_n⋆H", format!("({e})π_n"), &right);
            let closed = Exact::hbar() * w.clone() * r(2 * n + 1, 2);
            ck.exact(&format!("energy/n{n}"), "E_n = ħω(n + 1/2)", &inputs, &e, &closed, &(e.clone() - closed.clone()));
            Ok(())
        });
    }
    let env = ck.env();
    for n in 0..=8i64 {
        let inputs = format!("m=3/2 omega=2/5 n={n} hbar={}", env.hbar);
        ck.guard(&format!("normalization/n{n}"), |ck| {
            let pi = oscillator_wigner(n, &m, &w)?;
            let norm = gaussian_moment(&pi, &env, None)?;
            ck.float(&format!("normalization/n{n}"), "(1/2πħ)∫π_n = 1", &inputs, norm, 1.0, (norm - 1.0).norm(), 1e-9);
            let energy = gaussian_moment(&spec.product(&h, &pi)?, &env, None)?;
            let want = env.hbar * 0.4 * (n as f64 + 0.5);
            ck.float(&format!("expectation/n{n}"), "(1/2πħ)∫H⋆π_n = E_n", &inputs, energy, want, (energy - want).norm(), 1e-9);
            Ok(())
        });
    }
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            e[rng.gen_range(0..nvars)] += 1;
        }
        p = p + Polynomial::monomial(e, r(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    p
}

pub(super) fn landau(ck: &mut Checker) {
    let (m, w) = (r(2, 1), r(3, 4));
    let lp = match landau_problem(&m, &w) {
        Ok(lp) => lp,
        Err(e) => return ck.error("problem", "Landau problem", "m=2 omega=3/4", &e),
    };
    for n in 0..=6u32 {
        for l in 0..=6u32 {
            let inputs = format!("m=2 omega=3/4 n={n} l={l}");
            ck.guard(&format!("levels/n{n}l{l}"), |ck| {
                let (h, j) = lp.eigen_residuals(n, l)?;
                let e = lp.energy(n);
                let jv = lp.angular_eigenvalue(n, l);
                ck.exact(&format!("energy/n{n}l{l}"), "H_L⋆π_nl = ħω(n + 1/2)π_nl", &inputs, "H_L⋆π_nl", format!("({e})π_nl"), &h);
                ck.exact(&format!("angular/n{n}l{l}"), "J⋆π_nl = ħ(l − n)π_nl", &inputs, "J⋆π_nl", format!("({jv})π_nl"), &j);
                Ok(())
            });
        }
    }
    // functions of the centre coordinates commute with H_L
    let mut rng = ChaCha8Rng::seed_from_u64(ck.cfg.seed ^ 0x4c41_4e44);
    let hl = lp.function(&lp.hamiltonian);
    for k in 0..12 {
        let g = random_poly(&mut rng, 2, 4, 5);
        let inputs = format!("seed={} draw={k} g={g}", ck.cfg.seed);
        ck.guard(&format!("center-commutes/{k}"), |ck| {
            let f = lp.function(&g.compose(&lp.q_tilde));
            let comm = lp.spec.commutator(&hl, &f)?;
            ck.exact(&format!("center-commutes/{k}"), "[H_L, g(q̃)]⋆ = 0 for deg g ≤ 4", &inputs, "H_L⋆g(q̃)", "g(q̃)⋆H_L", &comm);
            let pointwise = lp.spec.product(&hl, &f)?.sub(&hl.mul(&f)?)?;
            ck.exact(&format!("center-pointwise/{k}"), "H_L⋆g(q̃) = H_L·g(q̃)", &inputs, "H_L⋆g(q̃)", "H_L·g(q̃)", &pointwise);
            Ok(())
        });
    }
    let env = ck.env();
    for (n, l) in [(0u32, 0u32), (1, 0), (0, 2), (2, 3)] {
        let inputs = format!("m=2 omega=3/4 n={n} l={l} hbar={}", env.hbar);
        ck.guard(&format!("normalization/n{n}l{l}"), |ck| {
            let norm = gaussian_moment(&lp.wigner(n, l)?, &env, None)?;
            ck.float(&format!("normalization/n{n}l{l}"), "(1/2πħ)²∫π_nl = 1", &inputs, norm, 1.0, (norm - 1.0).norm(), 1e-9);
            Ok(())
        });
    }
}

pub(super) fn susy(ck: &mut Checker) {
    // Feynman trick in the symmetric gauge for a few constant fields
    for (k, b) in [[0, 0, 3], [1, -2, 2], [-3, 1, 0]].into_iter().enumerate() {
        let b = b.map(|x| r(x, 2));
        let (e, c) = (r(-1, 1), r(7, 3));
        let inputs = format!("e=-1 c=7/3 B=({}, {}, {})", b[0], b[1], b[2]);
        ck.guard(&format!("feynman-trick/{k}"), |ck| {
            let t = feynman_trick(&e, &c, &b)?;
            ck.exact(&format!("feynman-trick/{k}"), "[(p − eA/c)·σ]^{2⋆} = (p − eA/c)^{2⋆} − (ħe/c)σ·B", &inputs, "lhs", "rhs", &t.residual()?);
            Ok(())
        });
    }
    ck.guard("interaction-term", |ck| {
        let (e, c, b, m) = (r(2, 1), r(3, 1), r(5, 7), r(1, 2));
        let omega = e.clone() * b.clone() * (m.clone() * c.clone()).inverse().expect("nonzero");
        let got = interaction_term(&e, &c, &b, &m)?;
        let want = Multivector::product_of(3, &[1, 2]).scale(&(Exact::imag_unit() * omega));
        ck.exact("interaction-term", "−(eħ/2mc)Bσ³ = iωθ₁θ₂", "e=2 c=3 B=5/7 m=1/2", &got, &want, &(got.clone() - want.clone()));
        Ok(())
    });
    ck.guard("spinful-landau", |ck| {
        let sys = spinful_landau(&r(3, 2), &r(2, 5))?;
        for n in 0..3 {
            for l in 0..3 {
                for s in [SpinLabel::Up, SpinLabel::Down] {
                    let inputs = format!("m=3/2 omega=2/5 n={n} l={l} s={}", label_name(s));
                    let e = sys.energy(n, s);
                    ck.exact(&format!("spinful-landau/n{n}l{l}{}", label_name(s)), "H⋆π = ħω(n + 1/2 ± 1/2)π", &inputs, "H⋆π", format!("({e})π"), &sys.eigen_residual(n, l, s)?);
                }
            }
        }
        Ok(())
    });
    let omega = r(3, 4);
    let h = susy_hamiltonian(&omega);
    for n_b in 0..=8u32 {
        for s in [SpinLabel::Up, SpinLabel::Down] {
            let id = format!("spectrum/n{n_b}{}", label_name(s));
            let inputs = format!("omega=3/4 n={n_b} s={}", label_name(s));
            ck.guard(&id.clone(), |ck| {
                let st = SusyState::new(n_b, s)?;
                let e = st.energy(&omega);
                let closed = Exact::hbar() * omega.clone() * (r(2 * n_b as i64 + 1, 2) + r(s.sign(), 2));
                let res = susy_product(&h, &st.wigner)?.sub(&st.wigner.scale(&closed))?;
                ck.exact(&id, "H⋆π_{n,s} = ħω(n + 1/2 + s)π_{n,s}", &inputs, "H⋆π", format!("({closed})π"), &res);
                ck.exact(&format!("{id}/closed-form"), "state energy equals closed form", &inputs, &e, &closed, &(e.clone() - closed.clone()));
                Ok(())
            });
        }
        if n_b >= 1 {
            let a = susy_energy(n_b, SpinLabel::Down, &omega);
            let b = susy_energy(n_b - 1, SpinLabel::Up, &omega);
            ck.exact(&format!("degeneracy/n{n_b}"), "E(n, −1/2) = E(n − 1, +1/2)", &format!("n={n_b}"), &a, &b, &(a.clone() - b.clone()));
        }
    }
    let e0 = susy_energy(0, SpinLabel::Down, &omega);
    ck.exact("ground-energy", "E(0, −1/2) = 0", "", &e0, "0", &e0);
    for n_b in 0..=6u32 {
        for s in [SpinLabel::Up, SpinLabel::Down] {
            for raise in [true, false] {
                let id = format!("ladder/n{n_b}{}{}", label_name(s), if raise { "/q-plus" } else { "/q-minus" });
                let inputs = format!("n={n_b} s={} raise={raise}", label_name(s));
                ck.guard(&id.clone(), |ck| {
                    let got = ladder(&SusyState::new(n_b, s)?, raise)?;
                    let (want, label) = match ladder_image(n_b, s, raise) {
                        Some((k, nb, nf)) => (SusyState::new(nb, nf)?.wigner.scale(&k), format!("({k})π_{{{nb},{}}}", label_name(nf))),
                        None => (got.zero_like(), "0".to_string()),
                    };
                    ck.exact(&id, "Q⋆π⋆Q† maps between degenerate partners", &inputs, "Q⋆π⋆Q†", label, &got.sub(&want)?);
                    Ok(())
                });
            }
        }
    }
    ck.guard("fredholm", |ck| {
        for (name, res) in fredholm_residuals()? {
            ck.exact(&format!("fredholm/{name}"), name, "", name, "0", &res);
        }
        Ok(())
    });
    let env = ck.env();
    let mut base = None;
    for n in 1..=ck.cfg.witten_truncation as u32 {
        let inputs = format!("N={n} hbar={}", env.hbar);
        ck.guard(&format!("witten-index/N{n}"), |ck| {
            let wi = witten_index(n, &env)?;
            ck.float(&format!("witten-index/N{n}"), "Witten index equals 1", &inputs, wi.index, 1, (wi.index - 1.0).abs(), 1e-9);
            let worst = wi.levels.iter().filter(|l| l.level > 0).map(|l| l.contribution.abs()).fold(0.0, f64::max);
            ck.float(&format!("witten-cancellation/N{n}"), "levels with E > 0 contribute zero", &inputs, worst, 0, worst, 1e-9);
            let b = *base.get_or_insert(wi.index);
            ck.float(&format!("witten-truncation/N{n}"), "index independent of truncation", &inputs, wi.index, b, (wi.index - b).abs(), 1e-9);
            ck.holds(&format!("witten-phase/N{n}"), "exact supersymmetry", &inputs, format!("{:?}", wi.classification), "ExactSusy", wi.classification == crate::susy::SusyPhase::ExactSusy);
            Ok(())
        });
    }
}
