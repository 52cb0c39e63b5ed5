use cliffstar::dirac::*;
use cliffstar::grassmann::random::random_multivector;
use cliffstar::grassmann::Multivector;
use cliffstar::spin::{rotation_matrix, sigma_in};
use cliffstar::star::star_exp_matrix;
use cliffstar::{Bindings, Coeff, Exact};
use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Mv = Multivector<Exact>;
type Mc = Multivector<Complex64>;

fn reps() -> Vec<DiracRep<Exact>> {
    DiracKind::ALL.iter().map(|&k| build_rep(k).unwrap()).collect()
}

fn r(n: i64) -> Exact {
    Exact::from(n)
}

fn pythagorean() -> Kinematics<Exact> {
    Kinematics::exact(r(3), r(1), [r(4), r(0), r(0)], r(5)).unwrap()
}

fn close(a: &Mc, b: &Mc, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `exp(M)` with `M^ρ_ν = g^{ρα}ω_{αν}`.
fn lorentz_oracle(omega: &[[f64; 4]; 4]) -> Matrix4<f64> {
    let g = [1.0, -1.0, -1.0, -1.0];
    Matrix4::from_fn(|rho, nu| g[rho] * omega[rho][nu]).exp()
}

/// Pure boost with rapidity vector `w`: `Λ⁰₀ = cosh`, `Λ⁰_i = Λ^i₀ = n_i sinh`,
/// `Λ^i_j = δ_ij + (cosh − 1)n_in_j`.
fn boost_oracle(w: [f64; 3]) -> Matrix4<f64> {
    let norm = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    if norm == 0.0 {
        return Matrix4::identity();
    }
    let n = w.map(|x| x / norm);
    let (ch, sh) = (norm.cosh(), norm.sinh());
    Matrix4::from_fn(|mu, nu| match (mu, nu) {
        (0, 0) => ch,
        (0, j) => n[j - 1] * sh,
        (i, 0) => n[i - 1] * sh,
        (i, j) => f64::from(u8::from(i == j)) + (ch - 1.0) * n[i - 1] * n[j - 1],
    })
}

fn lambda_diff(l: &[[Complex64; 4]; 4], m: &Matrix4<f64>) -> f64 {
    (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| (l[a][b] - c(m[(a, b)])).norm()).fold(0.0, f64::max)
}

#[test]
fn dirac_algebra_all_representations() {
    for rep in reps() {
        for (name, res) in rep.algebra_residuals().unwrap() {
            assert!(res.is_zero(), "{:?} {name}", rep.kind);
        }
        // γ⁵ squares to 1 and anticommutes with every γ^μ
        assert_eq!(rep.star(&rep.gamma5, &rep.gamma5).unwrap(), Mv::one(rep.dim()));
        for g in &rep.gamma {
            assert!(rep.spec.anticommutator(&rep.gamma5, g).unwrap().is_zero());
        }
    }
}

#[test]
fn lorentz_generator_algebra() {
    let ih = Exact::imag_unit() * Exact::hbar();
    for rep in reps() {
        let s: Vec<Mv> = (1..=3).map(|i| rep.spin_generator(i).unwrap()).collect();
        let k: Vec<Mv> = (1..=3).map(|i| rep.boost_generator(i)).collect();
        for i in 1..=3 {
            // S_i = (ħ/2)σ^i built on θ₁θ₂θ₃ in every representation
            let sig = sigma_in(rep.dim(), i, &Exact::hbar()).scale(&(Exact::hbar() * Exact::rational(1, 2)));
            assert_eq!(s[i - 1], sig, "{:?}", rep.kind);
            // K_i = (ħ/2)σ^{0i}, S_i = (ħ/2)Σ_{j<k} ε σ^{jk}
            let half_h = Exact::hbar() * Exact::rational(1, 2);
            assert_eq!(k[i - 1], rep.sigma_mu_nu(0, i).unwrap().scale(&half_h));
            let mut from_sigma = Mv::zero(rep.dim());
            for j in 1..=3 {
                for l in (j + 1)..=3 {
                    let e = levi_civita(i, j, l);
                    if e != 0 {
                        from_sigma += rep.sigma_mu_nu(j, l).unwrap().scale(&(half_h.clone() * r(e)));
                    }
                }
            }
            assert_eq!(s[i - 1], from_sigma);
            for j in 1..=3 {
                let eps = |a: &[Mv]| {
                    (1..=3).fold(Mv::zero(rep.dim()), |acc, l| acc + a[l - 1].scale(&(ih.clone() * r(levi_civita(i, j, l)))))
                };
                assert_eq!(rep.spec.commutator(&s[i - 1], &s[j - 1]).unwrap(), eps(&s));
                assert_eq!(rep.spec.commutator(&s[i - 1], &k[j - 1]).unwrap(), eps(&k));
                assert_eq!(rep.spec.commutator(&k[i - 1], &k[j - 1]).unwrap(), -eps(&s));
            }
        }
        // [K₁, K₂] = −iħS₃
        assert_eq!(rep.spec.commutator(&k[0], &k[1]).unwrap(), -s[2].scale(&ih));
    }
}

#[test]
fn parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rep in reps() {
        for i in 0..3 {
            assert_eq!(rep.parity(&rep.alpha[i]).unwrap(), -rep.alpha[i].clone());
            let s = rep.spin_generator(i + 1).unwrap();
            assert_eq!(rep.parity(&s).unwrap(), s);
        }
        assert_eq!(rep.parity(&Mv::one(rep.dim())).unwrap(), Mv::one(rep.dim()));
        for _ in 0..10 {
            let x = random_multivector(&mut rng, rep.dim());
            assert_eq!(rep.parity(&rep.parity(&x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn exact_rotations_with_rational_angles() {
    // a = 2, b = 1 gives cos φ = 3/5, sin φ = 4/5
    let axes = [[r(1), r(0), r(0)], [Exact::rational(2, 3), Exact::rational(1, 3), Exact::rational(2, 3)]];
    for rep in reps() {
        for n in &axes {
            let (u, u_inv) = rep.rotor(&r(2), &r(1), n).unwrap();
            assert_eq!(rep.star(&u, &u_inv).unwrap(), Mv::one(rep.dim()));
            let rot = rotation_matrix(&Exact::rational(3, 5), &Exact::rational(4, 5), n);
            for i in 0..3 {
                let want_a = (0..3).fold(Mv::zero(rep.dim()), |acc, j| acc + rep.alpha[j].scale(&rot[j][i]));
                assert_eq!(rep.star_all(&[&u, &rep.alpha[i], &u_inv]).unwrap(), want_a, "{:?}", rep.kind);
                let want_g = (0..3).fold(Mv::zero(rep.dim()), |acc, j| acc + rep.gamma[j + 1].scale(&rot[j][i]));
                assert_eq!(rep.star_all(&[&u, &rep.gamma[i + 1], &u_inv]).unwrap(), want_g);
            }
            assert_eq!(rep.star_all(&[&u, &rep.beta, &u_inv]).unwrap(), rep.beta);
        }
    }
}

#[test]
fn boosts_match_rapidity_matrix() {
    let env = Bindings { hbar: 0.8, c: 1.0 };
    for rep in reps() {
        let f = rep.to_complex(&env);
        for g in &f.gamma {
            assert!(close(&f.boost(&[0.0; 3], g).unwrap(), g, 1e-14));
        }
        for w in [[0.7, 0.0, 0.0], [0.3, -0.5, 0.9], [0.0, 1.4, 0.2]] {
            let l = f.lambda_from(|x| f.boost(&w, x)).unwrap();
            assert!(lambda_diff(&l, &boost_oracle(w)) < 1e-10, "{:?} {w:?}", rep.kind);
            // α^μ = (1, α) transforms with both exponentials equal
            let fwd = f.boost_element(&w).unwrap();
            let alpha_mu: Vec<Mc> = std::iter::once(Mc::one(f.dim())).chain(f.alpha.iter().cloned()).collect();
            let m = boost_oracle(w);
            for mu in 0..4 {
                let got = f.star_all(&[&fwd, &alpha_mu[mu], &fwd]).unwrap();
                let want = (0..4).fold(Mc::zero(f.dim()), |acc, nu| acc + alpha_mu[nu].scale(&c(m[(mu, nu)])));
                assert!(close(&got, &want, 1e-10));
            }
        }
    }
}

#[test]
fn general_lorentz_transformation() {
    let env = Bindings::default();
    // boost parameters ω_{0i} together with rotation parameters ω_{jk}
    let mut omega = [[0.0; 4]; 4];
    let set = |o: &mut [[f64; 4]; 4], a: usize, b: usize, v: f64| {
        o[a][b] = v;
        o[b][a] = -v;
    };
    set(&mut omega, 0, 1, 0.4);
    set(&mut omega, 0, 3, -0.25);
    set(&mut omega, 1, 2, 0.6);
    set(&mut omega, 2, 3, -0.35);
    let oracle = lorentz_oracle(&omega);
    for rep in reps() {
        let f = rep.to_complex(&env);
        let l = f.lambda_from(|x| f.lorentz_transform(&omega, x)).unwrap();
        assert!(lambda_diff(&l, &oracle) < 1e-10, "{:?}", rep.kind);
    }
    // a pure boost through σ^{0i} agrees with ω·K
    let mut pure = [[0.0; 4]; 4];
    set(&mut pure, 0, 2, 0.9);
    let f = build_rep(DiracKind::D4).unwrap().to_complex(&env);
    let a = f.lambda_from(|x| f.lorentz_transform(&pure, x)).unwrap();
    let b = f.lambda_from(|x| f.boost(&[0.0, 0.9, 0.0], x)).unwrap();
    assert!(lambda_diff(&a, &Matrix4::from_fn(|i, j| b[i][j].re)) < 1e-12);
}

#[test]
fn energy_projectors_exact() {
    let kin = pythagorean();
    for rep in reps() {
        let h = rep.hamiltonian(&kin);
        assert_eq!(rep.star(&h, &h).unwrap(), Mv::scalar(rep.dim(), kin.energy_squared()));
        let (plus, minus) = rep.energy_projectors(&kin).unwrap();
        assert_eq!(rep.star(&h, &plus).unwrap(), plus.scale(&r(5)));
        assert_eq!(rep.star(&h, &minus).unwrap(), minus.scale(&r(-5)));
        assert_eq!(rep.star(&plus, &plus).unwrap(), plus);
        assert_eq!(rep.star(&minus, &minus).unwrap(), minus);
        assert!(rep.star(&plus, &minus).unwrap().is_zero());
        assert_eq!(plus.clone() + minus.clone(), Mv::one(rep.dim()));
        assert_eq!(rep.trace(&plus), r(2));
        // rest frame
        let rest = Kinematics::exact(r(3), r(1), [r(0), r(0), r(0)], r(3)).unwrap();
        let (p0, m0) = rep.energy_projectors(&rest).unwrap();
        let half = Exact::rational(1, 2);
        assert_eq!(p0, (Mv::one(rep.dim()) + rep.gamma[0].clone()).scale(&half));
        assert_eq!(m0, (Mv::one(rep.dim()) - rep.gamma[0].clone()).scale(&half));
        // covariant form
        let (pm, mm) = rep.covariant_energy_projectors(&kin).unwrap();
        let p4 = kin.four_momentum().unwrap();
        let mc = Mv::scalar(rep.dim(), r(3));
        let ps = rep.slash(&p4);
        assert!(rep.star(&(ps.clone() - mc.clone()), &pm).unwrap().is_zero());
        assert!(rep.star(&(ps + mc), &mm).unwrap().is_zero());
        assert_eq!(rep.star(&pm, &pm).unwrap(), pm);
    }
    assert!(Kinematics::exact(r(3), r(1), [r(4), r(0), r(0)], r(6)).is_err());
}

#[test]
fn spin_projectors_exact() {
    let kin = pythagorean();
    let u = [r(0), Exact::rational(3, 5), Exact::rational(4, 5)];
    let quarter_h2 = Exact::hbar() * Exact::hbar() * Exact::rational(1, 4);
    let half_h = Exact::hbar() * Exact::rational(1, 2);
    for rep in reps() {
        let s = rep.spin_operator(&u).unwrap();
        assert_eq!(rep.star(&s, &s).unwrap(), Mv::scalar(rep.dim(), quarter_h2.clone()));
        let h = rep.hamiltonian(&kin);
        assert!(rep.spec.commutator(&h, &s).unwrap().is_zero());
        let (sp, sm) = rep.spin_projectors(&kin, &u).unwrap();
        assert_eq!(rep.star(&s, &sp).unwrap(), sp.scale(&half_h));
        assert_eq!(rep.star(&s, &sm).unwrap(), sm.scale(&-half_h.clone()));
        let (ep, em) = rep.energy_projectors(&kin).unwrap();
        for e in [&ep, &em] {
            for sproj in [&sp, &sm] {
                assert_eq!(rep.star(e, sproj).unwrap(), rep.star(sproj, e).unwrap());
                let combined = rep.star(e, sproj).unwrap();
                assert_eq!(rep.star(&combined, &combined).unwrap(), combined);
                assert_eq!(rep.trace(&combined), Exact::one());
            }
        }
        assert!(rep.spin_projectors(&kin, &[r(1), r(0), r(0)]).is_err());
        assert!(rep.spin_projectors(&kin, &[r(0), r(1), r(1)]).is_err());
    }
}

#[test]
fn covariant_spin_projectors_exact() {
    let kin = pythagorean();
    // u^μ = (0, 0, 1, 0): u·u = −1, u·p = 0
    let u = [r(0), r(0), r(1), r(0)];
    for rep in reps() {
        let (sp, sm) = rep.covariant_spin_projectors(&kin, &u).unwrap();
        let (ep, em) = rep.covariant_energy_projectors(&kin).unwrap();
        assert_eq!(sp.clone() + sm.clone(), Mv::one(rep.dim()));
        for e in [&ep, &em] {
            for s in [&sp, &sm] {
                let a = rep.star(e, s).unwrap();
                assert_eq!(a, rep.star(s, e).unwrap());
                assert_eq!(rep.star(&a, &a).unwrap(), a);
                assert_eq!(rep.trace(&a), Exact::one());
            }
        }
        // rest-frame form agrees with 1/2 ± S_u/ħ for u = (0, e_y)
        let rest = Kinematics::exact(r(3), r(1), [r(0), r(0), r(0)], r(3)).unwrap();
        let (rp, _) = rep.covariant_spin_projectors(&rest, &u).unwrap();
        let (np, _) = rep.spin_projectors(&rest, &[r(0), r(1), r(0)]).unwrap();
        assert_eq!(rp, np);
        assert!(rep.covariant_spin_projectors(&kin, &[r(0), r(1), r(0), r(0)]).is_err());
    }
}

#[test]
fn boosted_rest_frame_projectors() {
    let env = Bindings { hbar: 1.3, c: 1.0 };
    for rep in reps() {
        let f = rep.to_complex(&env);
        for p in [[4.0, 0.0, 0.0], [0.3, -1.2, 2.5]] {
            let kin = Kinematics::float(3.0, 1.0, p).unwrap();
            let w = kin.rapidity();
            let s = f.boost_element(&w).unwrap();
            let s_inv = f.boost_element(&w.map(|x| -x)).unwrap();
            assert!(close(&f.star(&s, &s_inv).unwrap(), &Mc::one(f.dim()), 1e-12));
            let g0 = f.star_all(&[&s_inv, &f.gamma[0], &s]).unwrap();
            let p4 = kin.four_momentum().unwrap();
            let want = f.slash(&p4).scale(&c(1.0 / 3.0));
            assert!(close(&g0, &want, 1e-10));
            let rest = Kinematics::float(3.0, 1.0, [0.0; 3]).unwrap();
            let (r_plus, r_minus) = f.energy_projectors(&rest).unwrap();
            let (c_plus, c_minus) = f.covariant_energy_projectors(&kin).unwrap();
            assert!(close(&f.star_all(&[&s_inv, &r_plus, &s]).unwrap(), &c_plus, 1e-10));
            assert!(close(&f.star_all(&[&s_inv, &r_minus, &s]).unwrap(), &c_minus, 1e-10));
        }
    }
}

#[test]
fn dirac_star_exponential() {
    let env = Bindings { hbar: 0.9, c: 1.0 };
    for rep in reps() {
        let f = rep.to_complex(&env);
        let kin = Kinematics::float(1.5, 1.0, [0.4, -0.7, 1.1]).unwrap();
        let h = f.hamiltonian(&kin);
        assert!(close(&f.dirac_star_exp(&kin, 0.0).unwrap(), &Mc::one(f.dim()), 1e-15));
        for t in [0.3, 1.7, -2.2] {
            let closed = f.dirac_star_exp(&kin, t).unwrap();
            let matrix = star_exp_matrix(&h, &f.spec.form(), env.hbar, t).unwrap();
            assert!(close(&closed, &matrix, 1e-10), "{:?} t={t}", rep.kind);
            let prod = f.star(&closed, &f.dirac_star_exp(&kin, 0.8).unwrap()).unwrap();
            assert!(close(&prod, &f.dirac_star_exp(&kin, t + 0.8).unwrap(), 1e-10));
        }
        // spin exponential Exp(S_u φ) = π₋e^{iφ/2} + π₊e^{−iφ/2}
        let kin0 = Kinematics::float(1.0, 1.0, [0.0, 0.0, 2.0]).unwrap();
        let u = [c(1.0), c(0.0), c(0.0)];
        let s_u = f.spin_operator(&u).unwrap();
        let (sp, sm) = f.spin_projectors(&kin0, &u).unwrap();
        let phi = 1.1;
        let want = sm.scale(&Complex64::new(0.0, phi / 2.0).exp()) + sp.scale(&Complex64::new(0.0, -phi / 2.0).exp());
        assert!(close(&f.star_exp(&s_u, phi).unwrap().0, &want, 1e-12));
    }
}

/// `iħ Exp(−Ht)⋆∂_{p_i}Exp(Ht)` by central differences in the momentum.
fn position_shift_by_conjugation(f: &DiracRep<Complex64>, kin: &Kinematics<Complex64>, i: usize, t: f64, hbar: f64) -> Mc {
    let step = 1e-5;
    let shifted = |d: f64| {
        let mut p = kin.p.map(|x| x.re);
        p[i - 1] += d;
        let k = Kinematics::float(kin.m.re, kin.c.re, p).unwrap();
        star_exp_matrix(&f.hamiltonian(&k), &f.spec.form(), hbar, t).unwrap()
    };
    let deriv = (shifted(step) - shifted(-step)).scale(&c(0.5 / step));
    let back = star_exp_matrix(&f.hamiltonian(kin), &f.spec.form(), hbar, -t).unwrap();
    f.star(&back, &deriv).unwrap().scale(&Complex64::new(0.0, hbar))
}

#[test]
fn zitterbewegung_heisenberg_and_drift() {
    let env = Bindings { hbar: 1.0, c: 1.0 };
    let kin = Kinematics::float(3.0, 1.0, [4.0, 0.0, 0.0]).unwrap();
    for kind in [DiracKind::D4, DiracKind::D6] {
        let f = build_rep(kind).unwrap().to_complex(&env);
        for i in 1..=3 {
            assert!(f.position_shift(&kin, i, 0.0).unwrap().norm1() < 1e-15);
        }
        let t_max = 10.0 * env.hbar / kin.energy.re;
        for n in 0..64 {
            let t = t_max * n as f64 / 63.0;
            for i in 1..=3 {
                let res = f.heisenberg_residual(&kin, i, t).unwrap();
                assert!(res.norm1() <= 1e-8, "{kind:?} i={i} t={t}: {}", res.norm1());
            }
        }
        for t in [0.4, 1.9] {
            let direct = position_shift_by_conjugation(&f, &kin, 1, t, env.hbar);
            assert!(close(&f.position_shift(&kin, 1, t).unwrap(), &direct, 1e-6));
        }
        // ±c²p/E = ±4/5 in the two energy sectors
        let (plus, minus) = f.drift_slopes(&kin, 1).unwrap();
        assert!((plus - 0.8).abs() < 1e-12 && (minus + 0.8).abs() < 1e-12);
        let samples = f.zitterbewegung(&kin, &[0.0, 0.5, 1.0]).unwrap();
        assert!((samples[2].drift[0] - 0.8).abs() < 1e-12);
        assert!(samples[0].oscillation[0] < 1e-15 && samples[1].oscillation[0] > 1e-3);
    }
}

#[test]
fn gamma_traces() {
    let mut reference: Option<Vec<Exact>> = None;
    for rep in reps() {
        let suite = rep.gamma_trace_suite().unwrap();
        for check in &suite {
            assert!(check.pass, "{:?} {}: {} vs {}", rep.kind, check.name, check.value, check.expected);
        }
        assert_eq!(rep.trace(&rep.star(&rep.gamma[0], &rep.gamma[0]).unwrap()), r(4));
        assert_eq!(rep.trace(&rep.gamma[1]), Exact::zero());
        let four = rep.star_all(&[&rep.gamma[0], &rep.gamma[1], &rep.gamma[0], &rep.gamma[1]]).unwrap();
        // γ⁰γ¹γ⁰γ¹ = −γ⁰γ⁰γ¹γ¹ = +1, and the identity gives 4(0 − g⁰⁰g¹¹ + 0) = 4
        assert_eq!(rep.trace(&four), r(4));
        let values: Vec<Exact> = suite.iter().map(|c| c.value.clone()).collect();
        match &reference {
            Some(v) => assert_eq!(v, &values),
            None => reference = Some(values),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn lorentz_group_composition(w1 in prop::array::uniform3(-1.0f64..1.0), w2 in prop::array::uniform3(-1.0f64..1.0)) {
        let f = build_rep(DiracKind::D4).unwrap().to_complex(&Bindings::default());
        let l1 = f.lambda_from(|x| f.boost(&w1, x)).unwrap();
        let l2 = f.lambda_from(|x| f.boost(&w2, x)).unwrap();
        let l12 = f.lambda_from(|x| f.boost(&w1, &f.boost(&w2, x)?)).unwrap();
        // inner boost applied first to γ, so Λ(γ) = Λ₂ then Λ₁ on coefficients
        for mu in 0..4 {
            for nu in 0..4 {
                let want: Complex64 = (0..4).map(|k| l2[mu][k] * l1[k][nu]).sum();
                prop_assert!((l12[mu][nu] - want).norm() < 1e-10);
            }
        }
    }
}
