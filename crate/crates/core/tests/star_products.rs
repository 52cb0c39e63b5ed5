use cliffstar::grassmann::random::{invertible_form, random_form, random_monomial, random_multivector, random_scalar, rng_index};
use cliffstar::grassmann::{circle_product, contract_closed, contract_rules, pauli_form, pauli_form_exact, BilinearForm};
use cliffstar::star::*;
use cliffstar::{Bindings, Coeff, Error, Exact, Multivector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Mv = Multivector<Exact>;

fn t(d: usize, i: usize) -> Mv {
    Mv::theta(d, i)
}

/// Signed sum over perfect matchings `(a<b)` of positions.
fn pfaffian_pairing(idx: &[usize], b: &BilinearForm<Exact>) -> Exact {
    if idx.is_empty() {
        return Exact::one();
    }
    if idx.len() % 2 == 1 {
        return Exact::zero();
    }
    let mut sum = Exact::zero();
    for k in 1..idx.len() {
        let mut rest: Vec<usize> = idx[1..].to_vec();
        rest.remove(k - 1);
        let term = b.get(idx[0] - 1, idx[k] - 1) * pfaffian_pairing(&rest, b);
        sum = if k % 2 == 1 { sum + term } else { sum - term };
    }
    sum
}

#[test]
fn circle_of_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = random_form(&mut rng, 3);
    for i in 1..=3 {
        for j in 1..=3 {
            let p = circle_product(&t(3, i), &t(3, j), &b).unwrap();
            assert_eq!(p, t(3, i).wedge(&t(3, j)).unwrap() + Mv::scalar(3, b.get(i - 1, j - 1)));
            let q = circle_product(&t(3, j), &t(3, i), &b).unwrap();
            assert_eq!(p + q, Mv::scalar(3, b.g(i - 1, j - 1) * Exact::from(2)));
        }
    }
}

#[test]
fn pauli_spec_matches_circle() {
    let spec = StarProductSpec::pauli_exact(3);
    let circle = StarProductSpec::Circle(pauli_form_exact(3));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let u = random_multivector(&mut rng, 3);
        let v = random_multivector(&mut rng, 3);
        assert_eq!(spec.product(&u, &v).unwrap(), circle.product(&u, &v).unwrap());
    }
    for i in 1..=3 {
        for j in 1..=3 {
            let ac = spec.anticommutator(&t(3, i), &t(3, j)).unwrap();
            let expected = if i == j { Mv::scalar(3, Exact::hbar()) } else { Mv::zero(3) };
            assert_eq!(ac, expected);
        }
    }
}

#[test]
fn top_contraction_term_is_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 2..=6 {
        let b = random_form(&mut rng, d);
        for _ in 0..20 {
            let u = random_monomial(&mut rng, d);
            let v = random_monomial(&mut rng, d);
            let (gu, gv) = (u.grade().unwrap(), v.grade().unwrap());
            if gu > gv {
                continue;
            }
            let p = circle_product(&u, &v, &b).unwrap();
            assert_eq!(p.grade_part(gv - gu), contract_closed(&u, &v, &b).unwrap());
        }
    }
}

#[test]
fn clifford_map_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let d = 4;
    let b = random_form(&mut rng, d);
    for _ in 0..15 {
        let u = random_multivector(&mut rng, d);
        let (i, j) = (1 + rng_index(&mut rng, d), 1 + rng_index(&mut rng, d));
        assert_eq!(clifford_map(&t(d, i), &Mv::one(d), &b).unwrap(), t(d, i));
        // γ_iγ_j u = θ_iθ_ju + θ_i(θ_j⌋u) + θ_i⌋(θ_ju) + θ_i⌋(θ_j⌋u)
        let lhs = clifford_map(&t(d, i), &clifford_map(&t(d, j), &u, &b).unwrap(), &b).unwrap();
        let cj = contract_rules(&t(d, j), &u, &b).unwrap();
        let rhs = t(d, i).wedge(&t(d, j)).unwrap().wedge(&u).unwrap()
            + t(d, i).wedge(&cj).unwrap()
            + contract_rules(&t(d, i), &t(d, j).wedge(&u).unwrap(), &b).unwrap()
            + contract_rules(&t(d, i), &cj, &b).unwrap();
        assert_eq!(lhs, rhs);
        let other = clifford_map(&t(d, j), &clifford_map(&t(d, i), &u, &b).unwrap(), &b).unwrap();
        assert_eq!(lhs + other, u.scale(&(b.g(i - 1, j - 1) * Exact::from(2))));
        // γ_u γ_v = γ_{u∘v}
        let v = random_multivector(&mut rng, d);
        let w = random_multivector(&mut rng, d);
        let composed = clifford_map(&u, &clifford_map(&v, &w, &b).unwrap(), &b).unwrap();
        let direct = clifford_map(&circle_product(&u, &v, &b).unwrap(), &w, &b).unwrap();
        assert_eq!(composed, direct);
    }
}

#[test]
fn grassmann_exp_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = 5;
    assert_eq!(grassmann_exp(&Mv::zero(d)).unwrap(), Mv::one(d));
    assert_eq!(grassmann_exp(&t(d, 1)), Err(Error::NotNilpotentEven(1)));
    assert_eq!(grassmann_exp(&Mv::one(d)), Err(Error::NotNilpotentEven(0)));
    let b = random_form(&mut rng, d);
    for _ in 0..10 {
        let f = (0..4).fold(Mv::zero(d), |acc, _| acc + random_monomial(&mut rng, d).grade_part(2));
        let ef = grassmann_exp(&f).unwrap();
        assert_eq!(ef.wedge(&grassmann_exp(&-f.clone()).unwrap()).unwrap(), Mv::one(d));
        let i = 1 + rng_index(&mut rng, d);
        let lhs = contract_rules(&t(d, i), &ef, &b).unwrap();
        let rhs = contract_rules(&t(d, i), &f, &b).unwrap().wedge(&ef).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn wick_form_solves_its_defining_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let zero = BilinearForm::diagonal(3, Exact::zero());
    assert!(solve_wick_form(&pauli_form_exact(3), &zero).unwrap().f().is_zero());
    for d in 2..=5 {
        let b = invertible_form(&mut rng, d);
        let pauli_b = BilinearForm::from_parts(&pauli_form_exact(d), &b.antisymmetric()).unwrap();
        for form in [&b, &pauli_b] {
            let w = solve_wick_form(&form.symmetric(), &form.antisymmetric()).unwrap();
            assert!(w.defining_residual().iter().all(Exact::is_zero));
            assert_eq!(w.f().grades(), if d >= 2 && !w.f().is_zero() { vec![2] } else { vec![] });
            for i in 1..=d {
                for j in 1..=d {
                    assert_eq!(double_contraction(i, j, &w).unwrap(), form.a(i - 1, j - 1));
                }
            }
        }
    }
}

#[test]
fn singular_metric_is_reported() {
    let g = BilinearForm::new(2, vec![Exact::one(), Exact::one(), Exact::one(), Exact::one()]).unwrap();
    let a = BilinearForm::diagonal(2, Exact::zero());
    assert!(matches!(solve_wick_form(&g, &a), Err(Error::SingularMetric(_))));
}

#[test]
fn wick_conjugated_clifford_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = 4;
    let b = invertible_form(&mut rng, d);
    let g = b.symmetric();
    let w = solve_wick_form(&g, &b.antisymmetric()).unwrap();
    let ef = grassmann_exp(w.f()).unwrap();
    assert_eq!(wick_conjugate(&Mv::one(d), &w).unwrap(), Mv::one(d));
    let conj = |x: &Mv| grassmann_exp(&-w.f().clone()).unwrap().wedge(x).unwrap();
    for _ in 0..10 {
        let u = random_multivector(&mut rng, d);
        let i = 1 + rng_index(&mut rng, d);
        let j = 1 + rng_index(&mut rng, d);
        let eu = ef.wedge(&u).unwrap();
        // e^{−F}γ_i e^F u = θ_iu + θ_i⌋u + (θ_i⌋F)u
        let lhs = conj(&clifford_map(&t(d, i), &eu, &g).unwrap());
        let rhs = t(d, i).wedge(&u).unwrap()
            + contract_rules(&t(d, i), &u, &g).unwrap()
            + contract_rules(&t(d, i), w.f(), &g).unwrap().wedge(&u).unwrap();
        assert_eq!(lhs, rhs);
        let gij = clifford_map(&t(d, i), &clifford_map(&t(d, j), &eu, &g).unwrap(), &g).unwrap();
        let gji = clifford_map(&t(d, j), &clifford_map(&t(d, i), &eu, &g).unwrap(), &g).unwrap();
        assert_eq!(conj(&(gij + gji)), u.scale(&(g.get(i - 1, j - 1) * Exact::from(2))));
    }
}

#[test]
fn scalar_part_examples() {
    let d = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let b = random_form(&mut rng, d);
    assert_eq!(scalar_part(&(Mv::one(d) + t(d, 1).wedge(&t(d, 2)).unwrap())), Exact::one());
    assert_eq!(scalar_part(&circle_product(&t(d, 1), &t(d, 3), &b).unwrap()), b.get(0, 2));
    let prod = StarProductSpec::Circle(b.clone()).product_all(&[t(d, 1), t(d, 2), t(d, 3), t(d, 4)]).unwrap();
    let expected = b.get(0, 1) * b.get(2, 3) - b.get(0, 2) * b.get(1, 3) + b.get(0, 3) * b.get(1, 2);
    assert_eq!(scalar_part(&prod), expected);
    assert_eq!(pfaffian_pairing(&[1, 2, 3, 4], &b), expected);
}

#[test]
fn scalar_equivalence_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for draw in 0..200 {
        let d = rng.gen_range(2..=5);
        let b = invertible_form(&mut rng, d);
        let n = draw % 7;
        let idx: Vec<usize> = (0..n).map(|_| 1 + rng_index(&mut rng, d)).collect();
        let r = scalar_equivalence_check(&idx, &b).unwrap();
        assert!(r.difference.is_zero(), "indices {idx:?}: {} vs {}", r.lhs, r.rhs);
        assert_eq!(r.lhs, pfaffian_pairing(&idx, &b));
        if n % 2 == 1 {
            assert!(r.lhs.is_zero() && r.rhs.is_zero());
        }
        if n == 2 {
            assert_eq!(r.lhs, b.get(idx[0] - 1, idx[1] - 1));
        }
    }
}

#[test]
fn wick_isomorphism_is_not_a_t_transformation() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let b = invertible_form(&mut rng, 3);
    let (wick, circle) = t_transformation_counterexample(1, 2, &b).unwrap();
    assert_eq!(circle.grade_part(2), t(3, 1).wedge(&t(3, 2)).unwrap());
    assert_ne!(wick.grade_part(2), circle.grade_part(2));
    assert_eq!(wick.scalar_part(), circle.scalar_part());
}

#[test]
fn star_exponential_closed_form_and_matrix_agree() {
    let env = Bindings { hbar: 0.7, c: 1.0 };
    let spec = StarProductSpec::pauli_exact(2);
    let (e0, _) = star_exp(&Mv::zero(2), &spec, 1.3, &env).unwrap();
    assert!(e0.max_abs_diff(&Multivector::one(2)) < 1e-15);

    // H = −iωθ1θ2: Exp(Ht) = π₊e^{−iωt/2} + π₋e^{iωt/2}, π± = (1 ± σ³)/2, σ³ = (2/iħ)θ1θ2
    let omega = Exact::rational(3, 2);
    let h = t(2, 1).wedge(&t(2, 2)).unwrap().scale(&(Exact::gaussian((0, 1), (-1, 1)) * omega));
    let form = pauli_form(2, Complex64::new(env.hbar, 0.0));
    for &tt in &[0.0, 0.4, 2.5] {
        let (closed, path) = star_exp(&h, &spec, tt, &env).unwrap();
        assert_eq!(path, StarExpPath::ClosedForm);
        let matrix = star_exp_matrix(&h.to_complex(&env), &form, env.hbar, tt).unwrap();
        assert!(closed.max_abs_diff(&matrix) < 1e-12);
        let t12 = Multivector::<Complex64>::monomial(2, 0b11, Complex64::new(0.0, -2.0 / env.hbar));
        let one = Multivector::<Complex64>::one(2);
        let pp = (one.clone() + t12.clone()).scale(&Complex64::new(0.5, 0.0));
        let pm = (one - t12).scale(&Complex64::new(0.5, 0.0));
        let ph = Complex64::new(0.0, -1.5 * tt / 2.0).exp();
        let expected = pp.scale(&ph) + pm.scale(&ph.inv());
        assert!(closed.max_abs_diff(&expected) < 1e-12);
    }
}

#[test]
fn star_exponential_series_on_nilpotent() {
    let env = Bindings::default();
    let b = random_form(&mut ChaCha8Rng::seed_from_u64(11), 3).map(|s| s.to_complex(&env));
    let bx = BilinearForm::diagonal(3, Exact::zero());
    let x = t(3, 1).wedge(&t(3, 2)).unwrap() + t(3, 3).wedge(&t(3, 1)).unwrap();
    let tau = Exact::gaussian((0, 1), (-2, 1));
    let series = star_exp_series(&x, &bx, &tau).unwrap();
    let matrix = star_exp_matrix(&x.to_complex(&env), &bx.map(|s| s.to_complex(&env)), 1.0, 2.0).unwrap();
    assert!(series.to_complex(&env).max_abs_diff(&matrix) < 1e-12);
    let y = Multivector::<Complex64>::one(3);
    assert!(star_exp_series(&y, &b, &Complex64::new(1.0, 0.0)).is_err());
}

#[test]
fn star_exponential_group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let env = Bindings { hbar: 1.3, c: 1.0 };
    for d in [2, 3, 4] {
        let b = random_form(&mut rng, d).map(|s| s.to_complex(&env) * 0.3);
        for _ in 0..5 {
            let x = random_multivector(&mut rng, d);
            let x = (x.grade_part(0) + x.grade_part(2) + x.grade_part(4)).to_complex(&env).scale(&Complex64::new(0.2, 0.0));
            let (t1, t2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let e1 = star_exp_matrix(&x, &b, env.hbar, t1).unwrap();
            let e2 = star_exp_matrix(&x, &b, env.hbar, t2).unwrap();
            let e12 = star_exp_matrix(&x, &b, env.hbar, t1 + t2).unwrap();
            assert!(circle_product(&e1, &e2, &b).unwrap().max_abs_diff(&e12) < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn circle_product_is_associative(seed in any::<u64>(), d in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_form(&mut rng, d);
        let u = random_multivector(&mut rng, d);
        let v = random_multivector(&mut rng, d);
        let w = random_multivector(&mut rng, d);
        let left = circle_product(&circle_product(&u, &v, &b).unwrap(), &w, &b).unwrap();
        let right = circle_product(&u, &circle_product(&v, &w, &b).unwrap(), &b).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn anticommutator_ignores_antisymmetric_part(seed in any::<u64>(), d in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_form(&mut rng, d);
        let i = 1 + rng_index(&mut rng, d);
        let j = 1 + rng_index(&mut rng, d);
        let s = random_scalar(&mut rng);
        let ac = circle_product(&t(d, i), &t(d, j), &b).unwrap() + circle_product(&t(d, j), &t(d, i), &b).unwrap();
        prop_assert_eq!(ac.scale(&s), Mv::scalar(d, b.g(i - 1, j - 1) * Exact::from(2) * s));
    }
}
