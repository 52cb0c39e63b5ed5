use std::hint::black_box;

use cliffstar::dirac::{build_rep, DiracKind, Kinematics};
use cliffstar::fw::{fw_dirac_em, reference_cases, FwParams, DEFAULT_ORDER};
use cliffstar::grassmann::random::{invertible_form, random_form};
use cliffstar::grassmann::{circle_product, contract_closed, contract_rules, Multivector};
use cliffstar::phase::{landau_problem, oscillator_hamiltonian, oscillator_wigner, MoyalSpec};
use cliffstar::star::scalar_equivalence_check;
use cliffstar::{Coeff, Exact};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn full_monomial(d: usize) -> Multivector<Exact> {
    Multivector::product_of(d, &(1..=d).collect::<Vec<_>>())
}

fn grassmann(c: &mut Criterion) {
    let mut g = c.benchmark_group("grassmann");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in [4usize, 6, 8] {
        let b = random_form(&mut rng, d);
        let u = full_monomial(d);
        g.bench_with_input(BenchmarkId::new("circle_full_monomials", d), &d, |bench, _| {
            bench.iter(|| circle_product(black_box(&u), black_box(&u), &b).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("contract_closed", d), &d, |bench, _| {
            bench.iter(|| contract_closed(black_box(&u), black_box(&u), &b).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("contract_rules", d), &d, |bench, _| {
            bench.iter(|| contract_rules(black_box(&u), black_box(&u), &b).unwrap())
        });
    }
    g.finish();
}

fn wick(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let b = invertible_form(&mut rng, 4);
    c.bench_function("wick/scalar_equivalence_n4_d4", |bench| {
        bench.iter(|| scalar_equivalence_check(black_box(&[1, 3, 2, 4]), &b).unwrap())
    });
}

fn phase_space(c: &mut Criterion) {
    let (m, w) = (Exact::rational(3, 2), Exact::rational(2, 5));
    let spec = MoyalSpec::moyal();
    let h = oscillator_hamiltonian(&m, &w).unwrap();
    let pi = oscillator_wigner(6, &m, &w).unwrap();
    c.bench_function("moyal/oscillator_genvalue_n6", |bench| bench.iter(|| spec.product(black_box(&h), black_box(&pi)).unwrap()));
    let lp = landau_problem(&Exact::from(2), &Exact::rational(3, 4)).unwrap();
    c.bench_function("moyal/landau_eigen_residuals_n3_l3", |bench| bench.iter(|| lp.eigen_residuals(black_box(3), black_box(3)).unwrap()));
}

fn dirac(c: &mut Criterion) {
    let kin = Kinematics::exact(Exact::from(3), Exact::one(), [Exact::from(4), Exact::zero(), Exact::zero()], Exact::from(5)).unwrap();
    for kind in [DiracKind::D4, DiracKind::D6] {
        let rep = build_rep(kind).unwrap();
        c.bench_function(&format!("dirac/energy_projectors_{}", kind.name()), |bench| {
            bench.iter(|| {
                let (p, _) = rep.energy_projectors(black_box(&kin)).unwrap();
                rep.star(&p, &p).unwrap()
            })
        });
    }
}

fn foldy_wouthuysen(c: &mut Criterion) {
    let params = FwParams { m: Exact::rational(3, 2), e: Exact::from(-1) };
    let mut g = c.benchmark_group("fw");
    g.sample_size(10);
    for (name, field) in reference_cases() {
        g.bench_function(name, |bench| bench.iter(|| fw_dirac_em(black_box(&field), &params, DEFAULT_ORDER).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, grassmann, wick, phase_space, dirac, foldy_wouthuysen);
criterion_main!(benches);
