//! Acceptance run: one pass/fail line per criterion, printed straight to
//! stdout so it shows up without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use cliffstar::grassmann::random::{invertible_form, random_form, random_monomial, rng_index};
use cliffstar::grassmann::{contract_closed, contract_rules, BilinearForm};
use cliffstar::spin::precession;
use cliffstar::star::scalar_equivalence_check;
use cliffstar::verify::{run, CheckRecord, Report, RunConfig, Suite};
use cliffstar::{Coeff, Exact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn records<'a>(r: &'a Report, prefix: &str) -> Vec<&'a CheckRecord> {
    r.suites.iter().flat_map(|s| &s.checks).filter(|c| c.id.starts_with(prefix)).collect()
}

/// All records under `prefix` are exact, passing and have zero residual;
/// `expect` is the minimum number of records required.
fn exact_zero(r: &Report, prefix: &str, expect: usize, problems: &mut Vec<String>) {
    let recs = records(r, prefix);
    if recs.len() < expect {
        problems.push(format!("{prefix}: {} records, want ≥ {expect}", recs.len()));
    }
    for c in recs {
        if !(c.exact && c.pass && c.residual == 0.0) {
            problems.push(format!("{}: exact={} pass={} residual={:e}", c.id, c.exact, c.pass, c.residual));
        }
    }
}

/// Numeric records under `prefix` stay within `tol`, and none was judged
/// against a looser bound.
fn within(r: &Report, prefix: &str, expect: usize, tol: f64, problems: &mut Vec<String>) {
    let recs = records(r, prefix);
    if recs.len() < expect {
        problems.push(format!("{prefix}: {} records, want ≥ {expect}", recs.len()));
    }
    for c in recs {
        let loose = c.tolerance.is_some_and(|t| t > tol);
        if !c.pass || c.residual > tol || loose {
            problems.push(format!("{}: pass={} residual={:e} tolerance={:?}", c.id, c.pass, c.residual, c.tolerance));
        }
    }
}

fn verdict(problems: Vec<String>, ok: impl Into<String>) -> Outcome {
    if problems.is_empty() {
        outcome(true, ok)
    } else {
        let shown: Vec<_> = problems.iter().take(5).cloned().collect();
        outcome(false, format!("{} problem(s): {}", problems.len(), shown.join("; ")))
    }
}

fn cliffordization_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let start = Instant::now();
    let mut bad = 0usize;
    let mut triples = 0usize;
    for d in 1..=8usize {
        let b = random_form(&mut rng, d);
        for _ in 0..125 {
            let (u, v, w) = (random_monomial(&mut rng, d), random_monomial(&mut rng, d), random_monomial(&mut rng, d));
            let closed = contract_closed(&u, &w, &b).unwrap() - contract_rules(&u, &w, &b).unwrap();
            let lhs = contract_rules(&u.wedge(&v).unwrap(), &w, &b).unwrap();
            let rhs = contract_rules(&u, &contract_rules(&v, &w, &b).unwrap(), &b).unwrap();
            if !closed.is_zero() || !(lhs - rhs).is_zero() {
                bad += 1;
            }
            triples += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && triples >= 1000 && elapsed < Duration::from_secs(30),
        format!("{triples} triples, d ≤ 8, {bad} nonzero residuals, {:.1} s (limit 30 s)", elapsed.as_secs_f64()),
    )
}

/// `B(i₁,i₂)B(i₃,i₄) − B(i₁,i₃)B(i₂,i₄) + B(i₁,i₄)B(i₂,i₃)`.
fn four_point_pairing(i: &[usize], b: &BilinearForm<Exact>) -> Exact {
    let p = |x: usize, y: usize| b.get(i[x] - 1, i[y] - 1);
    p(0, 1) * p(2, 3) - p(0, 2) * p(1, 3) + p(0, 3) * p(1, 2)
}

fn scalar_theorem(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    for n in [2, 4, 6] {
        exact_zero(r, &format!("wick/scalar-theorem/n{n}"), 1, &mut problems);
        exact_zero(r, &format!("wick/wick-pairing/n{n}"), 1, &mut problems);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    for draw in 0..200 {
        let d = rng.gen_range(2..=6);
        let b = invertible_form(&mut rng, d);
        let idx: Vec<usize> = (0..4).map(|_| 1 + rng_index(&mut rng, d)).collect();
        let s = scalar_equivalence_check(&idx, &b).unwrap();
        let want = four_point_pairing(&idx, &b);
        if !s.difference.is_zero() || !(s.lhs.clone() - want.clone()).is_zero() || !(s.rhs - want).is_zero() {
            problems.push(format!("n=4 draw {draw} idx {idx:?}"));
        }
    }
    verdict(problems, "n ∈ {2,4,6} × 200 draws exact; n = 4 matches the explicit three-pairing sum on 200 more draws")
}

fn oscillator(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    for n in 0..=12 {
        for kind in ["genvalue-left", "genvalue-right", "energy"] {
            exact_zero(r, &format!("oscillator/{kind}/n{n}"), 1, &mut problems);
        }
    }
    within(r, "oscillator/normalization/", 9, 1e-9, &mut problems);
    verdict(problems, "H⋆π_n = ħω(n+1/2)π_n exact for n ≤ 12; normalization within 1e-9 for n ≤ 8")
}

fn landau(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    for n in 0..=6 {
        for l in 0..=6 {
            exact_zero(r, &format!("landau/energy/n{n}l{l}"), 1, &mut problems);
            exact_zero(r, &format!("landau/angular/n{n}l{l}"), 1, &mut problems);
        }
    }
    exact_zero(r, "landau/center-commutes/", 12, &mut problems);
    verdict(problems, "E_n and j_nl exact for n, l ≤ 6; [H_L, g(q̃)] = 0 for 12 random degree-≤4 g")
}

fn spin(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    exact_zero(r, "cliffordization/spin-projectors/", 6, &mut problems);
    exact_zero(r, "cliffordization/spin-expectation/", 6, &mut problems);
    within(r, "cliffordization/spin-precession", 1, 1e-10, &mut problems);
    let times: Vec<f64> = (0..64).map(|k| 10.0 * k as f64 / 63.0).collect();
    let worst = precession(1.3, 0.7, &times).unwrap().iter().map(|s| s.residual).fold(0.0, f64::max);
    if worst > 1e-10 {
        problems.push(format!("direct precession residual {worst:e}"));
    }
    verdict(problems, format!("projectors and expectations exact; precession residual {worst:e} over 64 samples"))
}

fn feynman_and_susy(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    exact_zero(r, "susy/feynman-trick/", 3, &mut problems);
    for n in 0..=8 {
        for s in ["+1/2", "-1/2"] {
            exact_zero(r, &format!("susy/spectrum/n{n}{s}"), 2, &mut problems);
        }
    }
    verdict(problems, "Feynman trick exact in symmetric gauge; E_{n,±1/2} exact for n ≤ 8")
}

fn witten(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    for n in 1..=8 {
        for kind in ["witten-index", "witten-truncation", "witten-cancellation"] {
            within(r, &format!("susy/{kind}/N{n}"), 1, 1e-9, &mut problems);
        }
    }
    verdict(problems, "index 1 and E > 0 levels cancel within 1e-9 for N = 1..8")
}

fn dirac(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    for rep in ["D4", "D5", "D6"] {
        let all = records(r, &format!("dirac/{rep}/"));
        if all.len() < 300 {
            problems.push(format!("{rep}: only {} records", all.len()));
        }
        for c in all.iter().filter(|c| c.exact) {
            if !(c.pass && c.residual == 0.0) {
                problems.push(format!("{}: residual {:e}", c.id, c.residual));
            }
        }
        within(r, &format!("dirac/{rep}/boost/"), 3, 1e-10, &mut problems);
        within(r, &format!("dirac/{rep}/boosted-projectors/"), 2, 1e-10, &mut problems);
        within(r, &format!("dirac/{rep}/zitterbewegung-heisenberg"), 1, 1e-8, &mut problems);
        for id in ["energy-eigen-plus", "energy-idempotent-plus", "energy-complete", "energy-trace", "hamiltonian-square"] {
            exact_zero(r, &format!("dirac/{rep}/{id}"), 1, &mut problems);
        }
    }
    verdict(problems, "identities and projector suite exact in D4, D5, D6 at E = 5; boosts ≤ 1e-10; Zitterbewegung ≤ 1e-8")
}

fn foldy_wouthuysen(r: &Report) -> Outcome {
    let mut problems = Vec::new();
    for case in ["free", "constant-b", "linear-phi", "quadratic-phi"] {
        let recs = records(r, &format!("fw/{case}/"));
        for part in ["rest-energy", "kinetic", "relativistic-correction", "electrostatic", "magnetic-moment", "spin-orbit", "darwin", "unmatched", "odd-vanishes"] {
            match recs.iter().find(|c| c.id == format!("fw/{case}/{part}")) {
                Some(c) if c.pass && c.exact => {}
                Some(c) => problems.push(format!("{}: residual {:e}", c.id, c.residual)),
                None => problems.push(format!("fw/{case}/{part} missing")),
            }
        }
    }
    verdict(problems, "H″ matches term by term in all four cases; odd part vanishes through (1/c)⁴")
}

#[test]
fn acceptance_criteria() {
    let mut results = vec![("cliffordization equivalence", cliffordization_equivalence())];

    let start = Instant::now();
    let report = run(&Suite::ALL, &RunConfig::default()).unwrap();
    let elapsed = start.elapsed();

    results.push(("scalar-part theorem", scalar_theorem(&report)));
    results.push(("oscillator", oscillator(&report)));
    results.push(("landau", landau(&report)));
    results.push(("spin", spin(&report)));
    results.push(("feynman trick and susy spectrum", feynman_and_susy(&report)));
    results.push(("witten index", witten(&report)));
    results.push(("dirac", dirac(&report)));
    results.push(("foldy-wouthuysen", foldy_wouthuysen(&report)));
    results.push((
        "full verify run",
        outcome(
            report.pass && elapsed < Duration::from_secs(300),
            format!("{} checks, {} failed, {:.1} s (limit 300 s)", report.passed + report.failed, report.failed, elapsed.as_secs_f64()),
        ),
    ));

    let mut out = std::io::stdout().lock();
    for (k, (name, o)) in results.iter().enumerate() {
        writeln!(out, "criterion {:>2} {:<32} {}  {}", k + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail).unwrap();
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, (_, o))| !o.pass).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
