use std::fs;

use cliffstar::dirac::DiracKind;
use cliffstar::verify::{parse_reps, run as run_suites, Backend, Report, RunConfig, Suite};

use crate::{Failure, Format, VerifyArgs};

fn config(a: &VerifyArgs) -> Result<(Vec<Suite>, RunConfig), Failure> {
    let cfg = RunConfig {
        backend: a.backend.parse::<Backend>()?,
        hbar: a.hbar,
        tolerance: a.tolerance,
        seed: a.seed,
        reps: parse_reps(&a.rep)?,
        witten_truncation: a.witten_truncation,
        fw_order: a.fw_order,
    };
    cfg.validate()?;
    Ok((Suite::parse_list(&a.suite)?, cfg))
}

pub fn run(a: VerifyArgs) -> Result<(), Failure> {
    let (suites, cfg) = config(&a)?;
    fs::create_dir_all(&a.out_dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", a.out_dir.display())))?;
    // fail on an unwritable directory before spending time on the suites
    let json_path = a.out_dir.join("report.json");
    fs::write(&json_path, b"").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", json_path.display())))?;

    let report = run_suites(&suites, &cfg)?;
    if a.format.contains(&Format::Json) {
        fs::write(&json_path, report.to_json() + "\n")?;
    } else {
        fs::remove_file(&json_path)?;
    }
    if a.format.contains(&Format::Csv) {
        let mut w = csv::Writer::from_path(a.out_dir.join("report.csv"))?;
        for s in &report.suites {
            for c in &s.checks {
                w.serialize(c)?;
            }
        }
        w.flush()?;
    }
    print!("{}", summary(&report));
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Checks(format!("{} of {} checks failed", report.failed, report.failed + report.passed)))
    }
}

fn summary(r: &Report) -> String {
    let mut out = String::new();
    for s in &r.suites {
        let status = if s.failed == 0 { "pass" } else { "FAIL" };
        out += &format!("{:<16} {status}  {:>5} passed {:>4} failed  max residual {:e}\n", s.suite.name(), s.passed, s.failed, s.max_residual);
        if s.suite == Suite::Dirac {
            for kind in &r.config.reps {
                out += &rep_line(r, *kind);
            }
        }
    }
    for c in r.failures().take(20) {
        out += &format!("failed: {} ({}) residual {:e}\n", c.id, c.check, c.residual);
    }
    out += &format!(
        "{}: {} passed, {} failed, max residual {:e}\n",
        if r.pass { "PASS" } else { "FAIL" },
        r.passed,
        r.failed,
        r.max_residual
    );
    out
}

fn rep_line(r: &Report, kind: DiracKind) -> String {
    let prefix = format!("dirac/{}/", kind.name());
    let checks: Vec<_> = r.suites.iter().flat_map(|s| &s.checks).filter(|c| c.id.starts_with(&prefix)).collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    let status = if failed == 0 { "pass" } else { "FAIL" };
    format!("  {:<14} {status}  {:>5} passed {:>4} failed\n", kind.name(), checks.len() - failed, failed)
}
