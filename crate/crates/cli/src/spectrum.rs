use clap::Subcommand;
use cliffstar::phase::{landau_problem, oscillator_energy, oscillator_hamiltonian, oscillator_wigner, MoyalSpec};
use cliffstar::spin::SpinLabel;
use cliffstar::susy::{susy_energy, susy_level, susy_hamiltonian, susy_product, SusyState};
use cliffstar::{Bindings, Coeff, Exact};

use crate::{csv_writer, grid, Failure, SpectrumArgs};

#[derive(Subcommand, Debug)]
pub enum System {
    /// Harmonic oscillator levels ħω(n + 1/2).
    Oscillator {
        #[arg(long, default_value = "0..5")]
        n: String,
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        omega: String,
    },
    /// Landau levels ħω(n + 1/2) with angular momentum ħ(l − n).
    Landau {
        #[arg(long, default_value = "0..5")]
        n: String,
        #[arg(long, default_value = "0..5")]
        l: String,
        #[arg(long, default_value = "1")]
        m: String,
        /// Cyclotron frequency eB/mc.
        #[arg(long, default_value = "1")]
        omega: String,
    },
    /// Supersymmetric oscillator levels ħω(n + 1/2 ± 1/2), grouped by
    /// energy level E/ħω.
    Susy {
        /// Energy levels to list.
        #[arg(long, default_value = "0..8")]
        level: String,
        #[arg(long, default_value = "1")]
        omega: String,
    },
}

fn positive(name: &str, s: &str) -> Result<Exact, Failure> {
    let x = Exact::parse_rational(s)?;
    if x.to_complex(&Bindings::default()).re <= 0.0 {
        return Err(Failure::Usage(format!("{name} must be positive, got {s}")));
    }
    Ok(x)
}

/// `x/ħ` as an exact rational string.
fn over_hbar(x: &Exact) -> String {
    let q = x.clone() * Exact::hbar().inverse().expect("ħ is a monomial");
    q.as_rational().map_or_else(|| q.to_string(), |r| r.to_string())
}

/// Numeric `x` at the given `ħ`, scaling the exact `x/ħ` so that no
/// rounding enters through `√ħ`.
fn value(x: &Exact, hbar: f64) -> String {
    let q = x.clone() * Exact::hbar().inverse().expect("ħ is a monomial");
    (q.to_complex(&Bindings::default()).re * hbar + 0.0).to_string()
}

fn spin_name(s: SpinLabel) -> &'static str {
    match s {
        SpinLabel::Up => "+1/2",
        SpinLabel::Down => "-1/2",
    }
}

pub fn run(a: SpectrumArgs) -> Result<(), Failure> {
    if !(a.hbar > 0.0 && a.hbar.is_finite()) {
        return Err(Failure::Usage(format!("ħ must be positive, got {}", a.hbar)));
    }
    let mut w = csv_writer(a.output.as_ref())?;
    match &a.system {
        System::Oscillator { n, m, omega } => {
            let (ns, m, omega) = (grid::range(n)?, positive("m", m)?, positive("omega", omega)?);
            let spec = MoyalSpec::moyal();
            let h = oscillator_hamiltonian(&m, &omega)?;
            w.write_record(["n", "energy_over_hbar", "energy", "verified"])?;
            for n in ns {
                let e = oscillator_energy(n, &omega);
                let pi = oscillator_wigner(n as i64, &m, &omega)?;
                let ok = spec.product(&h, &pi)?.sub(&pi.scale(&e))?.is_zero();
                w.write_record([n.to_string(), over_hbar(&e), value(&e, a.hbar), ok.to_string()])?;
            }
        }
        System::Landau { n, l, m, omega } => {
            let (ns, ls) = (grid::range(n)?, grid::range(l)?);
            let lp = landau_problem(&positive("m", m)?, &positive("omega", omega)?)?;
            w.write_record(["n", "l", "energy_over_hbar", "angular_momentum_over_hbar", "energy", "angular_momentum", "verified"])?;
            for &n in &ns {
                for &l in &ls {
                    let (e, j) = (lp.energy(n), lp.angular_eigenvalue(n, l));
                    let (re, rj) = lp.eigen_residuals(n, l)?;
                    let ok = re.is_zero() && rj.is_zero();
                    w.write_record([
                        n.to_string(),
                        l.to_string(),
                        over_hbar(&e),
                        over_hbar(&j),
                        value(&e, a.hbar),
                        value(&j, a.hbar),
                        ok.to_string(),
                    ])?;
                }
            }
        }
        System::Susy { level, omega } => {
            let (ns, omega) = (grid::range(level)?, positive("omega", omega)?);
            let h = susy_hamiltonian(&omega);
            let rows: Vec<(u32, u32, SpinLabel)> =
                ns.iter().flat_map(|&level| susy_level(level).into_iter().map(move |(nb, s)| (level, nb, s))).collect();
            w.write_record(["level", "n_b", "spin", "energy_over_hbar", "energy", "partner", "verified"])?;
            for (level, nb, s) in rows {
                let e = susy_energy(nb, s, &omega);
                let st = SusyState::new(nb, s)?;
                let ok = susy_product(&h, &st.wigner)?.sub(&st.wigner.scale(&e))?.is_zero();
                let partner = match s {
                    SpinLabel::Down if nb > 0 => format!("{} {}", nb - 1, spin_name(SpinLabel::Up)),
                    SpinLabel::Down => "none".to_string(),
                    SpinLabel::Up => format!("{} {}", nb + 1, spin_name(SpinLabel::Down)),
                };
                w.write_record([
                    level.to_string(),
                    nb.to_string(),
                    spin_name(s).to_string(),
                    over_hbar(&e),
                    value(&e, a.hbar),
                    partner,
                    ok.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
