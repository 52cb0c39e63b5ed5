use clap::Subcommand;
use cliffstar::dirac::{build_rep, Kinematics};
use cliffstar::spin::{heisenberg_residual, precession};
use cliffstar::verify::parse_reps;
use cliffstar::Bindings;

use crate::{csv_writer, grid, DynamicsArgs, Failure};

#[derive(Subcommand, Debug)]
pub enum Kind {
    /// Spin precession in B = (0, 0, B₃) at ω = eB₃/mc.
    Precession {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
    },
    /// Heisenberg position of a free Dirac particle: drift plus trembling.
    Zitterbewegung {
        #[arg(long, default_value_t = 3.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Momentum `p1,p2,p3`.
        #[arg(long, default_value = "4,0,0", allow_hyphen_values = true)]
        p: String,
        /// Representation: d4, d5 or d6.
        #[arg(long, default_value = "d4")]
        rep: String,
    },
}

const BASIS: [&str; 4] = ["1", "s1", "s2", "s3"];

fn momentum(s: &str) -> Result<[f64; 3], Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad momentum component '{x}'"))))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| Failure::Usage(format!("momentum '{s}' needs three components")))
}

pub fn run(a: DynamicsArgs) -> Result<(), Failure> {
    if !(a.hbar > 0.0 && a.hbar.is_finite()) {
        return Err(Failure::Usage(format!("ħ must be positive, got {}", a.hbar)));
    }
    match &a.kind {
        Kind::Precession { omega } => {
            let times = grid::times(a.grid.as_deref(), a.times.as_deref(), (0.0, 10.0, 65))?;
            let samples = precession(*omega, a.hbar, &times)?;
            let mut w = csv_writer(a.output.as_ref())?;
            let mut header = vec!["t".to_string()];
            for name in ["sigma", "S"] {
                for k in 1..=3 {
                    for b in BASIS {
                        header.push(format!("{name}{k}_{b}_re"));
                        header.push(format!("{name}{k}_{b}_im"));
                    }
                }
            }
            header.push("spin_equation_residual".into());
            header.push("heisenberg_residual".into());
            w.write_record(&header)?;
            for s in samples {
                let mut row = vec![s.t.to_string()];
                for scale in [1.0, a.hbar / 2.0] {
                    for coeffs in &s.sigma {
                        for z in coeffs {
                            row.push((z.re * scale).to_string());
                            row.push((z.im * scale).to_string());
                        }
                    }
                }
                let heis = (1..=3)
                    .map(|i| heisenberg_residual(i, *omega, s.t, a.hbar).map(|r| r.norm1()))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                row.push(format!("{:e}", s.residual + 0.0));
                row.push(format!("{:e}", heis + 0.0));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Kind::Zitterbewegung { m, c, p, rep } => {
            let kinds = parse_reps(rep)?;
            let [kind] = kinds[..] else {
                return Err(Failure::Usage("choose a single representation".into()));
            };
            let kin = Kinematics::float(*m, *c, momentum(p)?)?;
            let t_max = 10.0 * a.hbar / kin.energy.re;
            let times = grid::times(a.grid.as_deref(), a.times.as_deref(), (0.0, t_max, 64))?;
            let f = build_rep(kind)?.to_complex(&Bindings { hbar: a.hbar, c: *c });
            let samples = f.zitterbewegung(&kin, &times)?;
            let mut w = csv_writer(a.output.as_ref())?;
            w.write_record([
                "t",
                "drift_1",
                "drift_2",
                "drift_3",
                "oscillation_1",
                "oscillation_2",
                "oscillation_3",
                "heisenberg_residual",
            ])?;
            for s in samples {
                let heis = (1..=3)
                    .map(|i| f.heisenberg_residual(&kin, i, s.t).map(|r| r.norm1()))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                let mut row = vec![s.t.to_string()];
                row.extend(s.drift.iter().chain(&s.oscillation).map(f64::to_string));
                row.push(format!("{:e}", heis + 0.0));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
