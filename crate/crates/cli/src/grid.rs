//! Parsing of index ranges and time grids.

use crate::Failure;

/// `a..b` (inclusive) or a single integer.
pub fn range(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::Usage(format!("'{s}' is not a range like 0..5"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(s)?]),
    }
}

/// Sample times from `start:stop:count` or an explicit list.
pub fn times(grid: Option<&str>, list: Option<&str>, default: (f64, f64, usize)) -> Result<Vec<f64>, Failure> {
    let out = match (grid, list) {
        (_, Some(list)) => list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|_| Failure::Usage(format!("bad sample time '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?,
        (Some(g), None) => {
            let parts: Vec<&str> = g.split(':').collect();
            let [a, b, n] = parts[..] else {
                return Err(Failure::Usage(format!("grid '{g}' is not start:stop:count")));
            };
            let f = |t: &str| t.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad grid bound '{t}'")));
            let n = n.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad grid count '{n}'")))?;
            uniform(f(a)?, f(b)?, n)
        }
        (None, None) => uniform(default.0, default.1, default.2),
    };
    if out.is_empty() {
        return Err(Failure::Usage("empty time grid".into()));
    }
    if let Some(t) = out.iter().find(|t| !t.is_finite()) {
        return Err(Failure::Usage(format!("sample time {t} is not finite")));
    }
    Ok(out)
}

fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}
