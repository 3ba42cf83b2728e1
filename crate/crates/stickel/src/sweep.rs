//! Grid runner: one job per parameter tuple, run in parallel and merged in
//! tuple order.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Params;
use crate::report::{Check, Report};
use crate::CliError;

/// Values of one grid axis: comma-separated items, each a value, a range
/// `a..b` (half-open) or `a..=b`, optionally prefixed by `primes:` to keep
/// only primes.
pub fn parse_axis(spec: &str) -> Result<Vec<String>, CliError> {
    let (primes_only, body) = match spec.strip_prefix("primes:") {
        Some(rest) => (true, rest),
        None => (false, spec),
    };
    let bad = || CliError::Usage(format!("bad grid values '{spec}'"));
    let mut out = Vec::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let (b, inclusive) = match b.strip_prefix('=') {
                Some(b) => (b, true),
                None => (b, false),
            };
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            let end = if inclusive { b.saturating_add(1) } else { b };
            out.extend((a..end).map(|x| x.to_string()));
        } else {
            out.push(item.to_string());
        }
    }
    if primes_only {
        out.retain(|v| {
            v.parse::<u64>()
                .is_ok_and(stickel_core::ring::arith::is_prime)
        });
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("grid axis '{spec}' is empty")));
    }
    Ok(out)
}

/// `key=values` pairs to the list of parameter tuples.
pub fn expand_grid(axes: &[String]) -> Result<Vec<Vec<(String, String)>>, CliError> {
    let mut tuples: Vec<Vec<(String, String)>> = vec![Vec::new()];
    for axis in axes {
        let (key, spec) = axis
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("grid axis '{axis}' is not key=values")))?;
        let values = parse_axis(spec)?;
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push((key.trim().to_string(), v.clone()));
                    t
                })
            })
            .collect();
    }
    Ok(tuples)
}

fn cmp_value(a: &str, b: &str) -> Ordering {
    match (a.parse::<i128>(), b.parse::<i128>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

fn cmp_tuple(a: &[(String, String)], b: &[(String, String)]) -> Ordering {
    for ((ka, va), (kb, vb)) in a.iter().zip(b) {
        let o = ka.cmp(kb).then_with(|| cmp_value(va, vb));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

#[derive(Serialize)]
struct JobDetail<'a> {
    params: &'a [(String, String)],
    error: Option<String>,
    checks: Vec<Check>,
}

/// Runs `command` over the grid with `jobs` worker threads.
pub fn run_sweep(
    command: &str,
    action: Option<&str>,
    base: &Params,
    axes: &[String],
    jobs: usize,
) -> Result<Report, CliError> {
    if command == "sweep" {
        return Err(CliError::Usage("sweeps do not nest".into()));
    }
    let mut tuples = expand_grid(axes)?;
    tuples.sort_by(|a, b| cmp_tuple(a, b));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let results: Vec<Result<Report, CliError>> = pool.install(|| {
        tuples
            .par_iter()
            .map(|t| {
                let mut p = base.clone();
                for (k, v) in t {
                    p.set(k, v);
                }
                crate::commands::run(command, action, &p)
            })
            .collect()
    });
    let mut params = base.clone();
    params.set("grid", axes.join(" "));
    let name = match action {
        Some(a) => format!("sweep {command} {a}"),
        None => format!("sweep {command}"),
    };
    let mut report = Report::new(&name, &params);
    for (t, r) in tuples.iter().zip(results) {
        let label = t
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        match r {
            Ok(sub) => report.check(
                label,
                sub.pass,
                JobDetail {
                    params: t,
                    error: None,
                    checks: sub.checks,
                },
            ),
            Err(CliError::Usage(e)) => report.check(
                label,
                false,
                JobDetail {
                    params: t,
                    error: Some(e),
                    checks: vec![],
                },
            ),
            Err(e @ CliError::Internal(_)) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes() {
        assert_eq!(parse_axis("3,5..7").unwrap(), vec!["3", "5", "6"]);
        assert_eq!(
            parse_axis("primes:2..=13").unwrap(),
            vec!["2", "3", "5", "7", "11", "13"]
        );
        assert!(parse_axis("primes:8..10").is_err());
        assert!(parse_axis("x..3").is_err());
        let g = expand_grid(&["c=3,5".into(), "l=2,7".into()]).unwrap();
        assert_eq!(g.len(), 4);
        assert!(expand_grid(&["c".into()]).is_err());
    }

    #[test]
    fn merged_order_is_independent_of_threads() {
        let base = Params::new();
        let axes = vec!["c=3,4,5".to_string(), "l=primes:2..20".to_string()];
        let a = run_sweep("gauss", None, &base, &axes, 1).unwrap();
        let b = run_sweep("gauss", None, &base, &axes, 3).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        // l dividing c is a per-job usage failure, not an abort
        assert!(!a.pass);
        assert!(a
            .checks
            .iter()
            .any(|c| c.name == "c=3,l=3" && c.pass == Some(false)));
        assert!(a
            .checks
            .iter()
            .filter(|c| c.name != "c=3,l=3" && c.name != "c=5,l=5" && c.name != "c=4,l=2")
            .all(|c| c.pass == Some(true)));
    }
}
