use offload_core::decision::{capacity, required_bottleneck_rate, required_remote_rate};
use offload_core::{ComputeJob, Error, Processor};
use serde::Serialize;
use serde_json::json;

use crate::output::{num, table, CliError, CmdResult, Outcome, OutputEnvelope};
use crate::{Axis, SweepArgs};

/// Nominal instruction count for jobs described only by their F/C.
const NOMINAL_INSTRUCTIONS: f64 = 1e9;

#[derive(Debug, Serialize)]
struct Row {
    value: f64,
    capacity: f64,
    inverse_intensity: f64,
    favorable: bool,
    crossover: bool,
}

/// `points` log-spaced values from `from` to `to`, endpoints exact.
fn log_grid(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    let (a, b) = (from.ln(), to.ln());
    (0..points)
        .map(|i| match i {
            0 => from,
            i if i == points - 1 => to,
            i => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
        })
        .collect()
}

fn need<T: Clone>(v: &Option<T>, flag: &str, axis: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("{flag} is required when sweeping {axis}")))
}

fn job_for(fc: f64) -> Result<ComputeJob, CliError> {
    ComputeJob::from_inverse_intensity(NOMINAL_INSTRUCTIONS, fc).map_err(|v| CliError::Usage(format!("--fc: {v}")))
}

pub fn sweep(args: &SweepArgs) -> CmdResult {
    if args.from >= args.to {
        return Err(CliError::Usage(format!(
            "--from ({}) must be less than --to ({})",
            args.from, args.to
        )));
    }
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let local = &args.local;
    let grid = log_grid(args.from, args.to, args.points);
    let mut warnings = Vec::new();

    let (axis_name, unit, mut rows, crossover) = match args.axis {
        Axis::Gamma => {
            let remote = need(&args.remote, "--remote", "gamma")?;
            let fc = need(&args.fc, "--fc", "gamma")?;
            let crossover = match required_bottleneck_rate(&job_for(fc)?, local, &remote) {
                Ok(g) => g,
                Err(Error::RemoteNotFaster) => {
                    return Err(CliError::Infeasible(format!(
                        "remote ({} instr/s) is not faster than local ({} instr/s): no bottleneck rate makes offloading favorable",
                        num(remote.exec_rate()),
                        num(local.exec_rate())
                    )))
                }
                Err(e) => return Err(CliError::Infeasible(e.to_string())),
            };
            let row = |g: f64| {
                let cap = capacity(local, &remote, g).capacity;
                (g, cap, fc, cap > fc)
            };
            ("gamma", "bits/s", grid.into_iter().map(row).collect::<Vec<_>>(), Some(row(crossover)))
        }
        Axis::RemoteRate => {
            let gamma = need(&args.gamma, "--gamma", "remote-rate")?;
            let fc = need(&args.fc, "--fc", "remote-rate")?;
            let crossover = match required_remote_rate(&job_for(fc)?, local, gamma) {
                Ok(e) => Some(e),
                Err(e) => {
                    warnings.push(format!(
                        "{e}: F/C {} >= gamma/e {}, so no remote rate helps",
                        num(fc),
                        num(gamma / local.exec_rate())
                    ));
                    None
                }
            };
            let row = |e: f64| {
                let remote = Processor::new("sweep", e).expect("grid values are positive");
                let cap = capacity(local, &remote, gamma).capacity;
                (e, cap, fc, cap > fc)
            };
            (
                "remote_rate",
                "instr/s",
                grid.into_iter().map(row).collect(),
                crossover.map(row),
            )
        }
        Axis::Fc => {
            let remote = need(&args.remote, "--remote", "fc")?;
            let gamma = need(&args.gamma, "--gamma", "fc")?;
            let cap = capacity(local, &remote, gamma).capacity;
            if cap <= 0.0 {
                warnings.push("capacity is not positive: no job benefits".into());
            }
            let row = |fc: f64| (fc, cap, fc, cap > fc);
            (
                "fc",
                "bits/instr",
                grid.into_iter().map(row).collect(),
                (cap > 0.0).then(|| row(cap)),
            )
        }
    };

    let mut rows: Vec<Row> = rows
        .drain(..)
        .map(|(value, capacity, inverse_intensity, favorable)| Row {
            value,
            capacity,
            inverse_intensity,
            favorable,
            crossover: false,
        })
        .collect();
    if let Some((value, capacity, inverse_intensity, favorable)) = crossover {
        if value < args.from || value > args.to {
            warnings.push(format!("crossover {} {unit} lies outside the sweep range", num(value)));
        }
        let at = rows.partition_point(|r| r.value <= value);
        rows.insert(
            at,
            Row {
                value,
                capacity,
                inverse_intensity,
                favorable,
                crossover: true,
            },
        );
    }

    let header_value = format!("{axis_name} ({unit})");
    let text_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                num(r.value),
                num(r.capacity),
                num(r.inverse_intensity),
                if r.favorable { "OFFLOAD" } else { "LOCAL" }.to_string(),
                if r.crossover { "<- crossover" } else { "" }.to_string(),
            ]
        })
        .collect();
    let text = table(
        &[&header_value, "capacity (bits/instr)", "F/C (bits/instr)", "verdict", ""],
        &text_rows,
    );

    let envelope = OutputEnvelope {
        command: "sweep",
        inputs_echo: json!({
            "axis": axis_name,
            "from": args.from,
            "to": args.to,
            "points": args.points,
            "local": local,
            "remote": args.remote,
            "gamma": args.gamma,
            "fc": args.fc,
        }),
        results: json!({
            "unit": unit,
            "crossover": crossover.map(|c| c.0),
            "rows": rows,
        }),
        warnings,
    };
    Ok(Outcome {
        text,
        envelope,
        failed: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_log_spaced_with_exact_endpoints() {
        let g = log_grid(1e3, 1e6, 4);
        assert_eq!(g[0], 1e3);
        assert_eq!(g[3], 1e6);
        assert!((g[1] - 1e4).abs() < 1e-8 && (g[2] - 1e5).abs() < 1e-7);
    }
}
