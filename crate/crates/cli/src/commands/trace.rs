use std::fs::File;
use std::io::BufReader;

use offload_core::decision::capacity;
use offload_core::workload::{aggregate_by_app, classify, parse_trace};
use serde_json::json;

use crate::output::{num, table, CliError, CmdResult, Outcome, OutputEnvelope};
use crate::TraceArgs;

pub fn trace(args: &TraceArgs) -> CmdResult {
    let cap = match (&args.capacity, &args.local, &args.remote, args.gamma) {
        (Some(c), ..) => *c,
        (None, Some(l), Some(r), Some(g)) => capacity(l, r, g).capacity,
        _ => {
            return Err(CliError::Usage(
                "give --capacity, or --local, --remote and --gamma to derive it".into(),
            ))
        }
    };

    let file = File::open(&args.file)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", args.file.display())))?;
    let parsed = parse_trace(BufReader::new(file))
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.file.display())))?;
    let warnings: Vec<String> = parsed
        .diagnostics
        .iter()
        .map(|d| format!("line {}: {}", d.line, d.message))
        .collect();
    if parsed.records.is_empty() {
        let mut msg = format!("{}: no valid rows", args.file.display());
        if let Some(w) = warnings.first() {
            msg += &format!(" ({w})");
        }
        return Err(CliError::Usage(msg));
    }

    let stats = aggregate_by_app(&parsed.records, args.assumed_rate);
    let verdicts: Vec<_> = stats.iter().map(|s| classify(s, cap)).collect();

    let rows: Vec<Vec<String>> = stats
        .iter()
        .zip(&verdicts)
        .map(|(s, v)| {
            vec![
                s.app_name.clone(),
                s.count.to_string(),
                num(s.min_fc),
                num(s.avg_fc),
                num(s.max_fc),
                v.as_str().to_string(),
            ]
        })
        .collect();
    let mut text = format!(
        "capacity {} bits/instruction, assumed rate {} instr/s, {} jobs\n",
        num(cap),
        num(args.assumed_rate),
        parsed.records.len()
    );
    text += &table(
        &["app", "jobs", "min F/C (bits/instr)", "avg F/C (bits/instr)", "max F/C (bits/instr)", "benefit"],
        &rows,
    );

    let apps: Vec<_> = stats
        .iter()
        .zip(&verdicts)
        .map(|(s, v)| json!({ "stats": s, "benefit": v }))
        .collect();
    let envelope = OutputEnvelope {
        command: "trace",
        inputs_echo: json!({
            "file": args.file,
            "assumed_rate": args.assumed_rate,
            "capacity": cap,
            "local": args.local,
            "remote": args.remote,
            "gamma": args.gamma,
        }),
        results: json!({
            "records": parsed.records.len(),
            "skipped": parsed.diagnostics.len(),
            "apps": apps,
        }),
        warnings,
    };
    Ok(Outcome {
        text,
        envelope,
        failed: false,
    })
}
