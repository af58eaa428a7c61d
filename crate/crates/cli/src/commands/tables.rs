use offload_core::catalog::{LOCAL_PRESETS, PRESETS, REMOTE_PRESETS};
use offload_core::tables::{rate_delta_table, rlr_table, threshold_table, PairCell};
use serde_json::json;

use crate::output::{num, sig, table, CmdResult, Outcome, OutputEnvelope};

fn grid(cells: &[PairCell], fmt: impl Fn(f64) -> String) -> String {
    let mut header = vec!["local \\ remote"];
    header.extend(REMOTE_PRESETS);
    let rows: Vec<Vec<String>> = LOCAL_PRESETS
        .iter()
        .map(|&local| {
            let mut row = vec![local.to_string()];
            row.extend(cells.iter().filter(|c| c.local == local).map(|c| fmt(c.value)));
            row
        })
        .collect();
    table(&header, &rows)
}

pub fn tables() -> CmdResult {
    let thresholds = threshold_table();
    let rlr = rlr_table();
    let delta = rate_delta_table();

    let rows: Vec<Vec<String>> = thresholds
        .iter()
        .map(|r| vec![sig(r.ccr, 6), sig(r.rlr, 10), r.printed.to_string()])
        .collect();
    let mut text = String::from("RLR required for offloading (RLR > 1/CCR + 1)\n");
    text += &table(&["CCR", "RLR (exclusive bound)", "reference print"], &rows);

    text += "\nRLR = E/e for preset pairs\n";
    text += &grid(&rlr, num);
    text += "\nRLR = E/e, 5 significant digits\n";
    text += &grid(&rlr, |v| sig(v, 5));

    text += "\n1/e - 1/E for preset pairs (s/instruction)\n";
    text += &grid(&delta, num);
    text += "\n1/e - 1/E, 3 significant digits (s/instruction)\n";
    text += &grid(&delta, |v| format!("{v:.2e}"));

    let envelope = OutputEnvelope {
        command: "tables",
        inputs_echo: json!({ "presets": PRESETS.iter().map(|(n, r)| json!({"name": n, "exec_rate": r})).collect::<Vec<_>>() }),
        results: json!({
            "rlr_threshold": thresholds,
            "rlr": rlr,
            "rate_delta": delta,
        }),
        warnings: vec!["CCR = 1e-6 gives exactly 1000001; the reference table prints it as ≈1e6".into()],
    };
    Ok(Outcome {
        text,
        envelope,
        failed: false,
    })
}
