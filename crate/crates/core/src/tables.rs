//! Reference tables regenerated from the preset catalog: the RLR needed at
//! a given CCR, the RLR of each handheld/remote pair, and `1/e - 1/E` for
//! each pair.

use serde::Serialize;

use crate::catalog::{preset, LOCAL_PRESETS, REMOTE_PRESETS};
use crate::decision::{rate_delta, rlr, rlr_threshold};

/// CCR values of the threshold table with the RLR as printed in the source.
pub const THRESHOLD_ROWS: [(f64, &str); 7] = [
    (1e-6, "≈1e6"),
    (1e-3, "1001"),
    (0.01, "101"),
    (0.1, "11"),
    (1.0, "2"),
    (1e3, "1.001"),
    (1e6, "1.000001"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub ccr: f64,
    pub rlr: f64,
    pub printed: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCell {
    pub local: &'static str,
    pub remote: &'static str,
    pub value: f64,
}

pub fn threshold_table() -> Vec<ThresholdRow> {
    THRESHOLD_ROWS
        .iter()
        .map(|&(ccr, printed)| ThresholdRow {
            ccr,
            rlr: rlr_threshold(ccr),
            printed,
        })
        .collect()
}

fn pair_table(f: impl Fn(&str, &str) -> f64) -> Vec<PairCell> {
    LOCAL_PRESETS
        .iter()
        .flat_map(|&local| REMOTE_PRESETS.iter().map(move |&remote| (local, remote)))
        .map(|(local, remote)| PairCell {
            local,
            remote,
            value: f(local, remote),
        })
        .collect()
}

/// `E/e` for every handheld/remote preset pair, row-major.
pub fn rlr_table() -> Vec<PairCell> {
    pair_table(|l, r| rlr(&preset(r).unwrap(), &preset(l).unwrap()))
}

/// `1/e - 1/E` for every handheld/remote preset pair, row-major.
pub fn rate_delta_table() -> Vec<PairCell> {
    pair_table(|l, r| rate_delta(&preset(l).unwrap(), &preset(r).unwrap()))
}
