//! Seeded, reproducible comparison of the closed-form transfer time against
//! the packet simulator over randomized paths and files.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::model::{NetworkHop, NetworkPath};
use crate::netsim::{compare_models, equal_rate_completion};
use crate::timing::Mtu;

/// Relative tolerance for checks against exact analytic values.
pub const REL_TOL: f64 = 1e-12;

pub const MAX_HOPS: usize = 10;
pub const MIN_PACKETS: u64 = 2;
pub const MAX_PACKETS: u64 = 100;
pub const MIN_RATE: f64 = 1e3;
pub const MAX_RATE: f64 = 1e9;

/// One randomized file-and-path case with `β = 0` on every hop.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub file_bits: f64,
    pub path: NetworkPath,
    pub last_packet_bits: f64,
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp().clamp(lo, hi)
}

/// Draws a multi-packet case. With `equal_rates` every hop shares one rate.
pub fn random_train_case(rng: &mut impl Rng, mtu: Mtu, equal_rates: bool) -> Case {
    let hops = rng.gen_range(1..=MAX_HOPS);
    let packets = rng.gen_range(MIN_PACKETS..=MAX_PACKETS);
    let s = mtu.bits();
    let last = rng.gen_range(1..=s as u64) as f64;
    let file_bits = (packets - 1) as f64 * s + last;
    Case {
        file_bits,
        path: random_path(rng, hops, equal_rates),
        last_packet_bits: last,
    }
}

/// Draws a case whose file fits in one packet.
pub fn random_single_packet_case(rng: &mut impl Rng, mtu: Mtu) -> Case {
    let hops = rng.gen_range(1..=MAX_HOPS);
    let file_bits = rng.gen_range(1..=mtu.bits() as u64) as f64;
    Case {
        file_bits,
        path: random_path(rng, hops, false),
        last_packet_bits: file_bits,
    }
}

fn random_path(rng: &mut impl Rng, hops: usize, equal_rates: bool) -> NetworkPath {
    let shared = log_uniform(rng, MIN_RATE, MAX_RATE);
    let hops = (0..hops)
        .map(|_| {
            let rate = if equal_rates {
                shared
            } else {
                log_uniform(rng, MIN_RATE, MAX_RATE)
            };
            NetworkHop::new(rate, 0.0).expect("rate in range")
        })
        .collect();
    NetworkPath::new(hops).expect("at least one hop")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSummary {
    pub count: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    /// Cases where the closed form undershoots the simulation.
    pub negative: usize,
    pub observations: Vec<f64>,
}

impl GapSummary {
    pub fn from_observations(observations: Vec<f64>) -> Self {
        let count = observations.len();
        let min = observations.iter().copied().fold(f64::INFINITY, f64::min);
        let max = observations.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = if count == 0 {
            f64::NAN
        } else {
            observations.iter().sum::<f64>() / count as f64
        };
        let negative = observations.iter().filter(|g| **g < 0.0).count();
        Self {
            count,
            min,
            mean,
            max,
            negative,
            observations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualRateCheck {
    pub cases: usize,
    /// Largest relative error of the simulation against the exact
    /// equal-rate completion time `F/γ + (h-1)·lead/γ`.
    pub max_rel_error: f64,
    /// Cases where the gap equals `N/γ` within [`REL_TOL`].
    pub gap_equals_last_packet_time: usize,
    /// Cases where the last packet is full-size or the path has one hop.
    pub full_last_packet_or_single_hop: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SinglePacketCheck {
    pub cases: usize,
    pub max_abs_gap: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub trials: usize,
    pub seed: u64,
    pub mtu_bits: f64,
    pub heterogeneous: GapSummary,
    pub equal_rate: EqualRateCheck,
    pub single_packet: SinglePacketCheck,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.equal_rate.passed && self.single_packet.passed
    }
}

/// Runs `trials` cases of each kind from one seeded stream.
pub fn run(trials: usize, seed: u64, mtu: Mtu) -> Result<ValidationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut gaps = Vec::with_capacity(trials);
    for _ in 0..trials {
        let case = random_train_case(&mut rng, mtu, false);
        gaps.push(compare_models(case.file_bits, &case.path, mtu)?.gap);
    }

    let mut max_rel_error: f64 = 0.0;
    let mut literal = 0;
    let mut degenerate = 0;
    for _ in 0..trials {
        let case = random_train_case(&mut rng, mtu, true);
        let rate = case.path.bottleneck_rate();
        let hops = case.path.hop_count();
        let report = compare_models(case.file_bits, &case.path, mtu)?;
        let exact = equal_rate_completion(case.file_bits, hops, rate, mtu)?;
        max_rel_error = max_rel_error.max(((report.simulated - exact) / exact).abs());
        let last_time = case.last_packet_bits / rate;
        if ((report.gap - last_time) / last_time).abs() <= REL_TOL {
            literal += 1;
        }
        if case.last_packet_bits == mtu.bits() || hops == 1 {
            degenerate += 1;
        }
    }

    let mut max_abs_gap: f64 = 0.0;
    for _ in 0..trials {
        let case = random_single_packet_case(&mut rng, mtu);
        max_abs_gap = max_abs_gap.max(compare_models(case.file_bits, &case.path, mtu)?.gap.abs());
    }

    Ok(ValidationReport {
        trials,
        seed,
        mtu_bits: mtu.bits(),
        heterogeneous: GapSummary::from_observations(gaps),
        equal_rate: EqualRateCheck {
            cases: trials,
            max_rel_error,
            gap_equals_last_packet_time: literal,
            full_last_packet_or_single_hop: degenerate,
            passed: max_rel_error <= REL_TOL,
        },
        single_packet: SinglePacketCheck {
            cases: trials,
            max_abs_gap,
            passed: max_abs_gap == 0.0,
        },
    })
}
