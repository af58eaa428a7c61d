//! Offloading ratios, the favorability inequality in its equivalent forms,
//! and the threshold and placement queries built on them.
//!
//! With `ξ` the compute time, `ψ` the communication time, `e` the local rate
//! and `E` the remote rate, offloading reduces completion time when
//!
//! ```text
//! C/e > C/E + ψ                      (completion-time form)
//! C (E/e - 1) > E ψ                  (speedup form)
//! E/e > 1/CCR + 1,  CCR = (C/E)/ψ    (ratio form)
//! Γ (1/e - 1/E) > F/C                (capacity form, hop overhead dropped)
//! ```
//!
//! Every comparison is strict: a tie keeps the job local.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CloudResource, ComputeJob, NetworkPath, OffloadDecision, Processor};
use crate::timing::{self, Mtu, TimeBreakdown};

/// Computing-to-communication ratio `ξ/ψ`.
pub fn ccr(compute_time: f64, comm_time: f64) -> Result<f64> {
    if comm_time == 0.0 {
        return Err(Error::InfiniteCcr);
    }
    Ok(compute_time / comm_time)
}

/// Remote-to-local ratio `E/e`.
pub fn rlr(remote: &Processor, local: &Processor) -> f64 {
    remote.exec_rate() / local.exec_rate()
}

/// Exclusive lower bound on RLR for offloading to pay off at `ccr_value`.
pub fn rlr_threshold(ccr_value: f64) -> f64 {
    1.0 / ccr_value + 1.0
}

/// Compares both completion times and reports the verdict.
pub fn offload_favorable(job: &ComputeJob, local: &Processor, resource: &CloudResource, mtu: Mtu) -> OffloadDecision {
    let local_time = timing::completion_time_local(job, local).total;
    let remote_time = timing::completion_time_remote(job, resource, mtu).total;
    OffloadDecision::from_times(local_time, remote_time)
}

/// Speedup form: `C (E/e - 1) > E ψ`.
pub fn favorable_by_speedup(instructions: f64, local_rate: f64, remote_rate: f64, comm_time: f64) -> bool {
    instructions * (remote_rate / local_rate - 1.0) > remote_rate * comm_time
}

/// Ratio form: `RLR > 1/CCR + 1`. An infinite CCR (nothing to move) only
/// needs a faster remote.
pub fn favorable_by_ratio(rlr_value: f64, ccr_value: Option<f64>) -> bool {
    match ccr_value {
        Some(c) => rlr_value > rlr_threshold(c),
        None => rlr_value > 1.0,
    }
}

/// The verdict of each algebraic form for one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormVerdicts {
    pub completion: bool,
    pub speedup: bool,
    pub ratio: bool,
}

impl FormVerdicts {
    pub fn agree(&self) -> bool {
        self.completion == self.speedup && self.speedup == self.ratio
    }
}

/// Evaluates the completion-time, speedup and ratio forms on one scenario.
pub fn form_verdicts(job: &ComputeJob, local: &Processor, resource: &CloudResource, mtu: Mtu) -> FormVerdicts {
    let remote = resource.processor();
    let comm = timing::completion_time_remote(job, resource, mtu).communication();
    let remote_compute = timing::compute_time(job, remote);
    FormVerdicts {
        completion: offload_favorable(job, local, resource, mtu).favorable(),
        speedup: favorable_by_speedup(job.instructions(), local.exec_rate(), remote.exec_rate(), comm),
        ratio: favorable_by_ratio(rlr(remote, local), ccr(remote_compute, comm).ok()),
    }
}

/// Left-hand side of the capacity form, `Γ (1/e - 1/E)`, in bits per
/// instruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityReport {
    pub capacity: f64,
    pub bottleneck_rate: f64,
    pub local_rate: f64,
    pub remote_rate: f64,
}

/// Bits per instruction the offloading system can absorb. Negative when the
/// remote is slower than the local device; not clamped.
pub fn capacity(local: &Processor, remote: &Processor, bottleneck_rate: f64) -> CapacityReport {
    CapacityReport {
        capacity: bottleneck_rate * rate_delta(local, remote),
        bottleneck_rate,
        local_rate: local.exec_rate(),
        remote_rate: remote.exec_rate(),
    }
}

/// `1/e - 1/E`, seconds saved per instruction by running remotely.
pub fn rate_delta(local: &Processor, remote: &Processor) -> f64 {
    1.0 / local.exec_rate() - 1.0 / remote.exec_rate()
}

/// Bits moved per instruction executed, `F/C`.
pub fn inverse_intensity(job: &ComputeJob) -> f64 {
    job.total_bits() / job.instructions()
}

/// Capacity form of the verdict, ignoring per-hop overhead.
pub fn simplified_favorable(job: &ComputeJob, local: &Processor, remote: &Processor, bottleneck_rate: f64) -> bool {
    capacity(local, remote, bottleneck_rate).capacity > inverse_intensity(job)
}

/// Infimum bottleneck rate at which [`simplified_favorable`] holds.
pub fn required_bottleneck_rate(job: &ComputeJob, local: &Processor, remote: &Processor) -> Result<f64> {
    if remote.exec_rate() <= local.exec_rate() {
        return Err(Error::RemoteNotFaster);
    }
    Ok(inverse_intensity(job) / rate_delta(local, remote))
}

/// Infimum remote rate at which [`simplified_favorable`] holds.
pub fn required_remote_rate(job: &ComputeJob, local: &Processor, bottleneck_rate: f64) -> Result<f64> {
    let slack = 1.0 / local.exec_rate() - inverse_intensity(job) / bottleneck_rate;
    if slack <= 0.0 {
        return Err(Error::TransferExceedsLocal);
    }
    Ok(1.0 / slack)
}

/// Data-size-agnostic per-path delay `Σ (β + N/γ)` with `N` pinned to the MTU.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopOverhead {
    pub value: f64,
}

pub fn hop_overhead(path: &NetworkPath, mtu: Mtu) -> HopOverhead {
    let value = timing::end_to_end_packet_time(mtu.bits(), path).expect("mtu is positive");
    HopOverhead { value }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "tier_index", rename_all = "snake_case")]
pub enum PlacementTarget {
    Local,
    Tier(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Placement {
    pub target: PlacementTarget,
    pub breakdown: TimeBreakdown,
}

/// Picks the placement with the smallest completion time. Ties go to local
/// execution, then to the lowest tier index.
pub fn best_placement(job: &ComputeJob, local: &Processor, resources: &[CloudResource], mtu: Mtu) -> Placement {
    let mut best = Placement {
        target: PlacementTarget::Local,
        breakdown: timing::completion_time_local(job, local),
    };
    for r in resources {
        let breakdown = timing::completion_time_remote(job, r, mtu);
        let better = match best.target {
            PlacementTarget::Local => breakdown.total < best.breakdown.total,
            PlacementTarget::Tier(t) => {
                breakdown.total < best.breakdown.total
                    || (breakdown.total == best.breakdown.total && r.tier_index() < t)
            }
        };
        if better {
            best = Placement {
                target: PlacementTarget::Tier(r.tier_index()),
                breakdown,
            };
        }
    }
    best
}
