//! Closed-form computation and communication times.
//!
//! Per-hop delay is `α + β + S/γ + l/(2c/3)`; end-to-end paths drop the
//! processing (α) and propagation terms. A file larger than one MTU travels
//! as a packet train whose time is modeled as the bottleneck transfer of the
//! whole file plus the per-hop time of the last packet:
//!
//! ```text
//! ψ = F / min γ(j) + Σ_j (β(j) + N / γ(j))
//! ```
//!
//! A file that fits in one packet is charged `Σ_j (β(j) + F / γ(j))` instead,
//! since the train formula would count its only packet's bottleneck
//! transmission twice.

use serde::Serialize;

use crate::error::{check_non_negative, check_positive, into_result, Error, Result};
use crate::model::{CloudResource, ComputeJob, NetworkHop, NetworkPath, PacketTrain, Processor};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Signal propagation speed in the medium, two thirds of `c`.
pub const PROPAGATION_SPEED: f64 = 2.0 * SPEED_OF_LIGHT / 3.0;

/// 1500-byte Ethernet frame.
pub const DEFAULT_MTU_BITS: f64 = 12_000.0;

/// Maximum packet size in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mtu(f64);

impl Mtu {
    pub fn new(bits: f64) -> Result<Self> {
        let mut v = Vec::new();
        check_positive(&mut v, "mtu_bits", bits);
        into_result(v)?;
        Ok(Self(bits))
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl Default for Mtu {
    fn default() -> Self {
        Self(DEFAULT_MTU_BITS)
    }
}

/// Decomposition of a completion time, in seconds.
///
/// `total` is accumulated as `compute + (transfer + per_hop_overhead)`, so it
/// equals [`compute_time`] plus [`train_transfer_time`] bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeBreakdown {
    pub compute: f64,
    pub transfer: f64,
    pub per_hop_overhead: f64,
    pub total: f64,
}

impl TimeBreakdown {
    fn new(compute: f64, transfer: f64, per_hop_overhead: f64) -> Self {
        Self {
            compute,
            transfer,
            per_hop_overhead,
            total: compute + (transfer + per_hop_overhead),
        }
    }

    /// The communication part, `transfer + per_hop_overhead`.
    pub fn communication(&self) -> f64 {
        self.transfer + self.per_hop_overhead
    }
}

/// Time to execute `job` at the processor's rate.
pub fn compute_time(job: &ComputeJob, proc: &Processor) -> f64 {
    job.instructions() / proc.exec_rate()
}

fn check_bits(field: &'static str, bits: f64) -> Result<()> {
    let mut v = Vec::new();
    check_non_negative(&mut v, field, bits);
    Ok(into_result(v)?)
}

/// Time for one packet to cross one hop. With `include_minor` the processing
/// and propagation delays are added to queueing and transmission.
pub fn single_packet_hop_time(packet_bits: f64, hop: &NetworkHop, include_minor: bool) -> Result<f64> {
    check_bits("packet_bits", packet_bits)?;
    let major = hop.queue_delay() + packet_bits / hop.trans_rate();
    if include_minor {
        Ok(hop.proc_delay() + major + hop.length() / PROPAGATION_SPEED)
    } else {
        Ok(major)
    }
}

/// Sum over hops, first to last, of `β + S/γ`.
pub fn end_to_end_packet_time(packet_bits: f64, path: &NetworkPath) -> Result<f64> {
    check_bits("packet_bits", packet_bits)?;
    Ok(per_hop_sum(packet_bits, path))
}

fn per_hop_sum(packet_bits: f64, path: &NetworkPath) -> f64 {
    path.hops()
        .iter()
        .map(|h| h.queue_delay() + packet_bits / h.trans_rate())
        .sum()
}

/// Splits a file into maximum-size packets plus a remainder packet. An exact
/// multiple of the MTU ends in a full-size packet.
pub fn packetize(file_bits: f64, mtu: Mtu) -> Result<PacketTrain> {
    check_bits("file_bits", file_bits)?;
    if file_bits == 0.0 {
        return Err(Error::EmptyFile);
    }
    let s = mtu.bits();
    let mut full = ((file_bits / s).ceil() - 1.0).max(0.0) as u64;
    // Correct for rounding in the division.
    while full > 0 && file_bits - full as f64 * s <= 0.0 {
        full -= 1;
    }
    while file_bits - full as f64 * s > s {
        full += 1;
    }
    let last = file_bits - full as f64 * s;
    Ok(PacketTrain::new(s, full, last)?)
}

/// `(transfer, per_hop_overhead)` for moving `file_bits` over `path`.
fn communication_parts(file_bits: f64, path: &NetworkPath, mtu: Mtu) -> Result<(f64, f64)> {
    check_bits("file_bits", file_bits)?;
    if file_bits == 0.0 {
        return Ok((0.0, path.total_queue_delay()));
    }
    let train = packetize(file_bits, mtu)?;
    if train.full_packet_count() == 0 {
        let transfer = path.hops().iter().map(|h| file_bits / h.trans_rate()).sum();
        return Ok((transfer, path.total_queue_delay()));
    }
    let transfer = file_bits / path.bottleneck_rate();
    let overhead = per_hop_sum(train.last_packet_bits(), path);
    Ok((transfer, overhead))
}

/// Closed-form time to move a whole file across `path`.
///
/// An empty file still pays every hop's queueing delay.
pub fn train_transfer_time(file_bits: f64, path: &NetworkPath, mtu: Mtu) -> Result<f64> {
    let (transfer, overhead) = communication_parts(file_bits, path, mtu)?;
    Ok(transfer + overhead)
}

pub fn completion_time_local(job: &ComputeJob, local: &Processor) -> TimeBreakdown {
    TimeBreakdown::new(compute_time(job, local), 0.0, 0.0)
}

/// Remote compute time plus the time to move the job's input and output.
pub fn completion_time_remote(job: &ComputeJob, resource: &CloudResource, mtu: Mtu) -> TimeBreakdown {
    let compute = compute_time(job, resource.processor());
    let (transfer, overhead) = communication_parts(job.total_bits(), resource.path(), mtu)
        .expect("validated job has finite non-negative bits");
    TimeBreakdown::new(compute, transfer, overhead)
}
