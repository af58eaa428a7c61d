//! Domain types shared by the timing, decision, simulation and workload
//! modules.
//!
//! Units are fixed throughout: instructions, bits, seconds, meters, bits/sec
//! and instructions/sec. Every type is validated on construction, so a value
//! that exists has already passed [`Validate::validate`].

use serde::Serialize;

use crate::error::{check_non_negative, check_positive, into_result, Violation, Violations};

/// Re-checks the invariants of an entity.
pub trait Validate {
    fn violations(&self) -> Vec<Violation>;

    fn validate(&self) -> Result<(), Violations> {
        into_result(self.violations())
    }
}

/// A named execution resource rated in instructions per second.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Processor {
    name: String,
    exec_rate: f64,
}

impl Processor {
    pub fn new(name: impl Into<String>, exec_rate: f64) -> Result<Self, Violations> {
        let p = Self {
            name: name.into(),
            exec_rate,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn exec_rate(&self) -> f64 {
        self.exec_rate
    }
}

impl Validate for Processor {
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_positive(&mut out, "exec_rate", self.exec_rate);
        out
    }
}

/// One link of a network path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkHop {
    trans_rate: f64,
    queue_delay: f64,
    proc_delay: f64,
    length: f64,
}

impl NetworkHop {
    /// A hop with no processing delay and zero length.
    pub fn new(trans_rate: f64, queue_delay: f64) -> Result<Self, Violations> {
        Self::with_details(trans_rate, queue_delay, 0.0, 0.0)
    }

    pub fn with_details(
        trans_rate: f64,
        queue_delay: f64,
        proc_delay: f64,
        length: f64,
    ) -> Result<Self, Violations> {
        let hop = Self {
            trans_rate,
            queue_delay,
            proc_delay,
            length,
        };
        hop.validate()?;
        Ok(hop)
    }

    /// Transmission rate in bits/sec.
    pub fn trans_rate(&self) -> f64 {
        self.trans_rate
    }

    /// Queueing delay in seconds.
    pub fn queue_delay(&self) -> f64 {
        self.queue_delay
    }

    /// Processing delay in seconds.
    pub fn proc_delay(&self) -> f64 {
        self.proc_delay
    }

    /// Physical length in meters.
    pub fn length(&self) -> f64 {
        self.length
    }
}

impl Validate for NetworkHop {
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_positive(&mut out, "trans_rate", self.trans_rate);
        check_non_negative(&mut out, "queue_delay", self.queue_delay);
        check_non_negative(&mut out, "proc_delay", self.proc_delay);
        check_non_negative(&mut out, "length", self.length);
        out
    }
}

/// Ordered hops from the client to a resource; never empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkPath {
    hops: Vec<NetworkHop>,
}

impl NetworkPath {
    pub fn new(hops: Vec<NetworkHop>) -> Result<Self, Violations> {
        let path = Self { hops };
        path.validate()?;
        Ok(path)
    }

    /// A path of `count` identical hops.
    pub fn uniform(hop: NetworkHop, count: usize) -> Result<Self, Violations> {
        Self::new(vec![hop; count])
    }

    pub fn hops(&self) -> &[NetworkHop] {
        &self.hops
    }

    pub fn hop_count(&self) -> usize {
        self.hops.len()
    }

    /// Minimum transmission rate over all hops.
    pub fn bottleneck_rate(&self) -> f64 {
        self.hops
            .iter()
            .map(NetworkHop::trans_rate)
            .fold(f64::INFINITY, f64::min)
    }

    /// Sum of queueing delays, first hop to last.
    pub fn total_queue_delay(&self) -> f64 {
        self.hops.iter().map(NetworkHop::queue_delay).sum()
    }
}

impl Validate for NetworkPath {
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.hops.is_empty() {
            out.push(Violation::new("hops", "path must have at least one hop"));
        }
        for hop in &self.hops {
            out.extend(hop.violations());
        }
        out
    }
}

/// A job of `instructions` instructions that ships `input_bits` to the
/// executing resource and `output_bits` back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComputeJob {
    instructions: f64,
    input_bits: f64,
    output_bits: f64,
}

impl ComputeJob {
    pub fn new(instructions: f64, input_bits: f64, output_bits: f64) -> Result<Self, Violations> {
        let job = Self {
            instructions,
            input_bits,
            output_bits,
        };
        job.validate()?;
        Ok(job)
    }

    /// A job whose data volume is `inverse_intensity` bits per instruction,
    /// all of it counted as input.
    pub fn from_inverse_intensity(instructions: f64, inverse_intensity: f64) -> Result<Self, Violations> {
        Self::new(instructions, instructions * inverse_intensity, 0.0)
    }

    pub fn instructions(&self) -> f64 {
        self.instructions
    }

    pub fn input_bits(&self) -> f64 {
        self.input_bits
    }

    pub fn output_bits(&self) -> f64 {
        self.output_bits
    }

    /// Input plus output bits.
    pub fn total_bits(&self) -> f64 {
        self.input_bits + self.output_bits
    }
}

impl Validate for ComputeJob {
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_positive(&mut out, "instructions", self.instructions);
        check_non_negative(&mut out, "input_bits", self.input_bits);
        check_non_negative(&mut out, "output_bits", self.output_bits);
        out
    }
}

/// A file split into `full_packet_count` packets of `full_packet_bits`
/// followed by one remainder packet of `last_packet_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PacketTrain {
    full_packet_bits: f64,
    full_packet_count: u64,
    last_packet_bits: f64,
}

impl PacketTrain {
    pub fn new(full_packet_bits: f64, full_packet_count: u64, last_packet_bits: f64) -> Result<Self, Violations> {
        let train = Self {
            full_packet_bits,
            full_packet_count,
            last_packet_bits,
        };
        train.validate()?;
        Ok(train)
    }

    pub fn full_packet_bits(&self) -> f64 {
        self.full_packet_bits
    }

    pub fn full_packet_count(&self) -> u64 {
        self.full_packet_count
    }

    pub fn last_packet_bits(&self) -> f64 {
        self.last_packet_bits
    }

    /// Number of packets including the remainder packet.
    pub fn packet_count(&self) -> u64 {
        self.full_packet_count + 1
    }

    pub fn total_bits(&self) -> f64 {
        self.full_packet_count as f64 * self.full_packet_bits + self.last_packet_bits
    }

    /// Packet sizes in transmission order.
    pub fn packet_sizes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.full_packet_count)
            .map(|_| self.full_packet_bits)
            .chain(std::iter::once(self.last_packet_bits))
    }
}

impl Validate for PacketTrain {
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_positive(&mut out, "full_packet_bits", self.full_packet_bits);
        check_positive(&mut out, "last_packet_bits", self.last_packet_bits);
        if self.last_packet_bits > self.full_packet_bits {
            out.push(Violation::new(
                "last_packet_bits",
                "last_packet_bits must be <= full_packet_bits",
            ));
        }
        out
    }
}

/// An offload target: a processor reached over a path, at a deployment tier
/// (1 = nearest the client).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CloudResource {
    processor: Processor,
    path: NetworkPath,
    tier_index: u32,
}

impl CloudResource {
    pub fn new(processor: Processor, path: NetworkPath, tier_index: u32) -> Result<Self, Violations> {
        let r = Self {
            processor,
            path,
            tier_index,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn processor(&self) -> &Processor {
        &self.processor
    }

    pub fn path(&self) -> &NetworkPath {
        &self.path
    }

    pub fn tier_index(&self) -> u32 {
        self.tier_index
    }
}

impl Validate for CloudResource {
    fn violations(&self) -> Vec<Violation> {
        let mut out = self.processor.violations();
        out.extend(self.path.violations());
        if self.tier_index < 1 {
            out.push(Violation::new("tier_index", "tier_index must be >= 1"));
        }
        out
    }
}

/// Verdict of the local-versus-remote completion time comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffloadDecision {
    favorable: bool,
    local_time: f64,
    remote_time: f64,
    margin: f64,
}

impl OffloadDecision {
    /// Offloading is favorable only when the remote time is strictly smaller.
    pub fn from_times(local_time: f64, remote_time: f64) -> Self {
        let margin = local_time - remote_time;
        Self {
            favorable: margin > 0.0,
            local_time,
            remote_time,
            margin,
        }
    }

    pub fn favorable(&self) -> bool {
        self.favorable
    }

    pub fn local_time(&self) -> f64 {
        self.local_time
    }

    pub fn remote_time(&self) -> f64 {
        self.remote_time
    }

    /// `local_time - remote_time`; positive when offloading wins.
    pub fn margin(&self) -> f64 {
        self.margin
    }
}

impl Validate for OffloadDecision {
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_non_negative(&mut out, "local_time", self.local_time);
        check_non_negative(&mut out, "remote_time", self.remote_time);
        if self.favorable != (self.margin > 0.0) {
            out.push(Violation::new("favorable", "favorable must agree with margin > 0"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn processor_validation() {
        assert!(Processor::new("msp430", 16e6).is_ok());
        let err = Processor::new("dead", 0.0).unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err.0[0].field, "exec_rate");
        assert_eq!(err.to_string(), "exec_rate must be > 0");
        assert!(Processor::new("nan", f64::NAN).is_err());
        assert!(Processor::new("inf", f64::INFINITY).is_err());
    }

    #[test]
    fn hop_validation_reports_every_field() {
        let err = NetworkHop::new(-1.0, 0.0).unwrap_err();
        assert_eq!(err.to_string(), "trans_rate must be > 0");

        let err = NetworkHop::with_details(0.0, -1.0, f64::NAN, -3.0).unwrap_err();
        let fields: Vec<_> = err.iter().map(|v| v.field).collect();
        assert_eq!(fields, ["trans_rate", "queue_delay", "proc_delay", "length"]);
    }

    #[test]
    fn empty_path_rejected() {
        let err = NetworkPath::new(vec![]).unwrap_err();
        assert_eq!(err.0[0].field, "hops");
    }

    #[test]
    fn bottleneck_is_a_hop_rate() {
        let path = NetworkPath::new(vec![
            NetworkHop::new(1e6, 0.0).unwrap(),
            NetworkHop::new(1e3, 0.0).unwrap(),
            NetworkHop::new(5e4, 0.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(path.bottleneck_rate(), 1e3);
        assert_eq!(path.hop_count(), 3);
    }

    #[test]
    fn job_validation() {
        assert!(ComputeJob::new(0.0, 1.0, 1.0).is_err());
        assert!(ComputeJob::new(1.0, -1.0, 0.0).is_err());
        let job = ComputeJob::new(1e9, 600.0, 400.0).unwrap();
        assert_eq!(job.total_bits(), 1000.0);
    }

    #[test]
    fn packet_train_invariants() {
        let t = PacketTrain::new(12000.0, 2, 6000.0).unwrap();
        assert_eq!(t.total_bits(), 30000.0);
        assert_eq!(t.packet_sizes().collect::<Vec<_>>(), [12000.0, 12000.0, 6000.0]);
        assert!(PacketTrain::new(12000.0, 1, 13000.0).is_err());
        assert!(PacketTrain::new(12000.0, 1, 0.0).is_err());
    }

    #[test]
    fn tier_index_starts_at_one() {
        let p = Processor::new("x", 1.0).unwrap();
        let path = NetworkPath::new(vec![NetworkHop::new(1.0, 0.0).unwrap()]).unwrap();
        assert!(CloudResource::new(p.clone(), path.clone(), 0).is_err());
        assert!(CloudResource::new(p, path, 1).is_ok());
    }

    #[test]
    fn decision_tie_is_not_favorable() {
        let d = OffloadDecision::from_times(1.0, 1.0);
        assert!(!d.favorable());
        assert!(d.validate().is_ok());
        assert!(OffloadDecision::from_times(2.0, 1.0).favorable());
    }
}
