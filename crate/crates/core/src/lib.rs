//! Completion-time models and feasibility checks for computation offloading.
//!
//! A job of `C` instructions moving `F` bits either runs on the local device
//! at `e` instructions/sec or is shipped over a multi-hop path with
//! bottleneck rate `Γ` to a resource running at `E`. The modules here cover
//! the closed-form times ([`timing`]), the favorability inequality and its
//! rearrangements ([`decision`]), a packet-level simulator that checks the
//! transfer model ([`netsim`]), and per-application bits-per-instruction
//! statistics from job traces ([`workload`]).

pub mod catalog;
pub mod decision;
pub mod error;
pub mod model;
pub mod netsim;
pub mod tables;
pub mod timing;
pub mod validation;
pub mod workload;

pub use error::{Error, Result, Violation, Violations};
pub use model::{
    CloudResource, ComputeJob, NetworkHop, NetworkPath, OffloadDecision, PacketTrain, Processor, Validate,
};
pub use timing::{Mtu, TimeBreakdown};
