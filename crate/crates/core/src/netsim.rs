//! Packet-level store-and-forward simulation of a packet train crossing a
//! multi-hop path.
//!
//! Each hop is a FIFO link with infinite buffering. A packet joins hop `j`'s
//! queue `β(j)` seconds after it has fully arrived at the node in front of
//! the hop, waits for the link to be free, and occupies it for `s/γ(j)`.
//! The source hands every packet to the first hop at time zero, so the
//! train leaves back to back.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};
use std::io::Write;

use serde::Serialize;

use crate::error::{check_positive, into_result, Error, Result};
use crate::model::NetworkPath;
use crate::timing::{self, Mtu};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// The packet has cleared the hop's queueing delay and may use the link.
    Arrival,
    /// The packet's last bit has left the hop.
    Departure,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimEvent {
    pub time: f64,
    pub kind: EventKind,
    pub packet_index: usize,
    pub hop_index: usize,
}

impl SimEvent {
    fn key(&self) -> (f64, usize, usize, EventKind) {
        (self.time, self.hop_index, self.packet_index, self.kind)
    }
}

impl Eq for SimEvent {}

impl Ord for SimEvent {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ta, ha, pa, ka) = self.key();
        let (tb, hb, pb, kb) = other.key();
        ta.total_cmp(&tb)
            .then(ha.cmp(&hb))
            .then(pa.cmp(&pb))
            .then(ka.cmp(&kb))
    }
}

impl PartialOrd for SimEvent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    /// Time the last bit of the last packet reaches the destination.
    pub completion: f64,
    /// Destination arrival time of each packet, in packet order.
    pub per_packet_arrivals: Vec<f64>,
    pub event_count: usize,
}

#[derive(Default)]
struct Link {
    busy: bool,
    queue: VecDeque<usize>,
}

/// Runs the simulation, handing every processed event to `observe`.
pub fn simulate_train_with(
    file_bits: f64,
    path: &NetworkPath,
    mtu: Mtu,
    mut observe: impl FnMut(&SimEvent),
) -> Result<SimResult> {
    let train = timing::packetize(file_bits, mtu)?;
    let sizes: Vec<f64> = train.packet_sizes().collect();
    let hops = path.hops();

    let mut links: Vec<Link> = hops.iter().map(|_| Link::default()).collect();
    let mut arrivals = vec![f64::NAN; sizes.len()];
    let mut heap = BinaryHeap::new();
    let mut event_count = 0;

    for packet_index in 0..sizes.len() {
        heap.push(Reverse(SimEvent {
            time: hops[0].queue_delay(),
            kind: EventKind::Arrival,
            packet_index,
            hop_index: 0,
        }));
    }

    while let Some(Reverse(ev)) = heap.pop() {
        event_count += 1;
        observe(&ev);
        let hop = ev.hop_index;
        match ev.kind {
            EventKind::Arrival => {
                links[hop].queue.push_back(ev.packet_index);
            }
            EventKind::Departure => {
                links[hop].busy = false;
                if hop + 1 < hops.len() {
                    heap.push(Reverse(SimEvent {
                        time: ev.time + hops[hop + 1].queue_delay(),
                        kind: EventKind::Arrival,
                        packet_index: ev.packet_index,
                        hop_index: hop + 1,
                    }));
                } else {
                    arrivals[ev.packet_index] = ev.time;
                }
            }
        }
        let link = &mut links[hop];
        if !link.busy {
            if let Some(next) = link.queue.pop_front() {
                link.busy = true;
                heap.push(Reverse(SimEvent {
                    time: ev.time + sizes[next] / hops[hop].trans_rate(),
                    kind: EventKind::Departure,
                    packet_index: next,
                    hop_index: hop,
                }));
            }
        }
    }

    let completion = arrivals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(SimResult {
        completion,
        per_packet_arrivals: arrivals,
        event_count,
    })
}

pub fn simulate_train(file_bits: f64, path: &NetworkPath, mtu: Mtu) -> Result<SimResult> {
    simulate_train_with(file_bits, path, mtu, |_| {})
}

/// Runs the simulation and writes one JSON object per event to `out`.
pub fn simulate_train_traced(file_bits: f64, path: &NetworkPath, mtu: Mtu, mut out: impl Write) -> Result<SimResult> {
    let mut io_err = None;
    let result = simulate_train_with(file_bits, path, mtu, |ev| {
        if io_err.is_none() {
            let line = serde_json::to_string(ev).expect("events serialize");
            if let Err(e) = writeln!(out, "{line}") {
                io_err = Some(e);
            }
        }
    })?;
    match io_err {
        Some(e) => Err(e.into()),
        None => Ok(result),
    }
}

/// Closed-form versus simulated transfer time for the same file and path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub closed_form: f64,
    pub simulated: f64,
    /// `closed_form - simulated`.
    pub gap: f64,
}

/// Compares the closed form against the simulation. Only defined for paths
/// without queueing delay: the closed form charges `β` once per hop per
/// train, which no per-packet queueing discipline reproduces.
pub fn compare_models(file_bits: f64, path: &NetworkPath, mtu: Mtu) -> Result<GapReport> {
    if let Some((hop, h)) = path.hops().iter().enumerate().find(|(_, h)| h.queue_delay() != 0.0) {
        return Err(Error::QueueDelayUnsupported {
            hop,
            queue_delay: h.queue_delay(),
        });
    }
    let mut v = Vec::new();
    check_positive(&mut v, "file_bits", file_bits);
    into_result(v)?;
    let closed_form = timing::train_transfer_time(file_bits, path, mtu)?;
    let simulated = simulate_train(file_bits, path, mtu)?.completion;
    Ok(GapReport {
        closed_form,
        simulated,
        gap: closed_form - simulated,
    })
}

/// Exact simulated completion for `h` identical hops of rate `γ`, no
/// queueing: the last packet leaves the source at `F/γ`, and at every later
/// hop it waits behind the preceding full packet when there is one.
pub fn equal_rate_completion(file_bits: f64, hop_count: usize, rate: f64, mtu: Mtu) -> Result<f64> {
    let train = timing::packetize(file_bits, mtu)?;
    let lead = if train.full_packet_count() > 0 {
        train.full_packet_bits()
    } else {
        train.last_packet_bits()
    };
    Ok(file_bits / rate + (hop_count as f64 - 1.0) * lead / rate)
}
