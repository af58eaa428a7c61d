//! Parsing of human-entered quantities. SI suffixes are accepted here and
//! nowhere else; everything past this module is in base units.

use offload_core::catalog;
use offload_core::{NetworkHop, Processor};

/// Parses a positive or zero number with an optional `k`, `M` or `G`
/// suffix, e.g. `1e3`, `1k`, `6.43G`.
pub fn parse_quantity(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (digits, scale) = match s.chars().last() {
        Some('k') | Some('K') => (&s[..s.len() - 1], 1e3),
        Some('M') => (&s[..s.len() - 1], 1e6),
        Some('G') => (&s[..s.len() - 1], 1e9),
        _ => (s, 1.0),
    };
    let v: f64 = digits
        .parse()
        .map_err(|_| format!("{s:?} is not a number (optional suffix k, M, G)"))?;
    let v = v * scale;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("{s:?} must be a finite non-negative number"));
    }
    Ok(v)
}

pub fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_quantity(s)?;
    if v <= 0.0 {
        return Err(format!("{s:?} must be > 0"));
    }
    Ok(v)
}

/// A preset name (`msp430`, `a9`, `celeron`, `i3`, `xeon`) or a rate in
/// instructions/sec.
pub fn parse_processor(s: &str) -> Result<Processor, String> {
    if let Some(p) = catalog::preset(s.trim()) {
        return Ok(p);
    }
    let rate = parse_positive(s).map_err(|e| {
        let names: Vec<_> = catalog::PRESETS.iter().map(|(n, _)| *n).collect();
        format!("{e}; or use a preset: {}", names.join(", "))
    })?;
    Processor::new(format!("custom@{rate}"), rate).map_err(|v| v.to_string())
}

/// `RATE[:QUEUE_DELAY]`, rate in bits/sec and delay in seconds.
pub fn parse_hop(s: &str) -> Result<NetworkHop, String> {
    let (rate, delay) = match s.split_once(':') {
        Some((r, d)) => (r, Some(d)),
        None => (s, None),
    };
    let rate = parse_positive(rate)?;
    let delay = match delay {
        Some(d) => d
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("queue delay {d:?} is not a number of seconds"))?,
        None => 0.0,
    };
    NetworkHop::new(rate, delay).map_err(|v| v.to_string())
}
