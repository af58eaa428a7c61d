//! Built-in processor presets, rated in instructions per second.

use crate::model::Processor;

/// `(name, instructions/sec)` for every preset, handheld parts first.
pub const PRESETS: [(&str, f64); 5] = [
    ("msp430", 16e6),
    ("a9", 3.6e9),
    ("celeron", 6.43e9),
    ("i3", 36.8e9),
    ("xeon", 136.2e9),
];

/// Presets that play the local (handheld) role in the reference tables.
pub const LOCAL_PRESETS: [&str; 2] = ["msp430", "a9"];

/// Presets that play the remote role in the reference tables.
pub const REMOTE_PRESETS: [&str; 3] = ["celeron", "i3", "xeon"];

/// Looks up a preset by case-insensitive name.
pub fn preset(name: &str) -> Option<Processor> {
    PRESETS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|&(n, rate)| Processor::new(n, rate).expect("preset rates are positive"))
}

pub fn all() -> Vec<Processor> {
    PRESETS.iter().filter_map(|(n, _)| preset(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(preset("MSP430").unwrap().exec_rate(), 16e6);
        assert_eq!(preset("Xeon").unwrap().exec_rate(), 136.2e9);
        assert!(preset("cray").is_none());
        assert_eq!(all().len(), 5);
    }
}
