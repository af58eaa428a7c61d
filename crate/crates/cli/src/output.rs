use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// One document per run in `--json` mode.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: &'static str,
    pub inputs_echo: Value,
    pub results: Value,
    pub warnings: Vec<String>,
}

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input or unreadable file (exit 2).
    Usage(String),
    /// Well-formed request with no feasible answer, or a failed check (exit 1).
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Infeasible(m) => f.write_str(m),
        }
    }
}

pub type CmdResult = Result<Outcome, CliError>;

/// What a command produced: the human rendering, the structured document,
/// and whether the run should exit nonzero after printing.
pub struct Outcome {
    pub text: String,
    pub envelope: OutputEnvelope,
    pub failed: bool,
}

/// Formats with `digits` significant digits, `%g` style: scientific when the
/// exponent is below -4 or at least `digits`. Trailing zeros are trimmed.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..digits as i32).contains(&exp) {
        let s = format!("{:.*e}", digits.saturating_sub(1), x);
        let (mantissa, e) = s.split_once('e').unwrap();
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

/// Six significant digits, the default for all reported quantities.
pub fn num(x: f64) -> String {
    sig(x, 6)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders rows as an aligned text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    for row in rows {
        out.push('\n');
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(num(401.875), "401.875");
        assert_eq!(num(10.222222222), "10.2222");
        assert_eq!(sig(10.222222222, 5), "10.222");
        assert_eq!(sig(6.2344e-8, 3), "6.23e-8");
        assert_eq!(sig(2.704e-10, 3), "2.7e-10");
        assert_eq!(num(1_000_001.0), "1e6");
        assert_eq!(sig(1_000_001.0, 10), "1000001");
        assert_eq!(num(2300.0), "2300");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1.000001), "1");
        assert_eq!(sig(1.000001, 7), "1.000001");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["123".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n---  --\n123  x\n");
    }
}
