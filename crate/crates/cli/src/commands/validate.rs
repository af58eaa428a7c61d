use offload_core::validation;
use offload_core::Mtu;
use serde_json::json;

use crate::output::{num, CliError, CmdResult, Outcome, OutputEnvelope};
use crate::ValidateArgs;

pub fn validate(args: &ValidateArgs, mtu: Mtu) -> CmdResult {
    let trials = usize::try_from(args.trials).map_err(|_| CliError::Usage("--trials too large".into()))?;
    let report = validation::run(trials, args.seed, mtu).map_err(|e| CliError::Infeasible(e.to_string()))?;
    let h = &report.heterogeneous;
    let eq = &report.equal_rate;
    let single = &report.single_packet;
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };

    let mut text = format!("seed {}, {} cases per check, mtu {} bits\n\n", args.seed, trials, num(mtu.bits()));
    text += "heterogeneous rates (closed form - simulated):\n";
    text += &format!(
        "  min {} s, mean {} s, max {} s; {} of {} negative\n",
        num(h.min),
        num(h.mean),
        num(h.max),
        h.negative,
        h.count
    );
    text += "equal rates:\n";
    text += &format!(
        "  simulation vs exact completion: max rel error {} [{}]\n",
        num(eq.max_rel_error),
        mark(eq.passed)
    );
    text += &format!(
        "  gap equals N/gamma in {} of {} cases ({} have N = MTU or one hop)\n",
        eq.gap_equals_last_packet_time, eq.cases, eq.full_last_packet_or_single_hop
    );
    text += "single packet:\n";
    text += &format!("  max |gap| {} s [{}]\n", num(single.max_abs_gap), mark(single.passed));

    let mut warnings = Vec::new();
    if h.negative > 0 {
        warnings.push(format!(
            "closed form undershoots the simulation in {} heterogeneous cases",
            h.negative
        ));
    }
    let failed = !report.passed();
    if failed {
        warnings.push("invariant check failed".into());
    }

    let envelope = OutputEnvelope {
        command: "validate",
        inputs_echo: json!({ "trials": trials, "seed": args.seed, "mtu_bits": mtu.bits() }),
        results: json!({ "passed": report.passed(), "report": report }),
        warnings,
    };
    Ok(Outcome { text, envelope, failed })
}
