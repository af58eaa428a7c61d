use offload_core::decision::{self, capacity, inverse_intensity, rlr, rlr_threshold};
use offload_core::timing::{self, compute_time};
use offload_core::{CloudResource, ComputeJob, Mtu, NetworkPath};
use serde_json::json;

use crate::output::{num, CliError, CmdResult, Outcome, OutputEnvelope};
use crate::DecideArgs;

pub fn decide(args: &DecideArgs, mtu: Mtu) -> CmdResult {
    let job = ComputeJob::new(args.instructions, args.input_bits, args.output_bits)
        .map_err(|v| CliError::Usage(format!("job: {v}")))?;
    let path = NetworkPath::new(args.hops.clone()).map_err(|v| CliError::Usage(format!("--hop: {v}")))?;
    let resource = CloudResource::new(args.remote.clone(), path.clone(), args.tier)
        .map_err(|v| CliError::Usage(format!("--tier: {v}")))?;

    let verdict = decision::offload_favorable(&job, &args.local, &resource, mtu);
    let local = timing::completion_time_local(&job, &args.local);
    let remote = timing::completion_time_remote(&job, &resource, mtu);
    let comm = remote.communication();
    let ratio = rlr(&args.remote, &args.local);
    let ccr = decision::ccr(compute_time(&job, &args.remote), comm).ok();
    let threshold = ccr.map(rlr_threshold);
    let ratio_holds = decision::favorable_by_ratio(ratio, ccr);
    let cap = capacity(&args.local, &args.remote, path.bottleneck_rate());
    let fc = inverse_intensity(&job);

    let label = if verdict.favorable() { "OFFLOAD" } else { "LOCAL" };
    let mut warnings = Vec::new();
    if ratio_holds != verdict.favorable() {
        warnings.push("ratio form disagrees with completion-time comparison (rounding at a tie)".to_string());
    }

    let mut text = format!("verdict: {label}\n");
    text += &format!("local completion:   {} s\n", num(local.total));
    text += &format!(
        "remote completion:  {} s (compute {} s, transfer {} s, per-hop {} s)\n",
        num(remote.total),
        num(remote.compute),
        num(remote.transfer),
        num(remote.per_hop_overhead)
    );
    text += &format!("margin:             {} s\n", num(verdict.margin()));
    text += &format!("RLR (E/e):          {}\n", num(ratio));
    match (ccr, threshold) {
        (Some(c), Some(t)) => {
            text += &format!("CCR (xi/psi):       {}\n", num(c));
            text += &format!(
                "RLR threshold:      {} -> RLR {} threshold: {}\n",
                num(t),
                if ratio > t { ">" } else { "<=" },
                if ratio_holds { "holds" } else { "fails" }
            );
        }
        _ => {
            text += "CCR (xi/psi):       inf (no communication time)\n";
            text += &format!("RLR threshold:      1 -> {}\n", if ratio_holds { "holds" } else { "fails" });
        }
    }
    text += &format!(
        "capacity:           {} bits/instruction vs job F/C {} bits/instruction\n",
        num(cap.capacity),
        num(fc)
    );

    let envelope = OutputEnvelope {
        command: "decide",
        inputs_echo: json!({
            "local": args.local,
            "remote": args.remote,
            "hops": path.hops(),
            "job": job,
            "tier_index": args.tier,
            "mtu_bits": mtu.bits(),
        }),
        results: json!({
            "verdict": label,
            "decision": verdict,
            "local": local,
            "remote": remote,
            "rlr": ratio,
            "ccr": ccr,
            "rlr_threshold": threshold,
            "rlr_threshold_holds": ratio_holds,
            "capacity": cap,
            "inverse_intensity": fc,
        }),
        warnings,
    };
    Ok(Outcome {
        text,
        envelope,
        failed: false,
    })
}
