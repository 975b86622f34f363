"""Command-line entry points.

Subcommands: run (execute batches against a config or saved state),
indices (CSV export), density (tau / taubar + CDF export), bootstrap
(replicate curves), demo eval (print the synthetic model at a point),
ingest (merge an evaluation log), serve (start the HTTP API).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bootstrap import BootstrapSpec, bootstrap_curves
from .campaign import Campaign, CampaignConfig, blocks_from_log_lines
from .errors import SensaError
from .estimators import indices_to_csv
from .models import synthetic_eval
from .regional import cumulative_density


def _load_or_init(args) -> Campaign:
    if getattr(args, "state", None):
        try:
            return Campaign.load(args.state)
        except FileNotFoundError:
            if getattr(args, "config", None) is None:
                raise
    if getattr(args, "config", None) is None:
        raise SensaError("need --config to start a new campaign")
    with open(args.config, "r", encoding="utf-8") as fh:
        return Campaign(CampaignConfig.from_dict(json.load(fh)))


def _cmd_run(args) -> int:
    campaign = _load_or_init(args)
    if args.log:
        campaign.log_path = args.log
    for _ in range(args.batches):
        campaign.run_batch()
        if args.state:
            campaign.save(args.state)
    if args.state:
        campaign.save(args.state)
    idx = campaign.indices() if campaign.blocks else None
    print(f"batches={campaign.batches_completed} evaluations={campaign.total_evaluations()}")
    if idx is not None:
        with np.printoptions(precision=4, suppress=True):
            print(f"V = {idx.V}")
    campaign.close()
    return 0


def _cmd_indices(args) -> int:
    campaign = Campaign.load(args.state)
    if not campaign.blocks:
        print("insufficient data: campaign has no evaluations", file=sys.stderr)
        return 1
    csv_text = indices_to_csv(campaign.indices())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def _density_payload(campaign: Campaign, dim: int, output: int | None) -> dict:
    if output is None:
        density = campaign.taubar(dim)
    else:
        density = campaign.tau(dim, output)
    curve = cumulative_density(density)
    return {
        "density": {
            "dimension": dim,
            "alpha": campaign.alpha,
            "epsilon": campaign.config.epsilon,
            "output": output,
            "breakpoints": density.breakpoints.tolist(),
            "values": density.values.tolist(),
        },
        "cumulative": {
            "breakpoints": curve.breakpoints.tolist(),
            "cumulative": curve.cumulative.tolist(),
        },
    }


def _cmd_density(args) -> int:
    campaign = Campaign.load(args.state)
    if not campaign.blocks:
        print("insufficient data: campaign has no evaluations", file=sys.stderr)
        return 1
    payload = _density_payload(campaign, args.dim, args.output)
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def _cmd_bootstrap(args) -> int:
    campaign = Campaign.load(args.state)
    if not campaign.blocks:
        print("insufficient data: campaign has no evaluations", file=sys.stderr)
        return 1
    curves = bootstrap_curves(
        campaign.blocks, args.dim, args.output,
        campaign.alpha_epsilon(), BootstrapSpec(replicates=args.replicates, seed=args.seed))
    payload = {
        "dimension": args.dim,
        "output": args.output,
        "replicates": [
            {"breakpoints": c.breakpoints.tolist(), "cumulative": c.cumulative.tolist()}
            for c in curves
        ],
    }
    text = json.dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def _cmd_demo_eval(args) -> int:
    x = np.array([float(v) for v in args.x.split(",")])
    times = [float(v) for v in args.times.split(",")]
    out = synthetic_eval(x, times)
    for t, y in zip(times, out):
        print(f"{t:g} " + " ".join(f"{v: .7f}" for v in y))
    return 0


def _cmd_ingest(args) -> int:
    campaign = Campaign.load(args.state)
    with open(args.log, "r", encoding="utf-8") as fh:
        blocks = blocks_from_log_lines(fh, campaign.config.m, campaign.config.n)
    campaign.ingest(blocks)
    campaign.save(args.state)
    print(f"ingested {len(blocks)} blocks; total evaluations {campaign.total_evaluations()}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    campaign = Campaign.load(args.state)
    app = create_app(campaign, state_path=args.state)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensa",
                                     description="Adaptive variance-based sensitivity analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute campaign batches")
    p_run.add_argument("--config", help="JSON campaign config (new campaigns)")
    p_run.add_argument("--state", help="state file to resume from / persist to")
    p_run.add_argument("--batches", type=int, required=True)
    p_run.add_argument("--log", help="append evaluations to this JSONL file")
    p_run.set_defaults(fn=_cmd_run)

    p_idx = sub.add_parser("indices", help="export S/T/V as CSV")
    p_idx.add_argument("--state", required=True)
    p_idx.add_argument("--out", help="CSV path (default: stdout)")
    p_idx.set_defaults(fn=_cmd_indices)

    p_den = sub.add_parser("density", help="export sensitivity density and its CDF")
    p_den.add_argument("--state", required=True)
    p_den.add_argument("--dim", type=int, required=True)
    p_den.add_argument("--output", type=int, help="1-based output index (default: average)")
    p_den.add_argument("--out", help="JSON path (default: stdout)")
    p_den.set_defaults(fn=_cmd_density)

    p_boot = sub.add_parser("bootstrap", help="replicate cumulative curves")
    p_boot.add_argument("--state", required=True)
    p_boot.add_argument("--dim", type=int, required=True)
    p_boot.add_argument("--output", type=int, required=True)
    p_boot.add_argument("-R", "--replicates", type=int, default=25)
    p_boot.add_argument("--seed", type=int, default=0)
    p_boot.add_argument("--out", help="JSON path (default: stdout)")
    p_boot.set_defaults(fn=_cmd_bootstrap)

    p_demo = sub.add_parser("demo", help="built-in model demos")
    demo_sub = p_demo.add_subparsers(dest="demo_command", required=True)
    p_eval = demo_sub.add_parser("eval", help="evaluate the synthetic model at a point")
    p_eval.add_argument("--x", required=True, help="comma-separated input point")
    p_eval.add_argument("--times", required=True, help="comma-separated ascending times")
    p_eval.set_defaults(fn=_cmd_demo_eval)

    p_ing = sub.add_parser("ingest", help="merge a JSONL evaluation log into a campaign")
    p_ing.add_argument("--state", required=True)
    p_ing.add_argument("--log", required=True)
    p_ing.set_defaults(fn=_cmd_ingest)

    p_srv = sub.add_parser("serve", help="start the HTTP steering API")
    p_srv.add_argument("--state", required=True)
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SensaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
