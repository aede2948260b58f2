"""Command-line interface: build circuits, run experiments, compare variants.

Exit codes: 0 success, 2 bad configuration, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .builder import BASES, MessageSpec, build_telecloning_circuit, tetrahedral_states
from .circuit import compute_depth, count_gates
from .qasm import emit_qasm
from .runner import compare_variants, run_exact_experiment, run_tomography_experiment
from .sim import NoiseModel

BELL_LABELS = ("phi_plus", "psi_plus", "phi_minus", "psi_minus")

CONFIG_ERROR = 2
IO_ERROR = 3


class ConfigError(ValueError):
    pass


def _default_seed() -> int:
    env = os.environ.get("TELECLONE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"TELECLONE_SEED={env!r} is not an integer") from None


def _message_from_args(args) -> MessageSpec:
    if args.psi is not None or args.phi is not None:
        if args.psi is None or args.phi is None:
            raise ConfigError("--psi and --phi must be given together")
        return MessageSpec(args.psi, args.phi)
    states = tetrahedral_states()
    if not 0 <= args.tetrahedral <= 3:
        raise ConfigError(f"tetrahedral index {args.tetrahedral} not in 0..3")
    return states[args.tetrahedral]


def _noise_from_args(args) -> NoiseModel | None:
    if not args.noise:
        return None
    return NoiseModel(p1=args.p1, p2=args.p2, p_spam=args.p_spam, enabled=True)


def _report_payload(report, message: MessageSpec) -> dict:
    return {
        "config": {
            "clones": report.M,
            "message": {"psi": report.message_psi, "phi": report.message_phi},
            "shots_per_basis": report.shots_per_basis,
            "seed": report.seed,
            "noise": report.noise,
            "optimized": report.optimized,
            "exact": report.exact,
        },
        "gate_counts": {**report.gate_counts, "depth": report.depth},
        "bell_proportions": dict(zip(BELL_LABELS, report.bell_proportions)),
        "clones": [
            {"index": k, "bloch": report.blochs[k], "density": report.densities[k],
             "fidelity": report.fidelities[k]}
            for k in range(report.M)
        ],
        "means": {"mean_fidelity": report.mean_fidelity,
                  "theoretical": report.theoretical},
    }


def _write_csv(path: Path, report) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["clone_index", "bloch_x", "bloch_y", "bloch_z",
                         "fidelity"] + [f"p_{label}" for label in BELL_LABELS])
        for k in range(report.M):
            writer.writerow([k, *(repr(v) for v in report.blochs[k]),
                             repr(report.fidelities[k]),
                             *(repr(p) for p in report.bell_proportions)])


def cmd_build(args) -> int:
    message = _message_from_args(args)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = None
    for basis in BASES:
        circuit, _ = build_telecloning_circuit(args.clones, message,
                                               args.optimized, basis)
        path = outdir / f"teleclone_m{args.clones}_{basis.lower()}.qasm"
        path.write_text(emit_qasm(circuit))
        print(f"wrote {path}")
        if basis == "Z":
            counts = {k: v for k, v in count_gates(circuit).items() if v}
            summary = {
                "clones": args.clones,
                "optimized": args.optimized,
                "message": {"psi": message.psi, "phi": message.phi},
                "gate_counts": counts,
                "depth": compute_depth(circuit),
            }
    spath = outdir / f"teleclone_m{args.clones}_summary.json"
    spath.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(f"wrote {spath}")
    print(f"CNOT={summary['gate_counts']['CNOT']} "
          f"RY={summary['gate_counts']['RY']} depth={summary['depth']}")
    return 0


def cmd_run(args) -> int:
    message = _message_from_args(args)
    noise = _noise_from_args(args)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.exact:
        report = run_exact_experiment(args.clones, message, args.optimized)
    else:
        if args.shots < 1:
            raise ConfigError("need at least one shot per basis")
        report = run_tomography_experiment(
            args.clones, message, args.shots, seed, noise,
            args.optimized, workers=args.threads)
        report.seed = seed
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    formats = {f.strip() for f in args.formats.split(",") if f.strip()}
    unknown = formats - {"json", "csv", "qasm"}
    if unknown:
        raise ConfigError(f"unknown output format(s): {sorted(unknown)}")
    payload = _report_payload(report, message)
    if "json" in formats:
        path = outdir / "report.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")
    if "csv" in formats:
        path = outdir / "clones.csv"
        _write_csv(path, report)
        print(f"wrote {path}")
    if "qasm" in formats:
        for basis in BASES:
            circuit, _ = build_telecloning_circuit(args.clones, message,
                                                   args.optimized, basis)
            path = outdir / f"teleclone_m{args.clones}_{basis.lower()}.qasm"
            path.write_text(emit_qasm(circuit))
            print(f"wrote {path}")
    print(f"mean fidelity {report.mean_fidelity:.6f} "
          f"(theory {report.theoretical:.6f}); bell proportions "
          + ", ".join(f"{p:.4f}" for p in report.bell_proportions))
    return 0


def cmd_compare(args) -> int:
    rows = compare_variants(range(2, args.max_clones + 1))
    header = (f"{'M':>2} {'CNOT opt':>9} {'CNOT unopt':>11} {'depth opt':>10} "
              f"{'depth unopt':>12} {'fidelity opt':>13} {'fidelity unopt':>15} "
              f"{'theory':>8}")
    print(header)
    for row in rows:
        print(f"{row['M']:>2} {row['optimized']['cnot']:>9} "
              f"{row['unoptimized']['cnot']:>11} {row['optimized']['depth']:>10} "
              f"{row['unoptimized']['depth']:>12} "
              f"{row['optimized']['fidelity']:>13.9f} "
              f"{row['unoptimized']['fidelity']:>15.9f} "
              f"{row['theoretical']:>8.6f}")
    if args.outdir:
        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / "compare.json"
        path.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")
    return 0


def _add_message_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tetrahedral", type=int, default=0, metavar="I",
                   help="tetrahedral message state index 0-3 (default 0)")
    p.add_argument("--psi", type=float, default=None,
                   help="explicit message polar angle (radians)")
    p.add_argument("--phi", type=float, default=None,
                   help="explicit message azimuthal angle (radians)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleclone",
        description="Optimized 1->M quantum telecloning: build, simulate, verify.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit QASM circuits and a gate-count summary")
    p.add_argument("--clones", "-M", type=int, default=9)
    p.add_argument("--no-optimize", dest="optimized", action="store_false")
    p.add_argument("--outdir", default=".")
    _add_message_args(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", help="sample, tomograph and report clone fidelities")
    p.add_argument("--clones", "-M", type=int, default=9)
    p.add_argument("--shots", type=int, default=500,
                   help="shots per tomography basis (default 500)")
    p.add_argument("--seed", type=int, default=None,
                   help="base seed (default: TELECLONE_SEED or 0)")
    p.add_argument("--noise", action="store_true", help="enable the noise model")
    p.add_argument("--p1", type=float, default=4e-5)
    p.add_argument("--p2", type=float, default=3e-3)
    p.add_argument("--p-spam", dest="p_spam", type=float, default=3e-3)
    p.add_argument("--no-optimize", dest="optimized", action="store_false")
    p.add_argument("--exact", action="store_true",
                   help="analytic Bell-outcome average instead of sampling")
    p.add_argument("--threads", type=int, default=1,
                   help="worker processes for shot sampling")
    p.add_argument("--outdir", default=".")
    p.add_argument("--formats", default="json,csv",
                   help="comma-separated: json,csv,qasm")
    _add_message_args(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="optimized vs unoptimized over a range of M")
    p.add_argument("--max-clones", type=int, default=9)
    p.add_argument("--outdir", default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
