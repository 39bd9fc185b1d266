"""Command-line entry point: one subcommand per training flow.

Each run writes curve.csv and report.json (plus predictions.csv for qcl)
into the output directory and prints a one-line summary.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from ..optim import OptimizerConfig
from .classifier import run_classifier, synthetic_dataset
from .io import CsvSpec, load_csv, load_graph, load_hamiltonian
from .maxcut import benchmark_graph, run_qaoa
from .qcl import TARGETS, run_qcl
from .report import emit_report
from .vqe import run_vqe


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--optimizer", default="momentum",
                     choices=["gd", "momentum", "adagrad", "rmsprop", "adam"])
    sub.add_argument("--lr", type=float, default=0.02)
    sub.add_argument("--momentum", type=float, default=0.9)
    sub.add_argument("--iters", type=int, default=200)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", default=None, help="output directory (default runs/<task>)")


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(kind=args.optimizer, learning_rate=args.lr, momentum=args.momentum)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vqnet", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    qaoa = commands.add_parser("qaoa", help="MAX-CUT with the alternating ansatz")
    qaoa.add_argument("--graph", default=None, help="edge list file: lines 'u v w' (default: built-in seeded instance)")
    qaoa.add_argument("--p", type=int, default=4, help="alternation steps")
    _add_common(qaoa)

    vqe = commands.add_parser("vqe", help="ground-state energy minimization")
    vqe.add_argument("--ham", required=True, help="Hamiltonian file: 'coefficient : term' lines")
    vqe.add_argument("--depth", type=int, default=2)
    _add_common(vqe)

    cls = commands.add_parser("classifier", help="two-class quantum classifier")
    cls.add_argument("--csv", default=None, help="dataset CSV with a header row")
    cls.add_argument("--label", default="label", help="label column name")
    cls.add_argument("--features", default="all", choices=["all", "last10"])
    cls.add_argument("--synthetic", type=int, default=None, metavar="N",
                     help="train on N generated separable samples instead of a CSV")
    cls.add_argument("--depth", type=int, default=2)
    _add_common(cls)

    qcl = commands.add_parser("qcl", help="one-dimensional function learning")
    qcl.add_argument("--target", required=True, choices=sorted(TARGETS))
    qcl.add_argument("--points", type=int, default=50)
    qcl.add_argument("--depth", type=int, default=3)
    qcl.add_argument("--qubits", type=int, default=3)
    _add_common(qcl)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)

    if args.command == "qaoa":
        graph = load_graph(args.graph) if args.graph else benchmark_graph()
        report = run_qaoa(graph, args.p, cfg, args.iters, args.seed)
        if args.graph is None:
            report.notes.append(
                "graph: built-in seeded benchmark instance (5-cycle, weights uniform [0.1, 1], seed 7)"
            )
        summary = f"ratio={report.metrics['ratio']:.4f} energy={report.metrics['final_energy']:.6f}"
    elif args.command == "vqe":
        report = run_vqe(load_hamiltonian(args.ham), args.depth, cfg, args.iters, args.seed)
        summary = (
            f"energy={report.metrics['final_energy']:.6f} "
            f"exact={report.metrics['exact_ground_energy']:.6f} "
            f"gap={report.metrics['energy_gap']:.2e}"
        )
    elif args.command == "classifier":
        if (args.csv is None) == (args.synthetic is None):
            print("classifier needs exactly one of --csv or --synthetic", file=sys.stderr)
            return 2
        if args.csv:
            data = load_csv(args.csv, CsvSpec(label_column=args.label, feature_columns=args.features))
        else:
            data = synthetic_dataset(args.synthetic, np.random.default_rng(args.seed))
        report = run_classifier(data, args.depth, cfg, args.iters, args.seed)
        summary = f"test_accuracy={report.metrics['test_accuracy']:.4f} loss={report.metrics['final_loss']:.6f}"
    else:
        report = run_qcl(args.target, args.points, args.depth, args.qubits, cfg, args.iters, args.seed)
        summary = f"mse={report.metrics['mse']:.6f}"

    out_dir = args.out or f"runs/{report.task}"
    written = emit_report(report, out_dir)
    print(f"{report.task}: {summary} ({report.wall_time_s:.1f}s) -> {written['report'].parent}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
