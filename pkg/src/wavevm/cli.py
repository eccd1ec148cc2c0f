"""Command-line entry point: ``wavevm <subcommand> [options]``.

Output files go to ``--out`` (default: ``$WAVEVM_OUT_DIR`` or ``./wavevm_out``).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import experiments
from .data import load_csv_dataset
from .qnn import QnnConfig
from .statevector import dump_csv

OUT_ENV = "WAVEVM_OUT_DIR"

GATE_BENCH_HEADER = ["num_qubits", "seconds"]
QDP_BENCH_HEADER = ["num_qubits", "seconds", "initial_cost", "final_cost"]
TUTORIAL_HEADER = ["iter", "cost"]
LOSS_TRACE_HEADER = ["iter", "mse"]
FIT_HEADER = ["x", "y_true", "y_pred_quantum", "y_pred_ols"]
QNN_TRACE_HEADER = ["iter", "train_loss", "train_acc", "test_loss", "test_acc"]


def write_csv(path: Path, header, rows) -> Path:
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def write_json(path: Path, payload) -> Path:
    try:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def _out_dir(args) -> Path:
    out = Path(args.out or os.environ.get(OUT_ENV) or "wavevm_out")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    return out


def cmd_gate_bench(args) -> int:
    out = _out_dir(args)
    rows, states = experiments.gate_bench(
        args.qubit_min, args.qubit_max, args.depth, args.repeats, args.shots, args.seed
    )
    path = write_csv(out / "gate_bench.csv", GATE_BENCH_HEADER, [(r.num_qubits, f"{r.seconds:.6e}") for r in rows])
    for r in rows:
        extra = "" if r.oracle_error is None else f"  oracle max |dp| = {r.oracle_error:.2e}"
        print(f"N={r.num_qubits:2d}  {r.seconds:.6f} s{extra}")
    if args.dump_state:
        dump_csv(states[args.qubit_max], args.dump_state)
    print(f"wrote {path}")
    return 0


def cmd_qdp_bench(args) -> int:
    out = _out_dir(args)
    rows = experiments.qdp_bench(
        args.qubit_min, args.qubit_max, args.iters, args.eta, args.shift, args.seed, args.repeats
    )
    path = write_csv(
        out / "qdp_bench.csv",
        QDP_BENCH_HEADER,
        [(r.num_qubits, f"{r.seconds:.6e}", repr(r.initial_cost), repr(r.final_cost)) for r in rows],
    )
    for r in rows:
        print(f"N={r.num_qubits:2d}  {r.seconds:.4f} s  cost {r.initial_cost:.6f} -> {r.final_cost:.6f}")
    print(f"wrote {path}")
    return 0


def cmd_qdp_tutorial(args) -> int:
    out = _out_dir(args)
    res = experiments.qdp_tutorial(args.iters, args.eta, args.shift, args.seed)
    write_csv(out / "tutorial_trace.csv", TUTORIAL_HEADER, [(i, repr(c)) for i, c in enumerate(res.cost_trace)])
    write_json(
        out / "tutorial.json",
        {"output": res.output, "params": res.params.tolist(), "initial_params": res.initial_params.tolist()},
    )
    print("Circuit output:", res.output)
    print("Final parameter:", res.params)
    if res.output <= 0.95:
        print(f"warning: P(1) = {res.output:.4f} did not exceed 0.95 in {args.iters} iterations", file=sys.stderr)
    return 0


def cmd_linreg(args) -> int:
    out = _out_dir(args)
    train = test = None
    if args.data:
        data = load_csv_dataset(args.data, [args.feature], args.target)
        train, test = experiments.head_tail_split(data, args.train_size, args.test_size)
    res = experiments.run_linreg(train, test, args.k, args.eta, args.iters, args.shift, args.seed)
    write_csv(out / "loss_trace.csv", LOSS_TRACE_HEADER, [(i, repr(v)) for i, v in enumerate(res.model.loss_trace)])
    write_csv(out / "fit.csv", FIT_HEADER, [tuple(repr(v) for v in row) for row in res.fit_rows()])
    w, b = res.ols
    print(f"quantum: w={res.model.slope:.6f} b={res.model.intercept:.6f} test mse={res.quantum_test_mse:.6e}")
    print(f"ols:     w={w:.6f} b={b:.6f} test mse={res.ols_test_mse:.6e}")
    return 0


def cmd_qnn(args) -> int:
    out = _out_dir(args)
    data = None
    if args.data:
        data = load_csv_dataset(args.data, args.features, args.label)
    config = QnnConfig(
        iters=args.iters,
        eta=args.eta,
        shift=args.shift,
        gamma=args.gamma,
        beta1=args.beta1,
        beta2=args.beta2,
        epsilon=args.eps,
        drop_rate=args.drop_rate,
        seed=args.seed,
    )
    run = experiments.run_qnn(data, args.layers, config, args.test_frac, args.split_seed)
    r = run.result
    rows = []
    for i in range(len(r.train_loss)):
        test_loss = repr(r.test_loss[i]) if r.test_loss else ""
        test_acc = repr(r.test_acc[i]) if r.test_acc else ""
        rows.append((i, repr(r.train_loss[i]), repr(r.train_acc[i]), test_loss, test_acc))
    write_csv(out / "qnn_trace.csv", QNN_TRACE_HEADER, rows)
    write_json(
        out / "confusion.json",
        {
            "layers": args.layers,
            "train": run.train_confusion.tolist(),
            "test": run.test_confusion.tolist(),
            "params": r.params.theta.tolist(),
        },
    )
    print(f"train loss {r.train_loss[0]:.4f} -> {r.train_loss[-1]:.4f}, train acc {r.train_acc[-1]:.3f}")
    if r.test_acc:
        print(f"test loss {r.test_loss[-1]:.4f}, test acc {r.test_acc[-1]:.3f}")
    print("train confusion (rows = true, cols = predicted):\n", run.train_confusion)
    return 0


def _add_common(p: argparse.ArgumentParser, seed_default: int = 0) -> None:
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./wavevm_out)")
    p.add_argument("--seed", type=int, default=seed_default)


def _add_opt(p: argparse.ArgumentParser, eta: float, iters: int) -> None:
    p.add_argument("--eta", type=float, default=eta, help="learning rate")
    p.add_argument("--iters", type=int, default=iters)
    p.add_argument("--shift", type=float, default=math.pi / 20, help="parameter-shift angle s in radians")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavevm", description="Wavefunction quantum VM: benchmarks and reference experiments."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gate-bench", help="time the H/SX/CNOT benchmark circuit over a qubit range")
    _add_common(p)
    p.add_argument("--qubit-min", type=int, default=2)
    p.add_argument("--qubit-max", type=int, default=10)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--shots", type=int, default=1024)
    p.add_argument("--dump-state", metavar="CSV", help="write the final state of the largest N as index,re,im")
    p.set_defaults(func=cmd_gate_bench)

    p = sub.add_parser("qdp-bench", help="time 1000 shift-rule gradient-descent steps per qubit count")
    _add_common(p)
    _add_opt(p, eta=0.01, iters=1000)
    p.add_argument("--qubit-min", type=int, default=1)
    p.add_argument("--qubit-max", type=int, default=6)
    p.add_argument("--repeats", type=int, default=1)
    p.set_defaults(func=cmd_qdp_bench)

    p = sub.add_parser("qdp-tutorial", help="maximise P(|1>) of one qubit by gradient descent")
    _add_common(p)
    _add_opt(p, eta=0.01, iters=1000)
    p.set_defaults(func=cmd_qdp_tutorial)

    p = sub.add_parser("linreg", help="quantum linear regression vs ordinary least squares")
    _add_common(p)
    _add_opt(p, eta=0.01, iters=1000)
    p.add_argument("--data", help="CSV file; default is the bundled synthetic set")
    p.add_argument("--feature", default="2", help="feature column name or index (default 2)")
    p.add_argument("--target", default="-1", help="target column name or index (default last)")
    p.add_argument("--train-size", type=int, default=400)
    p.add_argument("--test-size", type=int, default=10)
    p.add_argument("--k", type=float, default=10.0, help="output scaling factor")
    p.set_defaults(func=cmd_linreg)

    p = sub.add_parser("qnn", help="train the quantum neural-network classifier")
    _add_common(p)
    _add_opt(p, eta=0.1, iters=150)
    p.add_argument("--data", help="CSV file; default is the bundled synthetic set")
    p.add_argument("--features", nargs="+", default=["Age", "EstimatedSalary"])
    p.add_argument("--label", default="Purchased")
    p.add_argument("--layers", type=int, default=5)
    p.add_argument("--gamma", type=float, default=10.0)
    p.add_argument("--beta1", type=float, default=0.9)
    p.add_argument("--beta2", type=float, default=0.999)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--drop-rate", type=float, default=0.0)
    p.add_argument("--test-frac", type=float, default=0.2)
    p.add_argument("--split-seed", type=int, default=0)
    p.set_defaults(func=cmd_qnn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    np.set_printoptions(precision=6)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"wavevm {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
