"""Command-line front end: encode, apply, retrieve, cost, emit-circuit.

Exit codes: 0 success, 2 usage, 3 verification failure, 4 resource cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cost as costmod
from . import ops
from .audio import (AudioSignal, amplitude_range, oracle_add, oracle_delay, oracle_invert,
                    oracle_reverse, oracle_reverse_restricted, pad_to_power_of_two)
from .errors import NotFrqaShapedError, QAudioError, ResourceError, UsageError
from .frqa import FrqaState, prepare, retrieve, sample_retrieve
from .gates import COST_MODELS
from .io import format_csv, load_signal

log = logging.getLogger("qaudio")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_RESOURCE = 0, 2, 3, 4


class VerificationError(QAudioError):
    pass


@dataclass
class Step:
    name: str
    dt: int = 0
    fixed_bits: dict[int, int] = field(default_factory=dict)
    other: str | None = None

    def __str__(self):
        if self.name == "delay":
            return f"delay:{self.dt}"
        if self.name == "reverse" and self.fixed_bits:
            return "reverse:" + ",".join(f"t{p}={v}" for p, v in sorted(self.fixed_bits.items()))
        if self.name == "add":
            return f"add:{self.other}"
        return self.name


def parse_fixed_bits(text: str) -> dict[int, int]:
    """``t0=1,t2=0`` -> {0: 1, 2: 0}."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, _, val = item.partition("=")
        key = key.strip().lstrip("tT")
        if not key.isdigit() or val.strip() not in ("0", "1"):
            raise UsageError(f"bad fixed-bit spec {item!r}; expected t<pos>=<0|1>")
        out[int(key)] = int(val)
    return out


def parse_step(text: str) -> Step:
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name in ("invert", "inversion"):
        return Step("invert")
    if name in ("reverse", "reversal"):
        return Step("reverse", fixed_bits=parse_fixed_bits(arg))
    if name == "delay":
        if not arg.strip().isdigit():
            raise UsageError(f"delay needs a non-negative integer, got {arg!r}")
        return Step("delay", dt=int(arg))
    if name == "add":
        if not arg:
            raise UsageError("add needs a sample file: add:<path>")
        return Step("add", other=arg)
    raise UsageError(f"unknown operation {text!r}")


@dataclass
class RunManifest:
    inputs: list[str]
    pipeline: list[Step]
    out_dir: Path
    seed: int = 0
    cost_model: str = "standard"


def _dump_json(path: Path, data) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _load_input(path: str, q: int | None) -> tuple[FrqaState, AudioSignal]:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    if p.suffix.lower() == ".json":
        state = FrqaState.from_dict(json.loads(p.read_text()))
        return state, retrieve(state)
    signal = load_signal(p, q)
    return prepare(signal), pad_to_power_of_two(signal)


def _read_out(state: FrqaState, shots: int | None, seed: int) -> AudioSignal:
    if not shots:
        return retrieve(state)
    try:
        return sample_retrieve(state, shots, seed)
    except NotFrqaShapedError as exc:
        raise VerificationError(str(exc)) from exc


def _warn_inversion_fixed_point(signal: AudioSignal) -> None:
    lo = amplitude_range(signal.q)[0]
    hits = [t for t, s in enumerate(signal.samples) if s == lo]
    if hits:
        log.warning("samples at %s equal %d, which inverts to itself (modular fixed point)",
                    hits, lo)


def run_pipeline(manifest: RunManifest, q: int | None = None, verify: bool = False,
                 shots: int | None = None) -> tuple[FrqaState, AudioSignal, list[dict]]:
    state, expected = _load_input(manifest.inputs[0], q)
    reports = []
    for i, step in enumerate(manifest.pipeline):
        try:
            if step.name == "invert":
                _warn_inversion_fixed_point(retrieve(state))
                state = ops.invert_signal(state)
                expected = oracle_invert(expected)
                rep = costmod.inversion_report(state.q, manifest.cost_model, uncompute=True)
            elif step.name == "delay":
                state = ops.delay_signal(state, step.dt)
                expected = oracle_delay(expected, step.dt)
                rep = costmod.delay_report(state.l, state.q, step.dt, manifest.cost_model)
            elif step.name == "reverse" and step.fixed_bits:
                state = ops.reverse_signal(state, step.fixed_bits)
                expected = oracle_reverse_restricted(expected, step.fixed_bits)
                rep = costmod.restricted_reversal_report(state.l, step.fixed_bits,
                                                         manifest.cost_model)
            elif step.name == "reverse":
                state = ops.reverse_signal(state)
                expected = oracle_reverse(expected)
                rep = costmod.reversal_report(state.l, manifest.cost_model)
            else:
                other_state, other_sig = _load_input(step.other, state.q)
                total = ops.add_signals(state, other_state)
                expected = oracle_add(expected, other_sig)
                rep = costmod.addition_report(state.q, state.l, manifest.cost_model)
                state = prepare(total)
        except ResourceError:
            raise
        except QAudioError as exc:
            raise UsageError(f"step {i} ({step}): {exc}") from exc
        entry = rep.to_dict()
        entry["step"] = i
        entry["pipeline_op"] = str(step)
        reports.append(entry)
        if verify:
            got = retrieve(state)
            if got != expected:
                raise VerificationError(f"step {i} ({step}): circuit gave {list(got.samples)}, "
                                        f"oracle gave {list(expected.samples)}")
    result = _read_out(state, shots, manifest.seed)
    if verify and result != expected:
        raise VerificationError(f"retrieved {list(result.samples)}, oracle gave "
                                f"{list(expected.samples)}")
    return state, result, reports


def cmd_encode(args) -> int:
    signal = load_signal(args.input, args.q)
    state = prepare(signal)
    report = costmod.preparation_report(signal, args.cost_model)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(out / "state.json", state.to_dict())
    _dump_json(out / "cost_report.json", report.to_dict())
    print(f"{state.q + state.l} qubits (q={state.q}, l={state.l})")
    print(report.summary())
    return EXIT_OK


def cmd_apply(args) -> int:
    if not args.op:
        raise UsageError("apply needs at least one --op")
    manifest = RunManifest([args.input], [parse_step(s) for s in args.op], Path(args.out_dir),
                           args.seed, args.cost_model)
    state, result, reports = run_pipeline(manifest, args.q, args.verify, args.shots)
    out = manifest.out_dir
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(out / "state.json", state.to_dict())
    (out / "output.csv").write_text(format_csv(result))
    _dump_json(out / "costs.json", reports)
    for rep in reports:
        print(f"[{rep['step']}] {rep['pipeline_op']}: expected {rep['expected']}, "
              f"measured {rep['measured']}, delta {rep['delta']:+d}")
    print(f"wrote {out / 'output.csv'} (q={result.q}, {result.L} samples)")
    return EXIT_OK


def cmd_retrieve(args) -> int:
    state = FrqaState.from_dict(json.loads(Path(args.state).read_text()))
    text = format_csv(_read_out(state, args.shots, args.seed))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _op_params(args):
    fixed = parse_fixed_bits(args.fixed) if args.fixed else None
    signal = load_signal(args.input, args.q) if getattr(args, "input", None) else None
    q, l = args.q, args.l
    if signal is not None:
        q, l = signal.q, signal.l
    return q, l, fixed, signal


def cmd_cost(args) -> int:
    q, l, fixed, signal = _op_params(args)
    report = costmod.report_for(args.operation, q, l, args.dt, fixed, signal, args.cost_model)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.summary())
        for comp in report.components:
            print("  " + comp.summary())
    return EXIT_OK


def cmd_emit(args) -> int:
    q, l, fixed, signal = _op_params(args)
    circuit = costmod.circuit_for(args.operation, q, l, args.dt, fixed, signal)
    text = (circuit.to_qasm() if args.format == "qasm"
            else json.dumps(circuit.to_dict(), indent=2, sort_keys=True) + "\n")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qaudio", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_dir=True):
        p.add_argument("--q", type=int, help="amplitude resolution (default: from file)")
        p.add_argument("--cost-model", choices=COST_MODELS, default="standard")
        if out_dir:
            p.add_argument("--out-dir", default="out")

    p = sub.add_parser("encode", help="prepare an FRQA state from a sample file")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("apply", help="run an operation pipeline on a signal or state")
    p.add_argument("input", help="CSV/WAV samples or a state JSON")
    p.add_argument("--op", action="append", default=[],
                   help="invert | reverse[:t0=1,...] | delay:<dt> | add:<file>; repeatable")
    p.add_argument("--verify", action="store_true", help="cross-check against classical oracles")
    p.add_argument("--shots", type=int, help="measurement-based retrieval with N shots")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("retrieve", help="read samples back out of a state JSON")
    p.add_argument("state")
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_retrieve)

    for name, func, helptext in (("cost", cmd_cost, "gate-cost report against the formulas"),
                                 ("emit-circuit", cmd_emit, "export a circuit")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("operation", choices=costmod.OPERATIONS)
        p.add_argument("--l", type=int, default=1)
        p.add_argument("--dt", type=int, default=1)
        p.add_argument("--fixed", help="restricted reversal bits, e.g. t0=1,t1=0")
        p.add_argument("--input", help="sample file (required for preparation)")
        common(p, out_dir=False)
        if name == "cost":
            p.add_argument("--json", action="store_true")
        else:
            p.add_argument("--format", choices=("json", "qasm"), default="json")
            p.add_argument("--out")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command in ("cost", "emit-circuit") and args.q is None:
        args.q = 1
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (QAudioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
