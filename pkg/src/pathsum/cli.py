"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 evaluation-guard trip, 4
non-deterministic instance, 5 confluence failure.  Exact values are the
primary output; decimals are 15-significant-digit renderings and never
feed any decision.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import fuzz
from .circuit import (CircuitParseError, HiddenShiftSpec, hidden_shift_circuit,
                      parse, serialize)
from .rewrite import (DETERMINISTIC_FIRST, VarCapError, normalize,
                      seeded_random, simply_equivalent, trace_lines)
from .sim import NonDeterministicOutcomeError, measure_sim, recover_shift, strong_sim
from .sums import (DEFAULT_MAX_EVAL_VARS, EvalGuardError, compose, evaluate,
                   interpret, ket, to_dict)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_NONDETERMINISTIC = 4
EXIT_CONFLUENCE = 5

ENV_MAX_EVAL_VARS = "PATHSUM_MAX_EVAL_VARS"


def _default_max_eval_vars() -> int:
    raw = os.environ.get(ENV_MAX_EVAL_VARS)
    if raw is None:
        return DEFAULT_MAX_EVAL_VARS
    try:
        return int(raw)
    except ValueError:
        _fail(f"{ENV_MAX_EVAL_VARS} must be an integer, got {raw!r}")


def _read_circuit(path: str):
    try:
        with open(path, "r", encoding="utf-8", errors="replace") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    try:
        return parse(text)
    except CircuitParseError as exc:
        _fail(f"{path}: {exc}")


def _fail(message: str, code: int = EXIT_INPUT):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(code)


def _bits(text: str, width: int, what: str) -> tuple[int, ...]:
    if len(text) != width or any(c not in "01" for c in text):
        _fail(f"{what} must be a bit string of width {width}, got {text!r}")
    return tuple(int(c) for c in text)


def _emit(args, human_lines: list[str], payload: dict):
    if args.json:
        print(json.dumps(payload))
    else:
        for line in human_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands

def cmd_amp(args) -> int:
    circ = _read_circuit(args.circuit)
    x = _bits(args.in_bits, circ.num_qubits, "--in")
    y = _bits(args.out_bits, circ.num_qubits, "--out")
    try:
        amp = strong_sim(circ, x, y, max_eval_vars=args.max_eval_vars)
    except EvalGuardError as exc:
        _fail(str(exc), EXIT_GUARD)
    _emit(args,
          [f"amplitude: {amp.render()}", f"decimal: {amp.decimal()}"],
          {"amplitude": {"num": amp.num, "half_exp": amp.half_exp},
           "render": amp.render(), "decimal": amp.decimal()})
    return EXIT_OK


def cmd_measure(args) -> int:
    circ = _read_circuit(args.circuit)
    x = _bits(args.in_bits, circ.num_qubits, "--in")
    if not 0 <= args.qubit < circ.num_qubits:
        _fail(f"--qubit {args.qubit} out of range for {circ.num_qubits} qubits")
    try:
        prob = measure_sim(circ, x, args.qubit, max_eval_vars=args.max_eval_vars)
    except EvalGuardError as exc:
        _fail(str(exc), EXIT_GUARD)
    amp = prob.exact
    _emit(args,
          [f"probability: {amp.render()}", f"decimal: {amp.decimal()}"],
          {"probability": {"num": amp.num, "half_exp": amp.half_exp},
           "render": amp.render(), "decimal": amp.decimal()})
    return EXIT_OK


def _parse_g_spec(text: str, half: int):
    monomials = set()
    if text.strip():
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                idx = tuple(sorted(int(t) for t in chunk.split(",")))
            except ValueError:
                _fail(f"bad monomial {chunk!r} in --g (expected e.g. 0,1,2)")
            monomials.add(idx)
    return frozenset(monomials)


def cmd_hidden_shift_gen(args) -> int:
    if args.n < 2 or args.n % 2:
        _fail(f"--n must be even and at least 2, got {args.n}")
    half = args.n // 2
    shift = _bits(args.shift, args.n, "--shift")
    monomials = _parse_g_spec(args.g, half)
    pi = None
    if args.pi is not None:
        try:
            pi = tuple(int(t) for t in args.pi.split(","))
        except ValueError:
            _fail(f"--pi must be a comma-separated permutation, got {args.pi!r}")
    try:
        spec = HiddenShiftSpec(n=args.n, g_monomials=monomials, shift=shift, pi=pi)
    except ValueError as exc:
        _fail(str(exc))
    circ = hidden_shift_circuit(spec)
    text = serialize(circ)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _fail(f"cannot write {args.output}: {exc}")
    ccz = sum(1 for g in circ.gates if g.kind == "z" and len(g.qubits) == 3)
    _emit(args,
          [f"wrote: {args.output}", f"gates: {len(circ.gates)}", f"ccz: {ccz}"],
          {"file": args.output, "gates": len(circ.gates), "ccz": ccz})
    return EXIT_OK


def cmd_hidden_shift_solve(args) -> int:
    circ = _read_circuit(args.circuit)
    try:
        result = recover_shift(circ, max_eval_vars=args.max_eval_vars)
    except EvalGuardError as exc:
        _fail(str(exc), EXIT_GUARD)
    except NonDeterministicOutcomeError as exc:
        _fail(str(exc), EXIT_NONDETERMINISTIC)
    _emit(args,
          [f"shift: {result.shift_string()}",
           f"rewrite steps: {result.rewrite_steps_total}"],
          {"shift": result.shift_string(),
           "rewrite_steps": result.rewrite_steps_total})
    return EXIT_OK


def cmd_normalize(args) -> int:
    circ = _read_circuit(args.circuit)
    s = interpret(circ)
    if args.in_bits is not None:
        x = _bits(args.in_bits, circ.num_qubits, "--in")
        s = compose(s, ket(x))
    strategy = (DETERMINISTIC_FIRST if args.strategy == "first"
                else seeded_random(args.seed))
    nf, trace = normalize(s, strategy)
    payload = {"path_sum": to_dict(nf)}
    if args.trace:
        payload["trace"] = trace_lines(trace)
    if args.json:
        print(json.dumps(payload))
    else:
        if args.trace:
            for line in trace_lines(trace):
                print(line)
        print(json.dumps(to_dict(nf)))
    return EXIT_OK


def cmd_check_confluence(args) -> int:
    rng = random.Random(args.seed)
    exact_cap = min(args.max_vars, 8)
    if args.max_vars > 8:
        print(f"warning: --max-vars {args.max_vars} > 8: falling back to "
              f"evaluation equality for large normal forms", file=sys.stderr)
    passes = failures = eval_fallbacks = 0
    for trial in range(args.trials):
        a = fuzz.random_path_sum_from_circuit(rng)
        det, _ = normalize(a, DETERMINISTIC_FIRST)
        rnd, _ = normalize(a, seeded_random(rng.getrandbits(32)))
        try:
            if det.num_vars <= exact_cap and rnd.num_vars <= exact_cap:
                ok = simply_equivalent(det, rnd, var_cap=exact_cap)
            else:
                raise VarCapError("fall back to evaluation")
        except VarCapError:
            eval_fallbacks += 1
            ok = (evaluate(det, args.max_eval_vars).entries
                  == evaluate(rnd, args.max_eval_vars).entries)
        if ok:
            passes += 1
        else:
            failures += 1
            print(f"trial {trial}: normal forms disagree", file=sys.stderr)
    _emit(args,
          [f"trials: {args.trials}", f"passes: {passes}",
           f"failures: {failures}", f"eval fallbacks: {eval_fallbacks}"],
          {"trials": args.trials, "passes": passes, "failures": failures,
           "eval_fallbacks": eval_fallbacks})
    return EXIT_CONFLUENCE if failures else EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pathsum",
        description="Exact sum-over-paths simulation of Toffoli-Hadamard circuits")
    sub = top.add_subparsers(dest="command", required=True)
    defmax = _default_max_eval_vars()

    def common(p, circuit=True):
        if circuit:
            p.add_argument("--circuit", required=True, help="circuit text file")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--max-eval-vars", type=int, default=defmax,
                       dest="max_eval_vars",
                       help=f"dense-evaluation guard (default {defmax})")

    p = sub.add_parser("amp", help="exact amplitude <out|C|in>")
    common(p)
    p.add_argument("--in", required=True, dest="in_bits", metavar="BITS")
    p.add_argument("--out", required=True, dest="out_bits", metavar="BITS")
    p.set_defaults(func=cmd_amp)

    p = sub.add_parser("measure", help="exact Pr[qubit i = 1]")
    common(p)
    p.add_argument("--in", required=True, dest="in_bits", metavar="BITS")
    p.add_argument("--qubit", required=True, type=int)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("hidden-shift-gen", help="write a hidden-shift instance")
    p.add_argument("--n", required=True, type=int, help="even qubit count")
    p.add_argument("--shift", required=True, metavar="BITS")
    p.add_argument("--g", default="", metavar="SPEC",
                   help="semicolon-separated monomials of second-half indices, "
                        "e.g. '0,1,2;3'")
    p.add_argument("--pi", default=None, metavar="PERM",
                   help="comma-separated permutation of 0..n/2-1")
    p.add_argument("-o", "--output", required=True, help="output circuit file")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_hidden_shift_gen)

    p = sub.add_parser("hidden-shift-solve", help="recover the shift classically")
    common(p)
    p.set_defaults(func=cmd_hidden_shift_solve)

    p = sub.add_parser("normalize", help="normal form of the circuit's path sum")
    common(p)
    p.add_argument("--in", default=None, dest="in_bits", metavar="BITS",
                   help="compose with this input ket first")
    p.add_argument("--strategy", choices=("first", "random"), default="first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="print the step trace")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check-confluence",
                       help="fuzz normal-form uniqueness up to simple equivalence")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-vars", type=int, default=8, dest="max_vars")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--max-eval-vars", type=int, default=defmax,
                   dest="max_eval_vars")
    p.set_defaults(func=cmd_check_confluence)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
