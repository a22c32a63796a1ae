"""Simulation drivers: exact amplitudes, one-qubit measurement, shift recovery.

Amplitude queries build the 0 -> 0 path sum <out| [circuit] |in>, reduce
it to a normal form and evaluate densely; a guard refuses evaluation
when the normal form keeps too many variables, since that step is the
only exponential one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolpoly import BoolPoly
from .circuit import Circuit
from .exact import Amplitude, Scalar
from .rewrite import DETERMINISTIC_FIRST, normalize
from .sums import (DEFAULT_MAX_EVAL_VARS, PathSum, adjoint, bra, compose,
                   evaluate, identity, interpret, ket, tensor, as_bits)


class NonDeterministicOutcomeError(RuntimeError):
    """A per-qubit probability was not exactly 0 or 1 during shift recovery."""

    def __init__(self, qubit: int, probability: "Probability"):
        super().__init__(
            f"qubit {qubit} measures 1 with probability "
            f"{probability.exact.render()}, not 0 or 1: the circuit is not "
            f"deterministic on |0...0>"
        )
        self.qubit = qubit
        self.probability = probability


class SimulationConsistencyError(RuntimeError):
    """An exact probability fell outside [0, 1]; this indicates a bug."""


@dataclass(frozen=True)
class Probability:
    exact: Amplitude

    @property
    def decimal(self) -> float:
        return float(self.exact)

    def is_zero(self) -> bool:
        return self.exact.is_zero()

    def is_one(self) -> bool:
        return self.exact.is_one()

    def __str__(self):
        return self.exact.render()


@dataclass(frozen=True)
class ShiftResult:
    shift: tuple[int, ...]
    per_qubit_probability: tuple[Probability, ...]
    rewrite_steps_total: int

    def shift_string(self) -> str:
        return "".join(map(str, self.shift))


_KETBRA_ONE = PathSum(Scalar.ONE, 0, BoolPoly.zero(),
                      (BoolPoly.one(),), (BoolPoly.one(),))


def projector_one(n: int, qubit: int) -> PathSum:
    """|1><1| on one wire, identity on the others."""
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for {n} wires")
    return tensor(tensor(identity(qubit), _KETBRA_ONE),
                  identity(n - qubit - 1))


def _probability_from(amp: Amplitude) -> Probability:
    if amp.num < 0 or Amplitude(1) < amp:
        raise SimulationConsistencyError(
            f"probability {amp.render()} outside [0, 1]")
    return Probability(amp)


def strong_sim(circuit: Circuit, in_bits, out_bits,
               max_eval_vars: int = DEFAULT_MAX_EVAL_VARS) -> Amplitude:
    """Exact amplitude <out_bits| U |in_bits> of the circuit."""
    x = as_bits(in_bits)
    y = as_bits(out_bits)
    n = circuit.num_qubits
    if len(x) != n or len(y) != n:
        raise ValueError(f"bit strings must have width {n}")
    f = compose(bra(y), compose(interpret(circuit), ket(x)))
    nf, _ = normalize(f, DETERMINISTIC_FIRST)
    return evaluate(nf, max_eval_vars)[0, 0]


def measure_sim(circuit: Circuit, in_bits, qubit: int,
                max_eval_vars: int = DEFAULT_MAX_EVAL_VARS) -> Probability:
    """Exact probability that the given qubit measures 1 on this input."""
    x = as_bits(in_bits)
    n = circuit.num_qubits
    if len(x) != n:
        raise ValueError(f"input must have width {n}")
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    g = compose(interpret(circuit), ket(x))
    f = compose(adjoint(g), compose(projector_one(n, qubit), g))
    nf, _ = normalize(f, DETERMINISTIC_FIRST)
    amp = evaluate(nf, max_eval_vars)[0, 0]
    return _probability_from(amp)


def recover_shift(circuit: Circuit,
                  max_eval_vars: int = DEFAULT_MAX_EVAL_VARS) -> ShiftResult:
    """Read off the hidden shift: bit i is 1 iff qubit i measures 1 surely.

    The state sum [circuit]|0...0> is normalized once and shared by the n
    projector sandwiches; rewrites commute with composition, so each
    per-qubit value equals what measure_sim computes on its own, at a
    fraction of the steps.
    """
    n = circuit.num_qubits
    g = compose(interpret(circuit), ket((0,) * n))
    gn, gtrace = normalize(g, DETERMINISTIC_FIRST)
    steps = len(gtrace)
    shift = []
    probs = []
    for i in range(n):
        f = compose(adjoint(gn), compose(projector_one(n, i), gn))
        nf, tr = normalize(f, DETERMINISTIC_FIRST)
        steps += len(tr)
        prob = _probability_from(evaluate(nf, max_eval_vars)[0, 0])
        probs.append(prob)
        if prob.is_one():
            shift.append(1)
        elif prob.is_zero():
            shift.append(0)
        else:
            raise NonDeterministicOutcomeError(i, prob)
    return ShiftResult(tuple(shift), tuple(probs), steps)
