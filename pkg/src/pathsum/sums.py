"""Path sums: symbolic linear operators over GF(2)-valued variables.

A path sum holds a scalar, a count of summation variables, a phase
polynomial and tuples of output/input polynomials; it denotes the
operator  scalar * sum over assignments of (-1)^phase |outputs><inputs|.
This module provides the categorical structure (compose, tensor,
adjoint, identities, kets/bras), the gate interpretations, circuit
interpretation, and dense exact evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .boolpoly import BoolPoly, mask_bits
from .circuit import CMZ, Circuit, Gate, H, SWAP, X
from .exact import Amplitude, Scalar

#: dense evaluation refuses sums with more variables than this by default;
#: the cost is exponential in the count, so larger runs are opt-in
DEFAULT_MAX_EVAL_VARS = 24

Bits = Union[str, Sequence[int]]


class EvalGuardError(RuntimeError):
    """The normal form kept too many variables for dense evaluation."""

    def __init__(self, num_vars: int, max_vars: int):
        super().__init__(
            f"evaluation guard: {num_vars} summation variables exceed the "
            f"limit of {max_vars}; dense evaluation would take 2^{num_vars} steps"
        )
        self.num_vars = num_vars
        self.max_vars = max_vars


def as_bits(bits: Bits) -> tuple[int, ...]:
    """Normalize a '0101' string or 0/1 sequence to a bit tuple."""
    if isinstance(bits, str):
        if any(c not in "01" for c in bits):
            raise ValueError(f"bit string must contain only 0/1: {bits!r}")
        return tuple(int(c) for c in bits)
    out = tuple(bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"bits must be 0 or 1: {out}")
    return out


@dataclass(frozen=True)
class PathSum:
    scalar: Scalar
    num_vars: int
    phase: BoolPoly
    outputs: tuple[BoolPoly, ...]
    inputs: tuple[BoolPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        used = self.phase.vars_mask
        for p in self.outputs:
            used |= p.vars_mask
        for p in self.inputs:
            used |= p.vars_mask
        if used >> self.num_vars:
            bad = [v for v in mask_bits(used) if v >= self.num_vars]
            raise ValueError(
                f"variable index {bad[0]} out of range for {self.num_vars} variables"
            )

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @property
    def signature(self) -> tuple[int, int]:
        """(inputs, outputs) wire counts."""
        return (len(self.inputs), len(self.outputs))

    def __repr__(self):
        s = "0" if self.scalar.zero else f"2^({self.scalar.half_exp}/2)"
        outs = ",".join(str(p) for p in self.outputs)
        ins = ",".join(str(p) for p in self.inputs)
        return (f"PathSum({s} sum[{self.num_vars}] "
                f"(-1)^({self.phase}) |{outs}><{ins}|)")


def make(scalar: Scalar, num_vars: int, phase: BoolPoly,
         outputs: Sequence[BoolPoly], inputs: Sequence[BoolPoly]) -> PathSum:
    """Validated construction (range checks live in PathSum itself)."""
    return PathSum(scalar, num_vars, phase, tuple(outputs), tuple(inputs))


def identity(n: int) -> PathSum:
    if n < 0:
        raise ValueError("negative wire count")
    wires = tuple(BoolPoly.var(i) for i in range(n))
    return PathSum(Scalar.ONE, n, BoolPoly.zero(), wires, wires)


def zero_op(n_in: int, n_out: int) -> PathSum:
    """The zero operator with the given signature (all-zero constants)."""
    if n_in < 0 or n_out < 0:
        raise ValueError("negative wire count")
    return PathSum(Scalar.ZERO, 0, BoolPoly.zero(),
                   (BoolPoly.zero(),) * n_out, (BoolPoly.zero(),) * n_in)


def ket(bits: Bits) -> PathSum:
    b = as_bits(bits)
    return PathSum(Scalar.ONE, 0, BoolPoly.zero(),
                   tuple(BoolPoly.constant(v) for v in b), ())


def bra(bits: Bits) -> PathSum:
    b = as_bits(bits)
    return PathSum(Scalar.ONE, 0, BoolPoly.zero(), (),
                   tuple(BoolPoly.constant(v) for v in b))


def compose(a: PathSum, b: PathSum) -> PathSum:
    """Sequential composition a . b (b acts first).

    b's variables are renumbered above a's and one fresh mediator
    variable per shared wire adds the phase term y_i*(O_b_i + I_a_i),
    which interferes destructively unless the wires agree; the scalar
    picks up 2^-m for the m mediators.
    """
    m = len(a.inputs)
    if len(b.outputs) != m:
        raise ValueError(
            f"signature mismatch: composing {len(b.outputs)} outputs "
            f"into {m} inputs"
        )
    ka, kb = a.num_vars, b.num_vars
    shift = ka
    med = ka + kb
    phase_masks = set(a.phase.monomials)
    phase_masks ^= {mm << shift for mm in b.phase.monomials}
    for i in range(m):
        ybit = 1 << (med + i)
        term = {mm << shift for mm in b.outputs[i].monomials}
        term ^= a.inputs[i].monomials
        phase_masks ^= {ybit | mm for mm in term}
    outputs = a.outputs
    inputs = tuple(p.shifted(shift) for p in b.inputs)
    scalar = (a.scalar * b.scalar).times_pow2(-m)
    return PathSum(scalar, med + m, BoolPoly(frozenset(phase_masks)),
                   outputs, inputs)


def tensor(a: PathSum, b: PathSum) -> PathSum:
    """Parallel composition; b's variables renumbered above a's."""
    shift = a.num_vars
    phase = a.phase + b.phase.shifted(shift)
    outputs = a.outputs + tuple(p.shifted(shift) for p in b.outputs)
    inputs = a.inputs + tuple(p.shifted(shift) for p in b.inputs)
    return PathSum(a.scalar * b.scalar, a.num_vars + b.num_vars,
                   phase, outputs, inputs)


def adjoint(a: PathSum) -> PathSum:
    return PathSum(a.scalar.conjugate(), a.num_vars, a.phase,
                   a.inputs, a.outputs)


def apply_simple_transform(a: PathSum, phi: Mapping[int, tuple[int, int]]) -> PathSum:
    """Apply a variable bijection with per-variable negations uniformly."""
    k = a.num_vars
    if sorted(phi) != list(range(k)):
        raise ValueError(f"map must cover exactly variables 0..{k - 1}")
    targets = sorted(w for w, _ in phi.values())
    if targets != list(range(k)):
        raise ValueError("map targets must be a permutation of the variables")
    return PathSum(
        a.scalar, k,
        a.phase.apply_simple_map(phi),
        tuple(p.apply_simple_map(phi) for p in a.outputs),
        tuple(p.apply_simple_map(phi) for p in a.inputs),
    )


# ---------------------------------------------------------------------------
# evaluation

class Matrix:
    """Dense exact operator matrix; wire 0 is the most significant bit."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: list[list[Amplitude]]):
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Amplitude(0)
        return cls(rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        m = cls.zeros(size, size)
        one = Amplitude(1)
        for i in range(size):
            m.entries[i][i] = one
        return m

    def __getitem__(self, key: tuple[int, int]) -> Amplitude:
        r, c = key
        return self.entries[r][c]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = Matrix.zeros(self.rows, other.cols)
        for i in range(self.rows):
            row = self.entries[i]
            for j in range(other.cols):
                acc = Amplitude(0)
                for t in range(self.cols):
                    acc = acc + row[t] * other.entries[t][j]
                out.entries[i][j] = acc
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        out = Matrix.zeros(self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i][j]
                for p in range(other.rows):
                    for q in range(other.cols):
                        out.entries[i * other.rows + p][j * other.cols + q] = \
                            a * other.entries[p][q]
        return out

    def dagger(self) -> "Matrix":
        out = Matrix.zeros(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[j][i] = self.entries[i][j]  # real entries
        return out

    def column(self, j: int) -> list[Amplitude]:
        return [self.entries[i][j] for i in range(self.rows)]

    def __repr__(self):
        body = "; ".join(
            " ".join(a.render() for a in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def evaluate(a: PathSum, max_vars: int = DEFAULT_MAX_EVAL_VARS) -> Matrix:
    """Dense exact evaluation over all 2^num_vars assignments."""
    k = a.num_vars
    if k > max_vars:
        raise EvalGuardError(k, max_vars)
    m, n = len(a.outputs), len(a.inputs)
    rows, cols = 1 << m, 1 << n
    if a.scalar.zero:
        return Matrix.zeros(rows, cols)
    counts = [[0] * cols for _ in range(rows)]
    phase_masks = tuple(a.phase.monomials)
    out_polys = [tuple(p.monomials) for p in a.outputs]
    in_polys = [tuple(p.monomials) for p in a.inputs]
    for point in range(1 << k):
        parity = 0
        for mm in phase_masks:
            if mm & point == mm:
                parity ^= 1
        r = 0
        for masks in out_polys:
            bit = 0
            for mm in masks:
                if mm & point == mm:
                    bit ^= 1
            r = (r << 1) | bit
        c = 0
        for masks in in_polys:
            bit = 0
            for mm in masks:
                if mm & point == mm:
                    bit ^= 1
            c = (c << 1) | bit
        counts[r][c] += -1 if parity else 1
    entries = [[Amplitude.from_count(counts[r][c], a.scalar)
                for c in range(cols)] for r in range(rows)]
    return Matrix(rows, cols, entries)


# ---------------------------------------------------------------------------
# gates and circuits

def gate_sem(gate: Gate) -> PathSum:
    """The defining path sum of one gate, on its own wires."""
    if gate.kind == H:
        x, y = BoolPoly.var(0), BoolPoly.var(1)
        return PathSum(Scalar.pow2(-1), 2, x * y, (y,), (x,))
    if gate.kind == X:
        x = BoolPoly.var(0)
        return PathSum(Scalar.ONE, 1, BoolPoly.zero(),
                       (x + BoolPoly.one(),), (x,))
    if gate.kind == CMZ:
        arity = len(gate.qubits)
        wires = tuple(BoolPoly.var(i) for i in range(arity))
        phase = BoolPoly(frozenset(((1 << arity) - 1,)))
        return PathSum(Scalar.ONE, arity, phase, wires, wires)
    if gate.kind == SWAP:
        x, y = BoolPoly.var(0), BoolPoly.var(1)
        return PathSum(Scalar.ONE, 2, BoolPoly.zero(), (y, x), (x, y))
    raise ValueError(f"unknown gate kind {gate.kind!r}")


def _layer(gate: Gate, n: int) -> PathSum:
    """gate_sem placed on its wires, tensored with identity elsewhere.

    The gate's own variables come first (as in gate_sem), then one fresh
    variable per untouched wire; the output/input tuples are routed to
    wire positions, which is the tensor-with-identities layer up to wire
    order.
    """
    sem = gate_sem(gate)
    arity = len(gate.qubits)
    wire_out: dict[int, BoolPoly] = {}
    wire_in: dict[int, BoolPoly] = {}
    for pos, q in enumerate(gate.qubits):
        wire_out[q] = sem.outputs[pos]
        wire_in[q] = sem.inputs[pos]
    nxt = sem.num_vars
    for q in range(n):
        if q not in wire_in:
            v = BoolPoly.var(nxt)
            nxt += 1
            wire_in[q] = v
            wire_out[q] = v
    outputs = tuple(wire_out[q] for q in range(n))
    inputs = tuple(wire_in[q] for q in range(n))
    return PathSum(sem.scalar, nxt, sem.phase, outputs, inputs)


def interpret(circuit: Circuit) -> PathSum:
    """Fold the gate path sums over the circuit, composing layer by layer."""
    acc: PathSum | None = None
    for gate in circuit.gates:
        layer = _layer(gate, circuit.num_qubits)
        acc = layer if acc is None else compose(layer, acc)
    if acc is None:
        return identity(circuit.num_qubits)
    return acc


# ---------------------------------------------------------------------------
# interchange form

def to_dict(a: PathSum) -> dict:
    """JSON-ready dict with deterministic key order."""
    return {
        "scalar": {"zero": a.scalar.zero, "half_exp": a.scalar.half_exp},
        "num_vars": a.num_vars,
        "phase": a.phase.to_lists(),
        "outputs": [p.to_lists() for p in a.outputs],
        "inputs": [p.to_lists() for p in a.inputs],
    }


def from_dict(data: Mapping) -> PathSum:
    try:
        sc = data["scalar"]
        scalar = Scalar(bool(sc["zero"]), int(sc["half_exp"]))
        num_vars = int(data["num_vars"])
        phase = BoolPoly.from_lists(data["phase"])
        outputs = tuple(BoolPoly.from_lists(p) for p in data["outputs"])
        inputs = tuple(BoolPoly.from_lists(p) for p in data["inputs"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed path-sum dict: {exc}") from None
    return PathSum(scalar, num_vars, phase, outputs, inputs)


def to_json(a: PathSum) -> str:
    return json.dumps(to_dict(a))


def from_json(text: str) -> PathSum:
    return from_dict(json.loads(text))
