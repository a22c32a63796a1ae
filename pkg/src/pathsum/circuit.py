"""Circuit IR over {H, X, C^(m)Z, SWAP}, its text format, and generators.

The text format is line oriented: a ``qubits N`` header, then one gate
per line (``h q``, ``x q``, ``swap q1 q2``, ``z q1 [q2 ...]`` meaning a
multiply-controlled Z on all listed qubits).  ``#`` starts a comment
and whitespace is insignificant beyond separating tokens.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

H = "h"
X = "x"
CMZ = "z"
SWAP = "swap"

_KINDS = (H, X, CMZ, SWAP)

#: largest number of controls on a C^(m)Z accepted by default (CCZ)
DEFAULT_MAX_CONTROLS = 2


class CircuitParseError(ValueError):
    """Structured parse failure carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = len(self.qubits)
        if self.kind in (H, X) and arity != 1:
            raise ValueError(f"{self.kind} takes one qubit, got {arity}")
        if self.kind == SWAP and arity != 2:
            raise ValueError(f"swap takes two qubits, got {arity}")
        if self.kind == CMZ and arity < 1:
            raise ValueError("z takes at least one qubit")
        if len(set(self.qubits)) != arity:
            raise ValueError(f"repeated qubit in {self.kind} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")

    def controls(self) -> int:
        """For a C^(m)Z gate, the m; 0 for every other kind."""
        return len(self.qubits) - 1 if self.kind == CMZ else 0


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 0:
            raise ValueError("negative qubit count")
        for g in self.gates:
            for q in g.qubits:
                if q >= self.num_qubits:
                    raise ValueError(
                        f"gate {g.kind} touches qubit {q} "
                        f"but the circuit has {self.num_qubits}"
                    )

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class Volume:
    gate_count: int
    qubit_count: int
    volume: int


def volume(circuit: Circuit) -> Volume:
    """Size parameter gate count x qubit count (and its factors)."""
    k = len(circuit.gates)
    n = circuit.num_qubits
    return Volume(gate_count=k, qubit_count=n, volume=k * n)


# ---------------------------------------------------------------------------
# text format

def parse(text: str, max_controls: int = DEFAULT_MAX_CONTROLS) -> Circuit:
    """Parse the circuit text format; raises CircuitParseError on any input."""
    if not isinstance(text, str):
        raise CircuitParseError("input is not text", 1)
    num_qubits: Optional[int] = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        col = raw.index(tokens[0]) + 1
        head = tokens[0].lower()
        if num_qubits is None:
            if head != "qubits":
                raise CircuitParseError("expected 'qubits N' header", lineno, col)
            if len(tokens) != 2:
                raise CircuitParseError("'qubits' takes one count", lineno, col)
            num_qubits = _int_token(tokens[1], lineno, raw)
            if num_qubits < 0:
                raise CircuitParseError("negative qubit count", lineno, col)
            continue
        arity_alias = {"cz": 2, "ccz": 3}
        if head in arity_alias:
            want = arity_alias[head]
            if len(tokens) - 1 != want:
                raise CircuitParseError(
                    f"{head} takes {want} qubits, got {len(tokens) - 1}",
                    lineno, col)
            head = CMZ
        elif head not in _KINDS:
            raise CircuitParseError(f"unknown gate mnemonic {head!r}", lineno, col)
        qubits = tuple(_int_token(t, lineno, raw) for t in tokens[1:])
        if head == CMZ and len(qubits) > max_controls + 1:
            raise CircuitParseError(
                f"z on {len(qubits)} qubits exceeds the configured "
                f"maximum of {max_controls} controls", lineno, col)
        try:
            gate = Gate(head, qubits)
        except ValueError as exc:
            raise CircuitParseError(str(exc), lineno, col) from None
        for q in qubits:
            if q >= num_qubits:
                raise CircuitParseError(
                    f"qubit {q} out of range for {num_qubits} qubits", lineno, col)
        gates.append(gate)
    if num_qubits is None:
        raise CircuitParseError("empty input: missing 'qubits N' header", 1)
    return Circuit(num_qubits, tuple(gates))


def _int_token(token: str, lineno: int, raw: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        col = raw.index(token) + 1 if token in raw else 1
        raise CircuitParseError(f"expected an integer, got {token!r}",
                                lineno, col) from None


def serialize(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.num_qubits}"]
    for g in circuit.gates:
        lines.append(" ".join([g.kind, *map(str, g.qubits)]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators

def random_circuit(num_qubits: int, depth: int, max_controls: int = DEFAULT_MAX_CONTROLS,
                   seed: int = 0) -> Circuit:
    """Uniform random gates on random distinct qubits; reproducible by seed."""
    if num_qubits < 1:
        raise ValueError("need at least one qubit")
    if max_controls + 1 > num_qubits:
        raise ValueError("max_controls + 1 must not exceed the qubit count")
    rng = random.Random(seed)
    pool: list[tuple[str, int]] = [(H, 1), (X, 1)]
    pool.extend((CMZ, m + 1) for m in range(max_controls + 1))
    if num_qubits >= 2:
        pool.append((SWAP, 2))
    gates = []
    for _ in range(depth):
        kind, arity = rng.choice(pool)
        qubits = tuple(rng.sample(range(num_qubits), arity))
        gates.append(Gate(kind, qubits))
    return Circuit(num_qubits, tuple(gates))


# ---------------------------------------------------------------------------
# hidden-shift instances

@dataclass(frozen=True)
class HiddenShiftSpec:
    """Parameters of one hidden-shift instance.

    ``g_monomials`` are index tuples over the first n/2 coordinates (each
    of size 1..3, so the oracle layers need at most CCZ gates), ``shift``
    is the hidden bitstring, and ``pi`` the coordinate permutation used by
    the inner-product coupling (identity when omitted).
    """

    n: int
    g_monomials: frozenset[tuple[int, ...]] = frozenset()
    shift: tuple[int, ...] = ()
    pi: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "g_monomials",
                           frozenset(tuple(sorted(m)) for m in self.g_monomials))
        object.__setattr__(self, "shift", tuple(self.shift))
        if self.pi is not None:
            object.__setattr__(self, "pi", tuple(self.pi))
        if self.n < 2 or self.n % 2:
            raise ValueError("qubit count must be even and at least 2")
        half = self.n // 2
        if len(self.shift) != self.n or any(b not in (0, 1) for b in self.shift):
            raise ValueError(f"shift must be a bit vector of length {self.n}")
        for mono in self.g_monomials:
            if not 1 <= len(mono) <= 3:
                raise ValueError(f"monomial {mono} must have 1..3 indices")
            if len(set(mono)) != len(mono):
                raise ValueError(f"monomial {mono} has repeated indices")
            if any(not 0 <= a < half for a in mono):
                raise ValueError(f"monomial {mono} out of range 0..{half - 1}")
        if self.pi is not None and sorted(self.pi) != list(range(half)):
            raise ValueError(f"pi must be a permutation of 0..{half - 1}")

    def permutation(self) -> tuple[int, ...]:
        return self.pi if self.pi is not None else tuple(range(self.n // 2))


def hidden_shift_circuit(spec: HiddenShiftSpec) -> Circuit:
    """Instance circuit that maps |0..0> deterministically to |shift>.

    The underlying function on (u, v) is sum_i u_i v_{pi(i)} plus g(v);
    its dual couples the same wire pairs and evaluates g on the first
    half through the inverse permutation.  The shift enters as X
    conjugation around the first oracle layer.
    """
    n = spec.n
    half = n // 2
    pi = spec.permutation()
    pi_inv = [0] * half
    for i, p in enumerate(pi):
        pi_inv[p] = i
    gmonos = sorted(spec.g_monomials)

    gates: list[Gate] = []

    def h_layer():
        gates.extend(Gate(H, (q,)) for q in range(n))

    def shift_layer():
        gates.extend(Gate(X, (q,)) for q in range(n) if spec.shift[q])

    def coupling_layer():
        gates.extend(Gate(CMZ, (i, half + pi[i])) for i in range(half))

    h_layer()
    shift_layer()
    coupling_layer()
    for mono in gmonos:  # g on the second half
        gates.append(Gate(CMZ, tuple(half + a for a in mono)))
    shift_layer()
    h_layer()
    coupling_layer()
    for mono in gmonos:  # dual's g on the first half, through pi^-1
        gates.append(Gate(CMZ, tuple(sorted(pi_inv[a] for a in mono))))
    h_layer()
    return Circuit(n, tuple(gates))


def random_hidden_shift_spec(n: int, rng: random.Random,
                             max_g_monomials: int = 4,
                             permute: bool = True) -> HiddenShiftSpec:
    """Random instance parameters: shift, g of small monomials, optional pi."""
    half = n // 2
    shift = tuple(rng.randrange(2) for _ in range(n))
    monos = set()
    for _ in range(rng.randrange(max_g_monomials + 1)):
        size = rng.randrange(1, min(3, half) + 1)
        monos.add(tuple(sorted(rng.sample(range(half), size))))
    pi = None
    if permute and rng.randrange(2):
        perm = list(range(half))
        rng.shuffle(perm)
        pi = tuple(perm)
    return HiddenShiftSpec(n=n, g_monomials=frozenset(monos), shift=shift, pi=pi)
