"""Reversible-circuit IR, wire embedding, and the peephole optimizer.

Circuits are ordered gate instances over n wires, leftmost applied first.
Wire w is bit w of the 2**n basis index (wire 0 = least significant).  In
an instance's wire list the first wire carries the gate's most significant
index bit, so `gate CNOT c t` has its control first and `CNOT` itself is
the permutation (1,2,4,3).

Rewriting never widens a circuit: adjacent mutually-inverse pairs on the
same wires are deleted, and any window matching a strict majority of a
stored identity template (read cyclically) is replaced by the inverted
remainder, which is always shorter.  Both passes preserve the circuit's
permutation by construction, and the optimizer re-checks that before
returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, FileFormatError, WiringError
from .perm import Permutation
from .templates import TemplateStore

WIRE_CAP = 12
DEFAULT_REWRITE_BUDGET = 10_000


@dataclass(frozen=True)
class Gate:
    """A named (or inline, name=None) permutation gate on k qubits."""

    perm: Permutation
    name: str | None = None

    def __post_init__(self):
        size = self.perm.size
        if size < 2 or size & (size - 1):
            raise DimensionError(
                f"gate dimension {size} is not a power of two >= 2"
            )

    @property
    def n_qubits(self) -> int:
        return self.perm.size.bit_length() - 1


def _control_gate(n_qubits: int, controls: int, flip) -> Permutation:
    """Permutation applying `flip` to the low bits when all of the
    `controls` top bits are set; qubit 0 is the top index bit."""
    size = 2 ** n_qubits
    mask = ((1 << controls) - 1) << (n_qubits - controls)
    images = [flip(x) if x & mask == mask else x for x in range(size)]
    return Permutation(images)


BUILTIN_GATES: dict[str, Gate] = {
    "I": Gate(Permutation.identity(2), "I"),
    "X": Gate(Permutation([1, 0]), "X"),
    "SWAP": Gate(Permutation([0, 2, 1, 3]), "SWAP"),
    "CNOT": Gate(_control_gate(2, 1, lambda x: x ^ 1), "CNOT"),
    "TOFFOLI": Gate(_control_gate(3, 2, lambda x: x ^ 1), "TOFFOLI"),
    "FREDKIN": Gate(
        _control_gate(3, 1, lambda x: (x & 0b100) | (x & 1) << 1 | (x >> 1 & 1)),
        "FREDKIN",
    ),
}

_BUILTIN_BY_PERM = {g.perm: g for g in BUILTIN_GATES.values()}


def named_gate(perm: Permutation) -> Gate:
    """Wrap a permutation, reusing the builtin name when one matches."""
    return _BUILTIN_BY_PERM.get(perm, Gate(perm))


@dataclass(frozen=True)
class GateInstance:
    gate: Gate
    wires: tuple[int, ...]

    def __post_init__(self):
        if len(self.wires) != self.gate.n_qubits:
            raise WiringError(
                f"gate {self.gate.name or self.gate.perm.one_line()} needs "
                f"{self.gate.n_qubits} wires, got {len(self.wires)}"
            )
        if len(set(self.wires)) != len(self.wires):
            raise WiringError(f"repeated wire in {self.wires}")


class Circuit:
    """n wires plus an ordered tuple of gate instances.

    Treat instances as immutable: passes return new circuits and never
    touch their input, so circuits are safe to share across threads.
    """

    def __init__(self, n_wires: int, gates=(), force: bool = False):
        if n_wires < 1:
            raise DimensionError(f"invalid wire count {n_wires}")
        if n_wires > WIRE_CAP and not force:
            raise DimensionError(
                f"{n_wires} wires exceeds the cap of {WIRE_CAP} "
                f"(semantics live on 2^n indices); pass force=True to override"
            )
        gates = tuple(gates)
        for inst in gates:
            bad = [w for w in inst.wires if not 0 <= w < n_wires]
            if bad:
                raise WiringError(f"wire {bad[0]} out of range 0..{n_wires - 1}")
        self.n_wires = n_wires
        self.gates = gates

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Circuit)
                and self.n_wires == other.n_wires
                and self.gates == other.gates)

    def __repr__(self) -> str:
        return f"Circuit(n_wires={self.n_wires}, gates={len(self.gates)})"

    def replaced(self, start: int, count: int, new_gates) -> "Circuit":
        return Circuit(
            self.n_wires,
            self.gates[:start] + tuple(new_gates) + self.gates[start + count:],
            force=True,
        )


def embed(gate: Permutation, wires, n_wires: int) -> Permutation:
    """Lift a k-qubit gate to n wires: apply it to the index bits selected
    by `wires` (first wire = gate's top bit) and fix every other bit."""
    wires = tuple(wires)
    k = gate.size.bit_length() - 1
    if gate.size != 2 ** k:
        raise DimensionError(f"gate dimension {gate.size} is not a power of two")
    if len(wires) != k:
        raise WiringError(f"gate on {k} qubits wired to {len(wires)} wires")
    if len(set(wires)) != len(wires):
        raise WiringError(f"repeated wire in {wires}")
    if any(not 0 <= w < n_wires for w in wires):
        raise WiringError(f"wire out of range 0..{n_wires - 1} in {wires}")
    # wires[t] carries local bit k-1-t
    bit_of = [(w, k - 1 - t) for t, w in enumerate(wires)]
    clear = ~sum(1 << w for w in wires)
    images = []
    for x in range(2 ** n_wires):
        local = 0
        for w, b in bit_of:
            local |= (x >> w & 1) << b
        mapped = gate(local)
        y = x & clear
        for w, b in bit_of:
            y |= (mapped >> b & 1) << w
        images.append(y)
    return Permutation(images)


def circuit_permutation(circuit: Circuit) -> Permutation:
    """The circuit's denotation on 2**n basis indices (leftmost gate first);
    an empty circuit denotes the identity."""
    out = Permutation.identity(2 ** circuit.n_wires)
    for inst in circuit.gates:
        out = embed(inst.gate.perm, inst.wires, circuit.n_wires) * out
    return out


def cancel_adjacent_inverses(circuit: Circuit) -> Circuit:
    """Delete adjacent pairs on identical wire lists whose permutations are
    mutual inverses, to fixpoint."""
    out: list[GateInstance] = []
    for inst in circuit.gates:
        if (out and out[-1].wires == inst.wires
                and (out[-1].gate.perm * inst.gate.perm).is_identity()):
            out.pop()
        else:
            out.append(inst)
    return Circuit(circuit.n_wires, out, force=True)


def _compose_run(gates, start: int, count: int) -> Permutation:
    out = Permutation.identity(gates[start].gate.perm.size)
    for i in range(start, start + count):
        out = gates[i].gate.perm * out
    return out


def _find_rewrite(circuit: Circuit, templates):
    """First applicable rewrite under the fixed scan order: leftmost window,
    longest template first (then store order), largest match, first cyclic
    offset.  Returns (start, matched_len, replacement_gates) or None."""
    gates = circuit.gates
    for start in range(len(gates)):
        wires = gates[start].wires
        run = 1
        while start + run < len(gates) and gates[start + run].wires == wires:
            run += 1
        local_dim = 2 ** len(wires)
        for t in templates:
            if t.dimension != local_dim:
                continue
            m = len(t.gates)
            for p in range(min(m, run), m // 2, -1):
                window = _compose_run(gates, start, p)
                for offset in range(m):
                    seg = Permutation.identity(local_dim)
                    for i in range(p):
                        seg = t.gates[(offset + i) % m] * seg
                    if seg != window:
                        continue
                    rest = [t.gates[(offset + p + i) % m] for i in range(m - p)]
                    replacement = [
                        GateInstance(named_gate(g.inverse()), wires)
                        for g in reversed(rest)
                    ]
                    return start, p, replacement
    return None


def template_rewrite(
    circuit: Circuit,
    store: TemplateStore,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> Circuit:
    """Rewrite windows matching a strict majority of a stored template.

    A window of p same-wire instances whose composed permutation equals p
    consecutive template gates (cyclically, p > m - p) is replaced by the
    inverted remaining m - p gates in reverse order.  Repeats until
    fixpoint or budget; the circuit permutation is preserved and the gate
    count never increases.
    """
    circuit, _ = _template_rewrite_counted(circuit, store, budget)
    return circuit


def _template_rewrite_counted(circuit, store, budget):
    if budget < 0:
        raise ValueError(f"negative rewrite budget {budget}")
    if store.dimension & (store.dimension - 1):
        raise DimensionError(
            f"store dimension {store.dimension} is not a power of two; "
            f"it can never match a window of qubit gates"
        )
    templates = sorted(
        store.templates,
        key=lambda t: -len(t.gates),
    )
    applied = 0
    while applied < budget:
        hit = _find_rewrite(circuit, templates)
        if hit is None:
            break
        start, count, replacement = hit
        circuit = circuit.replaced(start, count, replacement)
        applied += 1
    return circuit, applied


@dataclass
class OptimizeReport:
    gates_before: int
    gates_after: int
    cancelled_gates: int
    template_rewrites: int

    @property
    def removed(self) -> int:
        return self.gates_before - self.gates_after


def optimize(
    circuit: Circuit,
    store: TemplateStore | None = None,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> tuple[Circuit, OptimizeReport]:
    """Alternate inverse cancellation and template rewriting to fixpoint."""
    before = len(circuit.gates)
    cancelled = 0
    rewrites = 0
    current = circuit
    while True:
        shrunk = cancel_adjacent_inverses(current)
        cancelled += len(current.gates) - len(shrunk.gates)
        current = shrunk
        if store is None or rewrites >= budget:
            break
        current, applied = _template_rewrite_counted(current, store, budget - rewrites)
        rewrites += applied
        if applied == 0:
            break
    report = OptimizeReport(
        gates_before=before,
        gates_after=len(current.gates),
        cancelled_gates=cancelled,
        template_rewrites=rewrites,
    )
    return current, report


# --- circuit file format ---------------------------------------------------
#
#   qubits <n>
#   gate <NAME> <w0> [<w1> ...]
#   perm <one-line-notation> <w0> [<w1> ...]
#
# '#' starts a comment, blank lines are ignored.


def format_circuit(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n_wires}"]
    for inst in circuit.gates:
        wires = " ".join(str(w) for w in inst.wires)
        if inst.gate.name is not None:
            lines.append(f"gate {inst.gate.name} {wires}")
        else:
            lines.append(f"perm {inst.gate.perm.one_line()} {wires}")
    return "\n".join(lines) + "\n"


def _parse_wires(tokens: list[str], lineno: int) -> tuple[int, ...]:
    if not tokens:
        raise FileFormatError(lineno, "missing wire list")
    wires = []
    for tok in tokens:
        try:
            wires.append(int(tok))
        except ValueError:
            raise FileFormatError(lineno, f"bad wire index {tok!r}") from None
    return tuple(wires)


def parse_circuit(text: str, force: bool = False) -> Circuit:
    n_wires = None
    instances: list[GateInstance] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n_wires is None:
            if fields[0] != "qubits" or len(fields) != 2:
                raise FileFormatError(lineno, "expected header 'qubits <n>'")
            try:
                n_wires = int(fields[1])
            except ValueError:
                raise FileFormatError(lineno, f"bad wire count {fields[1]!r}") from None
            if n_wires < 1:
                raise FileFormatError(lineno, f"invalid wire count {n_wires}")
            continue
        if fields[0] == "gate":
            if len(fields) < 2:
                raise FileFormatError(lineno, "missing gate name")
            name = fields[1]
            if name not in BUILTIN_GATES:
                raise FileFormatError(lineno, f"unknown gate {name!r}")
            gate = BUILTIN_GATES[name]
            wires = _parse_wires(fields[2:], lineno)
        elif fields[0] == "perm":
            close = line.find(")")
            if "(" not in line or close < 0:
                raise FileFormatError(lineno, "missing one-line notation after 'perm'")
            notation = line[line.index("("):close + 1]
            try:
                perm = Permutation.from_one_line(notation)
            except Exception as exc:
                raise FileFormatError(lineno, str(exc)) from exc
            if perm.size & (perm.size - 1) or perm.size < 2:
                raise FileFormatError(
                    lineno, f"inline gate dimension {perm.size} is not a power of two"
                )
            gate = named_gate(perm)
            wires = _parse_wires(line[close + 1:].split(), lineno)
        else:
            raise FileFormatError(lineno, f"unknown directive {fields[0]!r}")
        try:
            inst = GateInstance(gate, wires)
        except WiringError as exc:
            raise FileFormatError(lineno, str(exc)) from exc
        if any(not 0 <= w < n_wires for w in wires):
            raise FileFormatError(lineno, f"wire out of range 0..{n_wires - 1}")
        instances.append(inst)
    if n_wires is None:
        raise FileFormatError(1, "expected header 'qubits <n>'")
    return Circuit(n_wires, instances, force=force)


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_circuit(circuit))


def load_circuit(path, force: bool = False) -> Circuit:
    with open(path, "r", encoding="ascii") as fh:
        return parse_circuit(fh.read(), force=force)
