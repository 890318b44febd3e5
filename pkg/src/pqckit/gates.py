"""Concrete unitaries: rotations, CNOT/iSWAP, the diamond gate, the
multi-controlled family, and per-layer entangler layouts.

Multi-controlled gates are stored structurally (control count + block on the
remaining wires) so that layouts on wide registers never materialize a full
2^N x 2^N matrix; ``GateSpec.matrix`` builds the dense form on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CapacityError, UnitarityError

MAX_GATE_QUBITS = 12
UNITARY_ATOL = 1e-10

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_ISWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)

# Four-qubit entangling swap with two controls, acting on |C1 C2 T1 T2>.
# Signed permutation: swaps (T1,T2) and (C1,C2) pairs on selected control
# patterns, entries all 0 or +-1.
_DIAMOND = np.array(
    [
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ],
    dtype=np.complex128,
)


class EntanglerKind(str, Enum):
    """Entangling-block family used once per circuit layer."""

    NONE = "none"
    CNOT_CHAIN = "cnot_chain"
    ISWAP_CHAIN = "iswap_chain"
    DIAMOND = "diamond"
    MC_NOT = "mc_not"
    MC_INOT = "mc_inot"
    MC_ISWAP = "mc_iswap"


@dataclass(frozen=True)
class GateSpec:
    """A unitary on ``arity`` wires; the first ``n_controls`` wires gate the
    ``block`` acting on the remaining wires. Wire 0 is the most significant
    bit of the gate's own basis ordering."""

    label: str
    arity: int
    block: np.ndarray
    n_controls: int = 0

    def __post_init__(self):
        block = np.ascontiguousarray(self.block, dtype=np.complex128)
        block.setflags(write=False)
        object.__setattr__(self, "block", block)
        if self.arity < 1:
            raise ValueError("gate arity must be >= 1")
        if not 0 <= self.n_controls < self.arity:
            raise ValueError("n_controls must leave at least one target wire")
        k = self.arity - self.n_controls
        if block.shape != (1 << k, 1 << k):
            raise ValueError(
                f"block shape {block.shape} does not match {k} target wires"
            )
        dev = np.max(np.abs(block.conj().T @ block - np.eye(1 << k)))
        if dev > UNITARY_ATOL:
            raise UnitarityError(
                f"{self.label}: U^dag U deviates from identity by {dev:.3g}"
            )

    @property
    def matrix(self) -> np.ndarray:
        """Dense 2^arity x 2^arity unitary (identity outside the gated block)."""
        dim = 1 << self.arity
        k = self.arity - self.n_controls
        m = np.eye(dim, dtype=np.complex128)
        tail = dim - (1 << k)  # all-controls-1 subspace is the index tail
        m[tail:, tail:] = self.block
        return m


def rotation(axis: str, theta: float) -> GateSpec:
    """Single-qubit rotation exp(-i theta sigma_axis / 2)."""
    if not math.isfinite(theta):
        raise ValueError(f"rotation angle must be finite, got {theta!r}")
    axis = axis.upper()
    h = theta / 2.0
    c, s = math.cos(h), math.sin(h)
    if axis == "X":
        block = np.array([[c, -1j * s], [-1j * s, c]])
    elif axis == "Y":
        block = np.array([[c, -s], [s, c]])
    elif axis == "Z":
        block = np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    else:
        raise ValueError(f"axis must be X, Y or Z, got {axis!r}")
    return GateSpec(f"R{axis.lower()}({theta:.6g})", 1, block)


def standard_gate(name: str) -> GateSpec:
    """One of CNOT, ISWAP, DIAMOND."""
    name = name.upper()
    if name == "CNOT":
        return GateSpec("cnot", 2, _X, n_controls=1)
    if name == "ISWAP":
        return GateSpec("iswap", 2, _ISWAP)
    if name == "DIAMOND":
        return GateSpec("diamond", 4, _DIAMOND)
    raise ValueError(f"unknown gate {name!r}")


def multi_controlled(kind: str, n_controls: int) -> GateSpec:
    """NOT, INOT (NOT with an extra factor i) or ISWAP gated by ``n_controls`` qubits."""
    kind = kind.upper()
    if n_controls < 1:
        raise ValueError("need at least one control")
    n_targets = 2 if kind == "ISWAP" else 1
    arity = n_controls + n_targets
    if arity > MAX_GATE_QUBITS:
        raise CapacityError(f"{arity}-qubit gate exceeds the {MAX_GATE_QUBITS}-qubit limit")
    if kind == "NOT":
        block = _X
    elif kind == "INOT":
        block = 1j * _X
    elif kind == "ISWAP":
        block = _ISWAP
    else:
        raise ValueError(f"unknown multi-controlled kind {kind!r}")
    return GateSpec(f"c{n_controls}-{kind.lower()}", arity, block, n_controls=n_controls)


def entangler_layout(
    kind: EntanglerKind, n_qubits: int
) -> list[tuple[GateSpec, tuple[int, ...]]]:
    """Gates (with their target qubits) making up one entangling layer.

    Chains couple consecutive pairs (CNOT controls sit on the higher-index
    qubit of each pair); diamond gates tile 4-qubit windows with stride 2,
    controls on the window's two leading qubits; the multi-controlled kinds
    put controls on the leading qubits and act on the trailing one(s).
    """
    kind = EntanglerKind(kind)
    if kind is EntanglerKind.NONE:
        return []
    if kind is EntanglerKind.CNOT_CHAIN:
        if n_qubits < 2:
            raise ValueError(f"{kind.value} needs >= 2 qubits")
        g = standard_gate("CNOT")
        return [(g, (q + 1, q)) for q in range(n_qubits - 1)]
    if kind is EntanglerKind.ISWAP_CHAIN:
        if n_qubits < 2:
            raise ValueError(f"{kind.value} needs >= 2 qubits")
        g = standard_gate("ISWAP")
        return [(g, (q, q + 1)) for q in range(n_qubits - 1)]
    if kind is EntanglerKind.DIAMOND:
        if n_qubits < 4 or n_qubits % 2:
            raise ValueError("diamond layout needs an even qubit count >= 4")
        g = standard_gate("DIAMOND")
        return [(g, (q, q + 1, q + 2, q + 3)) for q in range(0, n_qubits - 3, 2)]
    if kind is EntanglerKind.MC_ISWAP:
        if n_qubits < 3:
            raise ValueError("multi-controlled iswap needs >= 3 qubits")
        return [(multi_controlled("ISWAP", n_qubits - 2), tuple(range(n_qubits)))]
    if n_qubits < 2:
        raise ValueError(f"{kind.value} needs >= 2 qubits")
    mc = multi_controlled("NOT" if kind is EntanglerKind.MC_NOT else "INOT", n_qubits - 1)
    return [(mc, tuple(range(n_qubits)))]
