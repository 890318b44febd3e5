"""Complex statevector storage, gate application, and subsystem projections.

Qubit index convention (used everywhere in this package): qubit 0 is the
most significant bit of the basis index, so |b0 b1 ... b_{n-1}> sits at
index sum_j b_j 2^(n-1-j). A four-qubit register |C1 C2 T1 T2> therefore
maps C1 to qubit 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import _kernels
from .errors import CapacityError

if TYPE_CHECKING:
    from .gates import GateSpec

MAX_QUBITS = 12
NORM_ATOL = 1e-10


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Statevector:
    """Normalized pure state of ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _readonly(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        if amps.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got {amps.shape}"
            )
        norm = float(np.sum(amps.real**2 + amps.imag**2))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm^2 = {norm!r} deviates from 1 beyond {NORM_ATOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class SubVector:
    """Unnormalized rest-of-register amplitudes after fixing one qubit.

    Holds the 2^(n-1) amplitudes of the basis states whose ``source_qubit``
    equals ``branch``; its squared norm is the probability of that branch.
    """

    amplitudes: np.ndarray
    source_qubit: int
    branch: int

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _readonly(self.amplitudes))


def zero_state(n: int) -> Statevector:
    """|0...0> on ``n`` qubits."""
    if not 1 <= n <= MAX_QUBITS:
        raise CapacityError(f"qubit count {n} outside supported range 1..{MAX_QUBITS}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(n, amps)


def _check_targets(n_qubits: int, arity: int, targets: Sequence[int]) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(targets) != arity:
        raise ValueError(f"gate arity {arity} != {len(targets)} targets")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate targets {targets}")
    for t in targets:
        if not 0 <= t < n_qubits:
            raise ValueError(f"target {t} out of range for {n_qubits} qubits")
    return targets


def gate_tables(
    gate: "GateSpec", targets: Sequence[int], n_qubits: int
) -> tuple[np.ndarray, np.ndarray, int, int]:
    """Precompute scatter offsets / occupied-bit tables for a gate placement.

    Returns ``(offs, special, cmask, nfree)`` as consumed by the kernels:
    scatter offsets of the block's basis states, the ascending occupied bit
    positions, the control bit mask, and the free-bit count.
    """
    targets = _check_targets(n_qubits, gate.arity, targets)
    bits = [n_qubits - 1 - q for q in targets]
    cbits = bits[: gate.n_controls]
    tbits = bits[gate.n_controls :]
    cmask = 0
    for b in cbits:
        cmask |= 1 << b
    k = len(tbits)
    offs = np.zeros(1 << k, dtype=np.int64)
    for p in range(1 << k):
        o = 0
        for w in range(k):
            if (p >> (k - 1 - w)) & 1:  # block wire 0 is the block's MSB
                o |= 1 << tbits[w]
        offs[p] = o
    special = np.array(sorted(bits), dtype=np.int64)
    nfree = n_qubits - len(bits)
    return offs, special, cmask, nfree


def apply_gate(state: Statevector, gate: "GateSpec", targets: Sequence[int]) -> Statevector:
    """Apply ``gate`` to the given qubits (gate wire 0 goes to ``targets[0]``)."""
    offs, special, cmask, nfree = gate_tables(gate, targets, state.n_qubits)
    amps = state.amplitudes.copy()
    _kernels.apply_dense(amps, gate.block, offs, special, cmask, nfree)
    return Statevector(state.n_qubits, amps)


def fidelity(a: Statevector, b: Statevector) -> float:
    """Squared overlap |<a|b>|^2."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return _kernels.state_fidelity(a.amplitudes, b.amplitudes)


def project_out(state: Statevector, j: int, b: int) -> SubVector:
    """Amplitudes of the basis states whose qubit ``j`` equals bit ``b``.

    The remaining qubits keep their computational-basis order.
    """
    n = state.n_qubits
    if not 0 <= j < n:
        raise ValueError(f"qubit index {j} out of range for {n} qubits")
    if b not in (0, 1):
        raise ValueError(f"branch bit must be 0 or 1, got {b}")
    psi = state.amplitudes.reshape((2,) * n)
    sub = np.moveaxis(psi, j, 0)[b]
    return SubVector(np.ascontiguousarray(sub).ravel(), j, b)


def _as_amps(v) -> np.ndarray:
    if isinstance(v, SubVector):
        return v.amplitudes
    return np.ascontiguousarray(v, dtype=np.complex128)


def generalized_distance(u, v) -> float:
    """Squared-wedge distance (1/2) sum_{ij} |u_i v_j - u_j v_i|^2.

    Equals |u|^2 |v|^2 - |<u|v>|^2 and is evaluated through the stable
    projection form in the kernel backend. Accepts SubVectors or plain
    amplitude sequences.
    """
    ua, va = _as_amps(u), _as_amps(v)
    if ua.shape != va.shape:
        raise ValueError(f"dimension mismatch: {ua.shape} vs {va.shape}")
    return _kernels.pair_distance(ua, va)
