"""Pauli-string Hamiltonians: file parsing, expectation values, and exact
ground-state energies.

File format: UTF-8 text, one term per line as ``PAULISTRING coefficient``
(e.g. ``IIZI 0.156354``), ``#`` comments and blank lines ignored. All
strings must share one length (the qubit count); coefficients are real and
carry whatever energy unit the table uses (Hartree for the bundled
molecules).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import CapacityError, HamiltonianFormatError
from .state import Statevector

_VALID_OPS = frozenset("IXYZ")
_IMAG_ATOL = 1e-9

BUNDLED = ("lih_4q", "beh2_6q", "oh_8q")


@dataclass(frozen=True)
class PauliHamiltonian:
    """Sum of real-weighted Pauli strings on ``n_qubits`` qubits."""

    n_qubits: int
    terms: tuple[tuple[str, float], ...]

    def __post_init__(self):
        for ops, coef in self.terms:
            if len(ops) != self.n_qubits or not set(ops) <= _VALID_OPS:
                raise ValueError(f"bad Pauli string {ops!r} for {self.n_qubits} qubits")
            if not np.isfinite(coef):
                raise ValueError(f"non-finite coefficient for {ops}")

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


def parse_hamiltonian(text: str) -> PauliHamiltonian:
    """Parse a term-per-line Pauli Hamiltonian source."""
    terms: list[tuple[str, float]] = []
    seen: dict[str, int] = {}
    n_qubits = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise HamiltonianFormatError(
                f"expected 'PAULISTRING coefficient', got {raw.strip()!r}", line_no
            )
        ops, coef_text = parts[0].upper(), parts[1]
        if not set(ops) <= _VALID_OPS:
            raise HamiltonianFormatError(f"invalid Pauli string {ops!r}", line_no)
        if n_qubits is None:
            n_qubits = len(ops)
        elif len(ops) != n_qubits:
            raise HamiltonianFormatError(
                f"string length {len(ops)} != {n_qubits} seen earlier", line_no
            )
        if ops in seen:
            raise HamiltonianFormatError(
                f"duplicate term {ops} (first on line {seen[ops]})", line_no
            )
        try:
            coef = float(coef_text)
        except ValueError:
            raise HamiltonianFormatError(f"bad coefficient {coef_text!r}", line_no) from None
        seen[ops] = line_no
        terms.append((ops, coef))
    if not terms:
        raise HamiltonianFormatError("no terms found")
    return PauliHamiltonian(n_qubits, tuple(terms))


def load_hamiltonian(path: str | Path) -> PauliHamiltonian:
    return parse_hamiltonian(Path(path).read_text(encoding="utf-8"))


def bundled_hamiltonian(name: str) -> PauliHamiltonian:
    """One of the shipped molecular tables: lih_4q, beh2_6q, oh_8q."""
    if name not in BUNDLED:
        raise ValueError(f"unknown bundled Hamiltonian {name!r}; choose from {BUNDLED}")
    text = resources.files("pqckit.data").joinpath(f"{name}.ham").read_text("utf-8")
    return parse_hamiltonian(text)


@lru_cache(maxsize=64)
def _pack(h: PauliHamiltonian) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Kernel tables: per-term flip masks, permuted phase rows, coefficients.

    ``phases[t, c]`` is the phase attached when P_t maps basis state
    ``c ^ flips[t]`` onto ``c`` (the layout pauli_expectation consumes).
    """
    n, dim = h.n_qubits, h.dim
    nt = len(h.terms)
    idx = np.arange(dim, dtype=np.int64)
    flips = np.zeros(nt, dtype=np.int64)
    phases = np.empty((nt, dim), dtype=np.complex128)
    coefs = np.empty(nt, dtype=np.float64)
    for t, (ops, coef) in enumerate(h.terms):
        coefs[t] = coef
        flip = 0
        raw = np.ones(dim, dtype=np.complex128)
        for q, ch in enumerate(ops):
            bitpos = n - 1 - q
            if ch == "I":
                continue
            bit = (idx >> bitpos) & 1
            if ch == "X":
                flip |= 1 << bitpos
            elif ch == "Y":
                flip |= 1 << bitpos
                raw *= np.where(bit == 1, -1j, 1j)
            else:  # Z
                raw *= np.where(bit == 1, -1.0, 1.0)
        flips[t] = flip
        phases[t] = raw[idx ^ flip]
    return flips, phases, coefs


def expectation_amplitudes(amps: np.ndarray, h: PauliHamiltonian) -> float:
    """<psi|H|psi> on a raw amplitude array."""
    if amps.shape[0] != h.dim:
        raise ValueError(f"state dim {amps.shape[0]} != Hamiltonian dim {h.dim}")
    flips, phases, coefs = _pack(h)
    total = _kernels.pauli_expectation(amps, flips, phases, coefs)
    if abs(total.imag) > _IMAG_ATOL:
        raise ValueError(f"imaginary residue {total.imag:.3g} exceeds {_IMAG_ATOL}")
    return float(total.real)


def expectation(state: Statevector, h: PauliHamiltonian) -> float:
    """Energy expectation value of a state under ``h``."""
    return expectation_amplitudes(state.amplitudes, h)


def dense_matrix(h: PauliHamiltonian) -> np.ndarray:
    """Materialize the 2^N x 2^N Hermitian matrix of ``h``."""
    if h.n_qubits > 10:
        raise CapacityError("dense form limited to 10 qubits")
    flips, phases, coefs = _pack(h)
    dim = h.dim
    idx = np.arange(dim, dtype=np.int64)
    m = np.zeros((dim, dim), dtype=np.complex128)
    for t in range(coefs.shape[0]):
        m[idx, idx ^ flips[t]] += coefs[t] * phases[t]
    return m


def exact_ground_energy(h: PauliHamiltonian) -> float:
    """Smallest eigenvalue of the dense Hamiltonian (N <= 10)."""
    return float(np.linalg.eigvalsh(dense_matrix(h))[0])
