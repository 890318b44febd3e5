"""Frequency-comb qudit states and gates.

A single photon spread over d frequency bins plays the role of a d-level
system. The pulse shaper (PS) rotates the phase of each bin independently;
the electro-optic modulator (EOM) couples bins a bounded number of steps
apart with Bessel-function weights J_n of its modulation depth; the DFT is
the ideal uniform mixer the EOM-PS-EOM sandwich approximates. Levels map
one-to-one onto qubit basis states (level 1 -> |0...0>) when d is a power
of two, which lets the qubit metrics and VQE run unchanged on qudit states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import jv

from .errors import EomLeakageError
from .state import Statevector

LEAKAGE_THRESHOLD = 0.01


@dataclass(frozen=True)
class QuditState:
    """Normalized amplitudes over ``d`` frequency-bin levels."""

    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if self.d < 2:
            raise ValueError("need at least two levels")
        if amps.shape != (self.d,):
            raise ValueError(f"expected {self.d} amplitudes, got {amps.shape}")
        norm = float(np.sum(amps.real**2 + amps.imag**2))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state norm^2 = {norm!r} deviates from 1")


def even_superposition(d: int) -> QuditState:
    """All levels populated equally, amplitude 1/sqrt(d)."""
    if d < 2:
        raise ValueError("need at least two levels")
    return QuditState(d, np.full(d, 1.0 / math.sqrt(d), dtype=np.complex128))


@dataclass(frozen=True)
class PsGate:
    """Per-level phase rotations; levels outside ``active`` keep phase 0."""

    phases: np.ndarray
    active: tuple[int, ...] | None = None

    def __post_init__(self):
        phases = np.ascontiguousarray(self.phases, dtype=np.float64)
        phases.setflags(write=False)
        object.__setattr__(self, "phases", phases)
        if self.active is not None:
            active = tuple(sorted(set(int(a) for a in self.active)))
            if active and not 0 <= active[0] <= active[-1] < phases.shape[0]:
                raise ValueError("active level out of range")
            object.__setattr__(self, "active", active)

    def effective_phases(self) -> np.ndarray:
        if self.active is None:
            return self.phases
        out = np.zeros_like(self.phases)
        idx = list(self.active)
        out[idx] = self.phases[idx]
        return out


def apply_ps(state: QuditState, gate: PsGate) -> QuditState:
    """Multiply amplitude j by exp(i theta_j)."""
    if gate.phases.shape[0] != state.d:
        raise ValueError(f"gate has {gate.phases.shape[0]} phases for {state.d} levels")
    return QuditState(state.d, state.amplitudes * np.exp(1j * gate.effective_phases()))


@dataclass(frozen=True)
class EomGate:
    """Sinusoidal phase modulation: depth ``v0`` (units of V_pi/pi), drive
    phase ``theta``. ``guard`` sets both the coupling band half-width and the
    padding bins kept on each side of the register."""

    v0: float
    theta: float = 0.0
    guard: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.v0) and self.v0 >= 0.0):
            raise ValueError("modulation depth must be finite and >= 0")
        min_guard = math.ceil(self.v0) + 1
        guard = min_guard if self.guard is None else int(self.guard)
        if guard < min_guard:
            raise ValueError(f"guard must be >= ceil(v0)+1 = {min_guard}")
        object.__setattr__(self, "guard", guard)

    def coefficients(self) -> np.ndarray:
        """Shift amplitudes (-i e^{-i theta})^s J_s(v0) for s in [-guard, guard]."""
        s = np.arange(-self.guard, self.guard + 1)
        return ((-1j * np.exp(-1j * self.theta)) ** s) * jv(s, self.v0)


def apply_eom(
    state: QuditState, gate: EomGate, leakage_threshold: float = LEAKAGE_THRESHOLD
) -> tuple[QuditState, float]:
    """Apply the band-truncated frequency-shift operator.

    The d levels are embedded centered in a register padded by ``guard``
    bins per side; the banded operator acts on the whole register; leakage
    is the probability mass that left the central d bins. The central part
    is renormalized and returned. Raises EomLeakageError above the
    threshold.
    """
    d, g = state.d, gate.guard
    emb = np.zeros(d + 2 * g, dtype=np.complex128)
    emb[g : g + d] = state.amplitudes
    # full convolution: out[m] = sum_s coef(s) emb[m - s]
    out = np.convolve(gate.coefficients(), emb)[g : g + d + 2 * g]
    central = out[g : g + d]
    central_norm = float(np.sum(central.real**2 + central.imag**2))
    total_norm = float(np.sum(out.real**2 + out.imag**2))
    leakage = total_norm - central_norm
    if leakage > leakage_threshold:
        raise EomLeakageError(leakage, leakage_threshold)
    return QuditState(d, central / math.sqrt(central_norm)), leakage


@lru_cache(maxsize=32)
def dft_gate(d: int) -> np.ndarray:
    """Exact discrete-Fourier-transform unitary U[j,k] = exp(2 pi i jk/d)/sqrt(d)."""
    if d < 2:
        raise ValueError("need at least two levels")
    j = np.arange(d)
    u = np.exp(2j * math.pi * np.outer(j, j) / d) / math.sqrt(d)
    u.setflags(write=False)
    return u


def qudit_as_qubits(state: QuditState) -> Statevector:
    """Reinterpret the d = 2^N levels as N qubits (level 1 -> |0...0>)."""
    n = int(math.log2(state.d))
    if (1 << n) != state.d:
        raise ValueError(f"level count {state.d} is not a power of two")
    return Statevector(n, state.amplitudes)


def eom_ps_eom(
    state: QuditState, eom1: EomGate, ps: PsGate, eom2: EomGate
) -> tuple[QuditState, float]:
    """Modulator-shaper-modulator sandwich (the mixer the DFT idealizes).

    Returns the output state and the summed leakage of the two modulators.
    """
    s1, l1 = apply_eom(state, eom1)
    s2 = apply_ps(s1, ps)
    s3, l2 = apply_eom(s2, eom2)
    return s3, l1 + l2


@dataclass(frozen=True)
class PhotonicConfiguration:
    """Ansatz over a single qudit: PS, or PS -> DFT -> PS, on the even
    superposition. ``active`` restricts which levels carry a variational
    phase (the same mask applies to each PS stage)."""

    kind: str  # "ps" | "ps_dft_ps"
    d: int
    active: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("ps", "ps_dft_ps"):
            raise ValueError(f"unknown pipeline kind {self.kind!r}")
        if self.d < 2:
            raise ValueError("need at least two levels")
        active = tuple(sorted(set(int(a) for a in self.active)))
        if active and not 0 <= active[0] <= active[-1] < self.d:
            raise ValueError("active level out of range")
        object.__setattr__(self, "active", active)

    @property
    def stages(self) -> int:
        return 1 if self.kind == "ps" else 2

    @property
    def n_params(self) -> int:
        return len(self.active) * self.stages

    @property
    def dim(self) -> int:
        return self.d

    def prepare_into(self, out: np.ndarray, theta: np.ndarray) -> None:
        d, k = self.d, len(self.active)
        idx = list(self.active)
        phase = np.zeros(d)
        phase[idx] = theta[:k]
        out[:] = np.exp(1j * phase)
        out *= 1.0 / math.sqrt(d)
        if self.kind == "ps_dft_ps":
            mixed = dft_gate(d) @ out
            phase2 = np.zeros(d)
            phase2[idx] = theta[k:]
            out[:] = np.exp(1j * phase2) * mixed

    def prepare(self, theta: Sequence[float]) -> np.ndarray:
        out = np.empty(self.d, dtype=np.complex128)
        self.prepare_into(out, np.asarray(theta, dtype=np.float64))
        return out


def full_configuration(kind: str, d: int) -> PhotonicConfiguration:
    """All levels variational: d phases for PS, 2d for PS -> DFT -> PS."""
    return PhotonicConfiguration(kind, d, tuple(range(d)))


def random_photonic_configuration(
    kind: str, d: int, k: int, rng: np.random.Generator | int | None
) -> PhotonicConfiguration:
    """Uniformly random k-subset of levels to drive."""
    if not 0 <= k <= d:
        raise ValueError(f"k={k} outside [0, {d}]")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    active = np.sort(rng.choice(d, size=k, replace=False))
    return PhotonicConfiguration(kind, d, tuple(int(a) for a in active))


def photonic_pipeline(
    kind: str, d: int, params: Sequence[float], active: Sequence[int] | None = None
) -> QuditState:
    """Run the gate chain on the even superposition and return the state."""
    cfg = (
        full_configuration(kind, d)
        if active is None
        else PhotonicConfiguration(kind, d, tuple(active))
    )
    theta = np.asarray(params, dtype=np.float64)
    if theta.shape != (cfg.n_params,):
        raise ValueError(f"expected {cfg.n_params} parameters, got shape {theta.shape}")
    return QuditState(d, cfg.prepare(theta))
