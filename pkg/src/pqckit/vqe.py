"""Derivative-free energy minimization over a parameterized state preparer.

Nelder-Mead simplex with random restarts: each restart starts from angles
uniform on [0, 2pi), uses an initial simplex of fixed edge length, and stops
once the simplex energy spread falls below the tolerance or the evaluation
cap is hit. The best restart wins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .hamiltonian import PauliHamiltonian, exact_ground_energy, expectation_amplitudes
from .metrics import TWO_PI

_VQE_STREAM = 0x56514531


@dataclass(frozen=True)
class OptimizerSettings:
    restarts: int = 5
    max_evaluations: int = 20000  # per restart
    energy_tolerance: float = 1e-6  # simplex spread at convergence
    simplex_scale: float = 0.5  # radians


@dataclass(frozen=True)
class VqeOutcome:
    best_energy: float
    best_theta: np.ndarray
    evaluations: int
    energy_error: float


def vqe_minimize(
    ansatz,
    h: PauliHamiltonian,
    settings: OptimizerSettings | None = None,
    seed: int = 0,
) -> VqeOutcome:
    """Minimize <psi(theta)|H|psi(theta)> over the ansatz parameters."""
    if settings is None:
        settings = OptimizerSettings()
    if ansatz.dim != h.dim:
        raise ValueError(f"ansatz dim {ansatz.dim} != Hamiltonian dim {h.dim}")
    m = ansatz.n_params
    buf = np.empty(ansatz.dim, dtype=np.complex128)

    def energy(theta: np.ndarray) -> float:
        ansatz.prepare_into(buf, theta)
        return expectation_amplitudes(buf, h)

    ground = exact_ground_energy(h)

    if m == 0:
        e = energy(np.zeros(0))
        return VqeOutcome(e, np.zeros(0), 1, e - ground)

    best_e = np.inf
    best_theta = np.zeros(m)
    evaluations = 0
    for r in range(settings.restarts):
        rng = np.random.default_rng(np.random.SeedSequence([seed, _VQE_STREAM, r]))
        x0 = rng.uniform(0.0, TWO_PI, m)
        simplex = np.tile(x0, (m + 1, 1))
        simplex[1:] += settings.simplex_scale * np.eye(m)
        res = minimize(
            energy,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "fatol": settings.energy_tolerance,
                "xatol": np.inf,
                "maxfev": settings.max_evaluations,
                "maxiter": settings.max_evaluations,
            },
        )
        evaluations += int(res.nfev)
        if res.fun < best_e:
            best_e = float(res.fun)
            best_theta = np.asarray(res.x, dtype=np.float64)
    return VqeOutcome(best_e, best_theta, evaluations, best_e - ground)
