"""Expressibility and entangling-capability estimators.

Expressibility is the KL divergence between the sampled state-pair fidelity
histogram and the fidelity distribution of uniformly (Haar) random pure
states, whose density for Hilbert dimension D is (D-1)(1-F)^(D-2). The
reference probability of each bin is the exact integral of that density, so
an idle circuit (all fidelities equal to 1) scores exactly
(D-1) ln(n_bins), the baseline used to normalize the relative measure
-ln(Expr / Expr_idle).

The estimators work on any object exposing the ansatz protocol:
``n_params``, ``dim``, and ``prepare_into(buffer, theta)``.

Sample i draws its angles from an RNG substream derived deterministically
from (seed, i), so results are independent of scheduling and worker counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .state import Statevector

DEFAULT_BINS = 75

_EXPR_STREAM = 0x45585052
_CAP_STREAM = 0x454E5447
TWO_PI = 2.0 * math.pi


def default_sample_count(dim: int) -> int:
    """1000(N+1) parameter-vector draws for an N-qubit-sized space."""
    return 1000 * (max(int(math.log2(dim)), 1) + 1)


def sample_rng(seed: int, stream: int, index: int) -> np.random.Generator:
    """Deterministic per-sample substream for (seed, stream, index)."""
    return np.random.default_rng(np.random.SeedSequence([seed, stream, index]))


@dataclass(frozen=True)
class FidelityHistogram:
    n_bins: int
    counts: np.ndarray
    edges: np.ndarray

    def __post_init__(self):
        if self.counts.shape != (self.n_bins,) or self.edges.shape != (self.n_bins + 1,):
            raise ValueError("histogram shape mismatch")


@dataclass(frozen=True)
class ExpressibilityResult:
    expr: float
    relative: float
    n_samples: int
    seed: int
    histogram: FidelityHistogram


@dataclass(frozen=True)
class EntanglingResult:
    capability: float
    n_samples: int
    seed: int


def _haar_bin_probabilities(dim: int, n_bins: int) -> np.ndarray:
    """Exact per-bin integrals of the Haar fidelity density (sum is 1)."""
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    cdf_tail = (1.0 - edges) ** (dim - 1)  # P(F >= edge)
    return cdf_tail[:-1] - cdf_tail[1:]


def _log_haar_bin_probabilities(dim: int, n_bins: int) -> np.ndarray:
    """log of the per-bin Haar integrals, stable where they underflow linearly."""
    e = dim - 1
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    log_tail = e * np.log1p(-edges[:-1])  # log P(F >= lower edge)
    out = np.empty(n_bins)
    # bin k: log[tail(lo) - tail(hi)] = log_tail_lo + log1p(-tail(hi)/tail(lo))
    ratio = np.exp(e * np.log1p(-edges[1:-1]) - log_tail[:-1])
    out[:-1] = log_tail[:-1] + np.log1p(-ratio)
    out[-1] = log_tail[-1]  # upper edge is 1, tail(1) = 0
    return out


def haar_bin_probability(bin_index: int, n_qubits: int, n_bins: int = DEFAULT_BINS) -> float:
    """Haar-ensemble probability of fidelity landing in the given bin."""
    if not 0 <= bin_index < n_bins:
        raise ValueError(f"bin_index {bin_index} outside [0, {n_bins})")
    return float(_haar_bin_probabilities(1 << n_qubits, n_bins)[bin_index])


def idle_baseline(n_qubits: int, n_bins: int = DEFAULT_BINS) -> float:
    """(2^N - 1) ln(n_bins): the KL score of a circuit pinned at fidelity 1."""
    if n_qubits < 1 or n_bins < 2:
        raise ValueError("need n_qubits >= 1 and n_bins >= 2")
    return ((1 << n_qubits) - 1) * math.log(n_bins)


def _idle_baseline_dim(dim: int, n_bins: int) -> float:
    return (dim - 1) * math.log(n_bins)


def fidelity_samples(ansatz, n_samples: int, seed: int) -> np.ndarray:
    """Fidelities of ``n_samples`` independently drawn state pairs."""
    m, dim = ansatz.n_params, ansatz.dim
    buf1 = np.empty(dim, dtype=np.complex128)
    buf2 = np.empty(dim, dtype=np.complex128)
    out = np.empty(n_samples)
    for i in range(n_samples):
        theta = sample_rng(seed, _EXPR_STREAM, i).uniform(0.0, TWO_PI, (2, m))
        ansatz.prepare_into(buf1, theta[0])
        ansatz.prepare_into(buf2, theta[1])
        out[i] = _kernels.state_fidelity(buf1, buf2)
    return out


def expressibility_of_fidelities(
    fidelities: np.ndarray,
    dim: int,
    n_bins: int = DEFAULT_BINS,
    seed: int = 0,
) -> ExpressibilityResult:
    """Histogram the fidelities and score them against the Haar reference."""
    n_samples = fidelities.shape[0]
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    counts, _ = np.histogram(np.clip(fidelities, 0.0, 1.0), bins=edges)
    p = counts / n_samples
    log_q = _log_haar_bin_probabilities(dim, n_bins)
    nz = counts > 0
    expr = float(np.sum(p[nz] * (np.log(p[nz]) - log_q[nz])))
    expr = max(expr, 0.0)
    baseline = _idle_baseline_dim(dim, n_bins)
    relative = -math.log(expr / baseline) if expr > 0 else math.inf
    return ExpressibilityResult(
        expr=expr,
        relative=relative,
        n_samples=n_samples,
        seed=seed,
        histogram=FidelityHistogram(n_bins, counts, edges),
    )


def expressibility(
    ansatz,
    n_samples: int | None = None,
    seed: int = 0,
    n_bins: int = DEFAULT_BINS,
) -> ExpressibilityResult:
    """Expressibility of an ansatz from uniformly sampled parameter pairs."""
    if n_samples is None:
        n_samples = default_sample_count(ansatz.dim)
    if n_samples < 1:
        raise ValueError("need at least one sample")
    f = fidelity_samples(ansatz, n_samples, seed)
    return expressibility_of_fidelities(f, ansatz.dim, n_bins, seed)


def meyer_wallach_q(state: Statevector) -> float:
    """Average single-qubit mixedness of a pure state, in [0, 1].

    Evaluates (4/n) sum_j D(iota_j(0) psi, iota_j(1) psi) with D the
    squared-wedge distance; 0 for product states, 1 for e.g. Bell pairs.
    """
    if state.n_qubits < 2:
        raise ValueError("measure undefined for a single qubit")
    return _kernels.meyer_wallach_q(state.amplitudes, state.n_qubits)


def entangling_capability(
    ansatz,
    n_samples: int | None = None,
    seed: int = 0,
) -> EntanglingResult:
    """Mean Meyer-Wallach measure over uniformly sampled parameters."""
    if n_samples is None:
        n_samples = default_sample_count(ansatz.dim)
    if n_samples < 1:
        raise ValueError("need at least one sample")
    m, dim = ansatz.n_params, ansatz.dim
    n_qubits = int(math.log2(dim))
    if (1 << n_qubits) != dim or n_qubits < 2:
        raise ValueError("entangling capability needs a 2^n-dimensional state, n >= 2")
    buf = np.empty(dim, dtype=np.complex128)
    values = np.empty(n_samples)
    for i in range(n_samples):
        theta = sample_rng(seed, _CAP_STREAM, i).uniform(0.0, TWO_PI, m)
        ansatz.prepare_into(buf, theta)
        values[i] = _kernels.meyer_wallach_q(buf, n_qubits)
    return EntanglingResult(capability=float(np.mean(values)), n_samples=n_samples, seed=seed)


def haar_random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random pure state: normalized standard complex Gaussians."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
