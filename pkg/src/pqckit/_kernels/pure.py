"""Numpy reference implementations of the hot statevector kernels.

Mirrors the compiled backend in ``pqckit._kernels._fast``; used when the
extension is unavailable or when ``PQCKIT_KERNELS=pure`` is set.

Index convention throughout: amplitudes are indexed big-endian (qubit 0 is
the most significant bit), and kernels receive *bit positions* (``n - 1 - q``
for qubit ``q``), not qubit numbers.
"""

from __future__ import annotations

import math

import numpy as np

# Squared-wedge distances below this floor are numerical noise of the
# projection formula (product states land near 1e-32) and are reported as
# exactly zero, so that non-entangling circuits measure capability 0.
DISTANCE_FLOOR = 1e-24


def apply_rotation(amps: np.ndarray, axis: int, tbit: int, theta: float) -> None:
    """Apply exp(-i theta sigma/2) on the qubit at bit position ``tbit``, in place."""
    half = theta * 0.5
    c, s = math.cos(half), math.sin(half)
    g = np.arange(amps.shape[0] >> 1, dtype=np.int64)
    i0 = ((g >> tbit) << (tbit + 1)) | (g & ((1 << tbit) - 1))
    i1 = i0 | (1 << tbit)
    a0 = amps[i0]
    a1 = amps[i1]
    if axis == 0:  # X
        amps[i0] = c * a0 - 1j * (s * a1)
        amps[i1] = c * a1 - 1j * (s * a0)
    elif axis == 1:  # Y
        amps[i0] = c * a0 - s * a1
        amps[i1] = s * a0 + c * a1
    else:  # Z
        amps[i0] = (c - 1j * s) * a0
        amps[i1] = (c + 1j * s) * a1


def apply_dense(
    amps: np.ndarray,
    block: np.ndarray,
    offs: np.ndarray,
    special: np.ndarray,
    cmask: int,
    nfree: int,
) -> None:
    """Apply a dense block unitary, optionally gated on control bits, in place.

    ``offs`` are the scatter offsets of the block's basis states relative to a
    base index; ``special`` lists the occupied bit positions (targets and
    controls) in ascending order; ``cmask`` holds the control bits that must
    be 1; ``nfree`` counts the remaining freely-varying bits.
    """
    base = np.arange(1 << nfree, dtype=np.int64)
    for p in special:
        base = ((base >> p) << (p + 1)) | (base & ((1 << p) - 1))
    base |= cmask
    idx = base[:, None] + offs[None, :]
    amps[idx] = amps[idx] @ block.T


def run_program(
    amps: np.ndarray,
    kinds: np.ndarray,
    a0: np.ndarray,
    a1: np.ndarray,
    a2: np.ndarray,
    block_flat: np.ndarray,
    block_off: np.ndarray,
    block_dim: np.ndarray,
    offs_flat: np.ndarray,
    offs_off: np.ndarray,
    special_flat: np.ndarray,
    special_off: np.ndarray,
    cmasks: np.ndarray,
    nfrees: np.ndarray,
    theta: np.ndarray,
) -> None:
    """Run a compiled gate program on ``amps``, starting from |0...0>."""
    amps[:] = 0.0
    amps[0] = 1.0
    for i in range(kinds.shape[0]):
        if kinds[i] == 0:
            apply_rotation(amps, int(a0[i]), int(a1[i]), float(theta[a2[i]]))
        else:
            g = int(a0[i])
            k = int(block_dim[g])
            blk = block_flat[block_off[g] : block_off[g] + k * k].reshape(k, k)
            offs = offs_flat[offs_off[g] : offs_off[g] + k]
            special = special_flat[special_off[g] : special_off[g + 1]]
            apply_dense(amps, blk, offs, special, int(cmasks[g]), int(nfrees[g]))


def state_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2."""
    ip = np.vdot(a, b)
    return float(ip.real * ip.real + ip.imag * ip.imag)


def pair_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Squared-wedge distance |u|^2 |v|^2 - |<u|v>|^2, evaluated stably.

    Computed as |u|^2 * |v - proj_u(v)|^2 with the projection removed
    elementwise, which avoids the catastrophic cancellation of the closed
    form when u and v are nearly parallel. Results below DISTANCE_FLOOR are
    snapped to exactly zero.
    """
    nu = float(np.sum(u.real * u.real + u.imag * u.imag))
    nv = float(np.sum(v.real * v.real + v.imag * v.imag))
    if nu < nv:
        u, v = v, u
        nu, nv = nv, nu
    if nu < 1e-290:
        return 0.0
    lam = np.vdot(u, v) / nu
    w = v - lam * u
    d = nu * float(np.sum(w.real * w.real + w.imag * w.imag))
    return 0.0 if d < DISTANCE_FLOOR else d


def meyer_wallach_q(amps: np.ndarray, n_qubits: int) -> float:
    """Average squared-wedge distance over single-qubit bipartitions, times 4/n."""
    psi = amps.reshape((2,) * n_qubits)
    acc = 0.0
    for j in range(n_qubits):
        m = np.moveaxis(psi, j, 0)
        acc += pair_distance(np.ascontiguousarray(m[0]).ravel(), np.ascontiguousarray(m[1]).ravel())
    return 4.0 * acc / n_qubits


def pauli_expectation(
    amps: np.ndarray,
    flips: np.ndarray,
    phases: np.ndarray,
    coefs: np.ndarray,
) -> complex:
    """Sum_t coefs[t] * <psi| P_t |psi> for packed Pauli strings.

    ``phases[t, c]`` is the phase P_t attaches when mapping basis state
    ``c ^ flips[t]`` onto ``c``.
    """
    idx = np.arange(amps.shape[0], dtype=np.int64)
    total = 0.0 + 0.0j
    for t in range(coefs.shape[0]):
        perm = idx ^ flips[t]
        total += coefs[t] * np.vdot(amps, phases[t] * amps[perm])
    return complex(total)
