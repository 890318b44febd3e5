"""Independent reference implementations used only by the tests.

Each oracle takes a different computational route than the production code:
explicit double sums, reduced density matrices, kron-product operators,
arbitrary-precision series. Production changes cannot silently drag the
expected values along.
"""

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def wedge_distance_double_sum(u, v) -> float:
    """(1/2) sum_{ij} |u_i v_j - u_j v_i|^2 by direct enumeration."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    acc = 0.0
    for i in range(u.size):
        for j in range(v.size):
            acc += abs(u[i] * v[j] - u[j] * v[i]) ** 2
    return 0.5 * acc


def reduced_purity(amps, n_qubits: int, j: int) -> float:
    """tr(rho_j^2) from the explicit 2x2 reduced density matrix of qubit j."""
    psi = np.asarray(amps, dtype=complex).reshape((2,) * n_qubits)
    m = np.moveaxis(psi, j, 0).reshape(2, -1)
    rho = m @ m.conj().T
    return float(np.real(np.trace(rho @ rho)))


def meyer_wallach_from_purities(amps, n_qubits: int) -> float:
    """Q = 2 (1 - mean single-qubit purity)."""
    purities = [reduced_purity(amps, n_qubits, j) for j in range(n_qubits)]
    return 2.0 * (1.0 - float(np.mean(purities)))


def dense_from_terms(terms, n_qubits: int) -> np.ndarray:
    """Kron-product construction of sum_t h_t P_t (qubit 0 = leftmost factor)."""
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for ops, coef in terms:
        m = np.eye(1, dtype=complex)
        for ch in ops:
            m = np.kron(m, PAULI[ch])
        out += coef * m
    return out


def gate_on_register(matrix: np.ndarray, targets, n_qubits: int) -> np.ndarray:
    """Dense 2^n operator that applies ``matrix`` on ``targets`` (wire 0 of the
    gate goes to targets[0], which is the most significant gate bit)."""
    dim = 1 << n_qubits
    k = len(targets)
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        sub = 0
        for w, q in enumerate(targets):
            bit = (col >> (n_qubits - 1 - q)) & 1
            sub |= bit << (k - 1 - w)
        for subr in range(1 << k):
            amp = matrix[subr, sub]
            if amp == 0:
                continue
            row = col
            for w, q in enumerate(targets):
                bit = (subr >> (k - 1 - w)) & 1
                pos = n_qubits - 1 - q
                row = (row & ~(1 << pos)) | (bit << pos)
            out[row, col] += amp
    return out


def bessel_series(order: int, x: float) -> float:
    """Ascending power series for J_n(x) in arbitrary precision.

    J_n(x) = sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!), summed until terms
    vanish at 50 digits (double-precision partial sums lose ~1e-9 to
    cancellation at x = 20, hence mpmath).
    """
    import mpmath

    n = abs(order)
    with mpmath.workdps(50):
        xh = mpmath.mpf(x) / 2
        total = mpmath.mpf(0)
        for k in range(200):
            term = (-1) ** k * xh ** (n + 2 * k) / (
                mpmath.factorial(k) * mpmath.factorial(n + k)
            )
            total += term
            if abs(term) < mpmath.mpf(10) ** -45 and k > n:
                break
        value = float(total)
    if order < 0 and n % 2 == 1:
        value = -value
    return value


def histogram_kl(counts, probs) -> float:
    """KL divergence of empirical bin counts against reference probabilities."""
    n = counts.sum()
    acc = 0.0
    for c, q in zip(counts, probs):
        if c > 0:
            p = c / n
            acc += p * np.log(p / q)
    return float(acc)
