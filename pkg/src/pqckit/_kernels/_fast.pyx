# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled statevector kernels.

Same contracts as pqckit._kernels.pure; that module is the readable
reference. Bit positions, not qubit numbers, index the amplitudes.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

ctypedef double complex cplx

DISTANCE_FLOOR = 1e-24
cdef double _FLOOR = 1e-24


cdef void _rotation(cplx* a, Py_ssize_t dim, int axis, int tbit, double theta) noexcept nogil:
    cdef double h = theta * 0.5
    cdef double c = cos(h), s = sin(h)
    cdef Py_ssize_t g, i0, i1
    cdef Py_ssize_t half = dim >> 1
    cdef Py_ssize_t tk = (<Py_ssize_t>1) << tbit
    cdef cplx x0, x1, e0, e1
    if axis == 2:
        e0 = c - 1j * s
        e1 = c + 1j * s
    for g in range(half):
        i0 = ((g >> tbit) << (tbit + 1)) | (g & (tk - 1))
        i1 = i0 | tk
        x0 = a[i0]
        x1 = a[i1]
        if axis == 0:
            a[i0] = c * x0 - 1j * (s * x1)
            a[i1] = c * x1 - 1j * (s * x0)
        elif axis == 1:
            a[i0] = c * x0 - s * x1
            a[i1] = s * x0 + c * x1
        else:
            a[i0] = e0 * x0
            a[i1] = e1 * x1


cdef void _dense(cplx* a, const cplx* blk, const long long* offs,
                 const long long* special, Py_ssize_t nspecial,
                 long long cmask, int nfree, Py_ssize_t k, cplx* scratch) noexcept nogil:
    cdef Py_ssize_t r, j, p, q, base
    cdef Py_ssize_t nb = (<Py_ssize_t>1) << nfree
    cdef cplx acc
    for r in range(nb):
        base = r
        for j in range(nspecial):
            p = special[j]
            base = ((base >> p) << (p + 1)) | (base & (((<Py_ssize_t>1) << p) - 1))
        base |= cmask
        for q in range(k):
            scratch[q] = a[base + offs[q]]
        for p in range(k):
            acc = 0
            for q in range(k):
                acc = acc + blk[p * k + q] * scratch[q]
            a[base + offs[p]] = acc


def apply_rotation(cplx[::1] amps, int axis, int tbit, double theta):
    _rotation(&amps[0], amps.shape[0], axis, tbit, theta)


def apply_dense(cplx[::1] amps, const cplx[:, ::1] block, const long long[::1] offs,
                const long long[::1] special, long long cmask, int nfree):
    cdef Py_ssize_t k = block.shape[0]
    scratch_arr = np.empty(k, dtype=np.complex128)
    cdef cplx[::1] scratch = scratch_arr
    cdef const long long* sp = &special[0] if special.shape[0] > 0 else NULL
    _dense(&amps[0], &block[0, 0], &offs[0], sp, special.shape[0],
           cmask, nfree, k, &scratch[0])


def run_program(cplx[::1] amps,
                const int[::1] kinds, const int[::1] a0, const int[::1] a1, const int[::1] a2,
                const cplx[::1] block_flat, const long long[::1] block_off, const int[::1] block_dim,
                const long long[::1] offs_flat, const long long[::1] offs_off,
                const long long[::1] special_flat, const long long[::1] special_off,
                const long long[::1] cmasks, const int[::1] nfrees,
                const double[::1] theta):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t i, g, k, ns
    cdef cplx scratch[4096]
    cdef const long long* sp
    with nogil:
        for i in range(dim):
            amps[i] = 0
        amps[0] = 1
        for i in range(kinds.shape[0]):
            if kinds[i] == 0:
                _rotation(&amps[0], dim, a0[i], a1[i], theta[a2[i]])
            else:
                g = a0[i]
                k = block_dim[g]
                ns = special_off[g + 1] - special_off[g]
                sp = &special_flat[special_off[g]] if ns > 0 else NULL
                _dense(&amps[0], &block_flat[block_off[g]], &offs_flat[offs_off[g]],
                       sp, ns, cmasks[g], nfrees[g], k, scratch)


def state_fidelity(const cplx[::1] a, const cplx[::1] b):
    cdef cplx ip = 0
    cdef Py_ssize_t i
    with nogil:
        for i in range(a.shape[0]):
            ip = ip + a[i].conjugate() * b[i]
    return ip.real * ip.real + ip.imag * ip.imag


cdef double _pair_distance(const cplx* u, const cplx* v, Py_ssize_t n) noexcept nogil:
    cdef double nu = 0.0, nv = 0.0, wn = 0.0
    cdef cplx ip = 0, lam, w
    cdef Py_ssize_t i
    for i in range(n):
        nu += u[i].real * u[i].real + u[i].imag * u[i].imag
        nv += v[i].real * v[i].real + v[i].imag * v[i].imag
        ip = ip + u[i].conjugate() * v[i]
    if nu < nv:
        # project u onto v instead; <v|u> = conj(<u|v>)
        if nv < 1e-290:
            return 0.0
        lam = ip.conjugate() / nv
        for i in range(n):
            w = u[i] - lam * v[i]
            wn += w.real * w.real + w.imag * w.imag
        wn *= nv
    else:
        if nu < 1e-290:
            return 0.0
        lam = ip / nu
        for i in range(n):
            w = v[i] - lam * u[i]
            wn += w.real * w.real + w.imag * w.imag
        wn *= nu
    return 0.0 if wn < _FLOOR else wn


def pair_distance(const cplx[::1] u, const cplx[::1] v):
    return _pair_distance(&u[0], &v[0], u.shape[0])


def meyer_wallach_q(const cplx[::1] amps, int n_qubits):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t half = dim >> 1
    cdef Py_ssize_t j, g, i0, i1, tbit, tk
    cdef double acc = 0.0
    u_arr = np.empty(half, dtype=np.complex128)
    v_arr = np.empty(half, dtype=np.complex128)
    cdef cplx[::1] u = u_arr
    cdef cplx[::1] v = v_arr
    with nogil:
        for j in range(n_qubits):
            tbit = n_qubits - 1 - j
            tk = (<Py_ssize_t>1) << tbit
            for g in range(half):
                i0 = ((g >> tbit) << (tbit + 1)) | (g & (tk - 1))
                i1 = i0 | tk
                u[g] = amps[i0]
                v[g] = amps[i1]
            acc += _pair_distance(&u[0], &v[0], half)
    return 4.0 * acc / n_qubits


def pauli_expectation(const cplx[::1] amps, const long long[::1] flips,
                      const cplx[:, ::1] phases, const double[::1] coefs):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t t, c
    cdef long long f
    cdef cplx total = 0, s
    with nogil:
        for t in range(coefs.shape[0]):
            s = 0
            f = flips[t]
            for c in range(dim):
                s = s + amps[c].conjugate() * phases[t, c] * amps[c ^ f]
            total = total + coefs[t] * s
    return complex(total)
