"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [repeats]

Times the operations that dominate the sweeps: full circuit preparation,
state-pair fidelity, the Meyer-Wallach measure, and Pauli expectation
values, on both backends, plus an end-to-end expressibility estimate.
"""

import sys
import time

import numpy as np

from pqckit._kernels import pure
from pqckit.circuit import CircuitTemplate, compile_program, random_configuration
from pqckit.gates import EntanglerKind
from pqckit.hamiltonian import _pack, bundled_hamiltonian

try:
    from pqckit._kernels import _fast as fast
except ImportError:
    fast = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def program_args(prog, theta):
    return (
        prog.kinds, prog.a0, prog.a1, prog.a2,
        prog.block_flat, prog.block_off, prog.block_dim,
        prog.offs_flat, prog.offs_off, prog.special_flat, prog.special_off,
        prog.cmasks, prog.nfrees, theta,
    )


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    rng = np.random.default_rng(0)
    backends = [("pure", pure)] + ([("fast", fast)] if fast else [])

    rows = []
    for n, layers, ent in ((4, 4, EntanglerKind.CNOT_CHAIN), (8, 2, EntanglerKind.DIAMOND)):
        tpl = CircuitTemplate(n, layers, ent)
        cfg = random_configuration(tpl, tpl.max_rotations, 1)
        prog = compile_program(cfg)
        theta = rng.uniform(0, 2 * np.pi, cfg.m)
        buf = np.empty(1 << n, dtype=np.complex128)
        for name, impl in backends:
            t = timeit(lambda: impl.run_program(buf, *program_args(prog, theta)), repeats)
            rows.append((f"run_program N={n} L={layers} {ent.value}", name, t))

    amps = rng.normal(size=256) + 1j * rng.normal(size=256)
    amps = np.ascontiguousarray(amps / np.linalg.norm(amps))
    other = np.ascontiguousarray(np.roll(amps, 3))
    for name, impl in backends:
        rows.append(("fidelity dim=256", name,
                     timeit(lambda: impl.state_fidelity(amps, other), repeats * 5)))
        rows.append(("meyer_wallach N=8", name,
                     timeit(lambda: impl.meyer_wallach_q(amps, 8), repeats)))

    h = bundled_hamiltonian("oh_8q")
    flips, phases, coefs = _pack(h)
    for name, impl in backends:
        rows.append(("pauli_expectation OH 105 terms", name,
                     timeit(lambda: impl.pauli_expectation(amps, flips, phases, coefs), repeats)))

    print(f"{'operation':<40} {'backend':<8} {'time':>12}")
    print("-" * 62)
    speedups = {}
    for op, name, t in rows:
        print(f"{op:<40} {name:<8} {t * 1e6:>10.2f}us")
        speedups.setdefault(op, {})[name] = t
    if fast:
        print("-" * 62)
        for op, times in speedups.items():
            if "fast" in times:
                print(f"{op:<40} speedup  {times['pure'] / times['fast']:>9.1f}x")


if __name__ == "__main__":
    main()
