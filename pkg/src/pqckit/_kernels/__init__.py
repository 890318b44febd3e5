"""Hot statevector kernels: compiled extension with a numpy fallback.

The compiled backend is selected automatically when the extension built;
set ``PQCKIT_KERNELS=pure`` to force the numpy fallback. Both backends are
importable side by side (see ``benchmarks/bench_kernels.py``).
"""

import os

from . import pure

if os.environ.get("PQCKIT_KERNELS", "").lower() == "pure":
    _impl = pure
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND = "pure" if _impl is pure else "fast"
DISTANCE_FLOOR = pure.DISTANCE_FLOOR

apply_rotation = _impl.apply_rotation
apply_dense = _impl.apply_dense
run_program = _impl.run_program
state_fidelity = _impl.state_fidelity
pair_distance = _impl.pair_distance
meyer_wallach_q = _impl.meyer_wallach_q
pauli_expectation = _impl.pauli_expectation
