"""Backend selection for the set kernels.

The compiled extension is preferred when it imported cleanly; setting
the environment variable SFKIT_PURE_PYTHON to a non-empty value forces
the pure-Python twin.  Both backends expose the same functions over the
same int-mask inputs and return identical values, which is asserted by
the parity tests and measured by benchmarks/bench_kernels.py.
"""

import os

if os.environ.get("SFKIT_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

pack = _impl.pack
greedy_disjoint = _impl.greedy_disjoint
first_disjoint = _impl.first_disjoint
intersection_sizes = _impl.intersection_sizes
superset_flags = _impl.superset_flags
element_counts = _impl.element_counts
find_k_sunflower = _impl.find_k_sunflower
