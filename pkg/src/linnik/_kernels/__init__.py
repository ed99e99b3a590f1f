"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled Cython extension ``_native`` is preferred when it was
built; setting ``LINNIK_PURE=1`` (or a failed extension import) selects
the pure backend.  Both backends implement the same five functions with
bit-identical results:

    sweep_points(d)        lattice points of norm d, lex order
    sweep_count(d)         their number, without materializing
    step_table(points)     per-point integral images under the six letters
    nb_visit_hist(...)     exact visit-count histogram of all marked
                           non-backtracking paths of a given length
    nb_visit_samples(...)  visit counts of sampled non-backtracking walks

``benchmarks/bench_kernels.py`` times one backend against the other.
"""

import os

from . import pure as _pure

if os.environ.get("LINNIK_PURE", "") not in ("", "0"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

sweep_points = _impl.sweep_points
sweep_count = _impl.sweep_count
step_table = _impl.step_table
nb_visit_hist = _impl.nb_visit_hist
nb_visit_samples = _impl.nb_visit_samples


def backend_name():
    return BACKEND


def all_backends():
    """(name, module) pairs for every importable backend."""
    pairs = [("pure", _pure)]
    try:
        from . import _native  # type: ignore[attr-defined]

        pairs.append(("native", _native))
    except ImportError:
        pass
    return pairs
