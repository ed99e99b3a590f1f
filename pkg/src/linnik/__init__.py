"""Integer points on spheres x^2+y^2+z^2 = d: exact enumeration, the
class-group trajectory dynamics over the prime 5, Ramanujan-graph
spectra of the spheres mod q, non-backtracking walk statistics, and
equidistribution diagnostics, with a CLI front end (``linnik``)."""

__version__ = "0.1.0"

from ._kernels import backend_name  # noqa: F401
from .errors import (  # noqa: F401
    BudgetError,
    DimensionCapError,
    LinnikError,
    PreconditionError,
    StepCountError,
)
