"""Exact series engine for curve-counting invariants of holomorphic symplectic 4-folds."""
from hksym.errors import HksymError
from hksym.kernel import BACKEND
from hksym.series import QYSeries, YPoly, YRat, eta_power

__all__ = ["BACKEND", "HksymError", "QYSeries", "YPoly", "YRat", "eta_power"]
__version__ = "0.1.0"
