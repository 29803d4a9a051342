"""Exact quadratic-field invariants, certified L-values, Minkowski-lattice
counts, Bruhat-Tits fixed-vertex counts, and the bound-verification scan."""

try:
    from ._qfscan import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _qfscan import *  # noqa: F401,F403  (build-tree layout)

__all__ = [name for name in dir() if not name.startswith("_")]
