"""Finite commutative hypergroups: axiom validation, Haar measure, character
tables, the unitary hypergroup Fourier transform, subobjects, and an exact
state-vector simulation of the hidden-subhypergroup algorithm.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from hyperg._core import *  # noqa: F401,F403
from hyperg._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
