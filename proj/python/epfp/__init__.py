"""Equilibrium-problem / fixed-point iteration toolkit.

Thin python surface over the C++ core: R^n vectors and convex projections,
operator-class audits, equilibrium resolvents, Ishikawa-type iteration
schemes, and convergence certificates.
"""

from ._epfp import *  # noqa: F401,F403
from ._epfp import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
