"""Nonsymmetric logarithmic-spiral vortex sheets for the 2D Euler equations.

Thin python surface over the C++ core: system matrices and their closed-form
determinants, large-tightness limits, Newton continuation of the nonsymmetric
branches, weight/exponent recovery, and spiral geometry sampling.
"""

from ._core import *  # noqa: F401,F403
