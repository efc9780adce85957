"""Exact computations for torus actions on projective space.

Chamber decompositions and GIT quotients of the moment polytope, labeled
coherent subdivisions (the combinatorial types of Chow fibers), momentum
charge assignments, and perturb-translate-specialize limits over truncated
power series.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .action import WeightSystem  # noqa: E402

__all__ = ["WeightSystem", "__version__"]
