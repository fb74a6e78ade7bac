"""Container tying a reduced distance problem to its tensor bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..poly import Polynomial


@dataclass
class DistanceProblem:
    """A stratum-distance problem in reduced coordinates.

    The full squared distance splits as ``offset + min objective``; the
    offset collects the harmonic components that are simply dropped on the
    target stratum and do not depend on the optimization variables.
    """

    kind: str                                  # "sym2" | "elasticity" | "piezo"
    objective: Polynomial
    constraints: list = field(default_factory=list)   # [(Polynomial, "eq"/"ge")]
    offset: float = 0.0
    var_names: tuple = ()
    reference_voigt: np.ndarray | None = None
    minimizer_voigt: Callable[[np.ndarray], np.ndarray] | None = None
    tensor_distance: Callable[[np.ndarray], float] | None = None
    natural_scale: float = 1.0   # magnitude of the optimal coordinates

    @property
    def n(self) -> int:
        return self.objective.n

    def total_distance(self, bound: float) -> float:
        """Stratum distance from a certified bound on the reduced objective."""
        return float(np.sqrt(max(0.0, self.offset + bound)))
