"""Distance distributions expressed through their survival function.

``survival[l]`` is the probability that a node's shortest-path distance to
the target (a sample supernode or a single node) exceeds ``l``. The value
``residual`` is the mass beyond the computed range; once the survival
sequence has converged it is the unreachable fraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TOL = 1e-9


@dataclass(frozen=True)
class DistanceDistribution:
    survival: np.ndarray
    residual: float

    def __post_init__(self):
        survival = np.ascontiguousarray(self.survival, dtype=np.float64)
        if survival.ndim != 1 or survival.size == 0:
            raise ValueError("survival must be a non-empty 1-d sequence")
        if np.any(survival < -_TOL) or np.any(survival > 1.0 + _TOL):
            raise ValueError("survival values must lie in [0, 1]")
        if np.any(np.diff(survival) > _TOL):
            raise ValueError("survival must be non-increasing")
        residual = float(self.residual)
        if not -_TOL <= residual <= 1.0 + _TOL:
            raise ValueError(f"residual must lie in [0, 1], got {residual}")
        if abs(residual - survival[-1]) > _TOL:
            raise ValueError("residual must equal the final survival value")
        # scrub float noise so downstream pmf views are exactly non-negative
        survival = np.minimum.accumulate(np.clip(survival, 0.0, 1.0))
        survival.setflags(write=False)
        object.__setattr__(self, "survival", survival)
        object.__setattr__(self, "residual", min(max(residual, 0.0), 1.0))

    @classmethod
    def from_pmf(cls, probs, residual: float = 0.0) -> "DistanceDistribution":
        """Build from point masses ``probs[l] = P(d = l)`` plus residual mass."""
        probs = np.asarray(probs, dtype=np.float64)
        total = probs.sum() + residual
        if abs(total - 1.0) > _TOL:
            raise ValueError(f"pmf plus residual sums to {total}, not 1")
        survival = 1.0 - np.cumsum(probs)
        survival[-1] = residual
        return cls(survival, residual)

    @property
    def max_distance(self) -> int:
        return self.survival.shape[0] - 1

    def pmf(self) -> np.ndarray:
        """Point masses P(d = l) for l = 0 .. max_distance."""
        values = -np.diff(self.survival, prepend=1.0)
        return np.clip(values, 0.0, 1.0)

    @property
    def finite_mass(self) -> float:
        return 1.0 - self.residual

    def finite_pmf(self) -> np.ndarray:
        """Pmf conditioned on the distance being within the computed range."""
        mass = self.finite_mass
        if mass <= 0.0:
            raise ValueError("no finite-distance mass to condition on")
        return self.pmf() / mass
