# File: models/coefficients.py

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class FrameCoefficients:
    """
    Parameters of one frame element.

    Args:
        composition (Composition): The composition a.
        nu (Fraction): nu(a); a_0 is ignored.
        f (dict): k -> f_k(a) for 1 <= k <= r, with f_r = 1 / nu.
        multipliers (dict): (k, h) -> m_{k,k-h}(a) for 1 <= h <= k - 1.
        interior (dict): (k, h) -> f_{k,k-h}(a) = m_{k,k-h} f_{k-h}; h = 0 gives f_k.
    """
    composition: object
    nu: Fraction
    f: dict = field(default_factory=dict)
    multipliers: dict = field(default_factory=dict)
    interior: dict = field(default_factory=dict)

    def f_interior(self, k, h):
        if (k, h) not in self.interior:
            raise KeyError(f"f_{{{k},{k - h}}} is undefined for rank {self.composition.r}")
        return self.interior[(k, h)]

    def multiplier(self, k, h):
        if (k, h) not in self.multipliers:
            raise KeyError(f"m_{{{k},{k - h}}} is undefined for rank {self.composition.r}")
        return self.multipliers[(k, h)]
