""" Fixed-point solver options and reports. """

from enum import Enum
from typing import Optional, Tuple

from pydantic import NonNegativeInt, PositiveFloat, PositiveInt, model_validator

from .algebra import Vector
from .base_model import BaseModel


class FixedPointMethod(str, Enum):
    CLOSED_FORM = "closed-form"
    MULTISTART_NEWTON = "multistart-newton"


class SolverOptions(BaseModel):
    """
    Multistart Newton settings.

    Attributes
    ----------
    restarts: int
        Number of quasi-random starting points.
    radius: float
        Starting points are drawn from the box [-radius, radius]^n.
    seed: int
        Seed of the scrambled Halton sequence.
    max_iter: int
        Newton iterations per start.
    merge_radius: float
        Points closer than this in the max-norm are reported once.
    """

    restarts: PositiveInt = 64
    radius: PositiveFloat = 10.0
    seed: NonNegativeInt = 0
    max_iter: PositiveInt = 100
    merge_radius: PositiveFloat = 1e-6


class FixedPointReport(BaseModel):
    """
    Non-zero fixed points of the evolution operator.

    Attributes
    ----------
    points: Tuple[Vector, ...]
        Distinct fixed points sorted lexicographically.
    residuals: Tuple[float, ...]
        max |F(x) - x| of each point.
    complete: bool
        True only when the points come from a closed form.
    method: FixedPointMethod
        How the points were obtained.
    family: Optional[str]
        The canonical family recognised for closed forms.
    annotations: Tuple[str, ...]
        Remarks about the solution set.
    """

    points: Tuple[Vector, ...] = ()
    residuals: Tuple[float, ...] = ()
    complete: bool
    method: FixedPointMethod
    family: Optional[str] = None
    annotations: Tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_lengths(self) -> "FixedPointReport":
        if len(self.points) != len(self.residuals):
            raise ValueError("every fixed point needs exactly one residual")
        return self
