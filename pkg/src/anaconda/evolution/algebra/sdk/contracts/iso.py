""" Isomorphism search options and results. """

from enum import Enum
from typing import Optional

from pydantic import NonNegativeInt, PositiveFloat, PositiveInt

from .algebra import BasisChange
from .base_model import BaseModel


class IsoReason(str, Enum):
    INVARIANTS_DIFFER = "invariants-differ"
    EXACT_FAMILY = "exact-family"
    LEAST_SQUARES = "least-squares"
    BUDGET_EXHAUSTED = "budget-exhausted"


class IsoOptions(BaseModel):
    """
    Isomorphism search settings.

    Attributes
    ----------
    restarts: int
        Least-squares starting points.
    seed: int
        Seed of the starting point generator.
    max_iter: int
        Iteration budget per least-squares run, scaled by the number of unknowns.
    include_exact_family: bool
        Try permutation-times-diagonal witnesses in closed form first.
    include_least_squares: bool
        Run the numerical search when the exact family fails.
    max_condition: float
        Candidates whose condition number exceeds this are discarded.
    """

    restarts: PositiveInt = 256
    seed: NonNegativeInt = 0
    max_iter: PositiveInt = 200
    include_exact_family: bool = True
    include_least_squares: bool = True
    max_condition: PositiveFloat = 1e8


class IsoResult(BaseModel):
    """
    Outcome of an isomorphism search.

    The residual is the best verification residual seen, or None when no candidate was verified at all.
    """

    found: bool
    witness: Optional[BasisChange] = None
    residual: Optional[float] = None
    reason: IsoReason
