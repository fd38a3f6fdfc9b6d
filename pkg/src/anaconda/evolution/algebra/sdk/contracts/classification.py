""" Canonical classes and classification results. """

from enum import Enum
from typing import Optional, Tuple

from pydantic import ConfigDict, Field, model_validator

from .algebra import BasisChange, Matrix, Vector
from .base_model import BaseModel

DEGENERATE_E6_BOUND: float = 1e-12


class Label2(str, Enum):
    ZERO = "Zero"
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    E7 = "E7"


class Label3(str, Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"
    E9 = "E9"
    E10 = "E10"
    E11 = "E11"
    E12 = "E12"
    E13 = "E13"


PARAMETER_COUNTS = {Label2.E6: 2, Label2.E7: 1}


class Class2(BaseModel):
    """
    A two-dimensional canonical class.

    E6 carries (a2, a3) with 1 - a2 * a3 != 0, E7 carries (a4,), every other label carries no parameters.
    """

    label: Label2
    params: Optional[Tuple[float, ...]] = None

    @model_validator(mode="after")
    def _check_params(self) -> "Class2":
        expected: Optional[int] = PARAMETER_COUNTS.get(self.label)
        if expected is None:
            if self.params is not None:
                raise ValueError(f"{self.label.value} takes no parameters")
            return self
        if self.params is None or len(self.params) != expected:
            raise ValueError(f"{self.label.value} takes exactly {expected} parameter(s)")
        if self.label == Label2.E6 and abs(1.0 - self.params[0] * self.params[1]) <= DEGENERATE_E6_BOUND:
            raise ValueError("E6 requires 1 - a2 * a3 != 0")
        return self

    def describe(self) -> str:
        if self.params is None:
            return self.label.value
        return f"{self.label.value}({', '.join(repr(value) for value in self.params)})"


class Classification2(BaseModel):
    canonical: Class2
    witness: BasisChange
    residual: float
    verified: bool


class CaseParams(BaseModel):
    """
    Parameters of a rank-one 3D algebra.

    a holds the pivot row in the pivot-permuted basis, c1 and c2 the multipliers of the remaining rows.
    pivot_perm[p] is the index of the old basis element that becomes f_p, pivot_row the pivot row as it
    appears in the input.
    """

    a1: float
    a2: float
    a3: float
    c1: float
    c2: float
    pivot_perm: Tuple[int, int, int]
    pivot_row: Vector


class Classification3(BaseModel):
    label: Label3
    witness: BasisChange
    residual: float
    verified: bool
    trace: Tuple[str, ...]


class TableEntry(BaseModel):
    """
    One fixed point of a canonical form with the class of its Jacobian algebra.

    matches_prediction is None when the closed-form prediction cannot be evaluated, note says why.
    """

    fixed_point: Vector
    jacobian_matrix: Matrix
    classified_as: str
    predicted: Optional[str] = None
    matches_prediction: Optional[bool] = None
    note: Optional[str] = None


class TableRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    klass: str = Field(alias="class")
    rows: Tuple[TableEntry, ...] = ()
    annotations: Tuple[str, ...] = ()
