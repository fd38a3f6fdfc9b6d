""" Value objects and errors of the evolution algebra SDK """

from .algebra import (
    SUPPORTED_DIMENSIONS,
    BasisChange,
    EvolutionAlgebra,
    Matrix,
    StructuralInvariants,
    Tolerances,
    Vector,
    to_matrix,
)
from .base_model import BaseModel
from .classification import (
    CaseParams,
    Class2,
    Classification2,
    Classification3,
    Label2,
    Label3,
    TableEntry,
    TableRow,
)
from .dynamics import FixedPointMethod, FixedPointReport, SolverOptions
from .errors import (
    ClassificationFailedError,
    DivisionByNearZeroError,
    EvolutionAlgebraError,
    InvalidInputError,
    NoFixedPointError,
    NotNaturalError,
    RankNotOneError,
    SingularChangeError,
    ToleranceViolationError,
)
from .iso import IsoOptions, IsoReason, IsoResult
from .report import Report
