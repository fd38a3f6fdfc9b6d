""" Classification of two-dimensional real evolution algebras. """

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from .algebra import DEFAULT_TOLERANCES, ArrayLike, derived_dim, structure_residual, transform
from .canonical import form_2d
from .contracts import (
    BasisChange,
    Class2,
    Classification2,
    EvolutionAlgebra,
    IsoOptions,
    Label2,
    SolverOptions,
    TableEntry,
    TableRow,
    Tolerances,
)
from .contracts.errors import (
    ClassificationFailedError,
    DivisionByNearZeroError,
    InvalidInputError,
    NoFixedPointError,
    NotNaturalError,
    SingularChangeError,
)
from .dynamics import DEFAULT_SOLVER_OPTIONS, fixed_points, jacobian_algebra
from .iso import DEFAULT_ISO_OPTIONS, iso_search

logger = logging.getLogger(__name__)

RANK_ONE_CANDIDATES: Tuple[Label2, ...] = (Label2.E1, Label2.E2, Label2.E3, Label2.E4, Label2.E5)
NEAR_ZERO_COORDINATE: float = 1e-9
PARAMETER_MATCH: float = 1e-6

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def make_class2(label: str, params: Optional[Sequence[float]] = None) -> Class2:
    """
    Builds a validated two-dimensional class.

    Raises
    ------
    InvalidInputError
        On an unknown label, a wrong parameter count or a degenerate E6.
    """

    try:
        return Class2(label=label, params=None if params is None else tuple(params))
    except ValidationError as error:
        raise InvalidInputError(f"invalid class {label}: {error.errors()[0]['msg']}") from error


def canonical2(klass: Class2) -> EvolutionAlgebra:
    return form_2d(klass)


def canonical_e6(b2: float, b3: float) -> Tuple[Class2, bool]:
    """E6 parameters in lexicographically smallest order, and whether they were swapped."""
    swapped: bool = (b3, b2) < (b2, b3)
    first, second = (b3, b2) if swapped else (b2, b3)
    return make_class2(Label2.E6.value, (first, second)), swapped


def _verified(
    algebra: EvolutionAlgebra, klass: Class2, witness: BasisChange, tolerances: Tolerances
) -> Optional[Classification2]:
    try:
        mapped: EvolutionAlgebra = transform(algebra, witness, tolerances)
    except (NotNaturalError, SingularChangeError):
        return None
    canonical: EvolutionAlgebra = canonical2(klass)
    residual: float = structure_residual(mapped, canonical)
    scale: float = max(1.0, float(np.max(np.abs(canonical.array))))
    if residual > tolerances.eps_residual * scale:
        return None
    return Classification2(canonical=klass, witness=witness, residual=residual, verified=True)


def _normalize_full_rank(algebra: EvolutionAlgebra, tolerances: Tolerances) -> Tuple[Class2, BasisChange]:
    matrix: np.ndarray = algebra.array
    diagonal_zero: np.ndarray = np.abs(np.diag(matrix)) <= tolerances.eps_sign * float(np.max(np.abs(matrix)))

    if not diagonal_zero.any():
        m11, m12, m21, m22 = matrix[0, 0], matrix[0, 1], matrix[1, 0], matrix[1, 1]
        b2: float = m12 * m22 / m11**2
        b3: float = m21 * m11 / m22**2
        klass, swapped = canonical_e6(float(b2), float(b3))
        if swapped:
            return klass, BasisChange.from_array(np.diag([1.0 / m22, 1.0 / m11]) @ SWAP)
        return klass, BasisChange.from_array(np.diag([1.0 / m11, 1.0 / m22]))

    permutation: np.ndarray = np.eye(2)
    if not diagonal_zero[0]:
        permutation = SWAP
        matrix = SWAP @ matrix @ SWAP
    m12, m21, m22 = matrix[0, 1], matrix[1, 0], matrix[1, 1]
    d1: float = float(np.cbrt(1.0 / (m12**2 * m21)))
    d2: float = d1**2 * m12
    klass = make_class2(Label2.E7.value, (float(d2 * m22),))
    return klass, BasisChange.from_array(np.diag([d1, d2]) @ permutation)


def classify2(
    algebra: EvolutionAlgebra,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    iso_options: IsoOptions = DEFAULT_ISO_OPTIONS,
) -> Classification2:
    """
    Classifies a two-dimensional evolution algebra.

    Full-rank algebras are normalised by a diagonal scaling, possibly after swapping the basis, onto
    E6(b2, b3) or E7(b4). Rank-one algebras are matched against E1 to E5, first by exact
    permutation-times-diagonal witnesses for every candidate and then by the numerical search.

    Parameters
    ----------
    algebra: EvolutionAlgebra
        A two-dimensional algebra.
    tolerances: Tolerances
        Rank, sign and verification tolerances.
    iso_options: IsoOptions
        Budget of the numerical search for rank-one algebras.

    Returns
    -------
    classification: Classification2
        The class with a witness satisfying transform(algebra, witness) == canonical2(class).

    Raises
    ------
    ClassificationFailedError
        When no witness verifies.
    """

    if algebra.dim != 2:
        raise InvalidInputError(f"classify2 expects a two-dimensional algebra, got dimension {algebra.dim}")

    rank: int = derived_dim(algebra, tolerances)
    if rank == 0:
        return Classification2(
            canonical=make_class2(Label2.ZERO.value),
            witness=BasisChange.identity(2),
            residual=float(np.max(np.abs(algebra.array))),
            verified=True,
        )

    if rank == 2:
        klass, witness = _normalize_full_rank(algebra, tolerances)
        result: Optional[Classification2] = _verified(algebra, klass, witness, tolerances)
        if result is not None:
            return result
        search = iso_search(algebra, canonical2(klass), iso_options, tolerances)
        if search.found:
            return Classification2(canonical=klass, witness=search.witness, residual=search.residual, verified=True)
        raise ClassificationFailedError(f"full-rank algebra did not normalise onto {klass.describe()}")

    exact_only: IsoOptions = iso_options.model_copy(update={"include_least_squares": False})
    for options in (exact_only, iso_options):
        for label in RANK_ONE_CANDIDATES:
            klass = make_class2(label.value)
            search = iso_search(algebra, canonical2(klass), options, tolerances)
            if search.found:
                logger.debug("rank-one algebra matched %s (%s)", label.value, search.reason.value)
                return Classification2(
                    canonical=klass, witness=search.witness, residual=search.residual, verified=True
                )
    raise ClassificationFailedError("no rank-one canonical form admitted a verified witness")


def predicted_iso(klass: Class2, fixed_point: ArrayLike) -> Class2:
    """
    The class that the Jacobian algebra at a fixed point of canonical2(klass) is isomorphic to.

    Raises
    ------
    NoFixedPointError
        For classes without non-zero fixed points.
    DivisionByNearZeroError
        When the E6 or E7 formulas divide by a coordinate below 1e-9 in magnitude.
    """

    point: np.ndarray = np.asarray(fixed_point, dtype=float)
    if point.shape != (2,):
        raise InvalidInputError(f"expected a two-dimensional fixed point, got shape {point.shape}")
    if klass.label in (Label2.ZERO, Label2.E3, Label2.E4):
        raise NoFixedPointError(f"{klass.label.value} has no non-zero fixed point")
    if klass.label in (Label2.E1, Label2.E2, Label2.E5):
        return make_class2(Label2.E1.value)
    if np.any(np.abs(point) < NEAR_ZERO_COORDINATE):
        raise DivisionByNearZeroError(
            f"fixed point {tuple(point)} has a coordinate below {NEAR_ZERO_COORDINATE}; the prediction is undefined"
        )

    x1, x2 = point
    if klass.label == Label2.E6:
        a2, a3 = klass.params
        predicted, _ = canonical_e6(float(a3 * (x2 / x1) ** 2), float(a2 * (x1 / x2) ** 2))
        return predicted
    (a4,) = klass.params
    return make_class2(Label2.E7.value, (float(a4 * np.cbrt((x2 / x1) ** 2)),))


def same_class2(first: Class2, second: Class2, tolerance: float = PARAMETER_MATCH) -> bool:
    if first.label != second.label:
        return False
    if first.params is None or second.params is None:
        return first.params == second.params
    return bool(np.allclose(first.params, second.params, rtol=tolerance, atol=tolerance))


def table2d(
    klass: Class2,
    options: SolverOptions = DEFAULT_SOLVER_OPTIONS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    iso_options: IsoOptions = DEFAULT_ISO_OPTIONS,
) -> TableRow:
    """
    Fixed points of a canonical form with the classes of their Jacobian algebras.

    Each entry compares the computed class against predicted_iso; the comparison is None, with a note,
    when the prediction cannot be evaluated.
    """

    algebra: EvolutionAlgebra = canonical2(klass)
    report = fixed_points(algebra, options, tolerances)
    entries: List[TableEntry] = []
    for point in report.points:
        linear: EvolutionAlgebra = jacobian_algebra(algebra, point)
        classified: Class2 = classify2(linear, tolerances, iso_options).canonical
        predicted: Optional[str] = None
        matches: Optional[bool] = None
        note: Optional[str] = None
        try:
            expected: Class2 = predicted_iso(klass, point)
            predicted, matches = expected.describe(), same_class2(expected, classified)
        except DivisionByNearZeroError as error:
            note = str(error)
        entries.append(
            TableEntry(
                fixed_point=point,
                jacobian_matrix=linear.matrix,
                classified_as=classified.describe(),
                predicted=predicted,
                matches_prediction=matches,
                note=note,
            )
        )
    return TableRow(klass=klass.describe(), rows=tuple(entries), annotations=report.annotations)
