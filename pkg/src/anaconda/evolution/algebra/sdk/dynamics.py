""" The evolution operator, its fixed points and Jacobian algebras. """

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from .algebra import DEFAULT_TOLERANCES, ArrayLike, algebras_equal, as_vector, square
from .canonical import FIXED_FORMS_2D, FORMS_3D
from .contracts import (
    EvolutionAlgebra,
    FixedPointMethod,
    FixedPointReport,
    Label2,
    Label3,
    SolverOptions,
    Tolerances,
    Vector,
)
from .contracts.classification import DEGENERATE_E6_BOUND
from .roots import depressed_cubic_roots, real_polynomial_roots

logger = logging.getLogger(__name__)

DEFAULT_SOLVER_OPTIONS = SolverOptions()

DIVERGENCE_BOUND: float = 1e6
ILL_CONDITIONED: float = 1e12
PSEUDO_INVERSE_DAMPING: float = 0.5
POLISH_STEPS: int = 8

# x2^3 + a4 x2 - 1 has three real roots below this value and one above it.
E7_THRESHOLD: float = -3.0 / float(np.cbrt(4.0))

E7_BOUND_NOTE: str = (
    "E7(a4): the fixed points are (t^2, t) for the real roots t of t^3 + a4*t - 1 = 0, which always has one; "
    "the bound a4 >= -3/cbrt(4) separates one real root (above) from three (below) and does not restrict existence"
)

CLOSED_FORM_3D: Tuple[Label3, ...] = (
    Label3.E4,
    Label3.E5,
    Label3.E6,
    Label3.E7,
    Label3.E8,
    Label3.E9,
    Label3.E10,
)


def evolution_map(algebra: EvolutionAlgebra, x: ArrayLike) -> np.ndarray:
    """The quadratic operator F(x) = x * x, with x_k' = sum_i a_ik x_i^2."""
    return square(algebra, x)


def jacobian(algebra: EvolutionAlgebra, x: ArrayLike) -> np.ndarray:
    """
    Jacobian of the evolution operator at x.

    Returns
    -------
    jacobian: numpy.ndarray
        J[k][i] = 2 a_ik x_i, rows indexed by output component.
    """

    vector: np.ndarray = as_vector(algebra, x)
    return 2.0 * algebra.array.T * vector[np.newaxis, :]


def jacobian_algebra(algebra: EvolutionAlgebra, x: ArrayLike) -> EvolutionAlgebra:
    """The evolution algebra whose structure matrix is the Jacobian at x."""
    return EvolutionAlgebra.from_array(jacobian(algebra, x))


def fixed_point_residual(algebra: EvolutionAlgebra, x: ArrayLike) -> float:
    vector: np.ndarray = as_vector(algebra, x)
    return float(np.max(np.abs(evolution_map(algebra, vector) - vector)))


def match_family(
    algebra: EvolutionAlgebra, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Optional[Tuple[str, Tuple[float, ...]]]:
    """
    Recognises canonical structure matrices.

    Returns
    -------
    family: Optional[Tuple[str, Tuple[float, ...]]]
        The label and its parameters, or None for a non-canonical matrix.
    """

    if algebra.dim == 3:
        for label, matrix in FORMS_3D.items():
            if algebras_equal(algebra, EvolutionAlgebra(dim=3, matrix=matrix), tolerances):
                return label.value, ()
        return None

    for label, matrix in FIXED_FORMS_2D.items():
        if algebras_equal(algebra, EvolutionAlgebra(dim=2, matrix=matrix), tolerances):
            return label.value, ()
    entries: np.ndarray = algebra.array
    bound: float = tolerances.eps_residual
    if (
        abs(entries[0, 0] - 1.0) <= bound
        and abs(entries[1, 1] - 1.0) <= bound
        and abs(1.0 - entries[0, 1] * entries[1, 0]) > DEGENERATE_E6_BOUND
    ):
        return Label2.E6.value, (float(entries[0, 1]), float(entries[1, 0]))
    if abs(entries[0, 0]) <= bound and abs(entries[0, 1] - 1.0) <= bound and abs(entries[1, 0] - 1.0) <= bound:
        return Label2.E7.value, (float(entries[1, 1]),)
    return None


def _e6_candidates(a2: float, a3: float, tolerances: Tolerances) -> List[Tuple[float, float]]:
    if max(abs(a2), abs(a3)) <= tolerances.eps_sign:
        return [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
    if abs(a2) > abs(a3):
        return [(second, first) for first, second in _e6_candidates(a3, a2, tolerances)]

    # Eliminating x2 = (a2 - 1/a3) x1^2 + x1/a3 from the second equation gives a quartic in x1 whose
    # constant term vanishes; the cubic cofactor carries every non-zero solution.
    lead: float = a2 - 1.0 / a3
    linear: float = 1.0 / a3
    cubic: Sequence[float] = (lead**2, 2.0 * lead * linear, linear**2 + 1.0 / a3, -1.0 / a3)
    return [(x1, lead * x1**2 + linear * x1) for x1 in real_polynomial_roots(cubic)]


def _closed_form_candidates(family: str, params: Tuple[float, ...], tolerances: Tolerances) -> List[Vector]:
    if family in (Label2.E1.value, Label2.E2.value) and not params:
        return [(1.0, 0.0)]
    if family == Label2.E5.value and not params:
        return [(0.0, -1.0)]
    if family == Label2.E6.value and params:
        return list(_e6_candidates(params[0], params[1], tolerances))
    if family == Label2.E7.value and params:
        return [(root * root, root) for root in depressed_cubic_roots(params[0], -1.0)]
    return []


def _newton_step(algebra: EvolutionAlgebra, x: np.ndarray) -> Optional[np.ndarray]:
    gradient: np.ndarray = jacobian(algebra, x) - np.eye(algebra.dim)
    value: np.ndarray = evolution_map(algebra, x) - x
    if np.linalg.cond(gradient) > ILL_CONDITIONED:
        step: np.ndarray = -PSEUDO_INVERSE_DAMPING * (np.linalg.pinv(gradient) @ value)
    else:
        step = -np.linalg.solve(gradient, value)
    if not np.all(np.isfinite(step)):
        return None
    return step


def _polish(algebra: EvolutionAlgebra, x: np.ndarray) -> Tuple[np.ndarray, float]:
    best: float = fixed_point_residual(algebra, x)
    for _ in range(POLISH_STEPS):
        if best == 0.0:
            break
        step: Optional[np.ndarray] = _newton_step(algebra, x)
        if step is None:
            break
        candidate: np.ndarray = x + step
        residual: float = fixed_point_residual(algebra, candidate)
        if not residual < best:
            break
        x, best = candidate, residual
    return x, best


def _newton(
    algebra: EvolutionAlgebra, start: np.ndarray, max_iter: int, tolerances: Tolerances
) -> Optional[np.ndarray]:
    x: np.ndarray = start
    for _ in range(max_iter):
        if fixed_point_residual(algebra, x) <= tolerances.eps_residual * 1e-3:
            break
        step: Optional[np.ndarray] = _newton_step(algebra, x)
        if step is None:
            return None
        x = x + step
        if np.max(np.abs(x)) > DIVERGENCE_BOUND:
            return None
    return x


def _collect(
    algebra: EvolutionAlgebra,
    candidates: Sequence[ArrayLike],
    merge_radius: float,
    tolerances: Tolerances,
) -> Tuple[Tuple[Vector, ...], Tuple[float, ...]]:
    kept: List[Tuple[Vector, float]] = []
    for candidate in candidates:
        point, residual = _polish(algebra, np.asarray(candidate, dtype=float))
        magnitude: float = float(np.max(np.abs(point)))
        if residual > tolerances.eps_residual or magnitude > DIVERGENCE_BOUND or magnitude <= merge_radius:
            continue
        kept.append((tuple(float(coordinate) for coordinate in point), residual))

    kept.sort(key=lambda item: item[0])
    merged: List[Tuple[Vector, float]] = []
    for point, residual in kept:
        if any(max(abs(a - b) for a, b in zip(point, other)) <= merge_radius for other, _ in merged):
            continue
        merged.append((point, residual))
    return tuple(point for point, _ in merged), tuple(residual for _, residual in merged)


def _annotations(family: str, params: Tuple[float, ...]) -> Tuple[str, ...]:
    if family != Label2.E7.value or not params:
        return ()
    if params[0] < E7_THRESHOLD:
        return (E7_BOUND_NOTE, f"a4 = {params[0]!r} < -3/cbrt(4): three real fixed points")
    return (E7_BOUND_NOTE,)


def fixed_points(
    algebra: EvolutionAlgebra,
    options: SolverOptions = DEFAULT_SOLVER_OPTIONS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FixedPointReport:
    """
    Finds the non-zero real solutions of F(x) = x.

    Canonical matrices are solved in closed form and the report is marked complete. Any other matrix is
    searched by Newton's method from scrambled Halton starts in [-radius, radius]^n.

    Parameters
    ----------
    algebra: EvolutionAlgebra
        The algebra whose evolution operator is solved.
    options: SolverOptions
        Multistart settings, also supplying the merge radius for closed forms.
    tolerances: Tolerances
        eps_residual bounds the reported residuals.

    Returns
    -------
    report: FixedPointReport
        Points sorted lexicographically and deduplicated.
    """

    family: Optional[Tuple[str, Tuple[float, ...]]] = match_family(algebra, tolerances)
    if family is not None:
        label, params = family
        if algebra.dim == 3:
            candidates: List[Vector] = [(1.0, 0.0, 0.0)] if Label3(label) in CLOSED_FORM_3D else []
        else:
            candidates = _closed_form_candidates(label, params, tolerances)
        points, residuals = _collect(algebra, candidates, options.merge_radius, tolerances)
        logger.info("closed form %s%s: %d fixed point(s)", label, params or "", len(points))
        return FixedPointReport(
            points=points,
            residuals=residuals,
            complete=True,
            method=FixedPointMethod.CLOSED_FORM,
            family=label,
            annotations=_annotations(label, params),
        )

    sampler = qmc.Halton(d=algebra.dim, scramble=True, seed=options.seed)
    starts: np.ndarray = qmc.scale(
        sampler.random(options.restarts),
        np.full(algebra.dim, -options.radius),
        np.full(algebra.dim, options.radius),
    )
    converged: List[np.ndarray] = []
    for start in starts:
        solution: Optional[np.ndarray] = _newton(algebra, start, options.max_iter, tolerances)
        if solution is not None:
            converged.append(solution)
    points, residuals = _collect(algebra, converged, options.merge_radius, tolerances)
    logger.info("multistart newton from %d starts: %d fixed point(s)", options.restarts, len(points))
    return FixedPointReport(
        points=points, residuals=residuals, complete=False, method=FixedPointMethod.MULTISTART_NEWTON
    )


def linearize_at_fixed_points(
    algebra: EvolutionAlgebra,
    options: SolverOptions = DEFAULT_SOLVER_OPTIONS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> List[Tuple[np.ndarray, EvolutionAlgebra]]:
    report: FixedPointReport = fixed_points(algebra, options, tolerances)
    return [(np.array(point), jacobian_algebra(algebra, point)) for point in report.points]
