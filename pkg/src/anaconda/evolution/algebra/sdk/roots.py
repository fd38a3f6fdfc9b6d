""" Real roots of low-degree polynomials. """

import math
from typing import Sequence, Tuple

import numpy as np

IMAGINARY_CUTOFF: float = 1e-7


def depressed_cubic_roots(p: float, q: float) -> Tuple[float, ...]:
    """
    Real roots of t^3 + p t + q = 0, ascending, repeated roots reported once.

    Uses Cardano's formula when there is one real root and the trigonometric form when there are three.
    """

    if p == 0.0:
        return (float(np.cbrt(-q)),)
    discriminant: float = (q / 2.0) ** 2 + (p / 3.0) ** 3
    scale: float = max((q / 2.0) ** 2, abs(p / 3.0) ** 3)
    if abs(discriminant) <= 1e-14 * scale:
        return tuple(sorted({3.0 * q / p, -3.0 * q / (2.0 * p)}))
    if discriminant > 0.0:
        root: float = math.sqrt(discriminant)
        return (float(np.cbrt(-q / 2.0 + root) + np.cbrt(-q / 2.0 - root)),)
    amplitude: float = 2.0 * math.sqrt(-p / 3.0)
    cosine: float = min(1.0, max(-1.0, (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)))
    angle: float = math.acos(cosine) / 3.0
    return tuple(sorted(amplitude * math.cos(angle - 2.0 * math.pi * k / 3.0) for k in range(3)))


def real_polynomial_roots(coefficients: Sequence[float]) -> Tuple[float, ...]:
    """
    Real roots of a polynomial given by descending coefficients.

    Roots come from the companion matrix eigenvalues; those with an imaginary part above
    IMAGINARY_CUTOFF relative to their modulus are dropped.
    """

    roots: np.ndarray = np.roots(np.asarray(coefficients, dtype=float))
    real: list = [
        float(root.real) for root in roots if abs(root.imag) <= IMAGINARY_CUTOFF * max(1.0, abs(root))
    ]
    return tuple(sorted(real))
