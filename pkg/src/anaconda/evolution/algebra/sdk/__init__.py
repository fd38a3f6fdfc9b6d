""" anaconda.evolution.algebra.sdk namespace """

from .algebra import (
    algebras_equal,
    compose_changes,
    derived_dim,
    is_natural_change,
    make_algebra,
    multiply,
    square,
    structural_invariants,
    transform,
)
from .classify2d import canonical2, classify2, make_class2, predicted_iso, table2d
from .classify3d import (
    COINCIDENT_LABELS,
    canonical3,
    classify3,
    extract_case_params,
    random_rank1_algebra,
    same_class,
)
from .client import EvolutionAlgebraClient
from .dynamics import evolution_map, fixed_points, jacobian, jacobian_algebra, linearize_at_fixed_points
from .factory import build_client
from .iso import iso_search, verify_iso
from .version import __version__
