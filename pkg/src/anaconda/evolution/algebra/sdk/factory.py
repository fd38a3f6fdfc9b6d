""" Helper factory functions """

from typing import Optional

from .client import EvolutionAlgebraClient
from .contracts import IsoOptions, SolverOptions, Tolerances
from .settings import Settings


def build_settings() -> Settings:
    return Settings()


def build_tolerances(settings: Optional[Settings] = None) -> Tolerances:
    """
    Constructs the tolerances from the configured settings.

    Returns
    -------
    tolerances: Tolerances
    """

    settings = settings or build_settings()
    return Tolerances(
        eps_rank=settings.eps_rank,
        eps_residual=settings.eps_residual,
        eps_det=settings.eps_det,
        eps_sign=settings.eps_sign,
    )


def build_solver_options(settings: Optional[Settings] = None) -> SolverOptions:
    settings = settings or build_settings()
    return SolverOptions(
        restarts=settings.restarts,
        radius=settings.radius,
        seed=settings.seed,
        max_iter=settings.max_iter,
        merge_radius=settings.merge_radius,
    )


def build_iso_options(settings: Optional[Settings] = None) -> IsoOptions:
    settings = settings or build_settings()
    return IsoOptions(restarts=settings.iso_restarts, seed=settings.seed, max_iter=settings.iso_max_iter)


def build_client(settings: Optional[Settings] = None) -> EvolutionAlgebraClient:
    """
    Constructs a client with our globally controlled configuration options.

    Returns
    -------
    client: EvolutionAlgebraClient
        Instance of an EvolutionAlgebraClient.
    """

    settings = settings or build_settings()
    return EvolutionAlgebraClient(
        tolerances=build_tolerances(settings),
        solver_options=build_solver_options(settings),
        iso_options=build_iso_options(settings),
    )
