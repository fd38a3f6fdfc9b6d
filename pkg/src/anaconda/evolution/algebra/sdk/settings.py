""" Environment driven configuration. """

from pydantic import NonNegativeInt, PositiveFloat, PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Tolerances and solver budgets, read from EVOLUTION_ALGEBRA_* environment variables.

    Attributes
    ----------
    eps_rank, eps_residual, eps_det, eps_sign: float
        Numerical tolerances.
    seed: int
        Seed shared by the fixed-point starts and the isomorphism search.
    restarts, radius, max_iter, merge_radius:
        Multistart Newton settings.
    iso_restarts, iso_max_iter: int
        Isomorphism search budget.
    log_level: str
        Level of the command line log handler.
    """

    model_config = SettingsConfigDict(env_prefix="EVOLUTION_ALGEBRA_")

    eps_rank: PositiveFloat = 1e-9
    eps_residual: PositiveFloat = 1e-8
    eps_det: PositiveFloat = 1e-12
    eps_sign: PositiveFloat = 1e-9
    seed: NonNegativeInt = 0
    restarts: PositiveInt = 64
    radius: PositiveFloat = 10.0
    max_iter: PositiveInt = 100
    merge_radius: PositiveFloat = 1e-6
    iso_restarts: PositiveInt = 256
    iso_max_iter: PositiveInt = 200
    log_level: str = "WARNING"
