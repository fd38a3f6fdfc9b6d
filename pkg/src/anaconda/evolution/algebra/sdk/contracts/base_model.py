""" Base model shared by every SDK value object. """

from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict


class BaseModel(PydanticBaseModel):
    """
    Immutable pydantic model.

    Every value produced or consumed by the SDK is frozen after construction, which keeps the
    operations pure and lets results be shared across threads without synchronization.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)
