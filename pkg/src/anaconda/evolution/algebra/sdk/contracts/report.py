""" Machine-readable command report. """

import json
from typing import Any, Dict, List

from .algebra import Tolerances
from .base_model import BaseModel


class Report(BaseModel):
    """
    The JSON document emitted by every command.

    Serialization sorts keys so identical runs give byte-identical output.
    """

    version: str
    command: str
    arguments: List[str]
    inputs: Dict[str, Any]
    results: Any
    seed: int
    tolerances: Tolerances

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json", by_alias=True), sort_keys=True, indent=2)
