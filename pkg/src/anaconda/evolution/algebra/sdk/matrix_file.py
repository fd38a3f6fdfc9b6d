""" Reading structure matrix files. """

from pathlib import Path
from typing import Union

from pydantic import ValidationError

from .algebra import make_algebra
from .contracts import EvolutionAlgebra
from .contracts.errors import InvalidInputError


def parse_algebra(text: str) -> EvolutionAlgebra:
    """
    Parses a structure matrix document.

    Two layouts are accepted and told apart by the first character: a JSON object
    {"dim": n, "matrix": [[...], ...]}, or plain text with n on the first line followed by n rows of
    whitespace-separated numbers.

    Raises
    ------
    InvalidInputError
        When the document matches neither layout or describes an invalid algebra.
    """

    stripped: str = text.strip()
    if not stripped:
        raise InvalidInputError("empty matrix document")
    if stripped.startswith("{"):
        try:
            return EvolutionAlgebra.model_validate_json(stripped)
        except ValidationError as error:
            raise InvalidInputError(f"invalid matrix document: {error.errors()[0]['msg']}") from error

    lines = [line.split() for line in stripped.splitlines() if line.strip()]
    try:
        dim: int = int(lines[0][0])
        rows = [[float(token) for token in line] for line in lines[1:]]
    except (IndexError, ValueError) as error:
        raise InvalidInputError(f"invalid plain-text matrix: {error}") from error
    if len(lines[0]) != 1:
        raise InvalidInputError("the first line of a plain-text matrix holds only the dimension")
    return make_algebra(dim, rows)


def load_algebra(path: Union[str, Path]) -> EvolutionAlgebra:
    try:
        with open(file=path, mode="r", encoding="utf-8") as file:
            return parse_algebra(file.read())
    except OSError as error:
        raise InvalidInputError(f"cannot read {path}: {error.strerror}") from error
