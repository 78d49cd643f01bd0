import re
from pathlib import Path
from typing import List

from models.residue import ResidueVector
from utils.errors import ValidationError
from utils.logging_config import logger

_ROW_SEPARATOR = re.compile(r"[;\n]")


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ValidationError("PARSE_ERROR", f"bad {what} '{text}': {e}") from e


def parse_matrix_spec(spec: str) -> List[List[int]]:
    """
    Rows separated by ';', entries by ','. A spec of the form '@path' is read
    from that file, where newlines also separate rows.
    """
    if spec.startswith("@"):
        path = Path(spec[1:])
        try:
            spec = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ValidationError("PARSE_ERROR", f"cannot read matrix file {path}: {e}") from e
        logger.debug(f"Matrix read from {path}")

    rows = [part.strip().replace(" ", "") for part in _ROW_SEPARATOR.split(spec)]
    rows = [r for r in rows if r]
    if not rows:
        raise ValidationError("PARSE_ERROR", "empty matrix")
    return [_parse_ints(r, "matrix row") for r in rows]


def parse_sigma_csv(text: str, modulus: int) -> ResidueVector:
    values = _parse_ints(text.strip().replace(" ", ""), "sigma")
    return ResidueVector(modulus, tuple(values))
