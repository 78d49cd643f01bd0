"""Building, serialising and writing catalog records."""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from catalog.schema import CATALOG_FIELDS, FOOTER_FIELDS, CatalogRecord, MinusTypeEntry
from config import SCHEMA_VERSION
from models.certify import Analysis
from utils.errors import ValidationError
from utils.logging_config import logger


def build_record(analysis: Analysis, canonical_key: str) -> CatalogRecord:
    """
    Build a catalog record from a finished analysis.

    Single source of truth for the mapping from analysis objects to record
    fields; both `analyze` and `enumerate` go through it.

    Args:
        analysis: Decomposition, certificate and checker results for one datum
        canonical_key: Hex key of the cover's symmetry orbit

    Returns:
        The record, ready for serialisation
    """
    cover = analysis.cover
    matrix = cover.matrix
    dec = analysis.decomposition
    cert = analysis.certificate
    trichotomy = analysis.trichotomy

    minus_types: List[MinusTypeEntry] = [
        {
            "a": t.a,
            "b": t.b,
            "self_dual": t.self_dual,
            "zeros": t.zeros,
            "multiplicity": t.multiplicity,
        }
        for t in dec.types
    ]

    return CatalogRecord(
        schema_version=SCHEMA_VERSION,
        modulus=matrix.modulus,
        rows=matrix.rows,
        cols=matrix.cols,
        matrix=list(matrix.entries),
        sigma=list(analysis.datum.sigma.entries),
        group_order=cover.degree,
        genus=cover.genus,
        ramification=analysis.datum.ramification.value,
        fixed_points=analysis.datum.fixed_points,
        prym_dim=dec.prym_dim,
        quotient_genus=dec.quotient_genus,
        minus_types=minus_types,
        bound_unitary=cert.bound_unitary,
        bound_with_symplectic=cert.bound_with_symplectic,
        family_dim=cert.family_dim,
        mode=cert.mode.value,
        verdict=cert.verdict.value,
        prop_trichotomy=trichotomy.branch.value if trichotomy.applicable else None,
        prop_trichotomy_presumption=trichotomy.presumption,
        prop_sums_applicable=analysis.cyclic_sums.applicable,
        thm_abelian_applicable=analysis.abelian.applicable,
        cor_two_rows_applicable=analysis.two_rows.applicable,
        canonical_key=canonical_key,
    )


def _dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def record_to_dict(record: CatalogRecord) -> Dict[str, Any]:
    return {name: getattr(record, name) for name in CATALOG_FIELDS}


def serialize_record(record: CatalogRecord) -> str:
    return _dumps(record_to_dict(record))


def parse_record(line: str) -> CatalogRecord:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise ValidationError("CATALOG_CORRUPT", f"unreadable catalog line: {e}") from e

    if not isinstance(data, dict) or tuple(data) != CATALOG_FIELDS:
        raise ValidationError("CATALOG_CORRUPT", "catalog line does not follow the record schema")

    data["minus_types"] = [
        {k: entry[k] for k in ("a", "b", "self_dual", "zeros", "multiplicity")}
        for entry in data["minus_types"]
    ]
    return CatalogRecord(**data)


def serialize_footer(total_covers: int, total_records: int, checksum: str) -> str:
    values = (True, SCHEMA_VERSION, total_covers, total_records, checksum)
    return _dumps(dict(zip(FOOTER_FIELDS, values)))


def is_footer(line: str) -> bool:
    return line.startswith('{"footer":true')


def write_catalog(path: Path, lines: Iterable[str], total_covers: int) -> Tuple[int, str]:
    """
    Write sorted data lines and the footer, one whole line at a time.

    Returns:
        Tuple of (records written, sha256 of the data lines)
    """
    digest = hashlib.sha256()
    count = 0

    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            data = (line + "\n").encode("utf-8")
            digest.update(data)
            f.write(line + "\n")
            f.flush()
            count += 1
        f.write(serialize_footer(total_covers, count, digest.hexdigest()) + "\n")

    logger.info(f"Catalog written to {path}: {count} records, {total_covers} covers")
    return count, digest.hexdigest()


def read_catalog(path: Path) -> Tuple[List[CatalogRecord], Optional[Dict[str, Any]]]:
    records: List[CatalogRecord] = []
    footer: Optional[Dict[str, Any]] = None
    digest = hashlib.sha256()

    with open(path, "r", encoding="utf-8", newline="\n") as f:
        for line in f:
            text = line.rstrip("\n")
            if not text:
                continue
            if is_footer(text):
                footer = json.loads(text)
                continue
            if footer is not None:
                raise ValidationError("CATALOG_CORRUPT", "data line after the footer")
            digest.update(line.encode("utf-8"))
            records.append(parse_record(text))

    if footer is not None:
        if footer.get("sha256") != digest.hexdigest() or footer.get("total_records") != len(records):
            raise ValidationError("CATALOG_CORRUPT", f"footer of {path} does not match its data lines")
    else:
        logger.warning(f"Catalog {path} has no footer; run was interrupted")

    return records, footer
