"""Cover matrices and involutions within the hard caps, one per symmetry orbit."""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Any, Dict, Iterator, List, Tuple

from config import COLS_MAX, COLS_MIN, MODULUS_MAX, MODULUS_MIN, ROWS_MAX, ROWS_MIN, SCHEMA_VERSION
from models.certify import BoundMode
from models.cover import CoverData, CoverMatrix, validate_matrix
from models.residue import ResidueVector, cyclic_subgroup_contains
from search.canonical import CanonicalForm, SymmetryLevel, canonical_form, invariant_fingerprint
from utils.errors import SpecOutOfRange
from utils.logging_config import logger


@dataclass(frozen=True)
class SearchSpec:
    modulus: int
    rows: int
    cols_min: int
    cols_max: int
    strict_etale: bool = False
    mode: BoundMode = BoundMode.UNITARY_ONLY
    workers: int = 1
    level: SymmetryLevel = SymmetryLevel.FULL

    def validate(self) -> "SearchSpec":
        if not MODULUS_MIN <= self.modulus <= MODULUS_MAX:
            raise SpecOutOfRange(f"modulus {self.modulus} outside [{MODULUS_MIN}, {MODULUS_MAX}]")
        if not ROWS_MIN <= self.rows <= ROWS_MAX:
            raise SpecOutOfRange(f"rows {self.rows} outside [{ROWS_MIN}, {ROWS_MAX}]")
        if not COLS_MIN <= self.cols_min <= self.cols_max <= COLS_MAX:
            raise SpecOutOfRange(
                f"columns [{self.cols_min}, {self.cols_max}] outside [{COLS_MIN}, {COLS_MAX}]"
            )
        if self.workers < 1:
            raise SpecOutOfRange(f"workers must be >= 1, got {self.workers}")
        return self

    def search_id(self) -> Dict[str, Any]:
        """Everything a shard's content depends on; the column range and workers do not."""
        return {
            "schema_version": SCHEMA_VERSION,
            "modulus": self.modulus,
            "rows": self.rows,
            "strict_etale": self.strict_etale,
            "mode": self.mode.value,
            "level": self.level.value,
        }


@dataclass(frozen=True, order=True)
class Shard:
    """All sorted column multisets of length `cols` whose least column is `first`."""
    cols: int
    first: Tuple[int, ...]

    @property
    def name(self) -> str:
        return f"s{self.cols:02d}-c" + "-".join(str(e) for e in self.first)


@lru_cache(maxsize=None)
def nonzero_columns(modulus: int, rows: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(c for c in product(range(modulus), repeat=rows) if any(c))


def shards(spec: SearchSpec) -> List[Shard]:
    columns = nonzero_columns(spec.modulus, spec.rows)
    return [Shard(s, c) for s in range(spec.cols_min, spec.cols_max + 1) for c in columns]


def shard_candidates(spec: SearchSpec, shard: Shard) -> Iterator[CoverMatrix]:
    """Valid matrices with lexicographically sorted columns in this shard."""
    n, m = spec.modulus, spec.rows
    columns = nonzero_columns(n, m)
    start = columns.index(shard.first)
    for rest in combinations_with_replacement(columns[start:], shard.cols - 1):
        chosen = (shard.first,) + rest
        if any(sum(c[i] for c in chosen) % n for i in range(m)):
            continue
        yield validate_matrix(n, m, shard.cols, [c[i] for i in range(m) for c in chosen])


def shard_covers(spec: SearchSpec, shard: Shard) -> List[CanonicalForm]:
    """Canonical representatives in this shard, each with its stabiliser."""
    forms = []
    for candidate in shard_candidates(spec, shard):
        form = canonical_form(candidate)
        if form.matrix == candidate:
            forms.append(form)
    return forms


def shard_fingerprint_covers(spec: SearchSpec, shard: Shard) -> List[Tuple[bytes, CoverMatrix]]:
    return [
        (invariant_fingerprint(candidate).data, candidate)
        for candidate in shard_candidates(spec, shard)
    ]


def least_per_fingerprint(pairs: List[Tuple[bytes, CoverMatrix]]) -> Dict[bytes, CoverMatrix]:
    kept: Dict[bytes, CoverMatrix] = {}
    for fingerprint, matrix in pairs:
        seen = kept.get(fingerprint)
        if seen is None or matrix.entries < seen.entries:
            kept[fingerprint] = matrix
    return kept


def enumerate_covers(spec: SearchSpec) -> Iterator[CoverMatrix]:
    spec.validate()

    if spec.level is SymmetryLevel.INVARIANT_HASH:
        logger.warning("INVARIANT_HASH level: distinct orbits with equal fingerprints are merged")
        pairs = [p for shard in shards(spec) for p in shard_fingerprint_covers(spec, shard)]
        for _, matrix in sorted(least_per_fingerprint(pairs).items()):
            yield matrix
        return

    forms = [form for shard in shards(spec) for form in shard_covers(spec, shard)]
    for form in sorted(forms, key=lambda f: f.key):
        yield form.matrix


def enumerate_sigmas(cover: CoverData, strict_etale: bool = False) -> List[ResidueVector]:
    n = cover.matrix.modulus
    if n % 2:
        return []

    half = n // 2
    columns = cover.matrix.columns()
    sigmas = []
    for bits in product((0, half), repeat=cover.matrix.rows):
        sigma = ResidueVector(n, bits)
        if sigma.is_zero() or sigma not in cover.column_span:
            continue
        if strict_etale and any(cyclic_subgroup_contains(t, sigma) for t in columns):
            continue
        sigmas.append(sigma)
    return sigmas
