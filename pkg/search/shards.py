"""Per-shard work: canonical covers, their involutions and one record per datum."""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from catalog.operations import build_record
from catalog.schema import CatalogRecord
from models.certify import BoundMode, analyze
from models.cover import CoverMatrix, character_table
from models.prym import transform_sigma, validate_datum
from models.residue import IntMatrix, ResidueVector
from search.canonical import SymmetryLevel, canonical_form, invariant_fingerprint
from search.enumerate import (
    SearchSpec,
    Shard,
    enumerate_sigmas,
    shard_candidates,
    shard_covers,
    shards,
)

CoverEntry = Tuple[str, Tuple[int, ...]]


@dataclass(frozen=True)
class ShardResult:
    shard: Shard
    covers: List[CoverEntry]
    records: List[CatalogRecord]


def sigma_representatives(
    sigmas: Sequence[ResidueVector],
    stabilizer: Sequence[IntMatrix]
) -> List[ResidueVector]:
    """Least sigma of each orbit under the stabiliser of the cover."""
    return [
        sigma for sigma in sigmas
        if all(transform_sigma(u, sigma) >= sigma for u in stabilizer)
    ]


def cover_records(
    matrix: CoverMatrix,
    key: str,
    strict_etale: bool,
    mode: BoundMode,
    stabilizer: Optional[Sequence[IntMatrix]] = None
) -> List[CatalogRecord]:
    if matrix.modulus % 2:
        return []

    data = character_table(matrix)
    sigmas = enumerate_sigmas(data, strict_etale)
    if stabilizer:
        sigmas = sigma_representatives(sigmas, stabilizer)

    records = []
    for sigma in sigmas:
        datum = validate_datum(data, sigma, strict_etale)
        records.append(build_record(analyze(data, datum, mode), key))
    return records


def analyze_matrix(
    matrix: CoverMatrix,
    sigma: ResidueVector,
    strict_etale: bool = False,
    mode: BoundMode = BoundMode.UNITARY_ONLY,
    level: SymmetryLevel = SymmetryLevel.FULL
) -> CatalogRecord:
    data = character_table(matrix)
    datum = validate_datum(data, sigma, strict_etale)
    if level is SymmetryLevel.INVARIANT_HASH:
        key = invariant_fingerprint(matrix, data).hex()
    else:
        key = canonical_form(matrix).key.hex()
    return build_record(analyze(data, datum, mode), key)


def process_shard(spec: SearchSpec, shard: Shard) -> ShardResult:
    covers: List[CoverEntry] = []
    records: List[CatalogRecord] = []

    if spec.level is SymmetryLevel.INVARIANT_HASH:
        for matrix in shard_candidates(spec, shard):
            data = character_table(matrix)
            key = invariant_fingerprint(matrix, data).hex()
            covers.append((key, matrix.entries))
            records.extend(cover_records(matrix, key, spec.strict_etale, spec.mode))
    else:
        for form in shard_covers(spec, shard):
            key = form.key.hex()
            covers.append((key, form.matrix.entries))
            records.extend(
                cover_records(form.matrix, key, spec.strict_etale, spec.mode, form.transforms)
            )

    return ShardResult(shard=shard, covers=covers, records=records)


def merge_results(
    spec: SearchSpec,
    results: Iterable[ShardResult]
) -> Tuple[int, List[CatalogRecord]]:
    """Total cover count and the sorted records of all shards."""
    covers: List[CoverEntry] = []
    records: List[CatalogRecord] = []
    for result in results:
        covers.extend(result.covers)
        records.extend(result.records)

    if spec.level is SymmetryLevel.INVARIANT_HASH:
        least = {}
        for key, entries in covers:
            if key not in least or entries < least[key]:
                least[key] = entries
        records = [r for r in records if tuple(r.matrix) == least[r.canonical_key]]
        total_covers = len(least)
    else:
        total_covers = len(covers)

    records.sort(key=lambda r: r.sort_key)
    return total_covers, records


def run_search(spec: SearchSpec) -> Iterator[CatalogRecord]:
    spec.validate()
    _, records = merge_results(spec, (process_shard(spec, shard) for shard in shards(spec)))
    yield from records
