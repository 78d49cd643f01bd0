"""
Canonical forms of cover matrices.

The symmetry group acts by A -> U·A·P with U invertible over Z/N and P a
column permutation. For a fixed U the least row-major matrix in U·A·P is the
matrix with lexicographically sorted columns, so the minimisation only runs
over U. The first k rows of the minimum depend only on the first k rows of U,
which lets the search proceed row by row keeping every tying prefix.

Prefixes P and P·W, with W·A a column permutation of A, lead to the same
minimum, so only one prefix per such class is expanded. The full set of
minimising U is recovered at the end by multiplying back with every W.
"""
import hashlib
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple

from models.cover import CoverData, CoverMatrix, character_table, validate_matrix
from models.residue import (
    IntMatrix,
    element_order,
    extends_to_basis,
    identity_matrix,
    inverse_matrix,
    mat_mul,
    mat_vec,
)

# smallest N^m at which canonical_form prunes by column automorphisms
AUTOMORPHISM_MIN_SPACE = 1024

Prefix = Tuple[Tuple[int, ...], ...]


class SymmetryLevel(str, Enum):
    FULL = "FULL"
    INVARIANT_HASH = "INVARIANT_HASH"


@dataclass(frozen=True, order=True)
class CanonicalKey:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()


@dataclass(frozen=True)
class CanonicalForm:
    matrix: CoverMatrix
    key: CanonicalKey
    # every U with sorted-columns(U·A) equal to the representative;
    # for a representative A itself this is its stabiliser
    transforms: Tuple[IntMatrix, ...]


def encode_key(modulus: int, rows: int, cols: int, entries: Sequence[int]) -> CanonicalKey:
    """(N, m, s, entries...) as big-endian integers of one common width."""
    width = max(1, (max(modulus, rows, cols).bit_length() + 7) // 8)
    values = [modulus, rows, cols, *entries]
    return CanonicalKey(b"".join(v.to_bytes(width, "big") for v in values))


@lru_cache(maxsize=None)
def _all_vectors(modulus: int, length: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(product(range(modulus), repeat=length))


def column_automorphisms(cover: CoverMatrix) -> Tuple[IntMatrix, ...]:
    """
    Every invertible W with W·A equal to A up to column order.

    W is fixed by the images of m columns forming a basis, and those images
    are columns of A with the same multiplicity and element order. When no
    basis is found among the columns only the identity is returned, which is
    still a valid (trivial) subgroup for the canonical search.
    """
    n, m = cover.modulus, cover.rows
    identity = identity_matrix(m)
    columns = cover.columns()
    counts = Counter(c.entries for c in columns)
    distinct = sorted(set(columns))

    basis = []
    for c in distinct:
        if extends_to_basis([b.entries for b in basis] + [c.entries], n):
            basis.append(c)
        if len(basis) == m:
            break
    if len(basis) < m:
        return (identity,)

    base_inv = inverse_matrix(tuple(zip(*(b.entries for b in basis))), n)
    profile = {c: (counts[c.entries], element_order(c)) for c in distinct}
    choices = [[c for c in distinct if profile[c] == profile[b]] for b in basis]

    found: Set[IntMatrix] = set()
    for images in product(*choices):
        if len(set(images)) < m:
            continue
        w = mat_mul(tuple(zip(*(c.entries for c in images))), base_inv, n)
        if Counter(mat_vec(w, c).entries for c in columns) == counts:
            found.add(w)
    return tuple(sorted(found))


def _column_groups(prefix: Prefix, columns: Sequence[Tuple[int, ...]], n: int) -> List[List[int]]:
    """Column indices grouped by their image under `prefix`, groups in ascending image order."""
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for j, col in enumerate(columns):
        image = tuple(sum(a * b for a, b in zip(r, col)) % n for r in prefix)
        groups.setdefault(image, []).append(j)
    return [groups[image] for image in sorted(groups)]


def canonical_form(cover: CoverMatrix, use_automorphisms: Optional[bool] = None) -> CanonicalForm:
    n, m = cover.modulus, cover.rows
    columns = [c.entries for c in cover.columns()]
    vectors = _all_vectors(n, m)
    values = [tuple(sum(a * b for a, b in zip(u, col)) % n for col in columns) for u in vectors]

    if use_automorphisms is None:
        use_automorphisms = len(vectors) >= AUTOMORPHISM_MIN_SPACE
    symmetries = column_automorphisms(cover) if use_automorphisms else (identity_matrix(m),)

    beam: List[Prefix] = [()]
    best_rows: List[Tuple[int, ...]] = []
    for _ in range(m):
        best: Optional[Tuple[int, ...]] = None
        survivors: List[Prefix] = []
        seen: Set[Prefix] = set()
        for prefix in beam:
            groups = _column_groups(prefix, columns, n)
            for u, vals in zip(vectors, values):
                row = tuple(v for group in groups for v in sorted(vals[j] for j in group))
                if best is not None and row > best:
                    continue
                rows = prefix + (u,)
                if not extends_to_basis(rows, n):
                    continue
                if best is None or row < best:
                    best, survivors, seen = row, [], set()
                if rows in seen:
                    continue
                survivors.append(rows)
                seen.update(mat_mul(rows, w, n) for w in symmetries)
        beam = survivors
        best_rows.append(best)

    entries = [e for row in best_rows for e in row]
    matrix = validate_matrix(n, m, cover.cols, entries)
    transforms = {mat_mul(u, w, n) for u in beam for w in symmetries}
    return CanonicalForm(
        matrix=matrix,
        key=encode_key(n, m, cover.cols, entries),
        transforms=tuple(sorted(transforms)),
    )


def invariant_fingerprint(cover: CoverMatrix, data: Optional[CoverData] = None) -> CanonicalKey:
    """Orbit invariant; equal fingerprints do not imply equal orbits."""
    table = data if data is not None else character_table(cover)
    profile = sorted((c.dim, c.zeros) for c in table.characters)
    payload = repr((cover.modulus, cover.rows, cover.cols, table.degree, table.genus, profile))
    return CanonicalKey(hashlib.sha256(payload.encode("utf-8")).digest())


def canonical_key(cover: CoverMatrix, level: SymmetryLevel = SymmetryLevel.FULL) -> CanonicalKey:
    if level is SymmetryLevel.INVARIANT_HASH:
        return invariant_fingerprint(cover)
    return canonical_form(cover).key
