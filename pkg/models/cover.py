"""Cover matrices, Galois group, ramification, genus and the character table."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from models.residue import (
    IntMatrix,
    ResidueVector,
    SubgroupData,
    mat_vec,
    span_closure,
    span_with_coefficients,
)
from utils.errors import InternalError, ValidationError, ensure


@dataclass(frozen=True)
class CoverMatrix:
    modulus: int
    rows: int
    cols: int
    entries: Tuple[int, ...]  # row-major

    def row(self, i: int) -> ResidueVector:
        start = i * self.cols
        return ResidueVector(self.modulus, self.entries[start:start + self.cols])

    def column(self, j: int) -> ResidueVector:
        if not 0 <= j < self.cols:
            raise ValidationError("INDEX_OUT_OF_RANGE", f"column {j} not in [0, {self.cols})")
        return ResidueVector(self.modulus, self.entries[j::self.cols])

    def row_vectors(self) -> List[ResidueVector]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> List[ResidueVector]:
        return [self.column(j) for j in range(self.cols)]

    def as_rows(self) -> IntMatrix:
        return tuple(self.row(i).entries for i in range(self.rows))

    def transform(self, u: IntMatrix, perm: Optional[Sequence[int]] = None) -> "CoverMatrix":
        """Return U·A·P; column k of the result is U·T_{perm[k]}."""
        order = list(perm) if perm is not None else list(range(self.cols))
        cols = [mat_vec(u, self.column(j)) for j in order]
        return from_columns(self.modulus, cols)

    def __str__(self) -> str:
        return ";".join(",".join(str(e) for e in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class Character:
    alpha: ResidueVector
    rep: ResidueVector
    dim: int
    zeros: int


@dataclass(frozen=True)
class CoverData:
    matrix: CoverMatrix
    group: SubgroupData
    degree: int
    genus: int
    characters: Tuple[Character, ...]
    _by_alpha: Dict[ResidueVector, Character] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not self._by_alpha:
            self._by_alpha.update({c.alpha: c for c in self.characters})

    @property
    def column_span(self) -> SubgroupData:
        return self.group

    def character_for(self, alpha: ResidueVector) -> Character:
        try:
            return self._by_alpha[alpha]
        except KeyError:
            raise ValidationError("NOT_A_CHARACTER", f"{alpha} is not in the row span") from None


def validate_matrix(
    modulus: int,
    rows: int,
    cols: int,
    entries: Sequence[int]
) -> CoverMatrix:
    if modulus < 2:
        raise ValidationError("BAD_MODULUS", f"modulus must be >= 2, got {modulus}")
    if rows < 1 or cols < 1 or len(entries) != rows * cols:
        raise ValidationError(
            "RAGGED_MATRIX", f"expected {rows}x{cols} entries, got {len(entries)}"
        )
    for e in entries:
        if not 0 <= e < modulus:
            raise ValidationError("ENTRY_OUT_OF_RANGE", f"entry {e} not in [0, {modulus})")
    if cols < 4:
        raise ValidationError("TOO_FEW_COLUMNS", f"need at least 4 branch points, got {cols}")

    matrix = CoverMatrix(modulus, rows, cols, tuple(entries))

    for j in range(cols):
        if matrix.column(j).is_zero():
            raise ValidationError("ZERO_COLUMN", f"column {j} is zero")
    for i in range(rows):
        if sum(matrix.row(i)) % modulus:
            raise ValidationError("ROW_SUM_NONZERO", f"row {i} does not sum to 0 mod {modulus}")

    return matrix


def from_rows(modulus: int, rows: Sequence[Sequence[int]]) -> CoverMatrix:
    if modulus < 2:
        raise ValidationError("BAD_MODULUS", f"modulus must be >= 2, got {modulus}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValidationError("RAGGED_MATRIX", f"rows have differing lengths {sorted(widths)}")
    cols = widths.pop()
    return validate_matrix(modulus, len(rows), cols, [e for r in rows for e in r])


def from_columns(modulus: int, columns: Sequence[ResidueVector]) -> CoverMatrix:
    m = len(columns[0])
    return validate_matrix(
        modulus, m, len(columns),
        [columns[j][i] for i in range(m) for j in range(len(columns))]
    )


def _column_gcd(column: ResidueVector) -> int:
    return reduce(gcd, column.entries, column.modulus)


def ramification_order(matrix: CoverMatrix, j: int) -> int:
    return matrix.modulus // _column_gcd(matrix.column(j))


def degree(matrix: CoverMatrix) -> int:
    return span_closure(matrix.columns(), matrix.modulus, matrix.rows).order


def genus(cover: CoverMatrix, group_order: Optional[int] = None) -> int:
    d = group_order if group_order is not None else degree(cover)
    n = cover.modulus
    gcd_sum = sum(_column_gcd(c) for c in cover.columns())
    g = 1 + d * (Fraction(cover.cols - 2, 2) - Fraction(gcd_sum, 2 * n))
    if g.denominator != 1 or g < 0:
        raise InternalError("INTERNAL_NONINTEGRAL_GENUS", f"genus evaluated to {g} for {cover}")
    return int(g)


def eigen_dim(alpha: ResidueVector, modulus: Optional[int] = None) -> int:
    n = modulus if modulus is not None else alpha.modulus
    if sum(alpha) % n:
        raise ValidationError("SUM_NOT_ZERO", f"entries of {alpha} do not sum to 0 mod {n}")
    if alpha.is_zero():
        return 0
    # n·(dim + 1) = sum of (n - a) over nonzero entries
    total = sum(n - a for a in alpha if a)
    if total % n or total < n:
        raise InternalError("INTERNAL_EIGEN_DIM", f"eigenspace dimension {Fraction(total, n) - 1} for {alpha}")
    return total // n - 1


def character_table(cover: CoverMatrix) -> CoverData:
    n = cover.modulus
    group = span_closure(cover.columns(), n, cover.rows)
    g = genus(cover, group.order)

    # the row span is the character group; carry one n with n·A = alpha
    row_span = span_with_coefficients(cover.row_vectors(), n, cover.cols)
    characters = tuple(
        Character(
            alpha=alpha,
            rep=ResidueVector(n, rep),
            dim=eigen_dim(alpha, n),
            zeros=alpha.zero_count(),
        )
        for alpha, rep in sorted(row_span.items())
    )

    ensure(
        len(characters) == group.order,
        "INTERNAL_CHARACTER_COUNT",
        f"{len(characters)} characters but group order {group.order} for {cover}",
    )
    ensure(
        sum(c.dim for c in characters) == g,
        "INTERNAL_GENUS_MISMATCH",
        f"eigenspace dimensions sum to {sum(c.dim for c in characters)}, genus is {g}",
    )

    return CoverData(
        matrix=cover,
        group=group,
        degree=group.order,
        genus=g,
        characters=characters,
    )
