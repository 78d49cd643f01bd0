"""Prym data: the involution sigma, its fixed points and the minus eigenspaces."""
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import List, Set, Tuple

from models.cover import Character, CoverData
from models.residue import (
    IntMatrix,
    ResidueVector,
    cyclic_subgroup_contains,
    element_order,
    mat_vec,
)
from utils.errors import InternalError, ValidationError, ensure


class Ramification(str, Enum):
    ETALE = "ETALE"
    RAMIFIED_TWO = "RAMIFIED_TWO"
    RAMIFIED_OTHER = "RAMIFIED_OTHER"


@dataclass(frozen=True)
class PrymDatum:
    cover: CoverData
    sigma: ResidueVector
    ramification: Ramification
    fixed_points: int


@dataclass(frozen=True, order=True)
class EigenType:
    a: int
    b: int
    self_dual: bool
    zeros: int
    multiplicity: int = 1

    @property
    def trivial(self) -> bool:
        return self.b == 0

    @property
    def key(self) -> Tuple[int, int, bool]:
        return (self.a, self.b, self.self_dual)

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class MinusOrbit:
    alpha: ResidueVector
    dims: Tuple[int, int]  # (d_alpha, d_-alpha)
    self_dual: bool
    zeros: int

    @property
    def pair(self) -> Tuple[int, int]:
        return (max(self.dims), min(self.dims))

    @property
    def trivial(self) -> bool:
        return min(self.dims) == 0

    def eigen_type(self, multiplicity: int = 1) -> EigenType:
        a, b = self.pair
        return EigenType(a, b, self.self_dual, self.zeros, multiplicity)


@dataclass(frozen=True)
class PrymDecomposition:
    datum: PrymDatum
    minus_orbits: Tuple[MinusOrbit, ...]
    types: Tuple[EigenType, ...]
    prym_dim: int
    quotient_genus: int


def validate_datum(
    cover: CoverData,
    sigma: ResidueVector,
    strict_etale: bool = False
) -> PrymDatum:
    n = cover.matrix.modulus
    if sigma.modulus != n:
        raise ValidationError("MIXED_MODULUS", f"sigma modulus {sigma.modulus}, cover modulus {n}")
    if len(sigma) != cover.matrix.rows:
        raise ValidationError(
            "MIXED_LENGTH", f"sigma has length {len(sigma)}, cover has {cover.matrix.rows} rows"
        )
    if n % 2:
        raise ValidationError("ODD_MODULUS", f"modulus {n} is odd; no element of order 2")

    half = n // 2
    if sigma.is_zero() or any(e not in (0, half) for e in sigma):
        raise ValidationError("NOT_INVOLUTION", f"sigma {sigma} is not of order 2")
    if sigma not in cover.column_span:
        raise ValidationError("SIGMA_NOT_IN_GROUP", f"sigma {sigma} is not in the column span")

    # stabilisers are the inertia groups <T_j>; each of the d/ord(T_j) points over z_j is fixed
    fixed_points = sum(
        cover.degree // element_order(t)
        for t in cover.matrix.columns()
        if cyclic_subgroup_contains(t, sigma)
    )
    ensure(
        fixed_points % 2 == 0,
        "INTERNAL_ODD_FIXED_POINTS",
        f"sigma {sigma} has {fixed_points} fixed points on {cover.matrix}",
    )
    if strict_etale and fixed_points:
        raise ValidationError(
            "SIGMA_RAMIFIED", f"sigma {sigma} lies in an inertia subgroup ({fixed_points} fixed points)"
        )

    if fixed_points == 0:
        ramification = Ramification.ETALE
    elif fixed_points == 2:
        ramification = Ramification.RAMIFIED_TWO
    else:
        ramification = Ramification.RAMIFIED_OTHER

    return PrymDatum(cover, sigma, ramification, fixed_points)


def sigma_pairing(char: Character, sigma: ResidueVector) -> int:
    pairing = char.rep.dot(sigma)
    n = sigma.modulus
    if pairing == 0:
        return 1
    if 2 * pairing == n:
        return -1
    raise InternalError("INTERNAL_PAIRING", f"rep {char.rep} pairs to {pairing} with sigma {sigma}")


def parity_lemma_sign(char: Character) -> int:
    """Sign from the parity of n_1+...+n_m; agrees with sigma_pairing for sigma = (N/2,...,N/2)."""
    return -1 if sum(char.rep) % 2 else 1


def transform_sigma(u: IntMatrix, sigma: ResidueVector) -> ResidueVector:
    return mat_vec(u, sigma)


def decompose(cover: CoverData, datum: PrymDatum) -> PrymDecomposition:
    if datum.cover.matrix != cover.matrix:
        raise ValidationError("DATUM_MISMATCH", "Prym datum was validated against another cover")

    sigma = datum.sigma
    minus: List[Character] = []
    plus: List[Character] = []
    for char in cover.characters:
        (minus if sigma_pairing(char, sigma) < 0 else plus).append(char)

    ensure(
        2 * len(minus) == cover.degree,
        "INTERNAL_MINUS_COUNT",
        f"{len(minus)} minus characters for group of order {cover.degree}",
    )

    orbits: List[MinusOrbit] = []
    seen: Set[ResidueVector] = set()
    for char in minus:
        if char.alpha in seen:
            continue
        dual = cover.character_for(-char.alpha)
        seen.update((char.alpha, dual.alpha))
        orbits.append(MinusOrbit(
            alpha=char.alpha,
            dims=(char.dim, dual.dim),
            self_dual=dual.alpha == char.alpha,
            zeros=char.zeros,
        ))

    counts = Counter(o.eigen_type() for o in orbits)
    types = tuple(sorted(
        EigenType(t.a, t.b, t.self_dual, t.zeros, k) for t, k in counts.items()
    ))

    prym_dim = sum(c.dim for c in minus)
    quotient_genus = sum(c.dim for c in plus)

    ensure(
        prym_dim + quotient_genus == cover.genus,
        "INTERNAL_GENUS_MISMATCH",
        f"prym {prym_dim} + quotient {quotient_genus} != genus {cover.genus}",
    )
    ensure(
        cover.genus == 2 * quotient_genus - 1 + datum.fixed_points // 2,
        "INTERNAL_RIEMANN_HURWITZ",
        f"genus {cover.genus}, quotient genus {quotient_genus}, fixed points {datum.fixed_points}",
    )

    return PrymDecomposition(
        datum=datum,
        minus_orbits=tuple(orbits),
        types=types,
        prym_dim=prym_dim,
        quotient_genus=quotient_genus,
    )
