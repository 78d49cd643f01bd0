"""
Lower bounds for dim S_f and the NOT_SPECIAL certificate.

The bound adds delta over distinct nontrivial minus-eigenspace types, each
distinct type once. Instance-level checkers for the cyclic propositions, the
abelian theorem and its two-row corollary report when their hypotheses hold so
the reproduction suites can compare them with the computed verdict.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from models.cover import CoverData
from models.prym import EigenType, MinusOrbit, PrymDatum, PrymDecomposition, decompose
from models.residue import element_order, is_cyclic, units


class Verdict(str, Enum):
    NOT_SPECIAL = "NOT_SPECIAL"
    INCONCLUSIVE = "INCONCLUSIVE"


class BoundMode(str, Enum):
    UNITARY_ONLY = "UNITARY_ONLY"
    WITH_SYMPLECTIC = "WITH_SYMPLECTIC"

    @classmethod
    def from_flag(cls, flag: str) -> "BoundMode":
        return {"unitary": cls.UNITARY_ONLY, "symplectic": cls.WITH_SYMPLECTIC}[flag]


class TrichotomyBranch(str, Enum):
    ONE_NONTRIVIAL = "ONE_NONTRIVIAL"
    ALL_SAME_1_SM3 = "ALL_SAME_1_SM3"
    EXPECT_NOT_SPECIAL = "EXPECT_NOT_SPECIAL"


@dataclass(frozen=True)
class Certificate:
    s: int
    family_dim: int
    bound_unitary: int
    bound_with_symplectic: int
    witnesses: Tuple[EigenType, ...]
    verdict: Verdict
    mode: BoundMode

    @property
    def active_bound(self) -> int:
        if self.mode is BoundMode.WITH_SYMPLECTIC:
            return self.bound_with_symplectic
        return self.bound_unitary


@dataclass(frozen=True)
class TrichotomyCheck:
    applicable: bool
    branch: Optional[TrichotomyBranch] = None
    presumption: Optional[bool] = None


@dataclass(frozen=True)
class CyclicSumsCheck:
    applicable: bool
    group_order: Optional[int] = None
    presentation: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class AbelianCheck:
    applicable: bool
    witness_pair: Optional[Tuple[EigenType, EigenType]] = None
    zero_hypothesis: Optional[bool] = None


def delta_of_type(t: EigenType) -> int:
    if t.trivial:
        return 0
    if t.self_dual:
        return t.a * (t.a + 1) // 2
    return t.a * t.b


def lower_bound(dec: PrymDecomposition, mode: BoundMode = BoundMode.UNITARY_ONLY) -> Certificate:
    s = dec.datum.cover.matrix.cols

    # one witness per distinct (a, b, self_dual); multiplicities do not accumulate
    by_key: Dict[Tuple[int, int, bool], EigenType] = {}
    for t in dec.types:
        if t.trivial:
            continue
        seen = by_key.get(t.key)
        if seen is None:
            by_key[t.key] = EigenType(t.a, t.b, t.self_dual, t.zeros, t.multiplicity)
        else:
            by_key[t.key] = EigenType(
                t.a, t.b, t.self_dual, min(seen.zeros, t.zeros), seen.multiplicity + t.multiplicity
            )

    keys = sorted(by_key.values())
    bound_unitary = sum(delta_of_type(t) for t in keys if not t.self_dual)
    bound_with_symplectic = bound_unitary + sum(delta_of_type(t) for t in keys if t.self_dual)

    if mode is BoundMode.WITH_SYMPLECTIC:
        witnesses = tuple(keys)
        active = bound_with_symplectic
    else:
        witnesses = tuple(t for t in keys if not t.self_dual)
        active = bound_unitary

    family_dim = s - 3
    return Certificate(
        s=s,
        family_dim=family_dim,
        bound_unitary=bound_unitary,
        bound_with_symplectic=bound_with_symplectic,
        witnesses=witnesses,
        verdict=Verdict.NOT_SPECIAL if active > family_dim else Verdict.INCONCLUSIVE,
        mode=mode,
    )


def check_prop_cyclic_trichotomy(
    cover: CoverData,
    datum: PrymDatum,
    dec: PrymDecomposition
) -> TrichotomyCheck:
    if not is_cyclic(cover.group):
        return TrichotomyCheck(applicable=False)

    s = cover.matrix.cols
    nontrivial = [o for o in dec.minus_orbits if not o.trivial]
    # eigenspaces counted individually: a non-self-dual orbit holds two
    count = sum(1 if o.self_dual else 2 for o in nontrivial)
    pairs = {o.pair for o in nontrivial}

    if count <= 1:
        branch = TrichotomyBranch.ONE_NONTRIVIAL
    elif pairs == {(max(1, s - 3), min(1, s - 3))}:
        branch = TrichotomyBranch.ALL_SAME_1_SM3
    else:
        branch = TrichotomyBranch.EXPECT_NOT_SPECIAL

    presumption = all(not o.self_dual and o.zeros == 0 for o in nontrivial)
    return TrichotomyCheck(applicable=True, branch=branch, presumption=presumption)


def _cyclic_generator(cover: CoverData):
    d = cover.degree
    return min(x for x in cover.group.elements if element_order(x) == d)


def check_prop_cyclic_sums(cover: CoverData, datum: PrymDatum) -> CyclicSumsCheck:
    s = cover.matrix.cols
    d = cover.degree
    if s <= 5 or d < 3 or not is_cyclic(cover.group):
        return CyclicSumsCheck(applicable=False)

    # coordinates of the columns with respect to a generator of the cyclic group
    g = _cyclic_generator(cover)
    index = {g.scale(k): k for k in range(d)}
    coords = [index[t] for t in cover.matrix.columns()]

    for u in units(d):
        row = tuple((u * a) % d for a in coords)
        total = sum(row)
        total_neg = sum((-a) % d for a in row)
        if total > 2 * d and total_neg > 2 * d:
            return CyclicSumsCheck(applicable=True, group_order=d, presentation=row)

    return CyclicSumsCheck(applicable=False, group_order=d)


def _distinct_type_pairs(dec: PrymDecomposition) -> List[Tuple[MinusOrbit, MinusOrbit]]:
    candidates = [o for o in dec.minus_orbits if not o.self_dual and min(o.dims) >= 2]
    return [(x, y) for x, y in combinations(candidates, 2) if x.pair != y.pair]


def check_thm_abelian(dec: PrymDecomposition) -> AbelianCheck:
    s = dec.datum.cover.matrix.cols
    if s <= 13:
        return AbelianCheck(applicable=False)

    for x, y in _distinct_type_pairs(dec):
        if x.zeros + y.zeros < s:
            return AbelianCheck(
                applicable=True,
                witness_pair=(x.eigen_type(), y.eigen_type()),
                zero_hypothesis=True,
            )
    return AbelianCheck(applicable=False)


def check_cor_two_rows(cover: CoverData, dec: PrymDecomposition) -> AbelianCheck:
    s = cover.matrix.cols
    if cover.matrix.rows != 2 or s <= 13:
        return AbelianCheck(applicable=False)

    pairs = _distinct_type_pairs(dec)
    if not pairs:
        return AbelianCheck(applicable=False)

    for x, y in pairs:
        if x.zeros + y.zeros < s:
            return AbelianCheck(True, (x.eigen_type(), y.eigen_type()), zero_hypothesis=True)
    x, y = pairs[0]
    return AbelianCheck(True, (x.eigen_type(), y.eigen_type()), zero_hypothesis=False)


@dataclass(frozen=True)
class Analysis:
    cover: CoverData
    datum: PrymDatum
    decomposition: PrymDecomposition
    certificate: Certificate
    trichotomy: TrichotomyCheck
    cyclic_sums: CyclicSumsCheck
    abelian: AbelianCheck
    two_rows: AbelianCheck


def analyze(
    cover: CoverData,
    datum: PrymDatum,
    mode: BoundMode = BoundMode.UNITARY_ONLY
) -> Analysis:
    dec = decompose(cover, datum)
    return Analysis(
        cover=cover,
        datum=datum,
        decomposition=dec,
        certificate=lower_bound(dec, mode),
        trichotomy=check_prop_cyclic_trichotomy(cover, datum, dec),
        cyclic_sums=check_prop_cyclic_sums(cover, datum),
        abelian=check_thm_abelian(dec),
        two_rows=check_cor_two_rows(cover, dec),
    )
