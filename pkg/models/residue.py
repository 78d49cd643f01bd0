"""Exact arithmetic on vectors over Z/N and the subgroups they generate."""
from collections import deque
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Dict, FrozenSet, Iterable, Iterator, Sequence, Tuple

from sympy import Matrix, primefactors
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from utils.errors import ValidationError

IntMatrix = Tuple[Tuple[int, ...], ...]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True, order=True)
class ResidueVector:
    modulus: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValidationError("BAD_MODULUS", f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if not 0 <= e < self.modulus:
                raise ValidationError(
                    "ENTRY_OUT_OF_RANGE",
                    f"entry {e} not in [0, {self.modulus})"
                )

    @classmethod
    def of(cls, modulus: int, values: Iterable[int]) -> "ResidueVector":
        return cls(modulus, tuple(v % modulus for v in values))

    @classmethod
    def zero(cls, modulus: int, length: int) -> "ResidueVector":
        return cls(modulus, (0,) * length)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def _check_compatible(self, other: "ResidueVector") -> None:
        if self.modulus != other.modulus:
            raise ValidationError(
                "MIXED_MODULUS", f"moduli {self.modulus} and {other.modulus} differ"
            )
        if len(self.entries) != len(other.entries):
            raise ValidationError(
                "MIXED_LENGTH", f"lengths {len(self.entries)} and {len(other.entries)} differ"
            )

    def __add__(self, other: "ResidueVector") -> "ResidueVector":
        self._check_compatible(other)
        n = self.modulus
        return ResidueVector(n, tuple((a + b) % n for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ResidueVector":
        n = self.modulus
        return ResidueVector(n, tuple((-a) % n for a in self.entries))

    def __sub__(self, other: "ResidueVector") -> "ResidueVector":
        return self + (-other)

    def scale(self, k: int) -> "ResidueVector":
        n = self.modulus
        return ResidueVector(n, tuple((k * a) % n for a in self.entries))

    def dot(self, other: "ResidueVector") -> int:
        self._check_compatible(other)
        return sum(a * b for a, b in zip(self.entries, other.entries)) % self.modulus

    def is_zero(self) -> bool:
        return not any(self.entries)

    def zero_count(self) -> int:
        return sum(1 for e in self.entries if e == 0)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class SubgroupData:
    modulus: int
    ambient_rank: int
    elements: FrozenSet[ResidueVector]
    order: int

    def __contains__(self, v: ResidueVector) -> bool:
        return v in self.elements


def _check_generators(
    generators: Sequence[ResidueVector],
    modulus: int,
    length: int
) -> None:
    for g in generators:
        if g.modulus != modulus:
            raise ValidationError(
                "MIXED_MODULUS", f"generator {g} has modulus {g.modulus}, expected {modulus}"
            )
        if len(g) != length:
            raise ValidationError(
                "MIXED_LENGTH", f"generator {g} has length {len(g)}, expected {length}"
            )


def span_with_coefficients(
    generators: Sequence[ResidueVector],
    modulus: int,
    length: int
) -> Dict[ResidueVector, Tuple[int, ...]]:
    """
    Breadth-first saturation of the span of `generators`.

    Maps every element x of the span to one coefficient vector n (entries in
    [0, N)) with sum(n_i * g_i) = x. The first coefficient vector reached
    wins, so the map is deterministic for a fixed generator order.
    """
    _check_generators(generators, modulus, length)
    gens = [g.entries for g in generators]
    zero = (0,) * length
    k = len(gens)
    found: Dict[Tuple[int, ...], Tuple[int, ...]] = {zero: (0,) * k}
    queue = deque([zero])

    # plain tuples while saturating, vectors once at the end
    while queue:
        x = queue.popleft()
        coeffs = found[x]
        for i, g in enumerate(gens):
            y = tuple((a + b) % modulus for a, b in zip(x, g))
            if y not in found:
                step = list(coeffs)
                step[i] = (step[i] + 1) % modulus
                found[y] = tuple(step)
                queue.append(y)

    return {ResidueVector(modulus, x): c for x, c in found.items()}


def span_closure(
    generators: Iterable[ResidueVector],
    modulus: int,
    ambient_rank: int
) -> SubgroupData:
    gens = sorted(set(generators))
    elements = frozenset(span_with_coefficients(gens, modulus, ambient_rank))
    return SubgroupData(
        modulus=modulus,
        ambient_rank=ambient_rank,
        elements=elements,
        order=len(elements)
    )


def element_order(v: ResidueVector) -> int:
    n = v.modulus
    return reduce(_lcm, (n // gcd(n, e) for e in v.entries), 1)


def cyclic_subgroup_contains(generator: ResidueVector, candidate: ResidueVector) -> bool:
    generator._check_compatible(candidate)
    return any(generator.scale(k) == candidate for k in range(element_order(generator)))


@lru_cache(maxsize=None)
def units(modulus: int) -> Tuple[int, ...]:
    return tuple(u for u in range(1, modulus) if gcd(u, modulus) == 1)


@lru_cache(maxsize=None)
def prime_factors(modulus: int) -> Tuple[int, ...]:
    return tuple(int(p) for p in primefactors(modulus))


def is_cyclic(group: SubgroupData) -> bool:
    return any(element_order(x) == group.order for x in group.elements)


def subgroup_order_snf(
    generators: Sequence[ResidueVector],
    modulus: int,
    ambient_rank: int
) -> int:
    """Order of the span read off the Smith normal form of [G | N*I]."""
    _check_generators(generators, modulus, ambient_rank)
    m = ambient_rank
    columns = [list(g.entries) for g in generators]
    columns += [[modulus if r == c else 0 for r in range(m)] for c in range(m)]
    lattice = Matrix(m, len(columns), lambda r, c: columns[c][r])
    snf = smith_normal_form(lattice, domain=ZZ)
    index = 1
    for i in range(m):
        index *= abs(int(snf[i, i]))
    return modulus ** m // index


def mat_vec(rows: IntMatrix, v: ResidueVector) -> ResidueVector:
    n = v.modulus
    return ResidueVector(n, tuple(sum(a * b for a, b in zip(row, v.entries)) % n for row in rows))


def mat_mul(left: IntMatrix, right: IntMatrix, modulus: int) -> IntMatrix:
    width = len(right[0])
    return tuple(
        tuple(sum(row[k] * right[k][c] for k in range(len(right))) % modulus for c in range(width))
        for row in left
    )


def identity_matrix(size: int) -> IntMatrix:
    return tuple(tuple(1 if r == c else 0 for c in range(size)) for r in range(size))


def is_invertible_matrix(rows: IntMatrix, modulus: int) -> bool:
    det = int(Matrix(rows).det())
    return gcd(det % modulus, modulus) == 1


def inverse_matrix(rows: IntMatrix, modulus: int) -> IntMatrix:
    if not is_invertible_matrix(rows, modulus):
        raise ValidationError("NOT_INVERTIBLE", f"matrix {rows} is not invertible mod {modulus}")
    inv = Matrix(rows).inv_mod(modulus)
    size = len(rows)
    return tuple(tuple(int(inv[r, c]) % modulus for c in range(size)) for r in range(size))


def _rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    work = [[x % p for x in row] for row in rows]
    rank = 0
    width = len(work[0]) if work else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [(a - factor * b) % p for a, b in zip(work[r], work[rank])]
        rank += 1
    return rank


def extends_to_basis(rows: Sequence[Sequence[int]], modulus: int) -> bool:
    """True iff `rows` are the first rows of some invertible matrix over Z/N."""
    if not rows:
        return True
    return all(_rank_mod_p(rows, p) == len(rows) for p in prime_factors(modulus))
