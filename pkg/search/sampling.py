"""Seeded samplers for the property suites and the brute-force orbit oracle."""
import random
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, List, Set

from models.cover import CoverMatrix, from_columns, validate_matrix
from models.residue import IntMatrix, ResidueVector, identity_matrix, is_invertible_matrix, units
from utils.errors import ValidationError


def has_valid_matrix(modulus: int, rows: int, cols: int) -> bool:
    """False only for N=2, m=1 and odd s: s ones never sum to 0 mod 2."""
    return not (modulus == 2 and rows == 1 and cols % 2)


def random_cover_matrix(rng: random.Random, modulus: int, rows: int, cols: int) -> CoverMatrix:
    if not has_valid_matrix(modulus, rows, cols):
        raise ValidationError(
            "EMPTY_SAMPLE_SPACE", f"no valid {rows}x{cols} matrix over Z/{modulus}"
        )
    while True:
        columns = [_random_nonzero(rng, modulus, rows) for _ in range(cols - 1)]
        last = ResidueVector.zero(modulus, rows)
        for c in columns:
            last = last - c
        if not last.is_zero():
            return from_columns(modulus, columns + [last])


def _random_nonzero(rng: random.Random, modulus: int, rows: int) -> ResidueVector:
    while True:
        v = ResidueVector.of(modulus, (rng.randrange(modulus) for _ in range(rows)))
        if not v.is_zero():
            return v


def random_invertible(rng: random.Random, modulus: int, size: int) -> IntMatrix:
    while True:
        rows = tuple(tuple(rng.randrange(modulus) for _ in range(size)) for _ in range(size))
        if is_invertible_matrix(rows, modulus):
            return rows


def random_permutation(rng: random.Random, size: int) -> List[int]:
    return rng.sample(range(size), size)


class UnionFind:
    def __init__(self, items: Iterable[Hashable]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


def raw_matrices(modulus: int, rows: int, cols: int) -> List[CoverMatrix]:
    """Every valid matrix, no symmetry reduction."""
    nonzero = [c for c in product(range(modulus), repeat=rows) if any(c)]
    found = []
    for chosen in product(nonzero, repeat=cols):
        if any(sum(c[i] for c in chosen) % modulus for i in range(rows)):
            continue
        found.append(validate_matrix(modulus, rows, cols, [c[i] for i in range(rows) for c in chosen]))
    return found


def _generators(modulus: int, rows: int, cols: int) -> List[Callable[[CoverMatrix], CoverMatrix]]:
    gens: List[Callable[[CoverMatrix], CoverMatrix]] = []

    for j in range(cols - 1):
        perm = list(range(cols))
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
        gens.append(lambda a, perm=perm: a.transform(identity_matrix(rows), perm))

    for i in range(rows):
        for u in units(modulus):
            scale = [[1 if r == c else 0 for c in range(rows)] for r in range(rows)]
            scale[i][i] = u
            gens.append(lambda a, m=tuple(map(tuple, scale)): a.transform(m))
        for k in range(rows):
            if k == i:
                continue
            swap = [[1 if r == c else 0 for c in range(rows)] for r in range(rows)]
            swap[i][i] = swap[k][k] = 0
            swap[i][k] = swap[k][i] = 1
            gens.append(lambda a, m=tuple(map(tuple, swap)): a.transform(m))
            add = [[1 if r == c else 0 for c in range(rows)] for r in range(rows)]
            add[i][k] = 1
            gens.append(lambda a, m=tuple(map(tuple, add)): a.transform(m))

    return gens


def brute_force_orbits(modulus: int, rows: int, cols: int) -> List[Set[CoverMatrix]]:
    """
    Orbits of valid matrices under column permutations and GL_m(Z/N),
    found by union-find over generators of the group. Independent of
    canonical forms; used as an oracle for the enumerator.
    """
    space = raw_matrices(modulus, rows, cols)
    uf = UnionFind(space)
    for gen in _generators(modulus, rows, cols):
        for a in space:
            uf.union(a, gen(a))

    orbits: Dict[CoverMatrix, Set[CoverMatrix]] = {}
    for a in space:
        orbits.setdefault(uf.find(a), set()).add(a)
    return list(orbits.values())
