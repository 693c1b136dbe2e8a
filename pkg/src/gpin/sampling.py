"""Seeded deterministic generators for property checks.

Everything takes an explicit random.Random so suite reports are reproducible
byte-for-byte from the seed.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .clifford import CliffordElem
from .groups import GPinElem, from_vectors
from .quadspace import QuadSpace, Isometry, make_space, reflection_product
from .scalars import Field


def square_class_forms(field: Field, n: int):
    """Every diagonal form up to square classes: entries from {1, nonresidue}."""
    nr = field.nonresidue()
    forms = []
    for comb in combinations_with_replacement((field.one, nr), n):
        forms.append(comb)
    return forms


def diagonal_space(field: Field, diag) -> QuadSpace:
    n = len(diag)
    gram = [[diag[i] if i == j else field.zero for j in range(n)] for i in range(n)]
    return make_space(gram, field)


def random_vector(space: QuadSpace, rng: random.Random):
    return tuple(space.field.sample(rng) for _ in range(space.dim))


def random_nonzero_vector(space: QuadSpace, rng: random.Random):
    while True:
        v = random_vector(space, rng)
        if any(not space.field.is_zero(x) for x in v):
            return v


def random_anisotropic(space: QuadSpace, rng: random.Random):
    while True:
        v = random_vector(space, rng)
        if not space.field.is_zero(space.quad(v)):
            return v


def random_clifford(space: QuadSpace, rng: random.Random, terms: int = 4) -> CliffordElem:
    out = {}
    for _ in range(terms):
        mask = rng.randrange(1 << space.dim)
        out[mask] = space.field.sample(rng)
    return CliffordElem.make(space, out)


def random_member(space: QuadSpace, rng: random.Random, max_vectors: int | None = None) -> GPinElem:
    """z times a product of random anisotropic vectors."""
    if max_vectors is None:
        max_vectors = space.dim + 1
    l = rng.randrange(max_vectors + 1)
    vs = [random_anisotropic(space, rng) for _ in range(l)]
    return from_vectors(space, vs, space.field.sample_nonzero(rng))


def random_isometry(space: QuadSpace, rng: random.Random) -> Isometry:
    """Product of up to 2n random reflections."""
    l = rng.randrange(2 * space.dim + 1)
    vs = [random_anisotropic(space, rng) for _ in range(l)]
    return reflection_product(space, vs)
