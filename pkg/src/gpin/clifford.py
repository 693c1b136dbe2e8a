"""Sparse multivector arithmetic in the Clifford algebra of a quadratic space.

Basis blades are bitmasks over the orthogonal basis; a multivector is a map
from masks to nonzero scalars.  The blade product is a pure sign computation:
for blades S, T the sign is the parity of {(i, j) : i in S, j in T, i > j},
the contracted coefficient is prod_{i in S&T} q(e_i), and the resulting blade
is S ^ T.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpaceMismatch
from .quadspace import QuadSpace


def _interleave_sign_exponent(s: int, t: int) -> int:
    count = 0
    j = 0
    tt = t
    while tt:
        if tt & 1:
            count += (s >> (j + 1)).bit_count()
        tt >>= 1
        j += 1
    return count


@dataclass(frozen=True)
class CliffordElem:
    """terms: {mask: scalar}, no zero coefficients, masks < 2^n."""

    space: QuadSpace
    terms: tuple  # sorted tuple of (mask, scalar)

    @staticmethod
    def make(space: QuadSpace, term_map: dict) -> "CliffordElem":
        F = space.field
        items = tuple(
            (m, F.normalize(c)) for m, c in sorted(term_map.items()) if not F.is_zero(c)
        )
        for m, _ in items:
            if not 0 <= m < (1 << space.dim):
                raise ValueError(f"blade mask {m} out of range")
        return CliffordElem(space, items)

    @staticmethod
    def scalar(space: QuadSpace, c) -> "CliffordElem":
        return CliffordElem.make(space, {0: c})

    @staticmethod
    def one(space: QuadSpace) -> "CliffordElem":
        return CliffordElem.scalar(space, space.field.one)

    @staticmethod
    def zero(space: QuadSpace) -> "CliffordElem":
        return CliffordElem(space, ())

    @staticmethod
    def basis_blade(space: QuadSpace, mask: int) -> "CliffordElem":
        return CliffordElem.make(space, {mask: space.field.one})

    @staticmethod
    def from_vector(space: QuadSpace, v) -> "CliffordElem":
        """Grade-1 element from a vector in original coordinates."""
        coeffs = space.to_ortho(v)
        return CliffordElem.make(
            space, {1 << i: c for i, c in enumerate(coeffs)}
        )

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mask: int):
        for m, c in self.terms:
            if m == mask:
                return c
        return self.space.field.zero

    def scalar_part(self):
        return self.coeff(0)

    def is_scalar(self) -> bool:
        return all(m == 0 for m, _ in self.terms)

    def as_vector(self):
        """Original-coordinate vector if the element has pure grade 1, else None."""
        F = self.space.field
        coeffs = [F.zero] * self.space.dim
        for m, c in self.terms:
            if m.bit_count() != 1:
                return None
            coeffs[m.bit_length() - 1] = c
        return self.space.from_ortho(tuple(coeffs))

    def grades(self):
        return sorted({m.bit_count() for m, _ in self.terms})

    def parity(self):
        """0 for even, 1 for odd, None for mixed or zero."""
        ps = {m.bit_count() & 1 for m, _ in self.terms}
        return ps.pop() if len(ps) == 1 else None

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "CliffordElem"):
        if self.space != other.space:
            raise SpaceMismatch("elements live in different spaces")

    def __add__(self, other: "CliffordElem") -> "CliffordElem":
        self._check(other)
        F = self.space.field
        out = dict(self.terms)
        for m, c in other.terms:
            out[m] = F.add(out.get(m, F.zero), c)
        return CliffordElem.make(self.space, out)

    def __sub__(self, other: "CliffordElem") -> "CliffordElem":
        return self + other.scale(self.space.field.neg(self.space.field.one))

    def __neg__(self) -> "CliffordElem":
        return self.scale(self.space.field.neg(self.space.field.one))

    def scale(self, c) -> "CliffordElem":
        F = self.space.field
        return CliffordElem.make(
            self.space, {m: F.mul(c, x) for m, x in self.terms}
        )

    def __mul__(self, other: "CliffordElem") -> "CliffordElem":
        self._check(other)
        F = self.space.field
        diag = self.space.diag
        out: dict = {}
        neg_one = F.neg(F.one)
        for s, a in self.terms:
            for t, b in other.terms:
                coeff = F.mul(a, b)
                if _interleave_sign_exponent(s, t) & 1:
                    coeff = F.mul(neg_one, coeff)
                common = s & t
                while common:
                    i = (common & -common).bit_length() - 1
                    coeff = F.mul(coeff, diag[i])
                    common &= common - 1
                m = s ^ t
                prev = out.get(m)
                out[m] = coeff if prev is None else F.add(prev, coeff)
        return CliffordElem.make(self.space, out)

    def pow(self, e: int) -> "CliffordElem":
        acc = CliffordElem.one(self.space)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # -- involutions ------------------------------------------------------------

    def alpha(self) -> "CliffordElem":
        """Negate odd blades (parity automorphism)."""
        F = self.space.field
        return CliffordElem.make(
            self.space,
            {m: (F.neg(c) if m.bit_count() & 1 else c) for m, c in self.terms},
        )

    def star(self) -> "CliffordElem":
        """Reversal anti-automorphism: grade l scales by (-1)^{l(l-1)/2}."""
        F = self.space.field
        out = {}
        for m, c in self.terms:
            l = m.bit_count()
            out[m] = F.neg(c) if (l * (l - 1) // 2) % 2 else c
        return CliffordElem.make(self.space, out)

    def bar(self) -> "CliffordElem":
        """alpha composed with star; grade l scales by (-1)^{l(l+1)/2}."""
        F = self.space.field
        out = {}
        for m, c in self.terms:
            l = m.bit_count()
            out[m] = F.neg(c) if (l * (l + 1) // 2) % 2 else c
        return CliffordElem.make(self.space, out)

    def norm(self) -> "CliffordElem":
        """Clifford norm a * bar(a); a general element of the algebra, scalar
        exactly on group members."""
        return self * self.bar()

    def grade_parts(self):
        even = {m: c for m, c in self.terms if not m.bit_count() & 1}
        odd = {m: c for m, c in self.terms if m.bit_count() & 1}
        return (
            CliffordElem.make(self.space, even),
            CliffordElem.make(self.space, odd),
        )

    # -- presentation --------------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return "0"
        F = self.space.field
        parts = []
        for m, c in self.terms:
            blade = blade_name(m)
            if m == 0:
                parts.append(F.fmt(c))
            elif c == F.one:
                parts.append(blade)
            else:
                parts.append(f"{F.fmt(c)}*{blade}")
        return " + ".join(parts)

    def __hash__(self):
        return hash(self.terms)


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def zeta(space: QuadSpace) -> CliffordElem:
    """Product of the orthogonal basis vectors in index order: the top blade."""
    return CliffordElem.basis_blade(space, (1 << space.dim) - 1)


def embed(elem: CliffordElem, ambient: QuadSpace, index_map) -> CliffordElem:
    """Re-index blades of a diagonal-subspace element into an ambient space.

    index_map sends subspace basis index i to ambient orthogonal index
    index_map[i]; it must be ascending (relative order fixes the product
    signs) and match the diagonal values.
    """
    index_map = list(index_map)
    assert all(a < b for a, b in zip(index_map, index_map[1:]))
    for i, j in enumerate(index_map):
        assert elem.space.diag[i] == ambient.diag[j], "diagonal mismatch"
    out = {}
    for m, c in elem.terms:
        mm = 0
        for i in range(m.bit_length()):
            if m >> i & 1:
                mm |= 1 << index_map[i]
        out[mm] = c
    return CliffordElem.make(ambient, out)


def basis_vector_elem(space: QuadSpace, i: int) -> CliffordElem:
    return CliffordElem.basis_blade(space, 1 << i)
