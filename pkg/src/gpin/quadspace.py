"""Nondegenerate quadratic spaces: diagonalization, reflections,
Cartan-Dieudonne factorization, discriminants.

A space is diagonalized once at construction (symmetric Gram-Schmidt with
pivoting); the Clifford layer then works purely with the diagonal data, while
vectors and isometry matrices stay in the original basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import DegenerateForm, IsotropicVector
from .scalars import Field


@dataclass(frozen=True)
class QuadSpace:
    field: Field
    gram: tuple
    ortho_basis: tuple  # columns are an orthogonal basis, original coordinates
    diag: tuple  # q(e_i) for the orthogonal basis, all nonzero
    ortho_inv: tuple = dc_field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def bilinear(self, v, w):
        """v^T . gram . w"""
        if len(v) != self.dim or len(w) != self.dim:
            raise ValueError("dimension mismatch")
        s = sum(
            vi * sum(g * wj for g, wj in zip(row, w))
            for vi, row in zip(v, self.gram)
            if vi
        )
        return s % self.field.p if self.field.kind == "Fp" else s + self.field.zero

    def quad(self, v):
        return self.bilinear(v, v)

    def basis_vector(self, i: int):
        """i-th orthogonal basis vector in original coordinates."""
        return tuple(row[i] for row in self.ortho_basis)

    def to_ortho(self, v):
        return linalg.mat_vec(self.ortho_inv, v, self.field)

    def from_ortho(self, c):
        return linalg.mat_vec(self.ortho_basis, c, self.field)

    def restricted_gram(self, vectors):
        """Gram matrix of the form restricted to the given vectors."""
        return tuple(
            tuple(self.bilinear(v, w) for w in vectors) for v in vectors
        )

    def vectors(self):
        """All vectors of F_p^n (finite fields only)."""
        return itertools.product(self.field.elements(), repeat=self.dim)

    def projective_vectors(self):
        """One representative per line: first nonzero coordinate is 1."""
        for v in self.vectors():
            for x in v:
                if not self.field.is_zero(x):
                    break
            else:
                continue
            if x == self.field.one:
                yield v

    def anisotropic_lines(self):
        return [v for v in self.projective_vectors() if not self.field.is_zero(self.quad(v))]

    def __eq__(self, other):
        return (
            isinstance(other, QuadSpace)
            and self.field == other.field
            and self.gram == other.gram
        )

    def __hash__(self):
        return hash((self.field, self.gram))

    def __str__(self):
        return f"QuadSpace({self.field}, n={self.dim}, diag={[self.field.fmt(d) for d in self.diag]})"


def make_space(gram, field: Field) -> QuadSpace:
    """Diagonalize a symmetric nondegenerate matrix.

    Pivoting: if q(b_i) = 0, swap in the first later vector with q != 0, else
    add the first later vector with nonzero pairing (char != 2 makes the sum
    anisotropic).
    """
    n = len(gram)
    gram = tuple(
        tuple(field.parse(x) if isinstance(x, (int, str)) else x for x in row)
        for row in gram
    )
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ValueError("gram matrix must be symmetric")
    if field.is_zero(linalg.det(gram, field)):
        raise DegenerateForm("gram matrix is singular")

    def blf(v, w):
        s = field.zero
        for a, row in zip(v, gram):
            if field.is_zero(a):
                continue
            for b, g in zip(w, row):
                s = field.add(s, field.mul(field.mul(a, g), b))
        return s

    basis = [list(row) for row in linalg.identity(n, field)]
    for i in range(n):
        if field.is_zero(blf(basis[i], basis[i])):
            for j in range(i + 1, n):
                if not field.is_zero(blf(basis[j], basis[j])):
                    basis[i], basis[j] = basis[j], basis[i]
                    break
            else:
                for j in range(i + 1, n):
                    if not field.is_zero(blf(basis[i], basis[j])):
                        basis[i] = [field.add(a, b) for a, b in zip(basis[i], basis[j])]
                        break
                else:
                    raise AssertionError("nondegenerate form has no pivot")
        qi = blf(basis[i], basis[i])
        for j in range(i + 1, n):
            c = field.div(blf(basis[j], basis[i]), qi)
            basis[j] = [field.sub(a, field.mul(c, b)) for a, b in zip(basis[j], basis[i])]

    b_cols = linalg.from_columns([tuple(v) for v in basis])
    diag = tuple(blf(v, v) for v in basis)
    return QuadSpace(
        field=field,
        gram=gram,
        ortho_basis=b_cols,
        diag=diag,
        ortho_inv=linalg.inverse(b_cols, field),
    )


@dataclass(frozen=True)
class Isometry:
    matrix: tuple
    space: QuadSpace
    determinant: object = dc_field(default=None, compare=False)

    def __post_init__(self):
        F = self.space.field
        g = self.space.gram
        mt = linalg.transpose(self.matrix)
        if linalg.mat_mul(mt, linalg.mat_mul(g, self.matrix, F), F) != g:
            raise ValueError("matrix does not preserve the form")
        d = linalg.det(self.matrix, F)
        if not (d == F.one or d == F.neg(F.one)):
            raise ValueError("isometry determinant must be +-1")
        object.__setattr__(self, "determinant", d)

    @property
    def det_sign(self) -> int:
        return 1 if self.determinant == self.space.field.one else -1

    def __mul__(self, other: "Isometry") -> "Isometry":
        # products of isometries are isometries; skip revalidation
        F = self.space.field
        m = object.__new__(Isometry)
        object.__setattr__(m, "matrix", linalg.mat_mul(self.matrix, other.matrix, F))
        object.__setattr__(m, "space", self.space)
        object.__setattr__(
            m, "determinant", F.mul(self.determinant, other.determinant)
        )
        return m

    def inverse(self) -> "Isometry":
        return Isometry(linalg.inverse(self.matrix, self.space.field), self.space)

    def apply(self, v):
        return linalg.mat_vec(self.matrix, v, self.space.field)

    def __eq__(self, other):
        return isinstance(other, Isometry) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def identity_isometry(space: QuadSpace) -> Isometry:
    return Isometry(linalg.identity(space.dim, space.field), space)


def reflect(space: QuadSpace, v) -> Isometry:
    """Reflection in the hyperplane orthogonal to v: w - (2<w,v>/q(v)) v."""
    F = space.field
    qv = space.quad(v)
    if F.is_zero(qv):
        raise IsotropicVector(f"q(v) = 0 for v = {v}")
    n = space.dim
    cols = []
    for j in range(n):
        e = tuple(F.one if i == j else F.zero for i in range(n))
        c = F.div(F.mul(F.from_int(2), space.bilinear(e, v)), qv)
        cols.append(tuple(F.sub(e[i], F.mul(c, v[i])) for i in range(n)))
    return Isometry(linalg.from_columns(cols), space)


def _find_anisotropic(space: QuadSpace, vectors):
    """An anisotropic vector in the span, or None if the span is totally
    isotropic.  Scans the given vectors, then pairwise sums (char != 2: if all
    q(v_i) = 0 but some pairing is nonzero, the sum is anisotropic)."""
    F = space.field
    for v in vectors:
        if not F.is_zero(space.quad(v)):
            return v
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            s = linalg.vec_add(vectors[i], vectors[j], F)
            if not F.is_zero(space.quad(s)):
                return s
    return None


def _span_candidates(space: QuadSpace, basis):
    """Deterministic stream of nonzero vectors in the span of `basis`.

    Finite fields: every line once (first nonzero coefficient 1).  Over Q:
    small integer coefficient patterns, widening once.
    """
    import itertools

    F = space.field
    m = len(basis)
    if F.kind == "Fp":
        coeff_sets = [list(F.elements())]
    else:
        from fractions import Fraction

        coeff_sets = [
            [Fraction(c) for c in (0, 1, -1)],
            [Fraction(c) for c in (0, 1, -1, 2, -2)],
        ]
    seen = set()
    for coeffs in coeff_sets:
        for tup in itertools.product(coeffs, repeat=m):
            if all(F.is_zero(c) for c in tup):
                continue
            if F.kind == "Fp":
                # projective normalization: first nonzero coefficient is 1
                lead = next(c for c in tup if not F.is_zero(c))
                if lead != F.one:
                    continue
            if tup in seen:
                continue
            seen.add(tup)
            v = tuple(space.field.zero for _ in range(space.dim))
            for c, b in zip(tup, basis):
                if not F.is_zero(c):
                    v = linalg.vec_add(v, linalg.vec_scale(c, b, F), F)
            yield v


def _ortho_complement_in_span(space: QuadSpace, v, basis):
    """Basis of {x in span(basis) : <x, v> = 0}."""
    F = space.field
    row = tuple(space.bilinear(b, v) for b in basis)
    coords = linalg.kernel_basis((row,), F)
    out = []
    for c in coords:
        x = tuple(F.zero for _ in range(space.dim))
        for ci, b in zip(c, basis):
            if not F.is_zero(ci):
                x = linalg.vec_add(x, linalg.vec_scale(ci, b, F), F)
        out.append(x)
    return out


def cartan_dieudonne(m: Isometry):
    """Vectors v_1..v_l with r_{v_1} ... r_{v_l} = m and l <= dim.

    Classical fixed-space peeling on a shrinking nondegenerate subspace:
    (A) an anisotropic fixed vector is split off for free; (B) an anisotropic
    b with q(b - Mb) != 0 costs one reflection and reduces to (A); (C) the
    exceptional case (restriction unipotent with totally isotropic residual,
    even subspace dimension) composes with one extra reflection, after which
    (B) is guaranteed.  Reflecting vectors always lie in the ambient space.
    """
    space = m.space
    F = space.field
    vectors = []
    cur = m
    basis = [space.basis_vector(i) for i in range(space.dim)]
    exceptional_streak = 0
    while basis:
        fixed = True
        for b in basis:
            if cur.apply(b) != tuple(b):
                fixed = False
                break
        if fixed:
            break
        # case A: anisotropic fixed vector in the span
        images = [cur.apply(b) for b in basis]
        rel_rows = []
        for b, img in zip(basis, images):
            rel_rows.append(tuple(F.sub(x, y) for x, y in zip(img, b)))
        # fixed vectors of cur inside span(basis): combinations with
        # sum c_i (M b_i - b_i) = 0
        coeff_kernel = linalg.kernel_basis(linalg.transpose(rel_rows), F)
        fixed_vectors = []
        for c in coeff_kernel:
            x = tuple(F.zero for _ in range(space.dim))
            for ci, b in zip(c, basis):
                if not F.is_zero(ci):
                    x = linalg.vec_add(x, linalg.vec_scale(ci, b, F), F)
            fixed_vectors.append(x)
        v = _find_anisotropic(space, fixed_vectors)
        if v is not None:
            basis = _ortho_complement_in_span(space, v, basis)
            exceptional_streak = 0
            continue
        # case B: anisotropic b with anisotropic difference
        found = None
        for b in _span_candidates(space, basis):
            if F.is_zero(space.quad(b)):
                continue
            u = linalg.vec_sub(b, cur.apply(b), F)
            if linalg.is_zero_vec(u, F) or F.is_zero(space.quad(u)):
                continue
            found = (b, u)
            break
        if found is not None:
            b, u = found
            vectors.append(u)
            cur = reflect(space, u) * cur  # now fixes b
            basis = _ortho_complement_in_span(space, b, basis)
            exceptional_streak = 0
            continue
        # case C: exceptional; compose with one reflection inside the span
        if exceptional_streak:
            raise AssertionError("exceptional case repeated; cannot happen in char != 2")
        w = _find_anisotropic(space, basis)
        assert w is not None  # span is nondegenerate
        vectors.append(w)
        cur = reflect(space, w) * cur
        exceptional_streak += 1
    assert reflection_product(space, vectors) == m
    assert len(vectors) <= space.dim
    return vectors


def reflection_product(space: QuadSpace, vectors) -> Isometry:
    m = identity_isometry(space)
    for v in vectors:
        m = m * reflect(space, v)
    return m


def diagonal_subspace(space: QuadSpace, indices) -> QuadSpace:
    """The diagonal space on a subset of the orthogonal basis; its blades
    embed into the ambient algebra by re-indexing."""
    F = space.field
    indices = list(indices)
    gram = tuple(
        tuple(space.diag[i] if i == j else F.zero for j in indices) for i in indices
    )
    return make_space(gram, F)


def discriminant(space: QuadSpace):
    """Square class of (-1)^{n(n-1)/2} * prod diag; the sign convention makes
    the square of the full basis blade land in this class exactly."""
    F = space.field
    n = space.dim
    d = F.one
    for x in space.diag:
        d = F.mul(d, x)
    if (n * (n - 1) // 2) % 2:
        d = F.neg(d)
    return F.square_class(d)
