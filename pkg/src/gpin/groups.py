"""The group layer on top of the Clifford algebra: membership, the canonical
projection onto the orthogonal group and its reflection-based section, sign
character, spinor norm, Pin/Spin, centers, the class-preserving involution,
commutation with the top blade, product splittings, and exhaustive
enumeration over small finite fields.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import linalg
from .clifford import CliffordElem, basis_vector_elem, zeta
from .errors import (
    CapExceeded,
    IsotropicVector,
    NotMemberError,
    WrongParityDimension,
    ZeroScalar,
)
from .quadspace import Isometry, QuadSpace, cartan_dieudonne, identity_isometry, reflect

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class GPinElem:
    """A validated group element: invertible, parity-homogeneous, stabilizes V
    under the twisted conjugation; carries its scalar norm and projected
    isometry.  Even parity members form the index-2 subgroup."""

    value: CliffordElem
    parity: int  # 0 even, 1 odd
    norm: object
    proj: Isometry

    @property
    def space(self) -> QuadSpace:
        return self.value.space

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    def __mul__(self, other: "GPinElem") -> "GPinElem":
        F = self.space.field
        return GPinElem(
            self.value * other.value,
            self.parity ^ other.parity,
            F.mul(self.norm, other.norm),
            self.proj * other.proj,
        )

    def inverse(self) -> "GPinElem":
        F = self.space.field
        return GPinElem(
            self.value.bar().scale(F.inv(self.norm)),
            self.parity,
            F.inv(self.norm),
            self.proj.inverse(),
        )

    def scale(self, z) -> "GPinElem":
        F = self.space.field
        if F.is_zero(z):
            raise ZeroScalar("scalar multiplier must be nonzero")
        return GPinElem(
            self.value.scale(z), self.parity, F.mul(F.mul(z, z), self.norm), self.proj
        )

    def conjugate(self, other: "GPinElem") -> "GPinElem":
        """self * other * self^-1"""
        return self * other * self.inverse()

    def __eq__(self, other):
        return isinstance(other, GPinElem) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)


def membership(a: CliffordElem) -> GPinElem:
    """Validate a as a group member.

    Raises NotMemberError with reason 'NonInvertible' (norm not a nonzero
    scalar), 'MixedParity', or 'DoesNotStabilizeV'.  Homogeneity plus scalar
    norm certifies invertibility without a generic 2^n-dimensional inversion.
    """
    space = a.space
    F = space.field
    if a.is_zero:
        raise NotMemberError("NonInvertible", "zero element")
    par = a.parity()
    if par is None:
        raise NotMemberError("MixedParity", f"grades {a.grades()}")
    nrm = a.norm()
    if not nrm.is_scalar() or F.is_zero(nrm.scalar_part()):
        raise NotMemberError("NonInvertible", "norm is not a nonzero scalar")
    norm_s = nrm.scalar_part()
    inv = a.bar().scale(F.inv(norm_s))
    aa = a.alpha()
    cols = []
    for i in range(space.dim):
        img = aa * basis_vector_elem(space, i) * inv
        coeffs = [F.zero] * space.dim
        for m, c in img.terms:
            if m.bit_count() != 1:
                raise NotMemberError("DoesNotStabilizeV", f"image of e{i + 1} has grade {m.bit_count()}")
            coeffs[m.bit_length() - 1] = c
        cols.append(tuple(coeffs))
    m_ortho = linalg.from_columns(cols)
    b = space.ortho_basis
    m_orig = linalg.mat_mul(b, linalg.mat_mul(m_ortho, space.ortho_inv, F), F)
    proj = Isometry(m_orig, space)
    # parity determines the connected component
    assert (proj.det_sign == 1) == (par == 0)
    return GPinElem(a, par, norm_s, proj)


def project(g: GPinElem) -> Isometry:
    return g.proj


def from_vectors(space: QuadSpace, vectors, z=None) -> GPinElem:
    """z * v_1 ... v_l for anisotropic v_i; parity is l mod 2."""
    F = space.field
    vectors = list(vectors)
    if z is None:
        z = F.one
    if F.is_zero(z):
        raise ZeroScalar("z must be nonzero")
    value = CliffordElem.scalar(space, z)
    proj = identity_isometry(space)
    for v in vectors:
        if F.is_zero(space.quad(v)):
            raise IsotropicVector(f"q(v) = 0 for v = {v}")
        value = value * CliffordElem.from_vector(space, v)
        proj = proj * reflect(space, v)
    nrm = value.norm()
    assert nrm.is_scalar()
    return GPinElem(value, len(vectors) % 2, nrm.scalar_part(), proj)


def lift(m: Isometry) -> GPinElem:
    """Reflection-based section of the projection: P(lift(m)) = m exactly.

    The coset representative is fixed by normalizing the lowest-mask
    coefficient to 1.
    """
    space = m.space
    F = space.field
    vectors = cartan_dieudonne(m)
    value = CliffordElem.one(space)
    for v in vectors:
        value = value * CliffordElem.from_vector(space, v)
    c = value.terms[0][1]
    value = value.scale(F.inv(c))
    nrm = value.norm()
    assert nrm.is_scalar()
    return GPinElem(value, len(vectors) % 2, nrm.scalar_part(), m)


def scalar_member(space: QuadSpace, z) -> GPinElem:
    if space.field.is_zero(z):
        raise ZeroScalar("z must be nonzero")
    F = space.field
    return GPinElem(
        CliffordElem.scalar(space, z),
        0,
        F.mul(z, z),
        identity_isometry(space),
    )


def vector_member(space: QuadSpace, v) -> GPinElem:
    return from_vectors(space, [v])


def basis_member(space: QuadSpace, i: int) -> GPinElem:
    return vector_member(space, space.basis_vector(i))


def zeta_member(space: QuadSpace) -> GPinElem:
    return membership(zeta(space))


def sign_of(g: GPinElem) -> int:
    return -1 if g.parity else 1


def half_dim(n: int) -> int:
    """k with n = 2k or n = 2k-1."""
    return (n + 1) // 2


def sigma_V(g: GPinElem) -> GPinElem:
    """The class-preserving involution: reversal for even n, and
    sign(g)^{k+1}-twisted reversal for odd n."""
    space = g.space
    n = space.dim
    k = half_dim(n)
    v = g.value.star()
    if n % 2 == 1 and (g.parity * (k + 1)) % 2 == 1:
        v = -v
    return membership(v)


def spinor_norm(m: Isometry):
    """Norm of the lifted element, reduced modulo squares; well-defined since
    kernel scalars contribute squares."""
    g = lift(m)
    return m.space.field.square_class(g.norm)


def pin_spin_membership(g: GPinElem):
    """(in Pin, in Spin): Pin is the norm-1 kernel, Spin its even part."""
    in_pin = g.norm == g.space.field.one
    return in_pin, in_pin and g.is_even


def zeta_commutation(g: GPinElem) -> int:
    """c with g * zeta = c * zeta * g, for even dim > 2; contract: c = sign(g)."""
    space = g.space
    if space.dim % 2 == 1 or space.dim <= 2:
        raise WrongParityDimension(f"requires even dim > 2, got {space.dim}")
    z = zeta(space)
    gz = g.value * z
    zg = z * g.value
    if gz == zg:
        return 1
    if gz == -zg:
        return -1
    raise AssertionError("zeta neither commutes nor anticommutes")


# ---------------------------------------------------------------------------
# Centers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CenterDescription:
    group: str  # "GPin" | "GSpin"
    dim: int
    has_zeta_coset: bool
    commutative_whole_group: bool

    def describe(self) -> str:
        if self.commutative_whole_group:
            return f"{self.group} is commutative; center is the whole group"
        if self.has_zeta_coset:
            return "scalars plus the scalar multiples of the top blade"
        return "scalars only"


def center(space: QuadSpace, group: str) -> CenterDescription:
    n = space.dim
    if group not in ("GPin", "GSpin"):
        raise ValueError(f"unknown group {group!r}")
    if n % 2 == 1:
        if group == "GPin":
            return CenterDescription("GPin", n, True, n == 1)
        return CenterDescription("GSpin", n, False, n == 1)
    if group == "GPin":
        return CenterDescription("GPin", n, False, False)
    # even GSpin: the top blade is central; for n = 2 the whole group is
    return CenterDescription("GSpin", n, True, n == 2)


def center_elements(space: QuadSpace, group: str, enumerated=None):
    """Materialize the center over a finite field for brute-force comparison."""
    desc = center(space, group)
    F = space.field
    if desc.commutative_whole_group:
        if enumerated is None:
            enumerated = enumerate_group(space, group.lower())
        return list(enumerated)
    out = [scalar_member(space, z) for z in F.units()]
    if desc.has_zeta_coset:
        zm = zeta_member(space)
        out.extend(zm.scale(z) for z in F.units())
    return out


# ---------------------------------------------------------------------------
# Product splittings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitReport:
    dim: int
    splits: bool
    witness: CliffordElem | None
    detail: str


def split_structure(space: QuadSpace) -> SplitReport:
    """Odd dim: a rescaled top blade z with z^2 = 1 exists iff the
    discriminant class is trivial, giving the direct product with {1, z}.
    Even dim: search the orthogonal basis for q(v) a square and return
    t = v / sqrt(q(v)) with t^2 = 1, realizing the semidirect product."""
    F = space.field
    n = space.dim
    if n % 2 == 1:
        z = zeta(space)
        zsq = (z * z).scalar_part()
        if not F.is_square(zsq):
            return SplitReport(n, False, None, "discriminant class is nontrivial")
        c = F.inv(F.sqrt(zsq))
        witness = z.scale(c)
        assert (witness * witness) == CliffordElem.one(space)
        return SplitReport(n, True, witness, "rescaled top blade squares to 1")
    for i, d in enumerate(space.diag):
        if F.is_square(d):
            c = F.inv(F.sqrt(d))
            witness = basis_vector_elem(space, i).scale(c)
            assert (witness * witness) == CliffordElem.one(space)
            return SplitReport(n, True, witness, f"basis vector {i + 1} rescaled")
    return SplitReport(n, False, None, "no basis vector of square length found")


# ---------------------------------------------------------------------------
# Exhaustive enumeration over F_p
# ---------------------------------------------------------------------------


def enumerate_orthogonal(space: QuadSpace, cap: int = DEFAULT_CAP):
    """Closure of the reflections in every anisotropic line; deterministic
    BFS order."""
    if space.field.kind != "Fp":
        raise ValueError("enumeration requires a finite field")
    gens = [reflect(space, v) for v in space.anisotropic_lines()]
    ident = identity_isometry(space)
    seen = {ident.matrix: ident}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in gens:
            nm = m * g
            if nm.matrix not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"orthogonal group exceeds cap {cap}")
                seen[nm.matrix] = nm
                queue.append(nm)
    return list(seen.values())


def enumerate_group(space: QuadSpace, group: str, cap: int = DEFAULT_CAP):
    """Full element list: 'o', 'so' as isometries; 'gpin', 'gspin' as members
    {z * lift(m)} over the units and the matrix group."""
    group = group.lower()
    if group not in ("o", "so", "gpin", "gspin"):
        raise ValueError(f"unknown group {group!r}")
    matrices = enumerate_orthogonal(space, cap)
    if group == "o":
        return matrices
    if group == "so":
        return [m for m in matrices if m.det_sign == 1]
    F = space.field
    base = matrices if group == "gpin" else [m for m in matrices if m.det_sign == 1]
    out = []
    for m in base:
        g = lift(m)
        for z in F.units():
            out.append(g.scale(z))
    return out
