"""Constructive conjugators: blockwise inverse-conjugating isometries, lifted
certificates that the class-preserving involution really preserves semisimple
classes (with the determinant bookkeeping for even elements), the even-group
variant, brute-force oracles, and the index-2 extension groups acting on
(group element, vector) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .centralizer import CentralizerDescription, SignBlock, decompose
from .errors import NotEven, RepairFailed, UnreachableDet, WitnessNotFound
from .groups import (
    GPinElem,
    basis_member,
    enumerate_orthogonal,
    half_dim,
    lift,
    membership,
    scalar_member,
    sigma_V,
    sign_of,
    vector_member,
)
from .quadspace import Isometry, QuadSpace


# ---------------------------------------------------------------------------
# Blockwise inverse-conjugators
# ---------------------------------------------------------------------------


def mvw_beta(h: Isometry, d: CentralizerDescription, det_targets=None) -> Isometry:
    """Assemble beta with beta h^-1 beta^-1 = h from the block decomposition.

    GL pairs get the dual-basis swap, self-paired blocks get coordinatewise
    conjugation in a Hermitian-orthogonal basis (both have block determinant
    (-1)^{half the block dimension}); the +-1 eigenblocks are free and take a
    reflection when det_targets demands -1.
    """
    space = h.space
    F = space.field
    det_targets = det_targets or {}
    adapted = []
    images = []
    for b in d.blocks:
        adapted.extend(b.f_basis())
        if isinstance(b, SignBlock):
            target = det_targets.get(b.kind, 1)
            if target == -1 and b.dim == 0:
                raise UnreachableDet(f"{b.kind} block is empty")
            images.extend(b.beta_images(target))
        else:
            images.extend(b.beta_images())
    assert len(adapted) == space.dim
    a_mat = linalg.from_columns(adapted)
    img_mat = linalg.from_columns(images)
    beta_mat = linalg.mat_mul(img_mat, linalg.inverse(a_mat, F), F)
    beta = Isometry(beta_mat, space)
    hinv = h.inverse()
    assert beta * hinv * beta.inverse() == h
    return beta


def mvw_verify(h: Isometry, enumerated=None) -> Isometry:
    """Some beta in O(V) conjugating h^-1 to h: constructive when h is
    semisimple, exhaustive search otherwise (finite fields only)."""
    from .errors import FactorizationUnsupported, NotSemisimple

    try:
        d = decompose(h)
        return mvw_beta(h, d)
    except (NotSemisimple, FactorizationUnsupported):
        pass
    if enumerated is None:
        if h.space.field.kind != "Fp":
            raise WitnessNotFound(
                "h is not semisimple and the group is not enumerable"
            )
        enumerated = enumerate_orthogonal(h.space)
    hinv = h.inverse()
    for beta in enumerated:
        if beta * hinv * beta.inverse() == h:
            return beta
    raise WitnessNotFound("no conjugating element found in the enumerated group")


# ---------------------------------------------------------------------------
# Lifted conjugator certificates
# ---------------------------------------------------------------------------


@dataclass
class ConjugatorCertificate:
    eta: GPinElem
    target: GPinElem  # g itself
    sigma_target: GPinElem  # sigma_V(g), possibly e^k-shifted for the even variant
    det_beta: int
    block_dets: list
    repaired: bool
    even_variant: bool = False

    def verify(self) -> bool:
        return self.eta * self.sigma_target * self.eta.inverse() == self.target

    def det_constraint_ok(self) -> bool:
        """For even targets, det(P(eta)) must be (-1)^k (plain variant)."""
        if self.even_variant or not self.target.is_even:
            return True
        k = half_dim(self.target.space.dim)
        return self.det_beta == (-1) ** k


def _det_targets_for(g: GPinElem, d: CentralizerDescription):
    """Block determinant targets: forced on GL/unitary factors, (-1)^{k_-} on
    the minus block, and the plus block absorbs the global (-1)^k constraint
    for even g (automatically consistent when the plus block is empty)."""
    k = half_dim(g.space.dim)
    forced = 1
    for b in d.gl_unitary_blocks():
        forced *= (-1) ** b.k
    t_minus = (-1) ** d.k_minus if d.minus_dim else 1
    if g.is_even:
        want = (-1) ** k
        t_plus = want * forced * t_minus  # signs are self-inverse
        if d.plus_dim == 0:
            assert t_plus == 1, "even element with empty plus block must balance"
            t_plus = 1
    else:
        t_plus = 1
    return {"plus": t_plus, "minus": t_minus}


def conjugator(g: GPinElem) -> ConjugatorCertificate:
    """Certificate eta with eta sigma_V(g) eta^-1 = g, honoring
    det(P(eta)) = (-1)^k for even g.

    If the lifted blockwise conjugator lands on -g instead, documented sign
    repairs are tried (a single eigenblock vector for odd g, an anisotropic
    pair preserving the determinant for even g); failure raises RepairFailed
    and must be surfaced, never swallowed.
    """
    space = g.space
    d = decompose(g.proj)
    targets = _det_targets_for(g, d)
    beta = mvw_beta(g.proj, d, targets)
    block_dets = [d.restrict_det(beta, b) for b in d.blocks]
    eta = lift(beta)
    sv = sigma_V(g)
    cert = ConjugatorCertificate(
        eta=eta,
        target=g,
        sigma_target=sv,
        det_beta=beta.det_sign,
        block_dets=block_dets,
        repaired=False,
    )
    if cert.verify():
        return cert
    conj = eta * sv * eta.inverse()
    assert conj.value == -g.value, "conjugation landed outside {g, -g}"
    for cand in _repair_candidates(g, d, eta):
        cert2 = ConjugatorCertificate(
            eta=cand,
            target=g,
            sigma_target=sv,
            det_beta=cand.proj.det_sign,
            block_dets=block_dets,
            repaired=True,
        )
        if cert2.verify():
            return cert2
    raise RepairFailed(
        f"no sign repair conjugates the involuted element back to g = {g.value}"
    )


def _repair_candidates(g: GPinElem, d: CentralizerDescription, eta: GPinElem):
    space = g.space
    singles = []
    for block in (d.plus_block, d.minus_block):
        if block is None:
            continue
        for v in block.ortho_vectors:
            singles.append(vector_member(space, v))
    for s in singles:
        yield s * eta
    if g.is_even and d.plus_block and d.minus_block:
        # determinant-preserving pair repair
        for v in d.plus_block.ortho_vectors:
            for w in d.minus_block.ortho_vectors:
                yield vector_member(space, v) * vector_member(space, w) * eta


def conjugator_gspin(g: GPinElem) -> ConjugatorCertificate:
    """Even-group certificate: eta in the even subgroup conjugating
    e^k sigma_V(g) e^-k to g (e the last orthogonal basis vector)."""
    if not g.is_even:
        raise NotEven("the even-group conjugator requires an even element")
    space = g.space
    n = space.dim
    k = half_dim(n)
    base = conjugator(g)
    e = basis_member(space, n - 1)
    qe = space.diag[n - 1]
    ek = scalar_member(space, _power_scalar(space.field, qe, k // 2))
    if k % 2:
        ek = ek * e
    sigma_target = ek * base.sigma_target * ek.inverse()
    eta2 = base.eta if k % 2 == 0 else base.eta * e
    cert = ConjugatorCertificate(
        eta=eta2,
        target=g,
        sigma_target=sigma_target,
        det_beta=eta2.proj.det_sign,
        block_dets=base.block_dets,
        repaired=base.repaired,
        even_variant=True,
    )
    if not cert.verify() or not eta2.is_even:
        raise RepairFailed("even-variant conjugator failed to validate")
    return cert


def _power_scalar(field, a, e: int):
    acc = field.one
    for _ in range(e):
        acc = field.mul(acc, a)
    return acc


def brute_force_conjugate(a: GPinElem, b: GPinElem, group) -> GPinElem | None:
    """First eta in the fixed enumeration order with eta b eta^-1 = a."""
    for eta in group:
        if eta * b * eta.inverse() == a:
            return eta
    return None


# ---------------------------------------------------------------------------
# The involutions tau_W
# ---------------------------------------------------------------------------


def tau_W(g: GPinElem, e_index: int | None = None) -> GPinElem:
    """e sigma_V(g) e^-1 for the designated (default last) basis vector; an
    involution mapping the stabilizer subgroup of e to itself."""
    space = g.space
    i = space.dim - 1 if e_index is None else e_index
    e = basis_member(space, i)
    return e * sigma_V(g) * e.inverse()


def tau_W_gspin(g: GPinElem) -> GPinElem:
    """(e_{n-1}^{k-1} e) sigma_V(g) (e_{n-1}^{k-1} e)^-1: the even-group
    variant of the stabilizer involution."""
    space = g.space
    n = space.dim
    k = half_dim(n)
    c = _vector_power(space, n - 2, k - 1) * basis_member(space, n - 1)
    return c * sigma_V(g) * c.inverse()


def _vector_power(space: QuadSpace, i: int, e: int) -> GPinElem:
    q = space.diag[i]
    g = scalar_member(space, _power_scalar(space.field, q, e // 2))
    if e % 2:
        g = g * basis_member(space, i)
    return g


# ---------------------------------------------------------------------------
# The index-2 extension groups and their actions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TildeElement:
    """(a, bit) models a * beta^bit where beta is a formal central involution
    acting through sigma_V; multiplication xors the bits."""

    elem: GPinElem
    beta_bit: int
    tag: str = "gpin"

    def __mul__(self, other: "TildeElement") -> "TildeElement":
        if self.tag != other.tag:
            raise ValueError("tilde elements from different groups")
        return TildeElement(self.elem * other.elem, self.beta_bit ^ other.beta_bit, self.tag)

    def inverse(self) -> "TildeElement":
        return TildeElement(self.elem.inverse(), self.beta_bit, self.tag)

    @property
    def chi(self) -> int:
        return -1 if self.beta_bit else 1

    def act(self, h: GPinElem, v):
        """Action on (group element, vector): the bit routes h through
        sigma_V and negates v, then the plain part conjugates and projects."""
        space = self.elem.space
        F = space.field
        hh = sigma_V(h) if self.beta_bit else h
        h2 = self.elem * hh * self.elem.inverse()
        vv = tuple(F.neg(x) for x in v) if self.beta_bit else v
        return h2, self.elem.proj.apply(vv)

    def __eq__(self, other):
        return (
            isinstance(other, TildeElement)
            and self.tag == other.tag
            and self.beta_bit == other.beta_bit
            and self.elem == other.elem
        )

    def __hash__(self):
        return hash((self.tag, self.beta_bit, self.elem))


def gpin_tilde(g: GPinElem, beta_bit: int = 0) -> TildeElement:
    return TildeElement(g, beta_bit & 1, "gpin")


def gspin_tilde(g: GPinElem, beta_bit: int = 0) -> TildeElement:
    """Subgroup generated by the even group and e^k beta."""
    if not g.is_even:
        raise NotEven("plain part must be even")
    space = g.space
    k = half_dim(space.dim)
    elem = g * _vector_power(space, space.dim - 1, k) if beta_bit else g
    return TildeElement(elem, beta_bit & 1, "gspin")


def gpin_tilde_w(g: GPinElem, beta_bit: int = 0) -> TildeElement:
    """Stabilizer-of-e subgroup: generated by the stabilizer of the last
    basis vector and e beta."""
    space = g.space
    e = space.basis_vector(space.dim - 1)
    if g.proj.apply(e) != e:
        raise ValueError("plain part must stabilize the last basis vector")
    elem = g * basis_member(space, space.dim - 1) if beta_bit else g
    return TildeElement(elem, beta_bit & 1, "gpin_w")


def gspin_tilde_w(g: GPinElem, beta_bit: int = 0) -> TildeElement:
    space = g.space
    if not g.is_even:
        raise NotEven("plain part must be even")
    e = space.basis_vector(space.dim - 1)
    if g.proj.apply(e) != e:
        raise ValueError("plain part must stabilize the last basis vector")
    if beta_bit:
        k = half_dim(space.dim)
        elem = g * _vector_power(space, space.dim - 2, k - 1) * basis_member(
            space, space.dim - 1
        )
    else:
        elem = g
    return TildeElement(elem, beta_bit & 1, "gspin_w")
