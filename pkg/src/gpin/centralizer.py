"""Decomposition of V under a semisimple isometry h into GL-paired isotropic
blocks, Hermitian (unitary) blocks, and +-1 eigenblocks, with explicit
trace-form pairings; plus the SO / group-image refinements of O(V)_h.

The minimal polynomial splits as p = prod p_i; V_i = ker p_i(h) becomes a
module over A_i = F[x]/(p_i), and the form is recovered from an A_i-valued
pairing through the field trace (the trace form is nondegenerate since all
extensions here are separable).  Factors pair under x -> 1/x: self-paired
factors other than x -+ 1 carry a Hermitian form, swapped pairs give totally
isotropic dual partners.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import NotSemisimple, NotSpecial
from .quadspace import Isometry, QuadSpace, make_space
from .scalars import ExtField, Poly, ext_inverse_involution, factor, minimal_polynomial


# ---------------------------------------------------------------------------
# Extension-module context: powers of h and the trace-form solve
# ---------------------------------------------------------------------------


@dataclass
class ExtContext:
    space: QuadSpace
    ext: ExtField
    h_pows: list  # [I, H, ..., H^{d-1}]
    h_inv: tuple
    trace_inv: tuple  # inverse of T[r][s] = tr(x^{r+s})

    @staticmethod
    def build(space: QuadSpace, h_mat, ext: ExtField) -> "ExtContext":
        F = space.field
        d = ext.degree
        pows = [linalg.identity(space.dim, F)]
        for _ in range(d - 1):
            pows.append(linalg.mat_mul(pows[-1], h_mat, F))
        xs = [ext.one]
        for _ in range(2 * d - 2):
            xs.append(ext.mul(xs[-1], ext.gen))
        t = tuple(
            tuple(ext.trace(xs[r + s]) for s in range(d)) for r in range(d)
        )
        return ExtContext(
            space=space,
            ext=ext,
            h_pows=pows,
            h_inv=linalg.inverse(h_mat, F),
            trace_inv=linalg.inverse(t, F),
        )

    def act(self, a, v):
        """a . v = a(h) v for a in the extension (coefficient tuple)."""
        F = self.space.field
        out = tuple(F.zero for _ in range(self.space.dim))
        for c, hp in zip(a, self.h_pows):
            if F.is_zero(c):
                continue
            out = linalg.vec_add(out, linalg.vec_scale(c, linalg.mat_vec(hp, v, F), F), F)
        return out

    def act_twisted(self, a, v):
        """a o v = a(h^-1) v: the module structure on the dual partner."""
        F = self.space.field
        out = tuple(F.zero for _ in range(self.space.dim))
        cur = v
        for c in a:
            if not F.is_zero(c):
                out = linalg.vec_add(out, linalg.vec_scale(c, cur, F), F)
            cur = linalg.mat_vec(self.h_inv, cur, F)
        return out

    def pair(self, v, w):
        """The A-valued pairing xi with <a.v, w> = tr(a xi) for all a."""
        F = self.space.field
        rhs = tuple(
            self.space.bilinear(linalg.mat_vec(hp, v, F), w) for hp in self.h_pows
        )
        # T has entries tr(x^{r+s}) for r, s < d; rhs_r = <h^r v, w>
        return tuple(linalg.mat_vec(self.trace_inv, rhs, F))


def _greedy_a_basis(vectors, ctx: ExtContext):
    """A-basis of the span: pick vectors whose h-chains grow the F-span."""
    F = ctx.space.field
    d = ctx.ext.degree
    chosen = []
    span = []
    h1 = ctx.h_pows[1] if d > 1 else None
    for v in vectors:
        if linalg.express_in_span(span, v, F) is not None:
            continue
        chosen.append(v)
        w = v
        for s in range(d):
            span.append(w)
            if s + 1 < d:
                w = linalg.mat_vec(h1, w, F)
    assert len(chosen) * d == len(vectors)
    return chosen


def _ext_mat_inverse(m, ext: ExtField):
    """Gauss-Jordan over the extension field."""
    n = len(m)
    aug = [list(m[i]) + [ext.one if i == j else ext.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = None
        for r in range(c, n):
            if not ext.is_zero(aug[r][c]):
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("pairing matrix singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = ext.inv(aug[c][c])
        aug[c] = [ext.mul(inv, x) for x in aug[c]]
        for r in range(n):
            if r != c and not ext.is_zero(aug[r][c]):
                f = aug[r][c]
                aug[r] = [ext.sub(x, ext.mul(f, y)) for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------


@dataclass
class GLBlock:
    """V_i + V_j with swapped factors: X and its dual, both totally isotropic,
    paired A-bilinearly; the centralizer factor is GL over the extension."""

    kind = "gl"
    ext: ExtField
    poly: Poly
    poly_dual: Poly
    ctx: ExtContext
    x_basis: list  # A-basis f_r of X
    xstar_basis: list  # dual A-basis of X*: pair(f_r, f*_u) = delta
    x_vectors: list  # F-basis of X (kernel output)
    xstar_vectors: list

    @property
    def a_rank(self) -> int:
        return len(self.x_basis)

    @property
    def dim(self) -> int:
        return 2 * self.ext.degree * self.a_rank

    @property
    def k(self) -> int:
        return self.ext.degree * self.a_rank

    def f_basis(self):
        """Adapted F-basis: h-power chains of f_r, then of f*_r."""
        F = self.ctx.space.field
        out = []
        for side in (self.x_basis, self.xstar_basis):
            for f in side:
                w = f
                for s in range(self.ext.degree):
                    out.append(w)
                    if s + 1 < self.ext.degree:
                        w = linalg.mat_vec(self.ctx.h_pows[1], w, F)
        return out

    def beta_images(self):
        """Conjugator images: h^s f_r -> h^{-s} f*_r and h^s f*_r -> h^{-s} f_r."""
        F = self.ctx.space.field
        out = []
        for src, dst in ((self.x_basis, self.xstar_basis), (self.xstar_basis, self.x_basis)):
            del src
            for f in dst:
                w = f
                for s in range(self.ext.degree):
                    out.append(w)
                    if s + 1 < self.ext.degree:
                        w = linalg.mat_vec(self.ctx.h_inv, w, F)
        return out

    def subspace_vectors(self):
        return self.x_vectors + self.xstar_vectors

    def group_order(self, q: int) -> int:
        big = q**self.ext.degree
        m = self.a_rank
        o = 1
        for i in range(m):
            o *= big**m - big**i
        return o


@dataclass
class UnitaryBlock:
    """Self-paired factor: V_i is Hermitian over the extension with respect to
    the x -> 1/x involution; the basis is Hermitian-orthogonal."""

    kind = "unitary"
    ext: ExtField
    poly: Poly
    ctx: ExtContext
    a_basis: list  # Hermitian-orthogonal A-basis u_r
    herm_diag: list  # c_r = <<u_r, u_r>>, sigma-fixed
    vectors: list  # F-basis (kernel output)

    @property
    def a_rank(self) -> int:
        return len(self.a_basis)

    @property
    def dim(self) -> int:
        return self.ext.degree * self.a_rank

    @property
    def k(self) -> int:
        return self.dim // 2

    def sigma(self):
        return ext_inverse_involution(self.ext)

    def hermitian(self, v, w):
        return self.ctx.pair(v, w)

    def hermitian_gram(self):
        return tuple(
            tuple(self.ctx.pair(v, w) for w in self.a_basis) for v in self.a_basis
        )

    def f_basis(self):
        F = self.ctx.space.field
        out = []
        for u in self.a_basis:
            w = u
            for s in range(self.ext.degree):
                out.append(w)
                if s + 1 < self.ext.degree:
                    w = linalg.mat_vec(self.ctx.h_pows[1], w, F)
        return out

    def beta_images(self):
        """Coordinatewise Galois conjugation: h^s u_r -> h^{-s} u_r."""
        F = self.ctx.space.field
        out = []
        for u in self.a_basis:
            w = u
            for s in range(self.ext.degree):
                out.append(w)
                if s + 1 < self.ext.degree:
                    w = linalg.mat_vec(self.ctx.h_inv, w, F)
        return out

    def subspace_vectors(self):
        return self.vectors

    def group_order(self, q: int) -> int:
        qq = q ** (self.ext.degree // 2)
        m = self.a_rank
        o = qq ** (m * (m - 1) // 2)
        for i in range(1, m + 1):
            o *= qq**i - (-1) ** i
        return o


@dataclass
class SignBlock:
    """Eigenblock where h acts as +1 or -1; carries an orthogonal basis so a
    reflection is always available."""

    sign: int  # +1 or -1
    ortho_vectors: list
    field: object = None

    @property
    def kind(self) -> str:
        return "plus" if self.sign == 1 else "minus"

    @property
    def dim(self) -> int:
        return len(self.ortho_vectors)

    @property
    def k(self) -> int:
        return (self.dim + 1) // 2

    def f_basis(self):
        return list(self.ortho_vectors)

    def beta_images(self, det_target: int = 1):
        from .errors import UnreachableDet

        if det_target == 1:
            return list(self.ortho_vectors)
        if self.dim == 0:
            raise UnreachableDet(f"{self.kind} block is empty, cannot reach det -1")
        out = list(self.ortho_vectors)
        out[0] = tuple(self.field.neg(x) for x in out[0])
        return out

    def subspace_vectors(self):
        return list(self.ortho_vectors)

    def group_order(self, q: int, space: QuadSpace) -> int:
        if self.dim == 0:
            return 1
        from .groups import enumerate_orthogonal

        gram = space.restricted_gram(self.ortho_vectors)
        sub = make_space(gram, space.field)
        return len(enumerate_orthogonal(sub))


# ---------------------------------------------------------------------------
# The decomposition
# ---------------------------------------------------------------------------


@dataclass
class CentralizerDescription:
    space: QuadSpace
    h: Isometry
    blocks: list  # GLBlock | UnitaryBlock | SignBlock, deterministic order
    minimal_poly: Poly

    @property
    def plus_block(self) -> SignBlock | None:
        for b in self.blocks:
            if isinstance(b, SignBlock) and b.sign == 1:
                return b
        return None

    @property
    def minus_block(self) -> SignBlock | None:
        for b in self.blocks:
            if isinstance(b, SignBlock) and b.sign == -1:
                return b
        return None

    @property
    def plus_dim(self) -> int:
        b = self.plus_block
        return b.dim if b else 0

    @property
    def minus_dim(self) -> int:
        b = self.minus_block
        return b.dim if b else 0

    @property
    def k_list(self):
        return [b.k for b in self.blocks]

    @property
    def k_plus(self) -> int:
        return (self.plus_dim + 1) // 2

    @property
    def k_minus(self) -> int:
        return (self.minus_dim + 1) // 2

    def gl_unitary_blocks(self):
        return [b for b in self.blocks if not isinstance(b, SignBlock)]

    def commutes(self, m: Isometry) -> bool:
        F = self.space.field
        return linalg.mat_mul(m.matrix, self.h.matrix, F) == linalg.mat_mul(
            self.h.matrix, m.matrix, F
        )

    def restrict_det(self, m: Isometry, block) -> int:
        """Determinant of m restricted to the block's subspace (+-1)."""
        F = self.space.field
        vecs = block.subspace_vectors()
        if not vecs:
            return 1
        cols = []
        for v in vecs:
            img = m.apply(v)
            coords = linalg.express_in_span(vecs, img, F)
            assert coords is not None, "matrix does not preserve the block"
            cols.append(coords)
        d = linalg.det(linalg.from_columns(cols), F)
        return 1 if d == F.one else -1

    def predicted_order(self, with_so: bool = False) -> int:
        """|O(V)_h| (or |SO(V)_h|) over F_q as the product of block orders."""
        q = self.space.field.p
        o = 1
        for b in self.blocks:
            if isinstance(b, SignBlock):
                o *= b.group_order(q, self.space)
            else:
                o *= b.group_order(q)
        if with_so:
            # S(O x O): index 2 once some eigenblock admits det -1
            if self.plus_dim > 0 or self.minus_dim > 0:
                o //= 2
        return o


def decompose(h: Isometry) -> CentralizerDescription:
    """Split V under a semisimple h: kernels of the irreducible factors of
    the minimal polynomial, paired under x -> 1/x."""
    space = h.space
    F = space.field
    mp = minimal_polynomial(h.matrix, F)
    if not mp.is_squarefree():
        raise NotSemisimple(f"minimal polynomial {mp} is not squarefree")
    _, facs = factor(mp)
    assert all(m == 1 for _, m in facs)
    polys = [f for f, _ in facs]

    kernels = {}
    for pi in polys:
        mat = linalg.poly_at_matrix(pi, h.matrix, F)
        kernels[pi] = linalg.kernel_basis(mat, F)

    x_minus_1 = Poly.x_minus(F.one, F)
    x_plus_1 = Poly.x_minus(F.neg(F.one), F)

    blocks = []
    consumed = set()
    for idx, pi in enumerate(polys):
        if idx in consumed:
            continue
        if pi == x_minus_1 or pi == x_plus_1:
            sign = 1 if pi == x_minus_1 else -1
            vecs = kernels[pi]
            gram = space.restricted_gram(vecs)
            sub = make_space(gram, F)
            ortho = []
            for jcol in range(sub.dim):
                coords = sub.basis_vector(jcol)
                v = tuple(F.zero for _ in range(space.dim))
                for c, kv in zip(coords, vecs):
                    if not F.is_zero(c):
                        v = linalg.vec_add(v, linalg.vec_scale(c, kv, F), F)
                ortho.append(v)
            blocks.append(SignBlock(sign, ortho, F))
            consumed.add(idx)
            continue
        dual = pi.reciprocal_inverse()
        if dual == pi:
            blocks.append(_build_unitary(space, h, pi, kernels[pi]))
            consumed.add(idx)
            continue
        jdx = polys.index(dual)
        assert jdx != idx and jdx not in consumed
        blocks.append(_build_gl(space, h, pi, dual, kernels[pi], kernels[dual]))
        consumed.add(idx)
        consumed.add(jdx)

    order = {"gl": 0, "unitary": 1, "plus": 2, "minus": 3}
    blocks.sort(key=lambda b: (order[b.kind], str(getattr(b, "poly", ""))))
    return CentralizerDescription(space, h, blocks, mp)


def _build_unitary(space, h, pi, vecs) -> UnitaryBlock:
    F = space.field
    ext = ExtField(F, pi)
    ctx = ExtContext.build(space, h.matrix, ext)
    sigma = ext_inverse_involution(ext)
    raw = _greedy_a_basis(vecs, ctx)
    basis = _hermitian_gram_schmidt(raw, ctx, sigma)
    diag = [ctx.pair(u, u) for u in basis]
    for c in diag:
        assert sigma(c) == c and not ext.is_zero(c)
    return UnitaryBlock(ext=ext, poly=pi, ctx=ctx, a_basis=basis, herm_diag=diag, vectors=vecs)


def _hermitian_gram_schmidt(vectors, ctx: ExtContext, sigma):
    """Orthogonalize over the extension: pivot on <<v,v>> != 0, repairing a
    zero diagonal with v + a w, a = sigma(c)^-1 (value 2, nonzero in char != 2)."""
    ext = ctx.ext
    rest = list(vectors)
    out = []
    while rest:
        piv = None
        for i, v in enumerate(rest):
            if not ext.is_zero(ctx.pair(v, v)):
                piv = i
                break
        if piv is None:
            v = rest[0]
            partner = None
            for w in rest[1:]:
                c = ctx.pair(v, w)
                if not ext.is_zero(c):
                    partner = (w, c)
                    break
            assert partner is not None, "Hermitian form degenerate on block"
            w, c = partner
            a = ext.inv(sigma(c))
            rest[0] = linalg.vec_add(v, ctx.act(a, w), ctx.space.field)
            piv = 0
        u = rest.pop(piv)
        cu = ctx.pair(u, u)
        inv_cu = ext.inv(cu)
        out.append(u)
        for i, w in enumerate(rest):
            coeff = ext.mul(ctx.pair(w, u), inv_cu)
            if ext.is_zero(coeff):
                continue
            rest[i] = linalg.vec_sub(w, ctx.act(coeff, u), ctx.space.field)
    return out


def _build_gl(space, h, pi, pj, vecs_i, vecs_j) -> GLBlock:
    F = space.field
    ext = ExtField(F, pi)
    ctx = ExtContext.build(space, h.matrix, ext)
    f_basis = _greedy_a_basis(vecs_i, ctx)
    g_basis = _greedy_a_basis(vecs_j, ctx)
    m = len(f_basis)
    assert len(g_basis) == m
    # dual basis on the partner side: pair(f_r, fstar_u) = delta_{ru}
    pmat = tuple(tuple(ctx.pair(f, g) for g in g_basis) for f in f_basis)
    cmat = _ext_mat_inverse(tuple(zip(*pmat)), ext)  # (P^T)^{-1}
    fstar = []
    for u in range(m):
        acc = tuple(F.zero for _ in range(space.dim))
        for w in range(m):
            if ext.is_zero(cmat[u][w]):
                continue
            acc = linalg.vec_add(acc, ctx.act_twisted(cmat[u][w], g_basis[w]), F)
        fstar.append(acc)
    for r in range(m):
        for u in range(m):
            expect = ext.one if r == u else ext.zero
            assert ctx.pair(f_basis[r], fstar[u]) == expect
    return GLBlock(
        ext=ext,
        poly=pi,
        poly_dual=pj,
        ctx=ctx,
        x_basis=f_basis,
        xstar_basis=fstar,
        x_vectors=vecs_i,
        xstar_vectors=vecs_j,
    )


# ---------------------------------------------------------------------------
# Group-image refinements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CentralizerImage:
    """A determinant-constrained subgroup of O(V)_h: the GL/unitary factors
    are untouched; the eigenblock factors carry O or SO constraints, linked
    for the special-orthogonal case."""

    base: CentralizerDescription
    plus_group: str  # "O" | "SO"
    minus_group: str
    linked: bool = False  # S(O x O): only the product of dets is constrained

    def contains(self, m: Isometry) -> bool:
        if not self.base.commutes(m):
            return False
        dp = self.base.restrict_det(m, self.base.plus_block) if self.base.plus_block else 1
        dm = self.base.restrict_det(m, self.base.minus_block) if self.base.minus_block else 1
        if self.linked:
            return dp * dm == 1
        if self.plus_group == "SO" and dp != 1:
            return False
        if self.minus_group == "SO" and dm != 1:
            return False
        return True

    def predicted_order(self) -> int:
        q = self.base.space.field.p
        o = 1
        for b in self.base.blocks:
            if isinstance(b, SignBlock):
                full = b.group_order(q, self.base.space)
                group = self.plus_group if b.sign == 1 else self.minus_group
                if self.linked or group == "O":
                    o *= full
                else:
                    o *= full // 2 if b.dim > 0 else 1
            else:
                o *= b.group_order(q)
        if self.linked and (self.base.plus_dim > 0 or self.base.minus_dim > 0):
            o //= 2
        return o

    def describe(self) -> str:
        if self.linked:
            return "G' x S(O(V+) x O(V-))"
        return f"G' x {self.plus_group}(V+) x {self.minus_group}(V-)"


def restrict_so(d: CentralizerDescription, h: Isometry) -> CentralizerImage:
    """SO(V)_h: the eigenblock pair is determinant-linked; requires det h = 1,
    which forces the minus block to be even-dimensional."""
    if h.det_sign != 1:
        raise NotSpecial("h is not in the special orthogonal group")
    assert d.minus_dim % 2 == 0
    return CentralizerImage(d, "O", "O", linked=True)


def image_in_gpin(d: CentralizerDescription) -> CentralizerImage:
    """Projection of the full-group centralizer of a lift of h: the parity of
    the minus eigenblock decides which factor drops to SO."""
    if d.minus_dim % 2 == 0:
        return CentralizerImage(d, "O", "SO")
    return CentralizerImage(d, "SO", "O")


def image_in_gspin(d: CentralizerDescription) -> CentralizerImage:
    """Projection of the even-subgroup centralizer: SO on both eigenblocks."""
    if d.h.det_sign != 1:
        raise NotSpecial("h is not special; its lifts are odd")
    return CentralizerImage(d, "SO", "SO")
