"""Named verification suites, one per structural area, each deterministic
given (config, seed) and reporting machine-readable pass/fail cases.

Every structural claim the library is responsible for has an id in CLAIMS and
belongs to exactly one suite (SUITES[...].claims); a meta-test asserts the
partition.  Findings are anomalies worth surfacing that are not implementation
bugs (e.g. a sign repair on an even element, which would contradict the
connectedness argument behind the conjugacy certificates); they drive a
distinct exit code in the CLI.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field

from . import linalg
from .centralizer import decompose, image_in_gpin, image_in_gspin, restrict_so
from .clifford import CliffordElem, basis_vector_elem, blade_name, embed, zeta
from .conjugacy import (
    brute_force_conjugate,
    conjugator,
    conjugator_gspin,
    gpin_tilde,
    gpin_tilde_w,
    gspin_tilde,
    gspin_tilde_w,
    mvw_beta,
    mvw_verify,
    tau_W,
    tau_W_gspin,
)
from .errors import (
    FactorizationUnsupported,
    NotSemisimple,
    RepairFailed,
    UnknownSuite,
    WrongParityDimension,
)
from .groups import (
    DEFAULT_CAP,
    basis_member,
    center,
    center_elements,
    enumerate_group,
    enumerate_orthogonal,
    half_dim,
    lift,
    membership,
    pin_spin_membership,
    scalar_member,
    sigma_V,
    sign_of,
    spinor_norm,
    split_structure,
    vector_member,
    zeta_commutation,
    zeta_member,
)
from .quadspace import Isometry, cartan_dieudonne, diagonal_subspace, discriminant, make_space, reflect, reflection_product
from .sampling import (
    diagonal_space,
    random_anisotropic,
    random_clifford,
    random_isometry,
    random_member,
    random_vector,
    square_class_forms,
)
from .scalars import Field
from .serialize import parse_field, parse_space


# ---------------------------------------------------------------------------
# Report plumbing
# ---------------------------------------------------------------------------


@dataclass
class SuiteConfig:
    field_spec: str | None = None
    dim: int | None = None
    space: dict | None = None
    seed: int = 0
    slow: bool = False
    cap: int = DEFAULT_CAP


@dataclass
class SuiteReport:
    suite_id: str
    cases_run: int = 0
    failures: list = dc_field(default_factory=list)
    findings: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, case: str, expected, got):
        self.cases_run += 1
        if expected != got:
            self.failures.append(
                {"case": case, "expected": str(expected), "got": str(got)}
            )

    def ok(self, case: str, cond: bool, detail: str = ""):
        self.cases_run += 1
        if not cond:
            self.failures.append(
                {"case": case, "expected": "true", "got": detail or "false"}
            )

    def finding(self, case: str, detail: str):
        self.findings.append({"case": case, "detail": detail})


def emit_report(report: SuiteReport, fmt: str = "json", include_timing: bool = False) -> str:
    """Stable field order; wall_time is excluded from JSON unless asked for,
    so identical configs give byte-identical reports."""
    if fmt == "json":
        data = {
            "suite_id": report.suite_id,
            "cases_run": report.cases_run,
            "failures": report.failures,
            "findings": report.findings,
            "status": "pass" if report.passed else "fail",
        }
        if include_timing:
            data["wall_time"] = report.wall_time
        return json.dumps(data, indent=2)
    if fmt == "text":
        lines = [
            f"suite {report.suite_id}: {'pass' if report.passed else 'FAIL'} "
            f"({report.cases_run} checks, {len(report.failures)} failures, "
            f"{len(report.findings)} findings, {report.wall_time:.2f}s)"
        ]
        for f in report.failures:
            lines.append(f"  FAIL {f['case']}: expected {f['expected']}, got {f['got']}")
        for f in report.findings:
            lines.append(f"  FINDING {f['case']}: {f['detail']}")
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> SuiteReport:
    data = json.loads(text)
    return SuiteReport(
        suite_id=data["suite_id"],
        cases_run=data["cases_run"],
        failures=data["failures"],
        findings=data["findings"],
    )


# ---------------------------------------------------------------------------
# Claim registry
# ---------------------------------------------------------------------------

CLAIMS = {
    "clifford.dimension": "the algebra on n generators has 2^n blades, split evenly by parity",
    "clifford.anticommutation": "v w = -w v + 2<v,w> for vectors",
    "clifford.involution-catalogue": "parity/reversal/combined involutions and their interplay, incl. norm identities on group members",
    "zeta.projection": "the top blade twisted-conjugates every vector to its negative",
    "zeta.reversal-sign": "reversal scales the top blade by (-1)^{n(n-1)/2}",
    "zeta.line-invariance": "the scalar line of the top blade is independent of the orthogonal basis",
    "zeta.algebra-center": "the center of the (even) algebra is scalars plus the top-blade line, by dimension parity",
    "zeta.square-discriminant": "the top blade squares to the discriminant class",
    "zeta.component": "the top blade is even or odd with the dimension",
    "centers.classification": "group centers: scalars, optionally the top-blade coset; the even group on a plane is commutative",
    "centers.zeta-anticommutation": "odd elements anticommute with the top blade in even dimension > 2",
    "centers.sigma-fixes-center": "the class involution fixes the center pointwise",
    "inclusions.subgroup": "subspace group elements embed as ambient group elements",
    "inclusions.stabilizer": "the stabilizer of the last basis vector is exactly the subspace group",
    "commuting.sign-rule": "elements of orthogonal factors commute unless both are odd, in which case they anticommute",
    "commuting.product-map": "multiplication from the factor pair has kernel {(z, 1/z)}",
    "semidirect.split-criterion": "odd dim splits directly iff the discriminant is trivial; even dim splits off an order-2 odd element of square norm",
    "pinspin.exact-sequence": "projection is a surjective homomorphism with scalar kernel; vectors map to reflections; even part maps onto rotations",
    "pinspin.homogeneous": "every member is a scalar times a product of anisotropic vectors",
    "pinspin.sign-character": "the component character equals the parity action and the projected determinant",
    "pinspin.clifford-norm": "the norm is a multiplicative scalar character, invariant under the class involution",
    "pinspin.spinor-norm": "the norm descends to square classes on the orthogonal group, independent of the section",
    "pinspin.pin-spin": "norm-one members form the kernel subgroup; its even part sits over the rotations",
    "pinspin.sigma-involution": "the class involution is an anti-involution, inverts projections, and equals +-norm times inverse",
    "mvw.witness": "every isometry is conjugate to its inverse within the orthogonal group",
    "mvw.block-determinants": "swap/conjugation blocks of the inverse-conjugator have determinant (-1)^{half block dim}",
    "centralizer.structure": "the fixed-space decomposition splits the centralizer into linear, unitary and orthogonal factors with the predicted orders",
    "centralizer.hermitian-trace": "self-paired kernels carry a Hermitian form over the extension whose trace recovers the ambient form",
    "centralizer.pairing-trace": "swapped kernels are isotropic duals under an extension-bilinear pairing whose trace recovers the ambient form",
    "centralizer.so-variant": "the special-orthogonal centralizer links the eigenblock determinants; the minus block is even-dimensional",
    "centralizer.gpin-image": "the projected full-group centralizer drops one eigenblock factor to rotations, chosen by the minus-block parity",
    "centralizer.gspin-image": "the projected even-group centralizer has rotations on both eigenblocks",
    "conjugacy.no-orthogonal-factor": "without eigenblocks the element is even and the lifted conjugator works with no sign repair",
    "conjugacy.orthogonal-factor-signs": "the pure eigenblock element is conjugate to its involution image; with odd blocks both signs are reachable",
    "conjugacy.sigma-conjugate": "every semisimple member is conjugate to its class-involution image",
    "conjugacy.determinant-constraint": "for even members the conjugator projects to determinant (-1)^k",
    "conjugacy.involution-choice": "in even dimension the combined involution preserves semisimple classes as well",
    "gspin-conjugacy.shifted-conjugate": "even semisimple members are conjugate to the basis-shifted involution image by an even element",
    "gspin-conjugacy.odd-sigma-conjugate": "in odd dimension the even group already contains a conjugator for the involution image",
    "tilde.group-structure": "the formal extension is a direct product with a central order-2 symbol and sign character",
    "tilde.action": "the extension acts on (element, vector) pairs with the symbol routing through the class involution and negation",
    "tilde.stabilizer-w": "the stabilizer extension is generated over the subspace group by the shifted symbol, whose action is the subspace-preserving involution",
    "tilde.gspin-structure": "the even-group extension uses the k-th power shift, with matching stabilizer and involution",
}


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _field_from(cfg: SuiteConfig, default: str) -> Field:
    return parse_field(cfg.field_spec or default)


def _spaces(cfg: SuiteConfig, fields, dims, all_forms: bool = False):
    """Deterministic list of test spaces; an explicit config space wins."""
    if cfg.space is not None:
        return [parse_space(cfg.space)]
    out = []
    for fs in fields:
        F = parse_field(fs)
        for n in dims:
            if cfg.dim is not None and n != cfg.dim:
                continue
            if F.kind == "Fp" and all_forms:
                for diag in square_class_forms(F, n):
                    out.append(diagonal_space(F, diag))
            else:
                out.append(diagonal_space(F, tuple(F.one for _ in range(n))))
    return out


def _space_tag(space) -> str:
    return f"{space.field},n={space.dim},diag=({','.join(space.field.fmt(d) for d in space.diag)})"


def _algebra_center_basis(space, even_part: bool):
    """Kernel of the commutator maps with the generators (pairs of generators
    for the even algebra), computed by plain linear algebra over blades."""
    F = space.field
    n = space.dim
    masks = [m for m in range(1 << n) if not even_part or m.bit_count() % 2 == 0]
    gens = []
    if even_part:
        for i in range(n):
            for j in range(i + 1, n):
                gens.append(basis_vector_elem(space, i) * basis_vector_elem(space, j))
    else:
        gens = [basis_vector_elem(space, i) for i in range(n)]
    rows = []
    for g in gens:
        for target in range(1 << n):
            row = []
            for m in masks:
                blade = CliffordElem.basis_blade(space, m)
                comm = g * blade - blade * g
                row.append(comm.coeff(target))
            rows.append(tuple(row))
    kernel = linalg.kernel_basis(tuple(rows), F)
    return masks, kernel


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_clifford_axioms(report: SuiteReport, cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    for space in _spaces(cfg, ["Q", "Fp:3"], range(1, 6)):
        tag = _space_tag(space)
        n = space.dim
        report.check(f"{tag}: blade count", 2**n, 1 << n)
        even = [m for m in range(1 << n) if m.bit_count() % 2 == 0]
        report.check(f"{tag}: even blade count", 2 ** (n - 1), len(even))
        assoc_ok = True
        for _ in range(200):
            a = random_clifford(space, rng)
            b = random_clifford(space, rng)
            c = random_clifford(space, rng)
            if (a * b) * c != a * (b * c):
                assoc_ok = False
                break
        report.ok(f"{tag}: associativity on 200 triples", assoc_ok)
        anti_ok = True
        for _ in range(50):
            v = random_vector(space, rng)
            w = random_vector(space, rng)
            ve = CliffordElem.from_vector(space, v)
            we = CliffordElem.from_vector(space, w)
            lhs = ve * we + we * ve
            rhs = CliffordElem.scalar(space, space.field.mul(space.field.from_int(2), space.bilinear(v, w)))
            if lhs != rhs:
                anti_ok = False
                break
        report.ok(f"{tag}: vector anticommutation", anti_ok)
        inv_ok = True
        for _ in range(100):
            a = random_clifford(space, rng)
            b = random_clifford(space, rng)
            if a.alpha().alpha() != a or a.star().star() != a or a.bar().bar() != a:
                inv_ok = False
            if (a * b).star() != b.star() * a.star():
                inv_ok = False
            if a.alpha().star() != a.star().alpha() or a.bar() != a.alpha().star():
                inv_ok = False
            if (a * b).alpha() != a.alpha() * b.alpha():
                inv_ok = False
            if not inv_ok:
                break
        report.ok(f"{tag}: involution laws on 100 pairs", inv_ok)
        x = random_clifford(space, rng, 6)
        ev, od = x.grade_parts()
        report.ok(
            f"{tag}: grade recombination",
            ev + od == x
            and all(m.bit_count() % 2 == 0 for m, _ in ev.terms)
            and all(m.bit_count() % 2 == 1 for m, _ in od.terms),
        )
        member_ok = True
        for _ in range(10):
            g = random_member(space, rng)
            F = space.field
            if g.value.bar() != g.value.star().scale(F.from_int(sign_of(g))):
                member_ok = False
            nrm = g.value * g.value.star().scale(F.from_int(sign_of(g)))
            if nrm != CliffordElem.scalar(space, g.norm):
                member_ok = False
            z = F.sample_nonzero(rng)
            if scalar_member(space, z).norm != F.mul(z, z):
                member_ok = False
            if not member_ok:
                break
        report.ok(f"{tag}: member norm identities", member_ok)


def suite_zeta(report: SuiteReport, cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    for space in _spaces(cfg, ["Q", "Fp:3", "Fp:5"], range(1, 6)):
        tag = _space_tag(space)
        F = space.field
        n = space.dim
        z = zeta(space)
        zm = membership(z)
        neg_i = linalg.mat_scale(F.neg(F.one), linalg.identity(n, F), F)
        report.check(f"{tag}: top blade projects to -identity", neg_i, zm.proj.matrix)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        report.check(f"{tag}: reversal sign", z.scale(F.from_int(sign)), z.star())
        report.check(f"{tag}: parity matches dimension", n % 2, zm.parity)
        # line invariance: rotate the orthogonal basis by a random isometry
        m = random_isometry(space, rng)
        prod = CliffordElem.one(space)
        for i in range(n):
            prod = prod * CliffordElem.from_vector(space, m.apply(space.basis_vector(i)))
        report.ok(
            f"{tag}: top-blade line is basis-independent",
            len(prod.terms) == 1 and prod.terms[0][0] == (1 << n) - 1,
            str(prod),
        )
        zsq = (z * z).scalar_part()
        report.ok(
            f"{tag}: top blade squares to the discriminant class",
            F.same_square_class(zsq, discriminant(space))
            if not F.is_zero(zsq)
            else False,
        )
        masks, kernel = _algebra_center_basis(space, even_part=(n % 2 == 0))
        expect_dim = 2 if n >= 1 else 1
        report.check(f"{tag}: algebra center dimension", expect_dim, len(kernel))
        # the center is spanned by 1 and the top blade
        span_ok = True
        for vec in kernel:
            for m_idx, c in zip(masks, vec):
                if not F.is_zero(c) and m_idx not in (0, (1 << n) - 1):
                    span_ok = False
        report.ok(f"{tag}: center spanned by 1 and the top blade", span_ok)


def suite_centers(report: SuiteReport, cfg: SuiteConfig):
    for space in _spaces(cfg, ["Fp:3"], range(1, 4), all_forms=True):
        tag = _space_tag(space)
        for group in ("GPin", "GSpin"):
            desc = center(space, group)
            predicted = {g.value for g in center_elements(space, group)}
            members = enumerate_group(space, group.lower(), cfg.cap)
            brute = {
                g.value
                for g in members
                if all(g * h == h * g for h in members)
            }
            report.ok(
                f"{tag}: {group} center matches brute force ({desc.describe()})",
                predicted == brute,
                f"predicted {len(predicted)}, brute {len(brute)}",
            )
    # anticommutation with the top blade needs even dim > 2
    f3 = Field.prime(3)
    forms4 = [(f3.one,) * 4]
    if cfg.slow:
        forms4.append((f3.one, f3.one, f3.one, f3.nonresidue()))
    for diag in forms4:
        space = diagonal_space(f3, diag)
        tag = _space_tag(space)
        ok = True
        for g in enumerate_group(space, "gpin", cfg.cap):
            c = zeta_commutation(g)
            if c != sign_of(g):
                ok = False
                break
        report.ok(f"{tag}: top-blade commutation sign equals the component sign", ok)
    try:
        zeta_commutation(scalar_member(diagonal_space(f3, (f3.one,) * 3), f3.one))
        report.ok("odd dimension rejected for top-blade commutation", False)
    except WrongParityDimension:
        report.ok("odd dimension rejected for top-blade commutation", True)
    # the class involution fixes the center pointwise
    for space in _spaces(cfg, ["Fp:3"], range(1, 4), all_forms=True):
        tag = _space_tag(space)
        ok = all(
            sigma_V(zc) == zc for zc in center_elements(space, "GPin")
        )
        report.ok(f"{tag}: class involution fixes the center", ok)


def suite_inclusions(report: SuiteReport, cfg: SuiteConfig):
    dims = [2, 3] + ([4] if cfg.slow else [])
    for space in _spaces(cfg, ["Fp:3"], dims, all_forms=True):
        tag = _space_tag(space)
        n = space.dim
        sub = diagonal_subspace(space, range(n - 1))
        sub_members = enumerate_group(sub, "gpin", cfg.cap)
        e_last = space.basis_vector(n - 1)
        embed_ok = True
        embedded = set()
        for g in sub_members:
            try:
                amb = membership(embed(g.value, space, range(n - 1)))
            except Exception:
                embed_ok = False
                break
            if amb.proj.apply(e_last) != e_last:
                embed_ok = False
                break
            if amb.is_even != g.is_even:
                embed_ok = False
                break
            embedded.add(amb.value)
        report.ok(f"{tag}: subspace members embed and fix the last vector", embed_ok)
        stab = {
            g.value
            for g in enumerate_group(space, "gpin", cfg.cap)
            if g.proj.apply(e_last) == e_last
        }
        report.ok(
            f"{tag}: stabilizer equals the embedded subspace group",
            stab == embedded,
            f"stabilizer {len(stab)}, embedded {len(embedded)}",
        )


def suite_commuting(report: SuiteReport, cfg: SuiteConfig):
    f3 = Field.prime(3)
    forms = [(f3.one,) * 3, (f3.one, f3.one, f3.nonresidue()), (f3.one,) * 4]
    if cfg.slow:
        forms.append((f3.one, f3.one, f3.one, f3.nonresidue()))
    for diag in forms:
        space = diagonal_space(f3, diag)
        tag = _space_tag(space)
        n = space.dim
        for split in range(1, n):
            left = diagonal_subspace(space, range(split))
            right = diagonal_subspace(space, range(split, n))
            lg = [
                membership(embed(g.value, space, range(split)))
                for g in enumerate_group(left, "gpin", cfg.cap)
            ]
            rg = [
                membership(embed(g.value, space, range(split, n)))
                for g in enumerate_group(right, "gpin", cfg.cap)
            ]
            rule_ok = True
            kernel_pairs = []
            for g1 in lg:
                for g2 in rg:
                    conj = g1 * g2 * g1.inverse()
                    if g1.is_even or g2.is_even:
                        if conj != g2:
                            rule_ok = False
                    elif conj.value != -g2.value:
                        rule_ok = False
                    if (g1 * g2).value == CliffordElem.one(space):
                        kernel_pairs.append((g1, g2))
            report.ok(f"{tag} split {split}+{n - split}: commutation sign rule", rule_ok)
            kernel_ok = all(
                g1.value.is_scalar()
                and g2.value.is_scalar()
                and f3.mul(g1.value.scalar_part(), g2.value.scalar_part()) == f3.one
                for g1, g2 in kernel_pairs
            )
            report.check(
                f"{tag} split {split}+{n - split}: product-map kernel is the scalar antidiagonal",
                f3.p - 1,
                len(kernel_pairs) if kernel_ok else -1,
            )


def suite_semidirect(report: SuiteReport, cfg: SuiteConfig):
    # odd dimension: split iff the discriminant class is trivial
    f3, f5 = Field.prime(3), Field.prime(5)
    q = Field.rational()
    sp = diagonal_space(f5, (f5.one,) * 3)
    rep = split_structure(sp)
    report.ok("F_5 diag(1,1,1): splits with an order-2 top blade", rep.splits)
    if rep.splits:
        w = membership(rep.witness)
        gspin = enumerate_group(sp, "gspin", cfg.cap)
        gpin = {g.value for g in enumerate_group(sp, "gpin", cfg.cap)}
        image = {g.value for g in gspin} | {(g * w).value for g in gspin}
        report.ok("F_5 diag(1,1,1): direct product fills the full group", image == gpin)
    repq = split_structure(diagonal_space(q, (q.one,) * 3))
    report.ok("Q diag(1,1,1): no split (nontrivial discriminant)", not repq.splits)
    sp2 = diagonal_space(f3, (f3.one, f3.one))
    rep2 = split_structure(sp2)
    report.ok("F_3 diag(1,1): even case splits on a unit-length vector", rep2.splits)
    if rep2.splits:
        t = membership(rep2.witness)
        report.ok("even-case witness is odd with square 1", (not t.is_even) and t.value * t.value == CliffordElem.one(sp2))
        gspin = enumerate_group(sp2, "gspin", cfg.cap)
        gpin = {g.value for g in enumerate_group(sp2, "gpin", cfg.cap)}
        image = {g.value for g in gspin} | {(g * t).value for g in gspin}
        report.ok("F_3 diag(1,1): semidirect product fills the full group", image == gpin)
    sp_no = diagonal_space(f3, (f3.one,) * 3)
    rep3 = split_structure(sp_no)
    report.ok(
        "F_3 diag(1,1,1): no split (top blade squares to a nonresidue)", not rep3.splits
    )


def suite_pin_spin(report: SuiteReport, cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    # exhaustive layer over F_3
    for space in _spaces(cfg, ["Fp:3"], range(1, 4), all_forms=True):
        tag = _space_tag(space)
        F = space.field
        members = enumerate_group(space, "gpin", cfg.cap)
        matrices = enumerate_orthogonal(space, cfg.cap)
        report.check(
            f"{tag}: member count is (p-1) * |O|", (F.p - 1) * len(matrices), len(members)
        )
        surj_ok = all(lift(m).proj == m for m in matrices)
        report.ok(f"{tag}: projection surjective via the reflection section", surj_ok)
        kernel = [g for g in members if g.proj.matrix == linalg.identity(space.dim, F)]
        report.check(
            f"{tag}: kernel is exactly the scalars",
            sorted(F.units()),
            sorted(g.value.scalar_part() for g in kernel if g.value.is_scalar()),
        )
        hom_ok = True
        sign_ok = True
        norm_ok = True
        for _ in range(50):
            g1 = members[rng.randrange(len(members))]
            g2 = members[rng.randrange(len(members))]
            prod = membership(g1.value * g2.value)
            if prod.proj != g1.proj * g2.proj:
                hom_ok = False
            if F.mul(g1.norm, g2.norm) != prod.norm:
                norm_ok = False
            if sign_of(g1) != g1.proj.det_sign:
                sign_ok = False
        report.ok(f"{tag}: projection is a homomorphism", hom_ok)
        report.ok(f"{tag}: norm is multiplicative", norm_ok)
        report.ok(f"{tag}: component sign equals projected determinant", sign_ok)
        even_onto = {g.proj.matrix for g in members if g.is_even}
        so = {m.matrix for m in matrices if m.det_sign == 1}
        report.ok(f"{tag}: even part maps onto the rotations", even_onto == so)
        pin = [g for g in members if pin_spin_membership(g)[0]]
        report.ok(
            f"{tag}: norm-one subgroup closed and symmetric",
            all(pin_spin_membership(a * b)[0] and pin_spin_membership(a.inverse())[0] for a in pin[:6] for b in pin[:6]),
        )
    # sampled layer incl. Q
    for space in _spaces(cfg, ["Q", "Fp:3"], [2, 3, 4]):
        tag = _space_tag(space)
        F = space.field
        for _ in range(12):
            g = random_member(space, rng)
            sv = sigma_V(g)
            report.ok(f"{tag}: involution squares to identity", sigma_V(sv) == g)
            h = random_member(space, rng)
            report.ok(
                f"{tag}: involution reverses products",
                sigma_V(membership(g.value * h.value)) == sigma_V(h) * sigma_V(g),
            )
            report.ok(
                f"{tag}: involution inverts the projection",
                sv.proj == g.proj.inverse(),
            )
            prod = (sv * g).value
            report.ok(
                f"{tag}: involution equals +-norm times inverse",
                prod.is_scalar()
                and prod.scalar_part() in (g.norm, F.neg(g.norm)),
            )
            report.check(f"{tag}: norm invariant under involution", g.norm, sv.norm)
            vecs = cartan_dieudonne(g.proj)
            refit = lift(g.proj)
            ratio_ok = (g.value * refit.inverse().value).is_scalar()
            report.ok(f"{tag}: homogeneous factorization (section differs by a scalar)", ratio_ok)
            report.ok(f"{tag}: factorization length within dimension", len(vecs) <= space.dim)
        v = random_anisotropic(space, rng)
        r = reflect(space, v)
        report.ok(
            f"{tag}: spinor norm of a reflection is the class of -q(v)",
            F.same_square_class(spinor_norm(r), F.neg(space.quad(v))),
        )
        m1 = random_isometry(space, rng)
        m2 = random_isometry(space, rng)
        report.ok(
            f"{tag}: spinor norm is multiplicative mod squares",
            F.same_square_class(
                F.mul(spinor_norm(m1), spinor_norm(m2)), spinor_norm(m1 * m2)
            ),
        )
    # fixed examples
    q = Field.rational()
    sq = diagonal_space(q, (q.neg(q.one), q.one))
    e1 = basis_member(sq, 0)
    report.check("diag(-1,1): e1 norm", q.one, e1.norm)
    report.check("diag(-1,1): e1 in Pin, not Spin", (True, False), pin_spin_membership(e1))
    two = scalar_member(sq, q.from_int(2))
    report.check("scalar 2 over Q: neither", (False, False), pin_spin_membership(two))
    report.check(
        "scalar 1: Pin and Spin", (True, True), pin_spin_membership(scalar_member(sq, q.one))
    )


def suite_mvw(report: SuiteReport, cfg: SuiteConfig):
    f3 = Field.prime(3)
    dims = [2, 3]
    for n in dims:
        for diag in square_class_forms(f3, n):
            space = diagonal_space(f3, diag)
            tag = _space_tag(space)
            group = enumerate_orthogonal(space, cfg.cap)
            witness_ok = True
            constructive = 0
            for h in group:
                beta = mvw_verify(h, enumerated=group)
                if beta * h.inverse() * beta.inverse() != h:
                    witness_ok = False
                try:
                    d = decompose(h)
                except NotSemisimple:
                    continue
                beta2 = mvw_beta(h, d)
                if beta2 * h.inverse() * beta2.inverse() != h:
                    witness_ok = False
                constructive += 1
            report.ok(f"{tag}: inverse-conjugacy witness for all {len(group)} elements", witness_ok)
            report.ok(f"{tag}: constructive witnesses on semisimple part", constructive > 0)
    # block determinants: unitary (rotation of order 4) and a linear pair
    s2 = diagonal_space(f3, (f3.one, f3.one))
    rot = Isometry(((0, 2), (1, 0)), s2)
    d = decompose(rot)
    beta = mvw_beta(rot, d)
    report.check("order-4 rotation: conjugator block determinant", -1, beta.det_sign)
    f5 = Field.prime(5)
    sh = make_space(((f5.zero, f5.one), (f5.one, f5.zero)), f5)
    hgl = Isometry(((2, 0), (0, 3)), sh)
    dgl = decompose(hgl)
    bgl = mvw_beta(hgl, dgl)
    report.check("hyperbolic pair: conjugator block determinant", -1, bgl.det_sign)
    report.ok(
        "hyperbolic pair: swap conjugates the inverse back",
        bgl * hgl.inverse() * bgl.inverse() == hgl,
    )


def suite_centralizer_orders(report: SuiteReport, cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    f3 = Field.prime(3)
    checked = 0
    for n in (1, 2, 3):
        for diag in square_class_forms(f3, n):
            space = diagonal_space(f3, diag)
            tag = _space_tag(space)
            group = enumerate_orthogonal(space, cfg.cap)
            for h in group:
                try:
                    d = decompose(h)
                except NotSemisimple:
                    continue
                brute = sum(1 for m in group if d.commutes(m))
                report.check(
                    f"{tag}: centralizer order for h={h.matrix}", brute, d.predicted_order()
                )
                checked += 1
                _check_block_geometry(report, tag, space, d)
                if h.det_sign == 1:
                    so = restrict_so(d, h)
                    brute_so = sum(
                        1 for m in group if m.det_sign == 1 and d.commutes(m)
                    )
                    report.check(
                        f"{tag}: special centralizer order for h={h.matrix}",
                        brute_so,
                        so.predicted_order(),
                    )
                    report.ok(f"{tag}: minus block even for special h", d.minus_dim % 2 == 0)
                if checked % 7 == 0:
                    _check_images(report, tag, space, h, d, cfg)
    report.ok("at least 10 semisimple elements checked", checked >= 10, str(checked))
    if cfg.slow:
        space = diagonal_space(f3, (f3.one,) * 4)
        tag = _space_tag(space)
        group = enumerate_orthogonal(space, cfg.cap)
        picks = []
        for h in group:
            try:
                d = decompose(h)
            except NotSemisimple:
                continue
            kinds = tuple(b.kind for b in d.blocks)
            if kinds not in {tuple(b.kind for b in q.blocks) for _, q in picks}:
                picks.append((h, d))
            if len(picks) >= 6:
                break
        for h, d in picks:
            brute = sum(1 for m in group if d.commutes(m))
            report.check(
                f"{tag}: centralizer order for h={h.matrix}", brute, d.predicted_order()
            )
            _check_images(report, tag, space, h, d, cfg)
    # basis independence
    for n in (2, 3):
        space = diagonal_space(f3, tuple(f3.one for _ in range(n)))
        tag = _space_tag(space)
        group = enumerate_orthogonal(space, cfg.cap)
        h = next(m for m in group if _is_semisimple(m) and m.matrix != linalg.identity(n, f3))
        d = decompose(h)
        conj = random_isometry(space, rng)
        h2 = conj * h * conj.inverse()
        d2 = decompose(h2)
        report.check(
            f"{tag}: block signature is conjugation-invariant",
            _signature(d),
            _signature(d2),
        )


def _is_semisimple(m: Isometry) -> bool:
    try:
        decompose(m)
        return True
    except (NotSemisimple, FactorizationUnsupported):
        return False


def _signature(d):
    return sorted(
        (b.kind, b.dim, getattr(getattr(b, "ext", None), "degree", 0)) for b in d.blocks
    )


def _check_block_geometry(report: SuiteReport, tag, space, d):
    F = space.field
    total = sum(b.dim for b in d.blocks)
    report.check(f"{tag}: block dims sum to n (h={d.h.matrix})", space.dim, total)
    ortho_ok = True
    vec_sets = [b.subspace_vectors() for b in d.blocks]
    for i in range(len(vec_sets)):
        for j in range(i + 1, len(vec_sets)):
            for v in vec_sets[i]:
                for w in vec_sets[j]:
                    if not F.is_zero(space.bilinear(v, w)):
                        ortho_ok = False
    report.ok(f"{tag}: blocks pairwise orthogonal (h={d.h.matrix})", ortho_ok)
    nondeg_ok = True
    for vecs in vec_sets:
        if vecs and F.is_zero(linalg.det(space.restricted_gram(vecs), F)):
            nondeg_ok = False
    report.ok(f"{tag}: blocks nondegenerate (h={d.h.matrix})", nondeg_ok)
    for b in d.blocks:
        if b.kind == "unitary":
            sigma = b.sigma()
            ext = b.ext
            trace_ok = True
            herm_ok = True
            for v in b.a_basis:
                for w in b.a_basis:
                    val = b.ctx.pair(v, w)
                    if ext.trace(val) != space.bilinear(v, w):
                        trace_ok = False
                    if sigma(val) != b.ctx.pair(w, v):
                        herm_ok = False
                    if b.ctx.pair(b.ctx.act(ext.gen, v), w) != ext.mul(ext.gen, val):
                        herm_ok = False
            report.ok(f"{tag}: Hermitian trace recovery (h={d.h.matrix})", trace_ok)
            report.ok(f"{tag}: Hermitian symmetry and linearity (h={d.h.matrix})", herm_ok)
            # the element acts as a norm-one extension scalar
            hgen = ext.gen
            report.ok(
                f"{tag}: norm-one central action (h={d.h.matrix})",
                ext.mul(sigma(hgen), hgen) == ext.one,
            )
        elif b.kind == "gl":
            ext = b.ext
            trace_ok = True
            iso_ok = True
            for v in b.x_basis:
                for w in b.xstar_basis:
                    val = b.ctx.pair(v, w)
                    if ext.trace(val) != space.bilinear(v, w):
                        trace_ok = False
            for side in (b.x_vectors, b.xstar_vectors):
                for v in side:
                    for w in side:
                        if not F.is_zero(space.bilinear(v, w)):
                            iso_ok = False
            report.ok(f"{tag}: pairing trace recovery (h={d.h.matrix})", trace_ok)
            report.ok(f"{tag}: dual partners totally isotropic (h={d.h.matrix})", iso_ok)
            act_ok = all(
                b.ctx.act(ext.gen, v) == d.h.apply(v) for v in b.x_basis
            )
            report.ok(f"{tag}: central action is the extension generator (h={d.h.matrix})", act_ok)


def _check_images(report: SuiteReport, tag, space, h, d, cfg: SuiteConfig):
    g = lift(h)
    gpin = enumerate_group(space, "gpin", cfg.cap)
    brute = {x.proj.matrix for x in gpin if x * g == g * x}
    img = image_in_gpin(d)
    pred = {m.matrix for m in enumerate_orthogonal(space, cfg.cap) if img.contains(m)}
    report.ok(
        f"{tag}: projected centralizer matches {img.describe()} (h={h.matrix})",
        brute == pred,
        f"brute {len(brute)}, predicted {len(pred)}",
    )
    if h.det_sign == 1:
        imgs = image_in_gspin(d)
        brute_s = {
            x.proj.matrix for x in gpin if x.is_even and x * g == g * x
        }
        pred_s = {
            m.matrix for m in enumerate_orthogonal(space, cfg.cap) if imgs.contains(m)
        }
        report.ok(
            f"{tag}: projected even centralizer matches {imgs.describe()} (h={h.matrix})",
            brute_s == pred_s,
            f"brute {len(brute_s)}, predicted {len(pred_s)}",
        )


def suite_conjugacy(report: SuiteReport, cfg: SuiteConfig):
    f3 = Field.prime(3)
    for n in (1, 2, 3):
        for diag in square_class_forms(f3, n):
            space = diagonal_space(f3, diag)
            tag = _space_tag(space)
            members = enumerate_group(space, "gpin", cfg.cap)
            all_ok = True
            det_ok = True
            direct_when_no_eigen = True
            for g in members:
                try:
                    cert = conjugator(g)
                except NotSemisimple:
                    continue
                except RepairFailed as exc:
                    report.finding(f"{tag}: conjugator repair failed", str(exc))
                    all_ok = False
                    continue
                if not cert.verify():
                    all_ok = False
                if not cert.det_constraint_ok():
                    det_ok = False
                    report.finding(
                        f"{tag}: determinant constraint broken",
                        f"g={g.value}, det={cert.det_beta}",
                    )
                if cert.repaired and g.is_even:
                    report.finding(
                        f"{tag}: sign repair on an even element",
                        f"g={g.value}",
                    )
                d = decompose(g.proj)
                if d.plus_dim == 0 and d.minus_dim == 0:
                    if not g.is_even or cert.repaired:
                        direct_when_no_eigen = False
            report.ok(f"{tag}: certificates validate for all semisimple members", all_ok)
            report.ok(f"{tag}: determinant constraint honored on the even part", det_ok)
            report.ok(
                f"{tag}: no eigenblocks forces even element and direct conjugator",
                direct_when_no_eigen,
            )
    # pure eigenblock elements: the top blade of the minus part
    s = diagonal_space(f3, (f3.one, f3.one, f3.one))
    members = enumerate_group(s, "gpin", cfg.cap)
    sub = diagonal_subspace(s, (1, 2))
    zminus = membership(embed(zeta(sub), s, (1, 2)))
    sv = sigma_V(zminus)
    found_plus = brute_force_conjugate(zminus, sv, members)
    found_minus = brute_force_conjugate(
        zminus.scale(f3.neg(f3.one)), sv, members
    )
    report.ok("odd eigenblock: both signs conjugate to the involution image",
              found_plus is not None and found_minus is not None)
    # even-dimensional eigenblock case on the plane
    s2 = diagonal_space(f3, (f3.one, f3.one))
    members2 = enumerate_group(s2, "gpin", cfg.cap)
    z2 = zeta_member(s2)
    report.ok(
        "even eigenblock: involution image conjugate to the element",
        brute_force_conjugate(z2, sigma_V(z2), members2) is not None,
    )
    # involution choice in even dimension: the combined involution also works
    for diag in square_class_forms(f3, 2):
        space = diagonal_space(f3, diag)
        tag = _space_tag(space)
        members = enumerate_group(space, "gpin", cfg.cap)
        ok = True
        for g in members:
            if not _is_semisimple(g.proj):
                continue
            bar_elem = membership(g.value.bar())
            if brute_force_conjugate(g, bar_elem, members) is None:
                ok = False
        report.ok(f"{tag}: combined involution preserves semisimple classes", ok)


def suite_gspin_conjugacy(report: SuiteReport, cfg: SuiteConfig):
    f3 = Field.prime(3)
    for n in (1, 2, 3):
        for diag in square_class_forms(f3, n):
            space = diagonal_space(f3, diag)
            tag = _space_tag(space)
            ok = True
            for g in enumerate_group(space, "gspin", cfg.cap):
                try:
                    cert = conjugator_gspin(g)
                except NotSemisimple:
                    continue
                except RepairFailed as exc:
                    report.finding(f"{tag}: even-variant repair failed", str(exc))
                    ok = False
                    continue
                if not (cert.verify() and cert.eta.is_even):
                    ok = False
            report.ok(f"{tag}: shifted conjugator validates with even witness", ok)
    # odd dimension: the even group already conjugates the involution image
    for n in (1, 3):
        space = diagonal_space(f3, tuple(f3.one for _ in range(n)))
        tag = _space_tag(space)
        gspin = enumerate_group(space, "gspin", cfg.cap)
        ok = True
        for g in gspin:
            if not _is_semisimple(g.proj):
                continue
            if brute_force_conjugate(g, sigma_V(g), gspin) is None:
                ok = False
        report.ok(f"{tag}: even-group conjugator exists in odd dimension", ok)


def suite_tilde_actions(report: SuiteReport, cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    f3 = Field.prime(3)
    for n in (3, 4):
        space = diagonal_space(f3, tuple(f3.one for _ in range(n)))
        tag = _space_tag(space)
        k = half_dim(n)

        def rand_plain():
            return random_member(space, rng)

        def rand_even():
            while True:
                g = random_member(space, rng)
                if g.is_even:
                    return g

        for label, make in (("full", lambda b: gpin_tilde(rand_plain(), b)),
                            ("even", lambda b: gspin_tilde(rand_even(), b))):
            assoc_ok = True
            chi_ok = True
            for _ in range(100):
                t1 = make(rng.randrange(2))
                t2 = make(rng.randrange(2))
                h = rand_plain() if label == "full" else rand_even()
                v = random_vector(space, rng)
                lhs = (t1 * t2).act(h, v)
                step = t2.act(h, v)
                rhs = t1.act(*step)
                if lhs != rhs:
                    assoc_ok = False
                if (t1 * t2).chi != t1.chi * t2.chi:
                    chi_ok = False
            report.ok(f"{tag} [{label}]: action is compatible with multiplication", assoc_ok)
            report.ok(f"{tag} [{label}]: sign character is a homomorphism", chi_ok)
        # the formal symbol squares to the identity action
        one = scalar_member(space, f3.one)
        beta = gpin_tilde(one, 1)
        h = rand_plain()
        v = random_vector(space, rng)
        report.ok(
            f"{tag}: symbol acts as an involution",
            beta.act(*beta.act(h, v)) == (h, v),
        )
        report.check(f"{tag}: symbol squares to the plain identity", gpin_tilde(one, 0), beta * beta)
        # conjugation well-definedness identity
        wd_ok = True
        for _ in range(30):
            g = rand_plain()
            h = rand_plain()
            if sigma_V(g * h * g.inverse()) != g * sigma_V(h) * g.inverse():
                wd_ok = False
        report.ok(f"{tag}: involution intertwines conjugation", wd_ok)
        # tau_W maps the stabilizer subgroup into itself
        sub = diagonal_subspace(space, range(n - 1))
        w_members = [
            membership(embed(g.value, space, range(n - 1)))
            for g in enumerate_group(sub, "gpin", cfg.cap)
        ]
        w_set = {g.value for g in w_members}
        tau_ok = all(tau_W(g).value in w_set for g in w_members)
        report.ok(f"{tag}: stabilizer involution preserves the subspace group", tau_ok)
        inv_ok = all(tau_W(tau_W(g)) == g for g in w_members[:20])
        report.ok(f"{tag}: stabilizer involution is an involution", inv_ok)
        even_w = [g for g in w_members if g.is_even]
        even_set = {g.value for g in even_w}
        tau_even_ok = all(tau_W_gspin(g).value in even_set for g in even_w)
        report.ok(f"{tag}: even-variant involution preserves the even subspace group", tau_even_ok)
        # tilde-stabilizer elements fix the distinguished vector under the action
        e_last = space.basis_vector(n - 1)
        stab_ok = True
        for g in w_members[:10]:
            for t in (gpin_tilde_w(g, 1), gpin_tilde_w(g, 0)):
                _, v2 = t.act(scalar_member(space, f3.one), e_last)
                if v2 != e_last:
                    stab_ok = False
        report.ok(f"{tag}: shifted symbol fixes the distinguished vector", stab_ok)
        even_stab_ok = True
        for g in even_w[:10]:
            t = gspin_tilde_w(g, 1)
            _, v2 = t.act(scalar_member(space, f3.one), e_last)
            if v2 != e_last:
                even_stab_ok = False
        report.ok(
            f"{tag}: even-variant shifted symbol fixes the distinguished vector",
            even_stab_ok,
        )


SUITES = {
    "clifford-axioms": (
        suite_clifford_axioms,
        ("clifford.dimension", "clifford.anticommutation", "clifford.involution-catalogue"),
    ),
    "zeta": (
        suite_zeta,
        (
            "zeta.projection",
            "zeta.reversal-sign",
            "zeta.line-invariance",
            "zeta.algebra-center",
            "zeta.square-discriminant",
            "zeta.component",
        ),
    ),
    "centers": (
        suite_centers,
        (
            "centers.classification",
            "centers.zeta-anticommutation",
            "centers.sigma-fixes-center",
        ),
    ),
    "inclusions": (suite_inclusions, ("inclusions.subgroup", "inclusions.stabilizer")),
    "commuting": (suite_commuting, ("commuting.sign-rule", "commuting.product-map")),
    "semidirect": (suite_semidirect, ("semidirect.split-criterion",)),
    "pin-spin": (
        suite_pin_spin,
        (
            "pinspin.exact-sequence",
            "pinspin.homogeneous",
            "pinspin.sign-character",
            "pinspin.clifford-norm",
            "pinspin.spinor-norm",
            "pinspin.pin-spin",
            "pinspin.sigma-involution",
        ),
    ),
    "mvw": (suite_mvw, ("mvw.witness", "mvw.block-determinants")),
    "centralizer-orders": (
        suite_centralizer_orders,
        (
            "centralizer.structure",
            "centralizer.hermitian-trace",
            "centralizer.pairing-trace",
            "centralizer.so-variant",
            "centralizer.gpin-image",
            "centralizer.gspin-image",
        ),
    ),
    "conjugacy": (
        suite_conjugacy,
        (
            "conjugacy.no-orthogonal-factor",
            "conjugacy.orthogonal-factor-signs",
            "conjugacy.sigma-conjugate",
            "conjugacy.determinant-constraint",
            "conjugacy.involution-choice",
        ),
    ),
    "gspin-conjugacy": (
        suite_gspin_conjugacy,
        ("gspin-conjugacy.shifted-conjugate", "gspin-conjugacy.odd-sigma-conjugate"),
    ),
    "tilde-actions": (
        suite_tilde_actions,
        (
            "tilde.group-structure",
            "tilde.action",
            "tilde.stabilizer-w",
            "tilde.gspin-structure",
        ),
    ),
}


def run_suite(suite_id: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; known: {', '.join(sorted(SUITES))}")
    cfg = cfg or SuiteConfig()
    report = SuiteReport(suite_id=suite_id)
    start = time.perf_counter()
    SUITES[suite_id][0](report, cfg)
    report.wall_time = time.perf_counter() - start
    return report
