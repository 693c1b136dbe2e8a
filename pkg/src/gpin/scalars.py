"""Exact base fields (Q and F_p, p odd), univariate polynomials, factorization,
and finite extensions K[x]/(p(x)) with trace forms.

Scalars are plain Python values: `fractions.Fraction` over Q, reduced ints in
[0, p) over F_p.  A `Field` instance supplies the arithmetic, so hot loops work
on unboxed values.  Extension elements are coefficient tuples in the fixed
power basis {1, x, ..., x^{d-1}}; the basis is never re-normalized because the
trace-form solves depend on it being stable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import FactorizationUnsupported, NonUnitGenerator


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q (kind 'Q') or F_p (kind 'Fp'). Characteristic 2 is rejected."""

    kind: str
    p: int = 0

    @staticmethod
    def rational() -> "Field":
        return Field("Q")

    @staticmethod
    def prime(p: int) -> "Field":
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not (2 < p < 2**31) or not _is_prime(p):
            raise ValueError(f"p must be an odd prime < 2^31, got {p}")
        return Field("Fp", p)

    # -- basic arithmetic ------------------------------------------------

    @property
    def zero(self):
        return 0 if self.kind == "Fp" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "Fp" else Fraction(1)

    def from_int(self, n: int):
        return n % self.p if self.kind == "Fp" else Fraction(n)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "Fp" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "Fp" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "Fp" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def inv(self, a):
        if self.kind == "Fp":
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero in F_p")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return (a % self.p == 0) if self.kind == "Fp" else a == 0

    def normalize(self, a):
        """Canonical stored form (reduced int over F_p)."""
        return a % self.p if self.kind == "Fp" else a

    # -- string forms (exact; "a/b" fractions over Q) ---------------------

    def parse(self, s):
        if isinstance(s, str):
            v = Fraction(s)
        elif isinstance(s, int):
            v = Fraction(s)
        else:
            raise ValueError(f"cannot parse scalar from {s!r}")
        if self.kind == "Q":
            return v
        if v.denominator != 1:
            num = v.numerator % self.p
            return self.div(num, v.denominator % self.p)
        return v.numerator % self.p

    def fmt(self, a) -> str:
        return str(a)

    # -- field enumeration (finite fields only) ---------------------------

    def elements(self):
        if self.kind != "Fp":
            raise ValueError("cannot enumerate Q")
        return range(self.p)

    def units(self):
        if self.kind != "Fp":
            raise ValueError("cannot enumerate Q")
        return range(1, self.p)

    def sample(self, rng: random.Random):
        """Pseudo-random nonzero-friendly scalar for property tests."""
        if self.kind == "Fp":
            return rng.randrange(self.p)
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def sample_nonzero(self, rng: random.Random):
        while True:
            a = self.sample(rng)
            if not self.is_zero(a):
                return a

    # -- square classes ----------------------------------------------------

    def is_square(self, a) -> bool:
        if self.is_zero(a):
            return True
        if self.kind == "Fp":
            return pow(a % self.p, (self.p - 1) // 2, self.p) == 1
        if a < 0:
            return False
        return (
            isqrt(a.numerator) ** 2 == a.numerator
            and isqrt(a.denominator) ** 2 == a.denominator
        )

    def sqrt(self, a):
        """Exact square root; raises ValueError when a is not a square."""
        if self.is_zero(a):
            return self.zero
        if self.kind == "Q":
            if not self.is_square(a):
                raise ValueError(f"{a} is not a square in Q")
            return Fraction(isqrt(a.numerator), isqrt(a.denominator))
        return _tonelli_shanks(a % self.p, self.p)

    def nonresidue(self):
        """Least quadratic nonresidue mod p (canonical square-class representative)."""
        if self.kind != "Fp":
            raise ValueError("nonresidue only defined for F_p")
        for c in range(2, self.p):
            if not self.is_square(c):
                return c
        raise AssertionError("no nonresidue found")  # unreachable for p > 2

    def square_class(self, a):
        """Canonical representative of a mod squares.

        F_p: 1 or the least nonresidue.  Q: signed squarefree integer (as a
        Fraction) for inputs whose odd-exponent primes are below the trial
        bound; a perfect-square tail is always stripped, so small inputs
        (discriminants, reflection norms) compare by exact equality.
        """
        if self.is_zero(a):
            raise ValueError("square class of zero is undefined")
        if self.kind == "Fp":
            return 1 if self.is_square(a) else self.nonresidue()
        n = a.numerator * a.denominator
        sign = -1 if n < 0 else 1
        n = abs(n)
        rep = 1
        d = 2
        while d * d <= n and d <= 10000:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                rep *= d
            d += 1
        r = isqrt(n)
        if r * r == n:
            n = 1
        rep *= n
        return Fraction(sign * rep)

    def same_square_class(self, a, b) -> bool:
        """Exact for any size: a and b agree mod squares iff a*b is a square."""
        if self.is_zero(a) or self.is_zero(b):
            raise ValueError("square class of zero is undefined")
        return self.is_square(self.mul(a, b))

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.p}"


def _tonelli_shanks(a: int, p: int) -> int:
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# Polynomials (dense, ascending coefficients)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial; coeffs ascending, leading coefficient nonzero
    unless the zero polynomial (empty tuple)."""

    coeffs: tuple
    field: Field

    @staticmethod
    def make(coeffs, field: Field) -> "Poly":
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        return Poly(tuple(cs), field)

    @staticmethod
    def zero(field: Field) -> "Poly":
        return Poly((), field)

    @staticmethod
    def one(field: Field) -> "Poly":
        return Poly((field.one,), field)

    @staticmethod
    def x(field: Field) -> "Poly":
        return Poly((field.zero, field.one), field)

    @staticmethod
    def x_minus(a, field: Field) -> "Poly":
        return Poly.make([field.neg(a), field.one], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero_poly(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [F.zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [F.zero] * (n - len(other.coeffs))
        return Poly.make([F.add(x, y) for x, y in zip(a, b)], F)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(self.field.neg(self.field.one))

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if self.is_zero_poly or other.is_zero_poly:
            return Poly.zero(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly.make(out, F)

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly.make([F.mul(c, a) for a in self.coeffs], F)

    def monic(self) -> "Poly":
        if self.is_zero_poly:
            return self
        return self.scale(self.field.inv(self.lead))

    def divmod(self, other: "Poly"):
        F = self.field
        if other.is_zero_poly:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(F), self
        quo = [F.zero] * (dq + 1)
        inv_lead = F.inv(other.lead)
        for i in range(dq, -1, -1):
            c = F.mul(rem[i + other.degree], inv_lead)
            quo[i] = c
            if F.is_zero(c):
                continue
            for j, b in enumerate(other.coeffs):
                rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Poly.make(quo, F), Poly.make(rem, F)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero_poly:
            a, b = b, a % b
        return a.monic() if not a.is_zero_poly else a

    def derivative(self) -> "Poly":
        F = self.field
        return Poly.make(
            [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:], F
        )

    def eval(self, a):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def pow_mod(self, e: int, modulus: "Poly") -> "Poly":
        result = Poly.one(self.field)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def is_squarefree(self) -> bool:
        if self.is_zero_poly:
            return False
        d = self.derivative()
        if d.is_zero_poly:
            return self.degree == 0
        return self.gcd(d).degree == 0

    def reciprocal_inverse(self) -> "Poly":
        """Monic normalization of x^deg * p(1/x); pairs factors under x -> 1/x."""
        return Poly.make(tuple(reversed(self.coeffs)), self.field).monic()

    def __str__(self):
        if self.is_zero_poly:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            if i == 0:
                parts.append(self.field.fmt(c))
            elif i == 1:
                parts.append(f"{self.field.fmt(c)}*x")
            else:
                parts.append(f"{self.field.fmt(c)}*x^{i}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


def _stream_seed(p: int, f: Poly) -> int:
    """Deterministic key from (p, coefficients) so splitting is reproducible."""
    key = p
    for c in f.coeffs:
        key = (key * 1000003 + int(c)) % (1 << 64)
    return key


def squarefree_decomposition(f: Poly):
    """Musser-style decomposition: list of (g_i, m_i) with f = lc * prod g_i^m_i,
    every g_i squarefree and pairwise coprime.  Handles p-th powers over F_p
    (coefficientwise p-th roots are the identity on the prime field)."""
    F = f.field
    f = f.monic()
    if f.degree == 0:
        return []
    d = f.derivative()
    if d.is_zero_poly:
        p = F.p
        comp = Poly.make([f.coeffs[i] for i in range(0, len(f.coeffs), p)], F)
        return [(g, m * p) for g, m in squarefree_decomposition(comp)]
    out = []
    g = f.gcd(d)
    w = f // g
    i = 1
    while w.degree > 0:
        y = w.gcd(g)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        g = g // y
    if g.degree > 0:
        # leftover is a p-th power (multiplicities divisible by char)
        p = F.p
        comp = Poly.make([g.coeffs[j] for j in range(0, len(g.coeffs), p)], F)
        out.extend((h, m * p) for h, m in squarefree_decomposition(comp))
    out.sort(key=lambda t: t[1])
    return out


def _distinct_degree(f: Poly):
    """f squarefree monic over F_p -> list of (product of irreducibles of degree d, d)."""
    F = f.field
    q = F.p
    out = []
    x = Poly.x(F)
    h = x
    rest = f
    d = 0
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        h = h.pow_mod(q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random):
    """Cantor-Zassenhaus for odd q: split a product of degree-d irreducibles."""
    F = f.field
    if f.degree == d:
        return [f.monic()]
    q = F.p
    e = (q**d - 1) // 2
    while True:
        a = Poly.make([rng.randrange(q) for _ in range(f.degree)], F)
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < f.degree:
            left, right = g, f // g
        else:
            b = a.pow_mod(e, f)
            g = f.gcd(b - Poly.one(F))
            if not (0 < g.degree < f.degree):
                continue
            left, right = g, f // g
        return _equal_degree_split(left, d, rng) + _equal_degree_split(right, d, rng)


def _factor_fp(f: Poly):
    rng = random.Random(_stream_seed(f.field.p, f))
    out = []
    for g, mult in squarefree_decomposition(f):
        for prod, d in _distinct_degree(g):
            for irr in _equal_degree_split(prod, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: (fm[0].degree, tuple(int(c) for c in fm[0].coeffs)))
    return out


def _rational_roots(f: Poly):
    """All rational roots of f (with multiplicity handled by the caller)."""
    # clear denominators to a primitive integer polynomial
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    while ints and ints[0] == 0:
        # x | f: root 0 — excluded by callers (minimal polys of invertible maps),
        # but handle it anyway
        return [Fraction(0)] + _rational_roots(Poly.make(f.coeffs[1:], f.field))
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = []
    for pnum in _divisors(a0):
        for pden in _divisors(an):
            if _gcd_int(pnum, pden) != 1:
                continue
            for sign in (1, -1):
                r = Fraction(sign * pnum, pden)
                if f.eval(r) == 0 and r not in roots:
                    roots.append(r)
    roots.sort()
    return roots


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _factor_q_squarefree(g: Poly):
    """Factor a squarefree rational polynomial by root search; a non-linear
    remainder of degree 2 or 3 with no rational root is irreducible, degree >= 4
    is out of scope."""
    F = g.field
    factors = []
    rest = g.monic()
    for r in _rational_roots(rest):
        lin = Poly.x_minus(r, F)
        rest = rest // lin
        factors.append(lin)
    if rest.degree == 0:
        return factors
    if rest.degree == 1:
        factors.append(rest.monic())
        return factors
    if rest.degree == 2:
        b, a = rest.coeffs[1], rest.coeffs[2]
        c = rest.coeffs[0]
        disc = b * b - 4 * a * c
        if F.is_square(disc):
            raise AssertionError("quadratic with square discriminant survived root search")
        factors.append(rest.monic())
        return factors
    if rest.degree == 3:
        # no rational root => no linear factor => irreducible cubic
        factors.append(rest.monic())
        return factors
    raise FactorizationUnsupported(
        f"degree {rest.degree} factor over Q needs splitting beyond rational "
        "roots and quadratics; supply a factorization manually"
    )


def factor(f: Poly):
    """Full factorization into monic irreducibles.

    Returns (unit, [(irreducible, multiplicity), ...]) with
    unit * prod irr^mult == f exactly.  Over Q raises
    FactorizationUnsupported when a degree >= 4 factor cannot be split.
    """
    if f.is_zero_poly:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lead
    if f.degree == 0:
        return unit, []
    if f.field.kind == "Fp":
        return unit, _factor_fp(f.monic())
    out = []
    for g, mult in squarefree_decomposition(f.monic()):
        for irr in _factor_q_squarefree(g):
            out.append((irr, mult))
    out.sort(key=lambda fm: (fm[0].degree, tuple(fm[0].coeffs)))
    return unit, out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_p; over Q defers to factor()."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    if F.kind == "Q":
        try:
            _, facs = factor(f)
        except FactorizationUnsupported:
            raise
        return len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == f.degree
    q = F.p
    n = f.degree
    x = Poly.x(F)
    if x.pow_mod(q**n, f) != x % f:
        return False
    for ell in {d for d in range(2, n + 1) if n % d == 0 and _is_prime(d)}:
        h = x.pow_mod(q ** (n // ell), f) - x
        if f.gcd(h).degree != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Minimal polynomial (Krylov / iterated kernel)
# ---------------------------------------------------------------------------


def minimal_polynomial(m, field: Field) -> Poly:
    """Monic minimal polynomial of a square matrix: lcm over basis vectors of
    the local relation found by growing Krylov chains."""
    from . import linalg  # local import; linalg depends on scalars

    n = len(m)
    mp = Poly.one(field)
    for i in range(n):
        v = tuple(field.one if j == i else field.zero for j in range(n))
        chain = [v]
        w = v
        while True:
            w = linalg.mat_vec(m, w, field)
            rel = linalg.express_in_span(chain, w, field)
            if rel is not None:
                local = Poly.make(
                    [field.neg(c) for c in rel] + [field.one], field
                )
                break
            chain.append(w)
        mp = _poly_lcm(mp, local)
        if mp.degree == n:
            break
    return mp.monic()


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero_poly or b.is_zero_poly:
        return Poly.zero(a.field)
    return ((a * b) // a.gcd(b)).monic()


# ---------------------------------------------------------------------------
# Finite extensions K[x]/(p(x))
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtField:
    """K[x]/(modulus); elements are coefficient tuples of length degree.

    The modulus is checked irreducible over prime fields; over Q the caller
    asserts it (factor() output is already irreducible there).
    """

    base: Field
    modulus: Poly

    def __post_init__(self):
        if self.modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        if self.modulus.lead != self.base.one:
            raise ValueError("modulus must be monic")
        if self.base.kind == "Fp" and not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus} is reducible over {self.base}")

    @property
    def degree(self) -> int:
        return self.modulus.degree

    # -- element constructors ---------------------------------------------

    @property
    def zero(self):
        return (self.base.zero,) * self.degree

    @property
    def one(self):
        return self.embed(self.base.one)

    def embed(self, c):
        return (c,) + (self.base.zero,) * (self.degree - 1)

    @property
    def gen(self):
        """The class of x."""
        if self.degree == 1:
            return self.embed(self.base.neg(self.modulus.coeffs[0]))
        return tuple(
            self.base.one if i == 1 else self.base.zero for i in range(self.degree)
        )

    def from_poly(self, f: Poly):
        r = f % self.modulus
        cs = list(r.coeffs) + [self.base.zero] * (self.degree - len(r.coeffs))
        return tuple(cs)

    def to_poly(self, a) -> Poly:
        return Poly.make(a, self.base)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        return self.from_poly(self.to_poly(a) * self.to_poly(b))

    def scalar_mul(self, c, a):
        return tuple(self.base.mul(c, x) for x in a)

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in extension")
        # extended Euclid in K[x]
        f, g = self.modulus, self.to_poly(a)
        s0, s1 = Poly.zero(self.base), Poly.one(self.base)
        while not g.is_zero_poly:
            q, r = f.divmod(g)
            f, g = g, r
            s0, s1 = s1, s0 - q * s1
        # f = gcd = const (modulus irreducible)
        assert f.degree == 0
        return self.from_poly(s0.scale(self.base.inv(f.coeffs[0])))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    # -- trace form ----------------------------------------------------------

    def mul_matrix(self, a):
        """Matrix of multiplication by a on the power basis (columns = a*x^j)."""
        cols = []
        cur = a
        cols.append(cur)
        for _ in range(self.degree - 1):
            cur = self.mul(cur, self.gen)
            cols.append(cur)
        return tuple(
            tuple(cols[j][i] for j in range(self.degree)) for i in range(self.degree)
        )

    def trace(self, a):
        m = self.mul_matrix(a)
        t = self.base.zero
        for i in range(self.degree):
            t = self.base.add(t, m[i][i])
        return t

    def substitute(self, a, image):
        """Ring map determined by x -> image, applied to a (Horner)."""
        acc = self.zero
        for c in reversed(a):
            acc = self.add(self.mul(acc, image), self.embed(c))
        return acc


def ext_trace(a, ext: ExtField):
    """Trace of multiplication-by-a as a base-field linear map."""
    return ext.trace(a)


def ext_inverse_involution(ext: ExtField):
    """The ring involution x -> x^-1 on ext, as a callable on coefficient tuples.

    Requires the modulus to have nonzero constant term (so x is a unit) and to
    be fixed by coefficient reversal up to scalar, which holds for minimal
    polynomials of isometries; both are verified.
    """
    if ext.base.is_zero(ext.modulus.coeffs[0]):
        raise NonUnitGenerator("modulus has zero constant term; x is not invertible")
    xinv = ext.inv(ext.gen)
    # x -> x^-1 extends to a ring map iff modulus(x^-1) = 0 in ext
    acc = ext.one
    check = ext.zero
    for c in ext.modulus.coeffs:
        check = ext.add(check, ext.scalar_mul(c, acc))
        acc = ext.mul(acc, xinv)
    if not ext.is_zero(check):
        raise ValueError(
            "x -> x^-1 is not well-defined on this extension "
            "(modulus is not inverse-symmetric)"
        )

    def sigma(a):
        return ext.substitute(a, xinv)

    return sigma
