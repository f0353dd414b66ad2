"""Univariate polynomials over field contexts, with complete factorization.

Coefficients are stored as raw context values (see ff) in ascending order,
normalized so the zero polynomial is the empty tuple and any other leading
coefficient is nonzero. All operations work uniformly over F_p and F_{p^k}
contexts.

Factorization follows the classic pipeline: squarefree decomposition, then
distinct-degree splitting against x^(q^d) - x, then randomized equal-degree
splitting. The randomness is an explicit seed, and factors are returned in
a canonical order, so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import ff
from .errors import NotMonic, UndefinedGcd, UnsupportedDegree, ZeroDivisor

_ROOTS_SEED = 0x0E1F  # internal seed for root isolation, see roots_in


def _norm(coeffs: list, zero) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == zero:
        n -= 1
    return tuple(coeffs[:n])


def _add_raw(ctx, a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = ctx.add
    for i, c in enumerate(b):
        out[i] = add(out[i], c)
    return _norm(out, ctx.zero)


def _sub_raw(ctx, a: tuple, b: tuple) -> tuple:
    out = list(a) + [ctx.zero] * (len(b) - len(a))
    sub = ctx.sub
    for i, c in enumerate(b):
        out[i] = sub(out[i], c)
    return _norm(out, ctx.zero)


def _neg_raw(ctx, a: tuple) -> tuple:
    neg = ctx.neg
    return tuple(neg(c) for c in a)


def _mul_raw(ctx, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    zero = ctx.zero
    add, mul = ctx.add, ctx.mul
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == zero:
            continue
        for j, bj in enumerate(b):
            if bj != zero:
                out[i + j] = add(out[i + j], mul(ai, bj))
    return _norm(out, zero)


def _divmod_raw(ctx, a: tuple, b: tuple) -> tuple[tuple, tuple]:
    """Quotient and remainder; b must be nonzero."""
    zero = ctx.zero
    db = len(b) - 1
    if len(a) < len(b):
        return (), a
    binv = ctx.inv(b[-1])
    sub, mul = ctx.sub, ctx.mul
    r = list(a)
    q = [zero] * (len(a) - db)
    for top in range(len(a) - 1, db - 1, -1):
        lead = r[top]
        if lead == zero:
            continue
        c = mul(lead, binv)
        q[top - db] = c
        for i in range(db + 1):
            r[top - db + i] = sub(r[top - db + i], mul(c, b[i]))
    return _norm(q, zero), _norm(r, zero)


def _monic_raw(ctx, a: tuple) -> tuple:
    if not a or a[-1] == ctx.one:
        return a
    inv = ctx.inv(a[-1])
    mul = ctx.mul
    return tuple(mul(c, inv) for c in a)


def _gcd_raw(ctx, a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, _divmod_raw(ctx, a, b)[1]
    return _monic_raw(ctx, a)


def _xgcd_raw(ctx, a: tuple, b: tuple) -> tuple[tuple, tuple, tuple]:
    """Monic g with g = s*a + t*b."""
    r0, r1 = a, b
    s0, s1 = (ctx.one,), ()
    t0, t1 = (), (ctx.one,)
    while r1:
        q, r = _divmod_raw(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub_raw(ctx, s0, _mul_raw(ctx, q, s1))
        t0, t1 = t1, _sub_raw(ctx, t0, _mul_raw(ctx, q, t1))
    if r0 and r0[-1] != ctx.one:
        inv = ctx.inv(r0[-1])
        scale = (inv,)
        r0 = _mul_raw(ctx, r0, scale)
        s0 = _mul_raw(ctx, s0, scale)
        t0 = _mul_raw(ctx, t0, scale)
    return r0, s0, t0


def _powmod_raw(ctx, a: tuple, e: int, m: tuple) -> tuple:
    result = (ctx.one,)
    base = _divmod_raw(ctx, a, m)[1]
    while e:
        if e & 1:
            result = _divmod_raw(ctx, _mul_raw(ctx, result, base), m)[1]
        base = _divmod_raw(ctx, _mul_raw(ctx, base, base), m)[1]
        e >>= 1
    return result


class Polynomial:
    """A normalized univariate polynomial over a field context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ff.FieldContext, coeffs: Iterable = ()):
        vals = []
        for c in coeffs:
            if isinstance(c, ff.FieldElement):
                if c.ctx != ctx:
                    raise ValueError("coefficient from a different context")
                vals.append(c.value)
            elif isinstance(c, int):
                vals.append(ctx.element(c).value)
            else:
                vals.append(ctx.element(c).value)
        self.ctx = ctx
        self.coeffs = _norm(vals, ctx.zero)

    @classmethod
    def _raw(cls, ctx, coeffs: tuple) -> "Polynomial":
        self = object.__new__(cls)
        self.ctx = ctx
        self.coeffs = coeffs
        return self

    @classmethod
    def zero(cls, ctx) -> "Polynomial":
        return cls._raw(ctx, ())

    @classmethod
    def one(cls, ctx) -> "Polynomial":
        return cls._raw(ctx, (ctx.one,))

    @classmethod
    def x(cls, ctx) -> "Polynomial":
        return cls._raw(ctx, (ctx.zero, ctx.one))

    @classmethod
    def constant(cls, ctx, c) -> "Polynomial":
        return cls(ctx, [c])

    # -- structure ----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> ff.FieldElement:
        raw = self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero
        return ff.FieldElement(self.ctx, raw)

    def key(self):
        """Canonical sort key: degree, then coefficient vector."""
        k = self.ctx.key
        return (self.degree, tuple(k(c) for c in self.coeffs))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("polynomials from different contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.ctx, _add_raw(self.ctx, self.coeffs, other.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.ctx, _sub_raw(self.ctx, self.coeffs, other.coeffs))

    def __neg__(self):
        return Polynomial._raw(self.ctx, _neg_raw(self.ctx, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ctx, other)
        other = self._check(other)
        return Polynomial._raw(self.ctx, _mul_raw(self.ctx, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero:
            raise ZeroDivisor("division by the zero polynomial")
        q, r = _divmod_raw(self.ctx, self.coeffs, other.coeffs)
        return Polynomial._raw(self.ctx, q), Polynomial._raw(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("division expected to be exact left a remainder")
        return q

    def pow_mod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        modulus = self._check(modulus)
        return Polynomial._raw(self.ctx, _powmod_raw(self.ctx, self.coeffs, e, modulus.coeffs))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        return Polynomial._raw(self.ctx, _monic_raw(self.ctx, self.coeffs))

    def derivative(self) -> "Polynomial":
        ctx = self.ctx
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            out.append(ctx.mul(c, ctx.element(i).value))
        return Polynomial._raw(ctx, _norm(out, ctx.zero))

    def evaluate_raw(self, x):
        ctx = self.ctx
        acc = ctx.zero
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def __call__(self, x):
        if isinstance(x, ff.FieldElement):
            if x.ctx != self.ctx:
                raise ValueError("argument from a different context")
            return ff.FieldElement(self.ctx, self.evaluate_raw(x.value))
        return self.evaluate_raw(self.ctx.element(x).value)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.ctx == self.ctx
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.ctx.zero:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append("x" if c == self.ctx.one else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == self.ctx.one else f"{c}*x^{i}")
        return " + ".join(parts)


def embed_poly(f: Polynomial, ext: ff.ExtFieldContext) -> Polynomial:
    """Lift a prime-field polynomial into an extension of the same base."""
    if isinstance(f.ctx, ff.ExtFieldContext):
        if f.ctx == ext:
            return f
        raise ValueError("cannot embed between distinct extension contexts")
    if f.ctx.p != ext.base.p:
        raise ValueError("extension has a different characteristic")
    return Polynomial._raw(ext, tuple(ext.embed(c) for c in f.coeffs))


class IntegerPolynomial:
    """A normalized polynomial over the integers, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        vals = [int(c) for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        self.coeffs = tuple(vals)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def evaluate(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(
            i * self.coeffs[i] for i in range(1, len(self.coeffs))
        )

    def reduce_mod(self, ctx) -> Polynomial:
        """Reduction mod p; accepts a prime or a prime-field context."""
        if isinstance(ctx, int):
            ctx = ff.PrimeFieldContext(ctx)
        return Polynomial._raw(ctx, _norm([c % ctx.p for c in self.coeffs], 0))

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerPolynomial) and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(("Zx", self.coeffs))

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = f"{mag}"
            elif i == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Public wrappers
# ---------------------------------------------------------------------------


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """a = q*b + r with deg r < deg b; raises ZeroDivisor on b = 0."""
    return divmod(a, b)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; undefined when both arguments are zero."""
    a._check(b)
    if a.is_zero and b.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    return Polynomial._raw(a.ctx, _gcd_raw(a.ctx, a.coeffs, b.coeffs))


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(g, s, t) with monic g = s*a + t*b."""
    a._check(b)
    if a.is_zero and b.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    g, s, t = _xgcd_raw(a.ctx, a.coeffs, b.coeffs)
    raw = Polynomial._raw
    return raw(a.ctx, g), raw(a.ctx, s), raw(a.ctx, t)


def is_squarefree(f: Polynomial) -> bool:
    """True iff gcd(f, f') = 1. Requires deg f below the characteristic."""
    if f.is_zero:
        raise ValueError("squarefreeness of the zero polynomial is undefined")
    if f.degree >= f.ctx.char:
        raise UnsupportedDegree(
            f"degree {f.degree} not below characteristic {f.ctx.char}"
        )
    return poly_gcd(f, f.derivative()).degree == 0


def _is_squarefree_unguarded(f: Polynomial) -> bool:
    # Valid over any finite field: an irreducible factor never has zero
    # derivative, so gcd(f, f') = 1 characterizes squarefree f even when
    # deg f >= char (f' = 0 makes the gcd f itself, correctly failing).
    d = f.derivative()
    if d.is_zero:
        return f.degree == 0
    return poly_gcd(f, d).degree == 0


@dataclass(frozen=True)
class SplittingType:
    """Sorted multiset of (residue degree, multiplicity) pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def all_linear(self) -> bool:
        return all(d == 1 for d, _ in self.pairs)

    @property
    def squarefree(self) -> bool:
        return all(m == 1 for _, m in self.pairs)

    @property
    def total_degree(self) -> int:
        return sum(d * m for d, m in self.pairs)

    @property
    def factor_count(self) -> int:
        """Number of distinct irreducible factors."""
        return len(self.pairs)

    def __str__(self) -> str:
        return " ".join(f"{d}^{m}" for d, m in self.pairs)


@dataclass(frozen=True)
class Factorization:
    """Complete factorization unit * prod(factor^multiplicity)."""

    unit: object  # raw leading coefficient of the input
    factors: tuple[tuple[Polynomial, int], ...]

    def product(self, ctx) -> Polynomial:
        acc = Polynomial.constant(ctx, ff.FieldElement(ctx, self.unit))
        for poly, mult in self.factors:
            acc = acc * poly**mult
        return acc

    def splitting_type(self) -> SplittingType:
        return SplittingType(tuple(sorted((p.degree, m) for p, m in self.factors)))


def splitting_type(fact: Factorization) -> SplittingType:
    return fact.splitting_type()


def _pth_root(f: Polynomial) -> Polynomial:
    """p-th root of a polynomial in x^p over a finite-field context."""
    ctx = f.ctx
    p = ctx.char
    e = ctx.order // p  # c^(q/p) is the p-th root of c
    out = [ctx.pow_(f.coeffs[i], e) for i in range(0, len(f.coeffs), p)]
    return Polynomial._raw(ctx, _norm(out, ctx.zero))


def _squarefree_parts(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic pairwise-coprime squarefree parts with multiplicities."""
    p = f.ctx.char
    out: list[tuple[Polynomial, int]] = []
    d = f.derivative()
    if d.is_zero:
        return [(g, m * p) for g, m in _squarefree_parts(_pth_root(f))]
    c = poly_gcd(f, d)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree_parts(_pth_root(c)))
    return out


def _distinct_degree_parts(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split squarefree monic f into products of equal-degree irreducibles."""
    ctx = f.ctx
    q = ctx.order
    out = []
    w = Polynomial.x(ctx) % f
    x = Polynomial.x(ctx)
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        w = w.pow_mod(q, f)
        part = poly_gcd(w - x, f)
        if part.degree > 0:
            out.append((part, d))
            f = f.exact_div(part)
            w = w % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree_split(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Split a product of degree-d irreducibles into its factors (q odd)."""
    if f.degree == d:
        return [f]
    ctx = f.ctx
    q = ctx.order
    exponent = (q**d - 1) // 2
    one = Polynomial.one(ctx)
    for _ in range(128):
        t = Polynomial._raw(
            ctx, _norm([ctx.rand_raw(rng) for _ in range(f.degree)], ctx.zero)
        )
        if t.degree < 1:
            continue
        g = poly_gcd(t, f)
        if 0 < g.degree < f.degree:
            pass  # lucky split by a shared factor
        else:
            g = poly_gcd(t.pow_mod(exponent, f) - one, f)
            if not 0 < g.degree < f.degree:
                continue
        return _equal_degree_split(g, d, rng) + _equal_degree_split(f.exact_div(g), d, rng)
    raise RuntimeError("equal-degree splitting failed to converge")


def factorize(f: Polynomial, seed) -> Factorization:
    """Complete factorization into monic irreducibles, canonical order.

    Deterministic for a fixed seed; the result is verified by multiplying
    the factors back together.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lc()
    fm = f.monic()
    rng = random.Random(seed)
    factors: list[tuple[Polynomial, int]] = []
    if fm.degree > 0:
        for part, mult in _squarefree_parts(fm):
            for prod, d in _distinct_degree_parts(part):
                for irr in _equal_degree_split(prod, d, rng):
                    factors.append((irr, mult))
    factors.sort(key=lambda fm_: fm_[0].key())
    result = Factorization(unit=unit, factors=tuple(factors))
    if result.product(f.ctx) != f:
        raise AssertionError("factorization failed verification by multiplication")
    return result


def roots_in(f: Polynomial, ctx: ff.FieldContext) -> list[ff.FieldElement]:
    """All distinct roots of f in the given field, in canonical order.

    f may live over the prime field underneath an extension context; it is
    embedded before solving.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial has every element as a root")
    if f.ctx != ctx:
        if not isinstance(ctx, ff.ExtFieldContext):
            raise ValueError("polynomial belongs to a different context")
        f = embed_poly(f, ctx)
    if f.degree < 1:
        return []
    f = f.monic()
    x = Polynomial.x(ctx)
    # product of (x - e) over distinct roots e: gcd with x^q - x
    linear_part = poly_gcd(x.pow_mod(ctx.order, f) - x, f)
    if linear_part.degree < 1:
        return []
    rng = random.Random(_ROOTS_SEED)
    roots = [
        ff.FieldElement(ctx, ctx.neg(g.coeffs[0]))
        for g in _equal_degree_split(linear_part, 1, rng)
    ]
    roots.sort(key=lambda e: e.key())
    return roots
