"""Hyperelliptic curves y^2 = f(x) of odd degree and their Jacobian group law.

Divisor classes are stored in Mumford representation: a pair (u, v) with u
monic, deg v < deg u <= g, and u | v^2 - f. The identity is (1, 0). Addition
is Cantor composition followed by reduction. The composition runs the full
gcd(u1, u2, v1 + v2) branch, which is essential here: sums of 2-torsion
classes (v = 0) always land in the degenerate case.

For odd-degree models there is a single point at infinity and reduced
representatives are unique, so equality of classes is syntactic equality of
the reduced pairs.
"""

from __future__ import annotations

import itertools

from . import ff
from .errors import (
    BadCharacteristic,
    CapExceeded,
    CurveMismatch,
    EvenDegree,
    NotMonic,
    NotOnJacobian,
    NotReduced,
    NotSquarefree,
    UnsupportedDegree,
)
from .poly import Polynomial, _is_squarefree_unguarded, poly_xgcd

DEFAULT_ENUM_CAP = 10**6


class HyperellipticCurve:
    """y^2 = f(x) with f monic squarefree of odd degree 2g+1, char != 2."""

    __slots__ = ("f", "genus")

    def __init__(self, f: Polynomial):
        if f.ctx.char == 2:
            raise BadCharacteristic("curves require characteristic != 2")
        if f.is_zero or f.degree % 2 == 0:
            raise EvenDegree(f"degree {f.degree} is not odd")
        if f.degree < 3:
            raise UnsupportedDegree("degree must be at least 3 for genus >= 1")
        if not f.is_monic:
            raise NotMonic("curve polynomial must be monic")
        if not _is_squarefree_unguarded(f):
            raise NotSquarefree("curve polynomial has a repeated root")
        self.f = f
        self.genus = (f.degree - 1) // 2

    @property
    def ctx(self) -> ff.FieldContext:
        return self.f.ctx

    def identity(self) -> "MumfordDivisor":
        return MumfordDivisor._make(self, Polynomial.one(self.f.ctx), Polynomial.zero(self.f.ctx))

    def __eq__(self, other) -> bool:
        return isinstance(other, HyperellipticCurve) and other.f == self.f

    def __hash__(self) -> int:
        return hash(("curve", self.f))

    def __repr__(self) -> str:
        return f"HyperellipticCurve(y^2 = {self.f})"


class MumfordDivisor:
    """A reduced divisor class (u, v) on the Jacobian of its curve."""

    __slots__ = ("curve", "u", "v")

    def __init__(self, curve: HyperellipticCurve, u: Polynomial, v: Polynomial):
        validated = divisor_new(u, v, curve)
        self.curve = curve
        self.u = validated.u
        self.v = validated.v

    @classmethod
    def _make(cls, curve, u, v) -> "MumfordDivisor":
        self = object.__new__(cls)
        self.curve = curve
        self.u = u
        self.v = v
        return self

    @property
    def is_identity(self) -> bool:
        return self.u.degree == 0

    def key(self):
        return (self.u.key(), self.v.key())

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return neg(self)

    def __rmul__(self, n: int):
        return scalar_mul(n, self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MumfordDivisor)
            and other.curve == self.curve
            and other.u == self.u
            and other.v == self.v
        )

    def __hash__(self) -> int:
        return hash((self.u, self.v))

    def __repr__(self) -> str:
        return f"MumfordDivisor(u={self.u}, v={self.v})"


def curve_new(f: Polynomial) -> HyperellipticCurve:
    """Validated curve y^2 = f(x); genus is (deg f - 1) / 2."""
    return HyperellipticCurve(f)


def divisor_new(u: Polynomial, v: Polynomial, C: HyperellipticCurve) -> MumfordDivisor:
    """Validated reduced divisor (u, v) on C; (1, 0) is the identity."""
    u._check(v)
    if u.ctx != C.f.ctx:
        raise CurveMismatch("divisor polynomials live over a different field")
    if u.is_zero or not u.is_monic:
        raise NotMonic("u must be monic")
    if u.degree > C.genus:
        raise NotReduced(f"deg u = {u.degree} exceeds genus {C.genus}")
    if not v.is_zero and v.degree >= u.degree:
        raise NotReduced("deg v must be below deg u")
    if not ((v * v - C.f) % u).is_zero:
        raise NotOnJacobian("u does not divide v^2 - f")
    return MumfordDivisor._make(C, u, v)


def _require_same_curve(D1: MumfordDivisor, D2: MumfordDivisor, C) -> HyperellipticCurve:
    if D2 is not None and D1.curve != D2.curve:
        raise CurveMismatch("divisors lie on different curves")
    if C is not None and C != D1.curve:
        raise CurveMismatch("divisor does not lie on the given curve")
    return D1.curve


def add(D1: MumfordDivisor, D2: MumfordDivisor, C: HyperellipticCurve | None = None) -> MumfordDivisor:
    """Cantor composition and reduction of divisor classes."""
    curve = _require_same_curve(D1, D2, C)
    f, g = curve.f, curve.genus
    u1, v1 = D1.u, D1.v
    u2, v2 = D2.u, D2.v

    d1, e1, e2 = poly_xgcd(u1, u2)
    d, c1, c2 = poly_xgcd(d1, v1 + v2)
    s1 = c1 * e1
    s2 = c1 * e2
    s3 = c2

    u = (u1 * u2).exact_div(d * d)
    num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f)
    v = num.exact_div(d) % u

    while u.degree > g:
        u = (f - v * v).exact_div(u).monic()
        v = (-v) % u
    return MumfordDivisor._make(curve, u, v)


def neg(D: MumfordDivisor, C: HyperellipticCurve | None = None) -> MumfordDivisor:
    """The inverse class (u, -v mod u)."""
    curve = _require_same_curve(D, None, C)
    return MumfordDivisor._make(curve, D.u, (-D.v) % D.u)


def scalar_mul(n: int, D: MumfordDivisor, C: HyperellipticCurve | None = None) -> MumfordDivisor:
    """n-fold sum by double-and-add; 0*D is the identity."""
    curve = _require_same_curve(D, None, C)
    if n < 0:
        raise ValueError("scalar must be nonnegative")
    acc = curve.identity()
    base = D
    while n:
        if n & 1:
            acc = add(acc, base)
        base = add(base, base)
        n >>= 1
    return acc


def enumerate_jacobian(C: HyperellipticCurve, cap: int = DEFAULT_ENUM_CAP) -> list[MumfordDivisor]:
    """Every reduced divisor on C by exhaustive scan, in canonical order.

    The scan walks all monic u of degree <= g and all v of degree < deg u,
    keeping pairs with u | v^2 - f. Intended as a brute-force oracle for
    small fields; refuses to start when the candidate count exceeds cap.
    """
    ctx = C.f.ctx
    g = C.genus
    q = ctx.order
    candidates = sum(q ** (2 * d) for d in range(g + 1))
    if candidates > cap:
        raise CapExceeded(f"{candidates} candidate pairs exceed cap {cap}")

    out = [C.identity()]
    raws = list(ctx.iter_raw())
    fc = C.f.coeffs
    zero = ctx.zero
    for d in range(1, g + 1):
        vtails = list(itertools.product(raws, repeat=d))
        for tail in itertools.product(raws, repeat=d):
            u = Polynomial._raw(ctx, tail + (ctx.one,))
            # f mod u, padded to length d for direct comparison
            fu = list((Polynomial._raw(ctx, fc) % u).coeffs)
            fu += [zero] * (d - len(fu))
            fu = tuple(fu)
            uc = u.coeffs
            for vt in vtails:
                if _sq_mod(ctx, vt, uc, d) == fu:
                    v = Polynomial._raw(ctx, _trim(vt, zero))
                    out.append(MumfordDivisor._make(C, u, v))
    out.sort(key=MumfordDivisor.key)
    return out


def _trim(t: tuple, zero) -> tuple:
    n = len(t)
    while n and t[n - 1] == zero:
        n -= 1
    return t[:n]


def _sq_mod(ctx, vt: tuple, u: tuple, d: int) -> tuple:
    """(v^2 mod u) as a tuple of length d, for monic u of degree d."""
    zero = ctx.zero
    add_, mul = ctx.add, ctx.mul
    w = [zero] * (2 * d - 1) if d else []
    for i, a in enumerate(vt):
        if a == zero:
            continue
        for j, b in enumerate(vt):
            if b != zero:
                w[i + j] = add_(w[i + j], mul(a, b))
    sub = ctx.sub
    for top in range(2 * d - 2, d - 1, -1):
        lead = w[top]
        if lead == zero:
            continue
        w[top] = zero
        shift = top - d
        for i in range(d):
            w[shift + i] = sub(w[shift + i], mul(lead, u[i]))
    return tuple(w[:d]) if d else ()
