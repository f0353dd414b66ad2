"""Exact arithmetic in prime fields F_p (p odd) and extensions F_{p^k}.

Raw element encodings:

  - prime field: Python int in [0, p)
  - extension of degree k: tuple of k ints in [0, p), the coefficients of
    the residue class modulo a monic irreducible polynomial, ascending

Contexts implement arithmetic on raw values and are immutable after
construction, so they can be shared freely. ``FieldElement`` wraps a
(context, raw) pair with the usual operators for callers that prefer
objects. The only source of randomness is the explicit seed passed to
``ext_new``.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence, Union

from .errors import ExtensionTooLarge, NonInvertible

MODULUS_BOUND = 1 << 31  # residue products must fit a double-width int comfortably
DEFAULT_EXT_CAP = 64

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for all n < 2**64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# Low-level F_p[x] helpers on plain int lists (ascending, normalized).
# These back the extension-field arithmetic; the general polynomial layer in
# poly.py is built on top of the contexts defined here, not the reverse.
# ---------------------------------------------------------------------------


def _pnormalize(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pnormalize(out)


def _prem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo monic m."""
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        shift = len(r) - 1 - dm
        if lead:
            for i in range(dm):
                r[shift + i] = (r[shift + i] - lead * m[i]) % p
        r.pop()
        _pnormalize(r)
    return r


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    return _prem(_pmul(a, b, p), m, p)


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _prem(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [c * inv % p for c in b]
        a, b = b, _prem(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _pinvmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Inverse of a modulo monic irreducible m, via extended Euclid."""
    r0, r1 = list(m), _prem(a, m, p)
    s0, s1 = [], [1]
    while r1:
        inv = pow(r1[-1], p - 2, p)
        r1m = [c * inv % p for c in r1]
        q = _pquo(r0, r1m, p)
        q = _pmul(q, [inv], p)
        r0, r1 = r1, _pnormalize([(x - y) % p for x, y in itertools.zip_longest(r0, _pmul(q, r1, p), fillvalue=0)])
        s0, s1 = s1, _pnormalize([(x - y) % p for x, y in itertools.zip_longest(s0, _pmul(q, s1, p), fillvalue=0)])
    if len(r0) != 1:
        raise NonInvertible("element is not invertible modulo the given modulus")
    c = pow(r0[0], p - 2, p)
    return _prem([x * c % p for x in s0], m, p)


def _pquo(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Quotient of a by monic m."""
    r = list(a)
    dm = len(m) - 1
    q = [0] * max(len(r) - dm, 0)
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        shift = len(r) - 1 - dm
        q[shift] = lead
        if lead:
            for i in range(dm):
                r[shift + i] = (r[shift + i] - lead * m[i]) % p
        r.pop()
        _pnormalize(r)
    return _pnormalize(q)


def _pirreducible(m: Sequence[int], p: int) -> bool:
    """Rabin irreducibility test for monic m over F_p."""
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**n, m, p) != x:
        return False
    for ell in _prime_divisors(n):
        h = _ppowmod(x, p ** (n // ell), m, p)
        diff = _pnormalize([(c - d) % p for c, d in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(diff, m, p)) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

Raw = Union[int, tuple]


class PrimeFieldContext:
    """The field F_p for an odd prime p < 2**31. Raw elements are ints."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= MODULUS_BOUND:
            raise ValueError(f"modulus must be an int below 2**31, got {p!r}")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    # -- structure ----------------------------------------------------------
    @property
    def char(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    zero = 0
    one = 1

    # -- raw arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise NonInvertible(f"0 has no inverse in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def frobenius(self, a: int) -> int:
        return a % self.p

    # -- conversions --------------------------------------------------------
    def reduce_int(self, n: int) -> int:
        return n % self.p

    def element(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            if v.ctx != self:
                raise ValueError("element belongs to a different context")
            return v
        return FieldElement(self, int(v) % self.p)

    def key(self, a: int) -> int:
        return a

    def iter_raw(self) -> Iterator[int]:
        return iter(range(self.p))

    def rand_raw(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeFieldContext) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"PrimeFieldContext({self.p})"


class ExtFieldContext:
    """F_{p^k} as F_p[x] modulo a monic irreducible of degree k.

    Raw elements are coefficient tuples of length k, ascending. Degree-1
    extensions are allowed and behave like a relabelled copy of the base.
    """

    __slots__ = ("base", "k", "modulus")

    def __init__(self, base: PrimeFieldContext, modulus: Sequence[int]):
        mod = tuple(c % base.p for c in modulus)
        while mod and mod[-1] == 0:
            mod = mod[:-1]
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _pirreducible(mod, base.p):
            raise ValueError(f"modulus {list(mod)} is reducible over F_{base.p}")
        self.base = base
        self.modulus = mod
        self.k = len(mod) - 1

    @property
    def char(self) -> int:
        return self.base.p

    @property
    def order(self) -> int:
        return self.base.p ** self.k

    @property
    def degree(self) -> int:
        return self.k

    @property
    def zero(self) -> tuple:
        return (0,) * self.k

    @property
    def one(self) -> tuple:
        return (1,) + (0,) * (self.k - 1)

    # -- raw arithmetic -----------------------------------------------------
    def _pad(self, c: Sequence[int]) -> tuple:
        return tuple(c) + (0,) * (self.k - len(c))

    def add(self, a: tuple, b: tuple) -> tuple:
        p = self.base.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        p = self.base.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        p = self.base.p
        return tuple(-x % p for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self._pad(_pmulmod(a, b, self.modulus, self.base.p))

    def inv(self, a: tuple) -> tuple:
        if not any(a):
            raise NonInvertible(f"0 has no inverse in F_{self.base.p}^{self.k}")
        return self._pad(_pinvmod(a, self.modulus, self.base.p))

    def pow_(self, a: tuple, e: int) -> tuple:
        if e < 0:
            return self.pow_(self.inv(a), -e)
        return self._pad(_ppowmod(a, e, self.modulus, self.base.p))

    def frobenius(self, a: tuple) -> tuple:
        return self.pow_(a, self.base.p)

    # -- conversions --------------------------------------------------------
    def embed(self, c: int) -> tuple:
        return (c % self.base.p,) + (0,) * (self.k - 1)

    def gen(self) -> tuple:
        """Raw value of the residue class of x."""
        if self.k == 1:
            return (-self.modulus[0] % self.base.p,)
        return (0, 1) + (0,) * (self.k - 2)

    def element(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            if v.ctx != self:
                raise ValueError("element belongs to a different context")
            return v
        if isinstance(v, int):
            return FieldElement(self, self.embed(v))
        vec = tuple(int(c) % self.base.p for c in v)
        if len(vec) > self.k:
            raise ValueError(f"coefficient vector longer than degree {self.k}")
        return FieldElement(self, self._pad(vec))

    def key(self, a: tuple) -> tuple:
        return a

    def iter_raw(self) -> Iterator[tuple]:
        return itertools.product(range(self.base.p), repeat=self.k)

    def rand_raw(self, rng: random.Random) -> tuple:
        p = self.base.p
        return tuple(rng.randrange(p) for _ in range(self.k))

    # -- identity -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtFieldContext)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash(("Fpk", self.base.p, self.modulus))

    def __repr__(self) -> str:
        return f"ExtFieldContext(p={self.base.p}, k={self.k}, modulus={list(self.modulus)})"


FieldContext = Union[PrimeFieldContext, ExtFieldContext]


def ext_new(p: int, k: int, seed, *, cap: int = DEFAULT_EXT_CAP) -> ExtFieldContext:
    """Construct F_{p^k} with a monic irreducible modulus found by seeded search.

    The search draws random monic candidates of degree k and keeps the first
    irreducible one, so the resulting context is reproducible for a fixed
    seed. Degrees above ``cap`` are refused.
    """
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k > cap:
        raise ExtensionTooLarge(f"extension degree {k} exceeds cap {cap}")
    base = PrimeFieldContext(p)
    if k == 1:
        return ExtFieldContext(base, (0, 1))
    rng = random.Random(seed)
    while True:
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if cand[0] == 0:  # divisible by x, never irreducible for k >= 2
            continue
        if _pirreducible(cand, p):
            return ExtFieldContext(base, cand)


class FieldElement:
    """A field value tagged with its context. Canonical form is unique."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldContext, value: Raw):
        self.ctx = ctx
        self.value = value

    def _coerce(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("cannot mix elements of different field contexts")
            return other.value
        if isinstance(other, int):
            return self.ctx.element(other).value
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.value, self.ctx.inv(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(v, self.ctx.inv(self.value)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow_(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.ctx.element(other).value == self.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.value))

    def __repr__(self) -> str:
        return f"FieldElement({self.value!r})"

    @property
    def is_zero(self) -> bool:
        return self.value == self.ctx.zero

    def key(self):
        """Canonical sort key: residue for F_p, coefficient tuple for F_{p^k}."""
        return self.ctx.key(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))


# ---------------------------------------------------------------------------
# Public wrappers
# ---------------------------------------------------------------------------


def fp_inv(a: FieldElement, ctx: FieldContext | None = None) -> FieldElement:
    """Multiplicative inverse; raises NonInvertible on zero."""
    if ctx is not None and a.ctx != ctx:
        raise ValueError("element does not belong to the given context")
    return a.inverse()


def fp_pow(a: FieldElement, e: int, ctx: FieldContext | None = None) -> FieldElement:
    """a**e by square-and-multiply; a**0 == 1, including 0**0."""
    if ctx is not None and a.ctx != ctx:
        raise ValueError("element does not belong to the given context")
    if e == 0:
        return FieldElement(a.ctx, a.ctx.one)
    return a**e


def ext_frobenius(a: FieldElement, ctx: ExtFieldContext | None = None) -> FieldElement:
    """The p-power map a -> a^p, generating Gal(F_{p^k} / F_p)."""
    if ctx is not None and a.ctx != ctx:
        raise ValueError("element does not belong to the given context")
    return FieldElement(a.ctx, a.ctx.frobenius(a.value))
