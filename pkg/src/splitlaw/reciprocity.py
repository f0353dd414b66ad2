"""Prime splitting of integer polynomials and the reciprocity sweep.

For monic irreducible f over the integers, a good prime (odd, not dividing
disc f) splits completely in the splitting field of f exactly when f mod p
factors into distinct linear polynomials, and the law under test states this
happens exactly when the rational 2-torsion of Jac(y^2 = f mod p) has full
rank 2g. The sweep computes the two sides by disjoint code paths: the left
by a gcd with x^p - x (no factorization), the right by building the whole
2-torsion subgroup through Cantor arithmetic. Their agreement per prime is
the verified instance of the law.

Good primes exclude p = 2 and p | disc(f). Any prime not dividing disc(f)
is prime to the conductor of the order generated by a root of f, so this
surrogate drops at most finitely many primes, which a law stated up to
finitely many exceptions tolerates.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import ff
from .errors import (
    EmptyRange,
    EvenDegree,
    NotIrreducible,
    NotMonic,
    UnsupportedDegree,
    ZeroDiscriminant,
)
from .jacobian import curve_new
from .poly import IntegerPolynomial, Polynomial, SplittingType, factorize, poly_gcd
from .torsion import two_torsion_rank

DEFAULT_SEED = 271828  # published default; all randomness derives from it


def sieve_primes(bound: int) -> list[int]:
    """All primes <= bound by the sieve of Eratosthenes."""
    if bound < 2:
        return []
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for n in range(2, int(bound**0.5) + 1):
        if flags[n]:
            flags[n * n :: n] = bytearray(len(flags[n * n :: n]))
    return [n for n in range(2, bound + 1) if flags[n]]


# ---------------------------------------------------------------------------
# Discriminant over the integers
# ---------------------------------------------------------------------------


def _det_bareiss(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def resultant(f: IntegerPolynomial, g: IntegerPolynomial) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    fa = list(reversed(f.coeffs))
    ga = list(reversed(g.coeffs))
    rows = []
    for i in range(m):
        rows.append([0] * i + fa + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + ga + [0] * (size - m - 1 - i))
    return _det_bareiss(rows)


def discriminant(f: IntegerPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f of degree n >= 2."""
    if not f.is_monic:
        raise NotMonic("discriminant requires a monic polynomial")
    n = f.degree
    if n < 2:
        raise ValueError("discriminant requires degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


# ---------------------------------------------------------------------------
# Per-prime splitting data
# ---------------------------------------------------------------------------


def good_primes(f: IntegerPolynomial, bound: int) -> list[int]:
    """Odd primes <= bound not dividing disc(f); f mod p is then squarefree."""
    disc = discriminant(f)
    if disc == 0:
        raise ZeroDiscriminant("polynomial has a repeated root over the rationals")
    return [p for p in sieve_primes(bound) if p != 2 and disc % p != 0]


def splitting_type_mod_p(
    f: IntegerPolynomial, p: int, seed=DEFAULT_SEED
) -> SplittingType:
    """The multiset of (degree, multiplicity) of the factors of f mod p."""
    ctx = ff.PrimeFieldContext(p)
    fbar = f.reduce_mod(ctx)
    if fbar.is_zero:
        raise ValueError(f"polynomial vanishes identically mod {p}")
    return factorize(fbar, f"{seed}:{p}").splitting_type()


def splits_completely(f: IntegerPolynomial, p: int) -> bool:
    """True iff f mod p is squarefree with all factors linear.

    Computed without factorization: f mod p splits completely exactly when
    it divides x^p - x, detected as gcd(x^p - x mod f, f) having full degree
    together with gcd(f, f') = 1.
    """
    ctx = ff.PrimeFieldContext(p)
    fbar = f.reduce_mod(ctx)
    if fbar.degree != f.degree or fbar.degree < 1:
        return False
    d = fbar.derivative()
    if d.is_zero or poly_gcd(fbar, d).degree != 0:
        return False
    x = Polynomial.x(ctx)
    linear_part = poly_gcd(x.pow_mod(p, fbar) - x, fbar)
    return linear_part.degree == fbar.degree


@dataclass(frozen=True)
class PrimeRecord:
    """Both sides of the law at a single prime."""

    p: int
    splitting: SplittingType
    torsion_rank: int | None
    splits_completely: bool
    law_consistent: bool


@dataclass(frozen=True)
class ReciprocityReport:
    """Outcome of a full sweep over the good primes up to a bound."""

    f: IntegerPolynomial
    genus: int
    bound: int
    bad_primes: tuple[int, ...]
    records: tuple[PrimeRecord, ...]
    spl: tuple[int, ...]
    verdict: bool
    density: Fraction | None

    def violations(self) -> list[PrimeRecord]:
        return [r for r in self.records if not r.law_consistent]


def _check_heuristic_irreducible(f: IntegerPolynomial) -> None:
    """Reject polynomials with an integer root (rational root test).

    Full factorization over the rationals is out of scope; absence of
    integer roots is a necessary condition only, so this is a heuristic
    gate for obviously reducible input.
    """
    if f.degree < 1:
        raise NotIrreducible("constant polynomial")
    if f.degree == 1:
        return
    a0 = f.coeffs[0]
    if a0 == 0:
        raise NotIrreducible("x divides the polynomial")
    divisors = []
    d = 1
    while d * d <= abs(a0):
        if a0 % d == 0:
            divisors.extend((d, abs(a0) // d))
        d += 1
    for d in divisors:
        for r in (d, -d):
            if f.evaluate(r) == 0:
                raise NotIrreducible(f"integer root {r} found")


def _validate_law_input(f: IntegerPolynomial) -> int:
    """Checks for the sweep entry points; returns the genus."""
    if not f.is_monic:
        raise NotMonic("the law requires a monic polynomial")
    if f.degree % 2 == 0:
        raise EvenDegree(f"degree {f.degree} is even; the law needs odd degree")
    if f.degree < 3:
        raise UnsupportedDegree("degree must be at least 3 for genus >= 1")
    _check_heuristic_irreducible(f)
    return (f.degree - 1) // 2


def _prime_record(coeffs: tuple[int, ...], p: int, genus: int, seed) -> PrimeRecord:
    """Both sides of the law at p; the two sides share no code path."""
    f = IntegerPolynomial(coeffs)
    ctx = ff.PrimeFieldContext(p)
    fbar = f.reduce_mod(ctx)
    per_seed = f"{seed}:{p}"
    split = splits_completely(f, p)
    st = factorize(fbar, per_seed).splitting_type()
    rank = two_torsion_rank(curve_new(fbar), seed=per_seed)
    law = split == (rank == 2 * genus)
    return PrimeRecord(
        p=p,
        splitting=st,
        torsion_rank=rank,
        splits_completely=split,
        law_consistent=law,
    )


def _record_task(args) -> PrimeRecord:
    return _prime_record(*args)


def verify_law(
    f: IntegerPolynomial,
    bound: int,
    *,
    seed=DEFAULT_SEED,
    workers: int = 1,
) -> ReciprocityReport:
    """Check the law at every good prime <= bound.

    Records are listed by ascending prime regardless of worker scheduling,
    so reports are reproducible for a fixed seed.
    """
    genus = _validate_law_input(f)
    disc = discriminant(f)
    if disc == 0:
        raise ZeroDiscriminant("polynomial has a repeated root over the rationals")
    primes = sieve_primes(bound)
    bad = tuple(p for p in primes if p == 2 or disc % p == 0)
    good = [p for p in primes if p != 2 and disc % p != 0]
    tasks = [(f.coeffs, p, genus, seed) for p in good]
    if workers > 1 and len(good) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(tasks) // (4 * workers))
            records = tuple(pool.map(_record_task, tasks, chunksize=chunk))
    else:
        records = tuple(map(_record_task, tasks))
    spl = tuple(r.p for r in records if r.splits_completely)
    verdict = all(r.law_consistent for r in records)
    density = Fraction(len(spl), len(good)) if good else None
    return ReciprocityReport(
        f=f,
        genus=genus,
        bound=bound,
        bad_primes=bad,
        records=records,
        spl=spl,
        verdict=verdict,
        density=density,
    )


def spl_set(f: IntegerPolynomial, bound: int) -> list[int]:
    """Ascending good primes <= bound where f splits completely."""
    _validate_law_input(f)
    return [p for p in good_primes(f, bound) if splits_completely(f, p)]


@dataclass(frozen=True)
class InclusionReport:
    """Empirical test of Spl(f) being contained in Spl(h)."""

    holds: bool
    exceptions: tuple[int, ...]
    first_counterexample: int | None
    good_count: int
    bound: int


def inclusion_check(
    f: IntegerPolynomial, h: IntegerPolynomial, bound: int
) -> InclusionReport:
    """Test whether every good prime splitting f also splits h, up to bound.

    Good primes exclude 2 and divisors of either discriminant. Both
    polynomials must be monic of degree >= 2 (h may have even degree; only
    factorizations are compared).
    """
    for poly in (f, h):
        if not poly.is_monic:
            raise NotMonic("inclusion test requires monic polynomials")
        if poly.degree < 2:
            raise UnsupportedDegree("inclusion test requires degree >= 2")
        _check_heuristic_irreducible(poly)
    df = discriminant(f)
    dh = discriminant(h)
    if df == 0 or dh == 0:
        raise ZeroDiscriminant("polynomial has a repeated root over the rationals")
    good = [
        p
        for p in sieve_primes(bound)
        if p != 2 and df % p != 0 and dh % p != 0
    ]
    exceptions = tuple(
        p for p in good if splits_completely(f, p) and not splits_completely(h, p)
    )
    return InclusionReport(
        holds=not exceptions,
        exceptions=exceptions,
        first_counterexample=exceptions[0] if exceptions else None,
        good_count=len(good),
        bound=bound,
    )


@dataclass(frozen=True)
class DensityReport:
    """Observed frequency of completely-split primes up to a bound."""

    bound: int
    good_count: int
    split_count: int
    observed: Fraction
    group_order: int | None
    deviation: Fraction | None  # |observed - 1/group_order| when supplied


def density_report(
    f: IntegerPolynomial, bound: int, group_order: int | None = None
) -> DensityReport:
    """Frequency of split primes among good primes <= bound.

    With the Galois group order G supplied, also reports the deviation from
    the expected density 1/G.
    """
    _validate_law_input(f)
    good = good_primes(f, bound)
    if not good:
        raise EmptyRange(f"no good primes up to {bound}")
    split = [p for p in good if splits_completely(f, p)]
    observed = Fraction(len(split), len(good))
    deviation = None
    if group_order is not None:
        if group_order < 1:
            raise ValueError("group order must be positive")
        deviation = abs(observed - Fraction(1, group_order))
    return DensityReport(
        bound=bound,
        good_count=len(good),
        split_count=len(split),
        observed=observed,
        group_order=group_order,
        deviation=deviation,
    )
