"""Rational 2-torsion of odd-degree Jacobians and the structures built on it.

For y^2 = f(x) with f monic squarefree of odd degree 2g+1, every 2-torsion
class has a unique reduced representative (u, 0) with u a monic divisor of
f and deg u <= g. Subsets of the irreducible factors of f whose degrees sum
to at most g give exactly one representative per complement pair (the total
degree 2g+1 is odd, so exactly one of S, S^c stays within g), which yields
the 2^(n-1) count for n distinct factors.

Embedding all 2g+1 roots over the splitting field gives a basis v_1..v_2g
of the full 2-torsion with the relation v_{2g+1} = v_1 + ... + v_2g; the
Frobenius permutation of roots then turns into an invertible 2g x 2g matrix
over F_2, and the curve's singularity at infinity resolves through an
explicit chain of chart substitutions ending in a cusp normal form.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from . import ff
from .errors import (
    BadCharacteristic,
    NonTerminating,
    NotARoot,
    NotSquarefree,
)
from .jacobian import HyperellipticCurve, MumfordDivisor, add, curve_new
from .poly import (
    Polynomial,
    _is_squarefree_unguarded,
    embed_poly,
    factorize,
    roots_in,
)

_TORSION_SEED = 0x2B11  # internal seed for the factorization step


@dataclass(frozen=True)
class TwoTorsionSubgroup:
    """All rational 2-torsion classes of a curve's Jacobian."""

    elements: tuple[MumfordDivisor, ...]
    rank: int
    n: int  # distinct irreducible factors of f

    def __len__(self) -> int:
        return len(self.elements)


def embed_root(e: ff.FieldElement, C: HyperellipticCurve) -> MumfordDivisor:
    """The class of (x - e, 0) for a root e of f; an order-2 element."""
    if e.ctx != C.f.ctx:
        raise NotARoot("element lives in a different field than the curve")
    if C.f(e).value != C.f.ctx.zero:
        raise NotARoot(f"{e.value!r} is not a root of the curve polynomial")
    u = Polynomial._raw(C.f.ctx, (C.f.ctx.neg(e.value), C.f.ctx.one))
    return MumfordDivisor._make(C, u, Polynomial.zero(C.f.ctx))


def two_torsion_points(C: HyperellipticCurve, seed=_TORSION_SEED) -> TwoTorsionSubgroup:
    """The full rational 2-torsion subgroup, each element doubling-verified.

    Elements are the classes (u, 0) for monic u | f with deg u <= g, built
    from subsets of the irreducible factors of f. Rank is n - 1.
    """
    f = C.f
    g = C.genus
    fact = factorize(f, seed)
    if any(m > 1 for _, m in fact.factors):
        raise NotSquarefree("curve polynomial has a repeated factor")
    parts = [p for p, _ in fact.factors]
    n = len(parts)
    identity = C.identity()
    elements = []
    for mask in range(1 << n):
        total = sum(parts[i].degree for i in range(n) if mask >> i & 1)
        if total > g:
            continue
        u = Polynomial.one(f.ctx)
        for i in range(n):
            if mask >> i & 1:
                u = u * parts[i]
        D = MumfordDivisor._make(C, u, Polynomial.zero(f.ctx))
        if not add(D, D).is_identity:
            raise RuntimeError(f"candidate {D!r} failed the doubling check")
        elements.append(D)
    elements.sort(key=MumfordDivisor.key)
    rank = n - 1
    if len(elements) != 1 << rank:
        raise RuntimeError(
            f"found {len(elements)} two-torsion classes, expected {1 << rank}"
        )
    return TwoTorsionSubgroup(elements=tuple(elements), rank=rank, n=n)


def two_torsion_rank(C: HyperellipticCurve, seed=_TORSION_SEED) -> int:
    """F_2-dimension of the rational 2-torsion (n - 1 for n factors).

    Delegates to the full construction, so the returned rank is backed by
    per-element doubling verification rather than a factor count alone.
    """
    return two_torsion_points(C, seed).rank


@dataclass(frozen=True)
class TorsionBasis:
    """Roots of f in its splitting field and the basis they generate."""

    ctx: ff.FieldContext  # splitting field of f mod p
    curve: HyperellipticCurve  # base-changed curve over ctx
    roots: tuple[ff.FieldElement, ...]  # all 2g+1 roots, canonical order
    basis: tuple[MumfordDivisor, ...]  # embedded roots 1..2g

    @property
    def genus(self) -> int:
        return self.curve.genus


def _splitting_data(f: Polynomial, p: int, seed, cap: int):
    """Splitting field of f mod p, base-changed curve, and ordered roots."""
    if not isinstance(f.ctx, ff.PrimeFieldContext) or f.ctx.p != p:
        raise ValueError(f"polynomial is not over F_{p}")
    if not _is_squarefree_unguarded(f):
        raise NotSquarefree(f"polynomial is not squarefree mod {p}")
    fact = factorize(f, seed)
    k = math.lcm(*(part.degree for part, _ in fact.factors))
    if k == 1:
        ctx: ff.FieldContext = f.ctx
        fs = f
    else:
        ctx = ff.ext_new(p, k, seed, cap=cap)
        fs = embed_poly(f, ctx)
    curve = curve_new(fs)
    roots = tuple(roots_in(fs, ctx))
    if len(roots) != f.degree:
        raise RuntimeError(
            f"found {len(roots)} roots in F_{p}^{k}, expected {f.degree}"
        )
    return ctx, curve, roots


def torsion_basis(
    f: Polynomial, p: int, seed, *, cap: int = ff.DEFAULT_EXT_CAP
) -> TorsionBasis:
    """Basis v_1..v_2g of the 2-torsion over the splitting field of f mod p.

    Verifies on construction: every v_i has order exactly 2, all nonempty
    subset sums of the basis are nonzero (exhaustive for g <= 3), and the
    sum of all 2g+1 embedded roots is the identity.
    """
    ctx, curve, roots = _splitting_data(f, p, seed, cap)
    g = curve.genus
    basis = tuple(embed_root(e, curve) for e in roots[: 2 * g])
    for D in basis:
        if D.is_identity or not add(D, D).is_identity:
            raise RuntimeError(f"basis element {D!r} does not have order 2")
    if g <= 3:
        for mask in range(1, 1 << (2 * g)):
            acc = curve.identity()
            for i in range(2 * g):
                if mask >> i & 1:
                    acc = add(acc, basis[i])
            if acc.is_identity:
                raise RuntimeError(f"basis subset {mask:b} sums to the identity")
    total = curve.identity()
    for e in roots:
        total = add(total, embed_root(e, curve))
    if not total.is_identity:
        raise RuntimeError("embedded roots do not sum to the identity")
    return TorsionBasis(ctx=ctx, curve=curve, roots=roots, basis=basis)


class BinaryMatrix:
    """A square matrix over F_2, rows stored as bitmasks (bit j = column j)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        bitrows = []
        for row in rows:
            if isinstance(row, int):
                bitrows.append(row)
            else:
                bitrows.append(sum((1 << j) for j, e in enumerate(row) if e & 1))
        self.n = len(bitrows)
        self.rows = tuple(r & ((1 << self.n) - 1) for r in bitrows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls([1 << i for i in range(n)])

    @classmethod
    def from_columns(cls, cols: list[int], n: int) -> "BinaryMatrix":
        rows = [0] * n
        for j, col in enumerate(cols):
            for i in range(n):
                if col >> i & 1:
                    rows[i] |= 1 << j
        return cls(rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def column(self, j: int) -> int:
        return sum((self.rows[i] >> j & 1) << i for i in range(self.n))

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def __mul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if not isinstance(other, BinaryMatrix) or other.n != self.n:
            raise ValueError("size mismatch")
        rows = []
        for a in self.rows:
            acc = 0
            j = 0
            while a:
                if a & 1:
                    acc ^= other.rows[j]
                a >>= 1
                j += 1
            rows.append(acc)
        return BinaryMatrix(rows)

    def __pow__(self, e: int) -> "BinaryMatrix":
        if e < 0:
            raise ValueError("negative matrix power")
        result = BinaryMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def apply(self, vec: int) -> int:
        """Matrix-vector product over F_2; vec is a column bitmask."""
        out = 0
        for i in range(self.n):
            if bin(self.rows[i] & vec).count("1") & 1:
                out |= 1 << i
        return out

    @property
    def is_identity(self) -> bool:
        return self.rows == tuple(1 << i for i in range(self.n))

    @property
    def is_invertible(self) -> bool:
        rows = list(self.rows)
        rank = 0
        for col in range(self.n):
            pivot = next(
                (i for i in range(rank, self.n) if rows[i] >> col & 1), None
            )
            if pivot is None:
                return False
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for i in range(self.n):
                if i != rank and rows[i] >> col & 1:
                    rows[i] ^= rows[rank]
            rank += 1
        return True

    def order(self, limit: int = 10**6) -> int:
        """Multiplicative order; requires invertibility."""
        if not self.is_invertible:
            raise ValueError("singular matrix has no multiplicative order")
        acc = self
        for k in range(1, limit + 1):
            if acc.is_identity:
                return k
            acc = acc * self
        raise RuntimeError("order search exceeded its limit")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryMatrix)
            and other.n == self.n
            and other.rows == self.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.to_lists()!r})"


def frobenius_permutation(
    f: Polynomial, p: int, seed, *, cap: int = ff.DEFAULT_EXT_CAP
) -> list[int]:
    """Image indices of the roots of f mod p under x -> x^p, canonical order."""
    ctx, _, roots = _splitting_data(f, p, seed, cap)
    index = {e.value: i for i, e in enumerate(roots)}
    perm = []
    for e in roots:
        img = ctx.frobenius(e.value)
        if img not in index:
            raise RuntimeError("Frobenius image is not a listed root")
        perm.append(index[img])
    return perm


def frobenius_matrix(
    f: Polynomial, p: int, seed, *, cap: int = ff.DEFAULT_EXT_CAP
) -> BinaryMatrix:
    """The Frobenius action on the 2-torsion basis as a matrix in GL_2g(F_2).

    Column i is the image of v_i expanded in the basis, using the relation
    v_{2g+1} = v_1 + ... + v_2g when the permuted root falls off the basis.
    The matrix is the identity exactly when f splits into linear factors
    over F_p (trivial permutation).
    """
    perm = frobenius_permutation(f, p, seed, cap=cap)
    m = len(perm)  # 2g + 1
    size = m - 1  # 2g
    all_ones = (1 << size) - 1
    cols = []
    for i in range(size):
        j = perm[i]
        cols.append((1 << j) if j < size else all_ones)
    M = BinaryMatrix.from_columns(cols, size)
    if not M.is_invertible:
        raise RuntimeError("Frobenius matrix is singular")
    return M


def permutation_order(perm: list[int]) -> int:
    """Order of a permutation given as a list of image indices."""
    seen = [False] * len(perm)
    result = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        result = math.lcm(result, length)
    return result


# ---------------------------------------------------------------------------
# Blow-up of the singular point at infinity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BivariatePolynomial:
    """Exact bivariate polynomial over F_p; terms are (i, j, coeff) sorted."""

    variables: tuple[str, str]
    terms: tuple[tuple[int, int, int], ...]
    p: int

    @classmethod
    def from_dict(cls, variables, d: dict, p: int) -> "BivariatePolynomial":
        terms = tuple(
            sorted((i, j, c % p) for (i, j), c in d.items() if c % p != 0)
        )
        return cls(variables=tuple(variables), terms=terms, p=p)

    def as_dict(self) -> dict:
        return {(i, j): c for i, j, c in self.terms}

    def evaluate(self, a: int, b: int) -> int:
        return sum(c * pow(a, i, self.p) * pow(b, j, self.p) for i, j, c in self.terms) % self.p

    def __str__(self) -> str:
        x, y = self.variables
        parts = [f"{c}*{x}^{i}*{y}^{j}" for i, j, c in self.terms]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class BlowupChart:
    """One substitution round of the blow-up at the point at infinity."""

    step: int
    variables: tuple[str, str]  # chart coordinates after the substitution
    monomial: tuple[str, int]  # factored-out monomial (variable, power)
    equation: BivariatePolynomial  # cofactor after factoring
    residual_exponent: int  # e in the lone -u^e term
    terminal: bool  # cofactor has the cusp shape w^2*S(u) - u^3


_CHART_VARS = ("x", "m", "t")


def _chart_var(step: int) -> str:
    """First-coordinate name after the given substitution round."""
    if step <= len(_CHART_VARS):
        return _CHART_VARS[step - 1]
    return f"t{step - 2}"


def blowup_chain(g: int, coeffs, p: int) -> list["BlowupChart"]:
    """Resolve the singularity at infinity of y^2 = f(x) by chart substitutions.

    Starting from the x-z chart equation sum(a_j x^(2g+1-j) z^j) - z^(2g-1)
    with a_0 = 1, substitutes z = u*x and then repeatedly w = w'*u, factoring
    out the maximal monomial power each round, until the cofactor reaches the
    cusp normal form w^2*S(u) - u^3 with S(0) = 1. Genus 1 needs no blow-up
    and returns an empty chain.
    """
    if p == 2:
        raise BadCharacteristic("blow-up chain requires odd characteristic")
    if g < 1:
        raise ValueError("genus must be >= 1")
    base = ff.PrimeFieldContext(p)
    a = [1] + [base.reduce_int(int(c)) for c in coeffs]
    if len(a) != 2 * g + 2:
        raise ValueError(f"expected {2 * g + 1} coefficients a_1..a_{2 * g + 1}")
    if g == 1:
        return []

    # x-z chart near [0:1:0]: sum a_j x^(2g+1-j) z^j - z^(2g-1)
    terms: dict[tuple[int, int], int] = {}
    for j, aj in enumerate(a):
        if aj:
            terms[(2 * g + 1 - j, j)] = aj
    terms[(0, 2 * g - 1)] = (terms.get((0, 2 * g - 1), 0) - 1) % p

    charts: list[BlowupChart] = []
    expected = 2 * g - 1
    for step in range(1, g + 1):
        if step == 1:
            # z = u*x: x-degree becomes i + j, u-degree is j
            terms = {(i + j, j): c for (i, j), c in terms.items()}
            factor_var = "x"
        else:
            # w = w'*u: u-degree becomes i + j
            terms = {(i, i + j): c for (i, j), c in terms.items()}
            factor_var = "u"
        axis = 0 if factor_var == "x" else 1
        power = min(key[axis] for key in terms)
        if step > 1 and power != 2:
            raise NonTerminating(
                f"step {step} factored u^{power} instead of u^2"
            )
        terms = {
            (i - power, j) if axis == 0 else (i, j - power): c
            for (i, j), c in terms.items()
        }
        variables = (_chart_var(step), "u")
        residual = _residual_exponent(terms, expected, step)
        terminal = residual == 3
        if terminal:
            _check_cusp_form(terms, a, p, step)
        charts.append(
            BlowupChart(
                step=step,
                variables=variables,
                monomial=(factor_var, power),
                equation=BivariatePolynomial.from_dict(variables, terms, p),
                residual_exponent=residual,
                terminal=terminal,
            )
        )
        if terminal:
            return charts
        expected -= 2
    raise NonTerminating(f"no cusp form after {g} substitution rounds")


def _residual_exponent(terms: dict, expected: int, step: int) -> int:
    if terms.get((0, expected)) is None:
        raise NonTerminating(
            f"step {step}: residual term u^{expected} is missing"
        )
    return expected


def _check_cusp_form(terms: dict, a: list[int], p: int, step: int) -> None:
    """Cofactor must be w^2 * S(u) - u^3 with S(0) = 1."""
    for (i, j), c in terms.items():
        if (i, j) == (0, 3):
            if c != p - 1:
                raise NonTerminating(f"step {step}: u^3 coefficient is {c}")
        elif i != 2:
            raise NonTerminating(
                f"step {step}: unexpected term with exponents {(i, j)}"
            )
    if terms.get((2, 0)) != 1:
        raise NonTerminating(f"step {step}: S(0) != 1 in the cusp form")
