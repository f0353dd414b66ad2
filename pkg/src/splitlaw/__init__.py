"""Empirical verification of a splitting law for odd-degree polynomials.

For monic irreducible f of odd degree 2g+1 over the integers and a good
odd prime p (not dividing disc f), f splits into distinct linear factors
mod p exactly when the rational 2-torsion of the Jacobian of y^2 = f(x)
over F_p is (Z/2Z)^2g. This package computes both sides of that
equivalence by independent routes and sweeps them against each other:

- ff: exact arithmetic in F_p and F_{p^k}, Frobenius included
- poly: univariate polynomials over those fields, full factorization
- jacobian: Mumford divisors and the Cantor group law
- torsion: 2-torsion subgroups, torsion bases over splitting fields,
  Frobenius matrices in GL_2g(F_2), and the blow-up chain at infinity
- reciprocity: good primes, splitting types, the law sweep, splitting
  sets, inclusion tests, and density statistics
- cli: the `splitlaw` command with JSON/CSV/text reports
"""

__version__ = "0.1.0"

from .errors import (
    BadCharacteristic,
    CapExceeded,
    CurveMismatch,
    EmptyRange,
    EvenDegree,
    ExtensionTooLarge,
    NonInvertible,
    NonTerminating,
    NotARoot,
    NotIrreducible,
    NotMonic,
    NotOnJacobian,
    NotReduced,
    NotSquarefree,
    PolynomialSyntaxError,
    SplitlawError,
    UndefinedGcd,
    UnsupportedDegree,
    ZeroDiscriminant,
    ZeroDivisor,
)
from .ff import (
    DEFAULT_EXT_CAP,
    ExtFieldContext,
    FieldElement,
    PrimeFieldContext,
    ext_frobenius,
    ext_new,
    fp_inv,
    fp_pow,
    is_prime,
)
from .poly import (
    Factorization,
    IntegerPolynomial,
    Polynomial,
    SplittingType,
    embed_poly,
    factorize,
    is_squarefree,
    poly_divmod,
    poly_gcd,
    poly_xgcd,
    roots_in,
    splitting_type,
)
from .jacobian import (
    DEFAULT_ENUM_CAP,
    HyperellipticCurve,
    MumfordDivisor,
    add,
    curve_new,
    divisor_new,
    enumerate_jacobian,
    neg,
    scalar_mul,
)
from .torsion import (
    BinaryMatrix,
    BivariatePolynomial,
    BlowupChart,
    TorsionBasis,
    TwoTorsionSubgroup,
    blowup_chain,
    embed_root,
    frobenius_matrix,
    frobenius_permutation,
    permutation_order,
    torsion_basis,
    two_torsion_points,
    two_torsion_rank,
)
from .reciprocity import (
    DEFAULT_SEED,
    DensityReport,
    InclusionReport,
    PrimeRecord,
    ReciprocityReport,
    density_report,
    discriminant,
    good_primes,
    inclusion_check,
    resultant,
    sieve_primes,
    spl_set,
    splits_completely,
    splitting_type_mod_p,
    verify_law,
)
