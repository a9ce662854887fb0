"""Catalog of explicit brackets and structures

Every constructor returns a CatalogItem in the fixed bases the expected
matrices refer to:
    symplectic   antidiagonal J, omega = a_1 ^ a_2n + ... + a_n ^ a_n+1
    complex      X_1..X_4, Z_1, Z_2 with J acting on consecutive pairs
    hypercomplex X_1..X_4, Z_1..Z_4 with J1, J2, J3 acting on both blocks

All constructors should be wrapped with @Example, which records the parameter
domain and how to read parameters from the command line, and registers the
constructor in CATALOG.

`expected` holds whatever the literature states about the item: any of
c, D, invariant_ricci, eigenvalue_type, and center_ricci (the Ricci operator
restricted to the basis indices listed under center).
"""
import inspect
import math
from collections import namedtuple

import numpy

from nilsoliton.components.algebra import Bracket
from nilsoliton.components.exceptions import DomainError
from nilsoliton.components.structures import (
    QUATERNION_BLOCKS,
    StructureTensor,
    antidiagonal_J,
    block_J,
    block_quaternion,
)


CatalogItem = namedtuple("CatalogItem", ["bracket", "structure", "label", "expected"])

CATALOG = {}

NORMALIZATION_TOL = 1e-9


def vector(raw):
    """Read a comma separated vector such as '0.5,0'."""
    return tuple(float(x) for x in str(raw).split(","))


class Example(object):
    """decorator for catalog constructors: the result is a callable with a
    human-readable `domain` and one parser per parameter in `types`, so the
    command line can build it from strings.
    """

    def __init__(self, domain, types=()):
        self.domain = domain
        self.types = tuple(types)

    def __call__(self, function):
        class DecoratedExample(object):
            def __init__(self, domain, types, function):
                self.domain = domain
                self.types = types
                self.function = function
                self.__name__ = function.__name__
                self.__doc__ = function.__doc__
                self.signature = str(inspect.signature(function))

            def __call__(self, *params, **kwparams):
                return self.function(*params, **kwparams)

            def parse(self, raw):
                if len(raw) != len(self.types):
                    raise DomainError(
                        "{} takes {} parameters, got {}".format(
                            self.__name__, len(self.types), len(raw)
                        )
                    )
                try:
                    return [kind(value) for kind, value in zip(self.types, raw)]
                except ValueError as e:
                    raise DomainError("bad parameter for {}: {}".format(self.__name__, e))

        decorated = DecoratedExample(self.domain, self.types, function)
        CATALOG[function.__name__] = decorated
        return decorated


def _require(condition, message):
    if not condition:
        raise DomainError(message)


def _near(value, target):
    return abs(value - target) <= NORMALIZATION_TOL


def _in_range(name, value, low, high):
    _require(
        low - NORMALIZATION_TOL <= value <= high + NORMALIZATION_TOL,
        "{} must lie in [{:.6g}, {:.6g}], got {!r}".format(name, low, high, value),
    )


def _positive_int(name, value, minimum):
    _require(
        int(value) == value and value >= minimum,
        "{} must be an integer >= {}, got {!r}".format(name, minimum, value),
    )
    return int(value)


# Symplectic examples

def _heisenberg_invariant_ricci(dim):
    if dim == 4:
        return -0.25 * numpy.diag([1.0, 2.0, -2.0, -1.0])
    diagonal = numpy.zeros(dim)
    diagonal[:3] = [1.0, 1.0, -1.0]
    diagonal[-3:] = [1.0, -1.0, -1.0]
    return -0.25 * numpy.diag(diagonal)


@Example(domain="n >= 2, dimension 2n", types=(int,))
def heisenberg_symplectic(n):
    """mu_n(X1, X2) = X3 on R^2n, that is h3 + R^(2n-3), with the antidiagonal J.

    The form is closed only for 2n = 4; for larger n the metric is still
    minimal for the almost-Kahler Ricci projection.
    """
    n = _positive_int("n", n, 2)
    dim = 2 * n
    bracket = Bracket(dim, [(1, 2, 3, 1.0)])
    ricci = _heisenberg_invariant_ricci(dim)
    c = -1.25 if dim == 4 else -0.75
    expected = {
        "invariant_ricci": ricci,
        "c": c,
        "D": ricci - c * numpy.eye(dim),
    }
    if dim == 4:
        expected["eigenvalue_type"] = (3, 4, 6, 7)
    label = "Kodaira-Thurston" if dim == 4 else "h3 + R^{}".format(dim - 3)
    return CatalogItem(bracket, StructureTensor.symplectic(antidiagonal_J(dim)), label, expected)


@Example(domain="n >= 2, dimension 2n", types=(int,))
def heisenberg_almost_complex(n):
    """mu_n with the antidiagonal J read as an almost-complex structure."""
    item = heisenberg_symplectic(n)
    return CatalogItem(
        item.bracket, StructureTensor.complex(item.structure.J), item.label, {}
    )


def _filiform4():
    return Bracket(4, [(1, 2, 3, 1.0), (1, 3, 4, 1.0)])


@Example(domain="no parameters")
def filiform4_symplectic():
    """lambda(X1, X2) = X3, lambda(X1, X3) = X4 with the antidiagonal J."""
    expected = {
        "invariant_ricci": -0.25 * numpy.diag([3.0, 1.0, -1.0, -3.0]),
        "c": -1.25,
        "D": 0.5 * numpy.diag([1.0, 2.0, 3.0, 4.0]),
        "eigenvalue_type": (1, 2, 3, 4),
    }
    return CatalogItem(
        _filiform4(), StructureTensor.symplectic(antidiagonal_J(4)), "n4 filiform", expected
    )


@Example(domain="no parameters")
def filiform4_almost_complex():
    """lambda with the antidiagonal J as a non-integrable almost-complex structure."""
    expected = {
        "invariant_ricci": -0.25 * numpy.eye(4),
        "c": -0.25,
        "D": numpy.zeros((4, 4)),
    }
    return CatalogItem(
        _filiform4(), StructureTensor.complex(antidiagonal_J(4)), "n4 filiform", expected
    )


@Example(domain="any reals; closed iff a - b + c = 0", types=(float, float, float))
def symplectic_abc(a, b, c):
    """mu(X1, X2) = aX4, mu(X1, X3) = bX5, mu(X2, X3) = cX6 with the antidiagonal J."""
    bracket = Bracket(6, [(1, 2, 4, a), (1, 3, 5, b), (2, 3, 6, c)])
    total = a * a + b * b + c * c
    expected = {
        "invariant_ricci": -0.25 * total * numpy.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0]),
        "c": -0.75 * total,
        "D": 0.5 * total * numpy.diag([1.0, 1.0, 1.0, 2.0, 2.0, 2.0]),
        "center": [3, 4, 5],
        "center_ricci": 0.5 * numpy.diag([a * a, b * b, c * c]),
    }
    if total:
        expected["eigenvalue_type"] = (1, 1, 1, 2, 2, 2)
    label = {
        0: "abelian",
        1: "h3 + R^3",
        2: "(0,0,0,0,12,13)",
        3: "(0,0,0,12,13,23)",
    }[sum(1 for x in (a, b, c) if x)]
    return CatalogItem(bracket, StructureTensor.symplectic(antidiagonal_J(6)), label, expected)


@Example(domain="0 <= t <= 1/sqrt(3)", types=(float,))
def symplectic_abc_curve(t):
    """mu(s, s + t, t) with s^2 + st + t^2 = 1, so scal = -1."""
    _in_range("t", t, 0.0, 1.0 / math.sqrt(3.0))
    t = min(max(t, 0.0), 1.0 / math.sqrt(3.0))
    s = (-t + math.sqrt(4.0 - 3.0 * t * t)) / 2.0
    return symplectic_abc(s, s + t, t)


# Riemannian seeds

@Example(domain="dim >= 3", types=(int,))
def heisenberg(dim):
    """h3 + R^(dim-3) with no structure."""
    dim = _positive_int("dim", dim, 3)
    bracket = Bracket(dim, [(1, 2, 3, 1.0)])
    expected = {}
    if dim == 3:
        expected = {"c": -1.5, "D": numpy.diag([1.0, 1.0, 2.0]), "eigenvalue_type": (1, 1, 2)}
    return CatalogItem(bracket, StructureTensor.none(dim), "h3", expected)


@Example(domain="dim >= 3", types=(int,))
def filiform(dim):
    """The model filiform bracket mu(X1, Xi) = X(i+1), i = 2..dim-1, with no
    structure. Minimal in this basis only for dim <= 4.
    """
    dim = _positive_int("dim", dim, 3)
    bracket = Bracket(dim, [(1, i, i + 1, 1.0) for i in range(2, dim)])
    expected = {}
    if dim == 4:
        expected = {
            "c": -1.5,
            "D": 0.5 * numpy.diag([1.0, 2.0, 3.0, 4.0]),
            "eigenvalue_type": (1, 2, 3, 4),
        }
    return CatalogItem(bracket, StructureTensor.none(dim), "model filiform", expected)


# Complex examples on W = L^2(R^4)* x R^2

_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def _w_bracket(dim_z, vectors):
    """The bracket mu(X_i, X_j) = sum_k v_k Z_k for the six pairs, in order A..F."""
    terms = []
    for (i, j), values in zip(_PAIRS, vectors):
        values = tuple(float(x) for x in values)
        _require(len(values) == dim_z, "expected vectors of length {}".format(dim_z))
        terms.extend((i, j, 4 + k + 1, x) for k, x in enumerate(values) if x)
    return Bracket(4 + dim_z, terms)


def _j2(vector_):
    a1, a2 = vector_
    return (-a2, a1)


@Example(domain="pairs A..F", types=(vector,) * 6)
def complex_family(A, B, C, D, E, F):
    """A general element of W with the block J. Integrable iff E = B + J(C + D)."""
    return CatalogItem(
        _w_bracket(2, (A, B, C, D, E, F)), StructureTensor.complex(block_J(6)), "W", {}
    )


@Example(domain="pair B", types=(vector,))
def complex_biinvariant(B):
    """A = F = 0, C = D = JB, E = -B, for which J is bi-invariant."""
    B = tuple(B)
    JB = _j2(B)
    return complex_family((0.0, 0.0), B, JB, JB, (-B[0], -B[1]), (0.0, 0.0))


def _complex_curve(A, B, C, D, E, F, center_ricci, label):
    item = complex_family(A, B, C, D, E, F)
    expected = {"center": [4, 5], "center_ricci": numpy.diag(center_ricci)}
    return CatalogItem(item.bracket, item.structure, label, expected)


@Example(domain="0 <= s <= 1/sqrt(2)", types=(float,))
def complex_abelian_curve(s):
    """A = (s, t), F = (-s, t), s^2 + t^2 = 1; h3 + h3 for s > 0."""
    _in_range("s", s, 0.0, 1.0 / math.sqrt(2.0))
    t = math.sqrt(max(1.0 - s * s, 0.0))
    zero = (0.0, 0.0)
    label = "h3 + h3" if s > 0 else "h5 + R"
    return _complex_curve((s, t), zero, zero, zero, zero, (-s, t), [s * s, t * t], label)


@Example(domain="0 <= s <= 1/sqrt(2)", types=(float,))
def complex_iwasawa_curve(s):
    """A = (s, t), F = (-s, t), B = C = -D = E = (1/2, 0), s^2 + t^2 = 1/2."""
    _in_range("s", s, 0.0, 1.0 / math.sqrt(2.0))
    t = math.sqrt(max(0.5 - s * s, 0.0))
    half = (0.5, 0.0)
    return _complex_curve(
        (s, t), half, half, (-0.5, 0.0), half, (-s, t), [s * s + 0.5, t * t], "complex Heisenberg"
    )


@Example(domain="0 <= s <= 1/sqrt(2)", types=(float,))
def complex_htype_curve(s):
    """A = (s, 0) = -F, B = (0, t) = E, C = D = 0, s^2 + t^2 = 1; modified H-type."""
    _in_range("s", s, 0.0, 1.0 / math.sqrt(2.0))
    t = math.sqrt(max(1.0 - s * s, 0.0))
    zero = (0.0, 0.0)
    label = "complex Heisenberg" if s > 0 else "h5 + R"
    return _complex_curve((s, 0.0), (0.0, t), zero, zero, (0.0, t), (-s, 0.0), [s * s, t * t], label)


# Hypercomplex examples on W = L^2(R^4)* x R^4

@Example(domain="4-vectors A, B, C, T", types=(vector,) * 4)
def hypercomplex_family(A, B, C, T):
    """A, B, C free and D = -C + T, E = B + J1 T, F = -A + J2 T, so that all
    three J_i are integrable. Abelian iff T = 0.
    """
    A, B, C, T = (numpy.asarray(v, dtype=float) for v in (A, B, C, T))
    for name, v in zip("ABCT", (A, B, C, T)):
        _require(v.shape == (4,), "{} must have length 4".format(name))
    J1, J2, _ = QUATERNION_BLOCKS
    D = -C + T
    E = B + J1 @ T
    F = -A + J2 @ T
    bracket = _w_bracket(4, (A, B, C, D, E, F))
    vectors = numpy.array([A, B, C, D, E, F]).T
    expected = {"center": [4, 5, 6, 7], "center_ricci": 0.5 * vectors @ vectors.T}
    label = "abelian hypercomplex" if not T.any() else "hypercomplex"
    return CatalogItem(bracket, StructureTensor.hypercomplex(*block_quaternion(8)), label, expected)


@Example(domain="0 <= r <= s <= t, r^2 + s^2 + t^2 = 2", types=(float, float, float))
def hypercomplex_rst(r, s, t):
    """T = 0, A = (0, r, 0, 0), B = (0, 0, s, 0), C = (0, 0, 0, t), all over sqrt(2)."""
    _require(
        -NORMALIZATION_TOL <= r <= s + NORMALIZATION_TOL and s <= t + NORMALIZATION_TOL,
        "need 0 <= r <= s <= t, got {}".format((r, s, t)),
    )
    _require(_near(r * r + s * s + t * t, 2.0), "need r^2 + s^2 + t^2 = 2")
    root = math.sqrt(2.0)
    item = hypercomplex_family(
        (0.0, r / root, 0.0, 0.0), (0.0, 0.0, s / root, 0.0), (0.0, 0.0, 0.0, t / root), (0.0,) * 4
    )
    if r > 0:
        label = "g3"
    elif s > 0:
        label = "g2"
    else:
        label = "g1"
    expected = dict(item.expected, center_ricci=0.5 * numpy.diag([0.0, r * r, s * s, t * t]))
    return CatalogItem(item.bracket, item.structure, label, expected)


@Example(domain="||v3||^2 + ||v4||^2 = 1/4, ||v3|| > ||v4||", types=(float,) * 6)
def hypercomplex_5g3(a3, b3, c3, a4, b4, c4):
    """T = 0 with v1 = (1/sqrt2, 0, 0, 0, 0, -1/sqrt2), v2 = (0, b, 0, 0, b, 0),
    b = sqrt(3/8), and v_i = (a_i, b_i, c_i, -c_i, b_i, -a_i) for i = 3, 4.
    """
    v3 = 2.0 * (a3 * a3 + b3 * b3 + c3 * c3)
    v4 = 2.0 * (a4 * a4 + b4 * b4 + c4 * c4)
    _require(_near(v3 + v4, 0.25), "need ||v3||^2 + ||v4||^2 = 1/4, got {}".format(v3 + v4))
    _require(v3 > v4, "need ||v3|| > ||v4||")
    b = math.sqrt(3.0 / 8.0)
    item = hypercomplex_family(
        (1.0 / math.sqrt(2.0), 0.0, a3, a4), (0.0, b, b3, b4), (0.0, 0.0, c3, c4), (0.0,) * 4
    )
    return CatalogItem(item.bracket, item.structure, "g3", item.expected)


@Example(domain="0 <= t <= 1/sqrt(3)", types=(float,))
def hypercomplex_curve(t):
    """Non-abelian curve with T = (0, 0, 0, 2t); u(2) + C^2 inside the interval."""
    _in_range("t", t, 0.0, 1.0 / math.sqrt(3.0))
    t = min(max(t, 0.0), 1.0 / math.sqrt(3.0))
    root = math.sqrt(max(1.0 - 3.0 * t * t, 0.0))
    item = hypercomplex_family(
        (root, t, 0.0, 0.0), (0.0, 0.0, t, 0.0), (0.0, 0.0, 0.0, t), (0.0, 0.0, 0.0, 2.0 * t)
    )
    if t == 0:
        label = "g1"
    elif _near(t, 1.0 / math.sqrt(3.0)):
        label = "g3"
    else:
        label = "u(2) + C^2"
    return CatalogItem(item.bracket, item.structure, label, item.expected)
