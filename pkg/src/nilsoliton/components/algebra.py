"""Lie brackets on a fixed basis e_1..e_n

A bracket mu is stored sparsely as structure constants (i, j, k, c) with
i < j, meaning mu(e_i, e_j) = sum_k c e_k. Indices in `terms` are 1-based to
match the X_1, ..., X_n notation used in every bracket file; the dense tensor
C[i, j, k] = <mu(e_i, e_j), e_k> is 0-based and skew in (i, j).

Everything in this module is a pure function of immutable values.
"""
import logging
from collections import namedtuple

import numpy
import scipy.linalg
from cached_property import cached_property

from nilsoliton.components.exceptions import (
    BracketFormatError,
    NotTwoStepSplit,
    SingularOperator,
)
from nilsoliton.utils.conf import tolerance


ValidationReport = namedtuple(
    "ValidationReport", ["jacobi_residual", "nilpotency_step", "lcs_dims"]
)


class Bracket(object):
    """Structure constants of a skew-symmetric bilinear map on R^n.

    Brackets double as elements of the ambient space V of all skew maps, so
    the Jacobi identity is not enforced here; see `validate`.

    Args:
        dim (int) the dimension n
        terms (iterable of (i, j, k, c)) 1-based indices with i < j
    """

    def __init__(self, dim, terms=()):
        if int(dim) != dim or dim < 1:
            raise BracketFormatError("dim must be a positive integer, got {!r}".format(dim))
        self.dim = int(dim)
        seen = {}
        for term in terms:
            try:
                i, j, k, c = term
            except (TypeError, ValueError):
                raise BracketFormatError("term {!r} is not an (i, j, k, c) tuple".format(term))
            i, j, k = int(i), int(j), int(k)
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise BracketFormatError(
                    "term {!r} needs 1 <= i < j <= {} and 1 <= k <= {}".format(
                        term, self.dim, self.dim
                    )
                )
            if (i, j, k) in seen:
                raise BracketFormatError("duplicate term ({}, {}, {})".format(i, j, k))
            seen[(i, j, k)] = float(c)
        self.terms = tuple(
            (i, j, k, c) for (i, j, k), c in sorted(seen.items()) if c != 0.0
        )

    @classmethod
    def from_tensor(cls, tensor):
        """Build a bracket from a dense n x n x n array, skew-averaging first."""
        tensor = numpy.asarray(tensor, dtype=float)
        n = tensor.shape[0]
        if tensor.shape != (n, n, n):
            raise BracketFormatError("expected an n x n x n array, got {}".format(tensor.shape))
        skew = 0.5 * (tensor - tensor.transpose(1, 0, 2))
        i_idx, j_idx, k_idx = numpy.nonzero(skew)
        terms = [
            (i + 1, j + 1, k + 1, skew[i, j, k])
            for i, j, k in zip(i_idx, j_idx, k_idx)
            if i < j
        ]
        return cls(n, terms)

    @cached_property
    def tensor(self):
        dense = numpy.zeros((self.dim, self.dim, self.dim))
        for i, j, k, c in self.terms:
            dense[i - 1, j - 1, k - 1] = c
            dense[j - 1, i - 1, k - 1] = -c
        dense.setflags(write=False)
        return dense

    @property
    def is_zero(self):
        return not self.terms

    def norm_squared(self):
        """||mu||^2 summed over ordered pairs, twice the i < j sum."""
        return 2.0 * sum(c * c for _, _, _, c in self.terms)

    def scaled(self, s):
        return self.__class__(self.dim, [(i, j, k, s * c) for i, j, k, c in self.terms])

    def allclose(self, other, atol=1e-12):
        return self.dim == other.dim and numpy.allclose(
            self.tensor, other.tensor, rtol=0.0, atol=atol
        )

    def __eq__(self, other):
        return (
            isinstance(other, Bracket)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dim, self.terms))

    def __repr__(self):
        return "{}(dim={}, terms={})".format(
            self.__class__.__name__, self.dim, len(self.terms)
        )


def bracket_of(B, X, Y):
    """Evaluate mu(X, Y) for arbitrary coordinate vectors."""
    return numpy.einsum("i,j,ijk->k", X, Y, B.tensor)


def jacobi_residual(B):
    C = B.tensor
    # T[i, j, k] = mu(mu(e_i, e_j), e_k)
    T = numpy.einsum("ijl,lkm->ijkm", C, C)
    cyclic = T + numpy.einsum("jkim->ijkm", T) + numpy.einsum("kijm->ijkm", T)
    return float(numpy.abs(cyclic).max()) if cyclic.size else 0.0


def span_basis(vectors, threshold):
    """Orthonormal basis (as columns) of the span of the given rows.

    Directions with singular value at most `threshold` are dropped; the
    threshold is absolute, so a span of pure rounding noise has rank 0.
    """
    if vectors.size == 0:
        return numpy.zeros((vectors.shape[-1], 0))
    u, s, _ = scipy.linalg.svd(vectors.T, full_matrices=False)
    return u[:, s > threshold]


def rank_threshold(B, tol):
    """Absolute singular value cutoff: tol times the largest structure constant."""
    return tol * float(numpy.abs(B.tensor).max())


def lower_central_series(B, tol=None):
    """Dimensions of n^1 = mu(n, n), n^2 = mu(n, n^1), ...

    Ranks are taken with singular values above tol times the largest
    structure constant.

    :return: (dims, terminated) where dims runs up to and including the first
             zero term when the series terminates, or up to the first
             non-decreasing dimension when it stalls (not nilpotent)
    :rtype: tuple
    """
    tol = tolerance("rank") if tol is None else tol
    if B.is_zero:
        return [], True
    C = B.tensor
    n = B.dim
    threshold = rank_threshold(B, tol)
    current = numpy.eye(n)
    dims = []
    for _ in range(n):
        images = numpy.einsum("ijk,jb->ibk", C, current).reshape(-1, n)
        current = span_basis(images, threshold)
        dim = current.shape[1]
        if dims and dim >= dims[-1]:
            return dims, False
        dims.append(dim)
        if dim == 0:
            return dims, True
    return dims, False


def derived_series(B, tol=None):
    """Dimensions of s, [s, s], [[s, s], [s, s]], ... until zero or stable."""
    tol = tolerance("rank") if tol is None else tol
    C = B.tensor
    n = B.dim
    threshold = rank_threshold(B, tol)
    current = numpy.eye(n)
    dims = [n]
    for _ in range(n):
        if dims[-1] == 0:
            break
        images = numpy.einsum("ijk,ia,jb->abk", C, current, current).reshape(-1, n)
        current = span_basis(images, threshold)
        if current.shape[1] >= dims[-1]:
            break
        dims.append(current.shape[1])
    return dims


def is_solvable(B, tol=None):
    return derived_series(B, tol)[-1] == 0


def validate(B, tol=None):
    """Check the Jacobi identity and nilpotency of a bracket.

    The lower central series is computed by rank-revealing elimination; the
    zero bracket is reported with step 0 and an empty series.

    Returns: (ValidationReport)
    """
    dims, terminated = lower_central_series(B, tol)
    report = ValidationReport(
        jacobi_residual=jacobi_residual(B),
        nilpotency_step=len(dims) if terminated else None,
        lcs_dims=dims,
    )
    logging.debug("Validated %s: %s", B, report)
    return report


def scalar_curvature(B):
    """scal(mu) = -1/4 ||mu||^2 for the fixed orthonormal basis."""
    return -0.25 * B.norm_squared()


def act(g, B, tol=None):
    """The natural GL(n) action g.mu(X, Y) = g mu(g^-1 X, g^-1 Y).

    Raises: SingularOperator if cond(g) is at least 1/tol
    """
    tol = tolerance("rank") if tol is None else tol
    g = numpy.asarray(g, dtype=float)
    if g.shape != (B.dim, B.dim):
        raise ValueError("operator shape {} does not match dim {}".format(g.shape, B.dim))
    cond = numpy.linalg.cond(g)
    if not numpy.isfinite(cond) or cond * tol >= 1.0:
        raise SingularOperator("operator has condition number {}".format(cond))
    g_inv = numpy.linalg.inv(g)
    acted = numpy.einsum("abc,ai,bj,kc->ijk", B.tensor, g_inv, g_inv, g)
    return Bracket.from_tensor(acted)


def _infinitesimal_tensor(A, C):
    return (
        numpy.einsum("kl,ijl->ijk", A, C)
        - numpy.einsum("li,ljk->ijk", A, C)
        - numpy.einsum("lj,ilk->ijk", A, C)
    )


def infinitesimal_act(A, B):
    """pi(A)mu(X, Y) = A mu(X, Y) - mu(AX, Y) - mu(X, AY), an element of V."""
    A = numpy.asarray(A, dtype=float)
    return Bracket.from_tensor(_infinitesimal_tensor(A, B.tensor))


def derivation_operator(B):
    """The n^3 x n^2 matrix of the linear map A -> pi(A)mu, with A flattened
    row-major.
    """
    C = B.tensor
    eye = numpy.eye(B.dim)
    blocks = (
        numpy.einsum("ka,ijb->ijkab", eye, C)
        - numpy.einsum("bi,ajk->ijkab", eye, C)
        - numpy.einsum("bj,iak->ijkab", eye, C)
    )
    return blocks.reshape(B.dim ** 3, B.dim ** 2)


def derivation_space(B, tol=None):
    """Orthonormal basis (trace inner product) of Der(mu).

    Computed as the kernel of `derivation_operator`, thresholding singular
    values at tol relative to the largest one.

    Returns: (list of numpy.ndarray) n x n operators
    """
    tol = tolerance("rank") if tol is None else tol
    kernel = scipy.linalg.null_space(derivation_operator(B), rcond=tol)
    logging.debug("Der(%s) has dimension %s", B, kernel.shape[1])
    return [column.reshape(B.dim, B.dim) for column in kernel.T]


def is_derivation(A, B, tol=None):
    tol = tolerance("rank") if tol is None else tol
    A = numpy.asarray(A, dtype=float)
    defect = numpy.abs(_infinitesimal_tensor(A, B.tensor)).max() if B.dim else 0.0
    scale = max(numpy.abs(A).max(), 1.0) * max(numpy.abs(B.tensor).max(), 1.0)
    return defect <= tol * scale


def center(B, tol=None):
    """Orthonormal basis (columns) of {X : mu(X, .) = 0}."""
    tol = tolerance("rank") if tol is None else tol
    return scipy.linalg.null_space(B.tensor.reshape(B.dim, -1).T, rcond=tol)


def j_map(B, Z, center_indices=None):
    """The j-map of a 2-step bracket, <j(Z)X, Y> = <mu(X, Y), Z> on v.

    Args:
        B (Bracket) 2-step bracket
        Z (array-like) vector of R^n lying in z
        center_indices (list of int) 0-based basis indices spanning z; by
            default every basis vector that is central

    Returns: (numpy.ndarray) skew-symmetric operator on v = z-complement

    Raises: NotTwoStepSplit if mu(n, n) is not inside z, z is not central
        or Z has components outside z
    """
    C = B.tensor
    n = B.dim
    if center_indices is None:
        # basis vectors lying in the center
        Zc = center(B)
        center_indices = [
            k for k in range(n) if numpy.linalg.norm(Zc[k]) > 1.0 - tolerance("rank")
        ]
    z = sorted(set(int(k) for k in center_indices))
    v = [k for k in range(n) if k not in z]
    Z = numpy.asarray(Z, dtype=float)
    if Z.shape != (n,):
        raise ValueError("Z must have length {}".format(n))
    if z and C[z].any():
        raise NotTwoStepSplit("z = {} is not central".format([k + 1 for k in z]))
    if v and C[:, :, v].any():
        raise NotTwoStepSplit("mu(n, n) is not contained in z = {}".format([k + 1 for k in z]))
    if v and Z[v].any():
        raise NotTwoStepSplit("Z has components outside z")
    C_v = C[numpy.ix_(v, v, range(n))]
    return numpy.einsum("abk,k->ba", C_v, Z)
