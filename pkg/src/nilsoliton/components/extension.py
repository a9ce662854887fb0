"""Rank-one metric solvable extensions s = RH + n and their Einstein test"""
import logging
import math
from collections import namedtuple

import numpy
import scipy.linalg

from nilsoliton.components.algebra import rank_threshold, span_basis
from nilsoliton.components.curvature import MetricSolvableAlgebra, ricci_general
from nilsoliton.components.exceptions import AbelianDerivation, NonPositiveTrace, NotMinimal
from nilsoliton.utils.conf import tolerance


EinsteinVerdict = namedtuple("EinsteinVerdict", ["einstein", "constant", "deviation"])


def extend_by_derivation(B, D):
    """RH + n with H orthonormal to n, [H, X] = DX and mu on n.

    H becomes basis vector dim + 1. D is not checked to be a derivation.
    """
    D = numpy.asarray(D, dtype=float)
    n = B.dim
    if D.shape != (n, n):
        raise ValueError("derivation shape {} does not match dim {}".format(D.shape, n))
    C = numpy.zeros((n + 1, n + 1, n + 1))
    C[:n, :n, :n] = B.tensor
    C[n, :n, :n] = D.T
    C[:n, n, :n] = -D.T
    return MetricSolvableAlgebra.from_tensor(C)


def rank_one_extension(B, certificate, tol=None):
    """The extension by D' = D / sqrt(tr D) of a certified nilsoliton.

    Args:
        B (Bracket) the nilpotent bracket that was certified
        certificate (MinimalityCertificate) from `certify(B)` with no structure

    Returns: (MetricSolvableAlgebra) of dimension B.dim + 1

    Raises: NotMinimal, AbelianDerivation, NonPositiveTrace
    """
    tol = tolerance("minimality") if tol is None else tol
    if certificate.structure_kind != "none":
        raise NotMinimal(
            "extensions need a certificate without structure, got {!r}".format(
                certificate.structure_kind
            )
        )
    if not certificate.is_minimal(tol):
        raise NotMinimal(
            "certificate residual {} is above tolerance".format(certificate.normalized_residual)
        )
    D = numpy.asarray(certificate.D)
    if numpy.abs(D).max() <= tolerance("rank") * max(abs(certificate.c), 1.0):
        raise AbelianDerivation("derivation part vanishes, the extension is flat")
    trace = float(numpy.trace(D))
    if trace <= 0.0:
        raise NonPositiveTrace("tr(D) = {}".format(trace))
    extension = extend_by_derivation(B, D / math.sqrt(trace))
    logging.info("Built rank-one extension %s of %s", extension, B)
    return extension


def einstein_check(S, tol=None):
    """Einstein iff the Ricci operator is scal/dim times the identity.

    Returns: (EinsteinVerdict)
    """
    tol = tolerance("einstein") if tol is None else tol
    ric = ricci_general(S)
    constant = float(numpy.trace(ric)) / S.dim
    deviation = float(numpy.abs(ric - constant * numpy.eye(S.dim)).max())
    verdict = EinsteinVerdict(deviation < tol, constant, deviation)
    logging.info("Einstein check of %s: %s", S, verdict)
    return verdict


def is_standard(S, tol=None):
    """True when [s, s] is spanned by the first dim - 1 basis vectors and its
    orthogonal complement, the last basis vector, is abelian.
    """
    tol = tolerance("rank") if tol is None else tol
    C = S.tensor
    derived = span_basis(C.reshape(-1, S.dim), rank_threshold(S, tol))
    if derived.shape[1] != S.dim - 1:
        return False
    if numpy.abs(derived[-1]).max() > tol:
        return False
    complement = scipy.linalg.null_space(derived.T, rcond=tol)
    brackets = numpy.einsum("ijk,ia,jb->abk", C, complement, complement)
    return bool(numpy.abs(brackets).max() <= tol) if brackets.size else True
