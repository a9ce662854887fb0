"""Ricci curvature of left-invariant metrics

Two independent routes:
    ricci_nilpotent   closed form valid for nilpotent brackets
    ricci_general     Koszul connection and full curvature tensor, valid for
                      any metric Lie algebra (used for solvable extensions)
They share no intermediate code so that each checks the other.
"""
import logging
from collections import namedtuple

import numpy

from nilsoliton.components.algebra import Bracket, is_solvable, jacobi_residual, scalar_curvature
from nilsoliton.components.exceptions import InvalidBracket
from nilsoliton.components.structures import StructureTensor, invariant_ricci
from nilsoliton.utils.conf import tolerance


CurvatureReport = namedtuple(
    "CurvatureReport", ["ricci", "invariant_ricci", "scal", "structure_kind"]
)


class MetricSolvableAlgebra(Bracket):
    """A (not necessarily nilpotent) Lie bracket on an orthonormal basis.

    Rank-one extensions put the extra vector H last, as basis vector dim.
    """

    @property
    def is_solvable(self):
        return is_solvable(self)


def ricci_nilpotent(B):
    """<Ric X, Y> = -1/2 sum <mu(X,e_i),e_j><mu(Y,e_i),e_j>
                   + 1/4 sum <mu(e_i,e_j),X><mu(e_i,e_j),Y>
    """
    C = B.tensor
    ric = -0.5 * numpy.einsum("aij,bij->ab", C, C) + 0.25 * numpy.einsum(
        "ija,ijb->ab", C, C
    )
    return ric


def _require_lie(S):
    residual = jacobi_residual(S)
    if residual > tolerance("jacobi"):
        raise InvalidBracket("Jacobi residual {} exceeds tolerance".format(residual))


def levi_civita(S):
    """Connection coefficients G[i, j, k] = <nabla_{e_i} e_j, e_k> from the
    Koszul formula; G is skew in (j, k).
    """
    _require_lie(S)
    C = S.tensor
    return 0.5 * (
        C - numpy.einsum("jki->ijk", C) + numpy.einsum("kij->ijk", C)
    )


def riemann(S):
    """R[i, j] = R(e_i, e_j) as n x n matrices acting on coordinate vectors,
    with R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
    """
    gamma = levi_civita(S)
    # L[i] is the matrix of nabla_{e_i}: L[i][k, j] = G[i, j, k]
    L = gamma.transpose(0, 2, 1)
    LL = numpy.einsum("iab,jbc->ijac", L, L)
    return LL - LL.transpose(1, 0, 2, 3) - numpy.einsum("ijk,kab->ijab", S.tensor, L)


def ricci_general(S):
    """Ric(Y, Z) = sum_i <R(e_i, Y) Z, e_i>, symmetrized."""
    R = riemann(S)
    ric = numpy.einsum("iyiz->yz", R)
    return 0.5 * (ric + ric.T)


def curvature_report(B, gamma=None):
    gamma = StructureTensor.none(B.dim) if gamma is None else gamma
    ric = ricci_nilpotent(B)
    report = CurvatureReport(
        ricci=ric,
        invariant_ricci=invariant_ricci(ric, gamma),
        scal=scalar_curvature(B),
        structure_kind=gamma.kind,
    )
    logging.debug("Curvature of %s: scal=%s", B, report.scal)
    return report
