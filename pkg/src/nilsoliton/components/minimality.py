"""Minimality certificates

A compatible metric is minimal exactly when Ric^gamma = cI + D for some real
c and some derivation D of mu. `certify` finds the best (c, D) by least squares
over span(I) + Der(mu) and reports how far Ric^gamma is from that space.
"""
import logging
import math
from collections import namedtuple
from functools import reduce

import numpy

from nilsoliton.components.algebra import derivation_space, scalar_curvature, validate
from nilsoliton.components.curvature import ricci_nilpotent
from nilsoliton.components.exceptions import ZeroBracket
from nilsoliton.components.structures import (
    StructureTensor,
    integrability_condition_residual,
    invariant_ricci,
)
from nilsoliton.utils.conf import get_config, tolerance
from nilsoliton.utils.structs import SpectrumList


class MinimalityCertificate(
    namedtuple(
        "MinimalityCertificate",
        ["c", "D", "residual", "eigenvalue_type", "structure_kind", "scal", "invariant_ricci"],
    )
):
    __slots__ = ()

    @property
    def normalized_residual(self):
        """residual / |scal|, unchanged when mu is rescaled."""
        if self.scal == 0.0:
            return self.residual
        return self.residual / abs(self.scal)

    def is_minimal(self, tol=None):
        tol = tolerance("minimality") if tol is None else tol
        return self.normalized_residual < tol


Comparison = namedtuple("Comparison", ["verdict", "distance", "spectra"])


def _solve_soliton(ric, basis):
    n = len(ric)
    columns = [numpy.eye(n).ravel()] + [E.ravel() for E in basis]
    system = numpy.stack(columns, axis=1)
    coefficients, _, _, _ = numpy.linalg.lstsq(system, ric.ravel(), rcond=None)
    c = float(coefficients[0])
    D = sum(
        (x * E for x, E in zip(coefficients[1:], basis)), numpy.zeros((n, n))
    )
    residual = float(numpy.linalg.norm(ric - c * numpy.eye(n) - D))
    return c, D, residual


def soliton_residual(B, gamma):
    """Just the residual of `certify`, without checks or logging."""
    ric = invariant_ricci(ricci_nilpotent(B), gamma)
    return _solve_soliton(ric, derivation_space(B))[2]


def certify(B, gamma=None):
    """Best approximation of Ric^gamma by cI + D with D in Der(mu).

    Integrability of gamma is not required; a warning is logged when it fails.

    Returns: (MinimalityCertificate)
    """
    gamma = StructureTensor.none(B.dim) if gamma is None else gamma
    report = validate(B)
    if report.jacobi_residual > tolerance("jacobi"):
        logging.warning("%s fails the Jacobi identity by %s", B, report.jacobi_residual)
    if gamma.kind != "none":
        ic = integrability_condition_residual(gamma, B)
        if ic > tolerance("structure"):
            logging.warning(
                "%s structure is not integrable for %s (residual %s)", gamma.kind, B, ic
            )
    ric = invariant_ricci(ricci_nilpotent(B), gamma)
    c, D, residual = _solve_soliton(ric, derivation_space(B))
    certificate = MinimalityCertificate(
        c=c,
        D=D,
        residual=residual,
        eigenvalue_type=eigenvalue_type(D),
        structure_kind=gamma.kind,
        scal=scalar_curvature(B),
        invariant_ricci=ric,
    )
    logging.info(
        "Certified %s (%s): c=%s residual=%s type=%s",
        B,
        gamma.kind,
        c,
        residual,
        certificate.eigenvalue_type,
    )
    return certificate


def eigenvalue_type(D, tol=None, max_multiplier=None):
    """Coprime positive integers proportional to the eigenvalues of D.

    Scalings m / lambda_min for m = 1..max_multiplier are tried in turn.

    Returns: (tuple of int) sorted, with multiplicities, or None when D has a
        non-positive eigenvalue or no scaling in range makes all of them
        integers
    """
    settings = get_config()["eigenvalue_type"]
    tol = float(settings["tol"]) if tol is None else tol
    max_multiplier = int(settings["max_multiplier"]) if max_multiplier is None else max_multiplier
    D = numpy.asarray(D, dtype=float)
    eigenvalues = numpy.linalg.eigvalsh(0.5 * (D + D.T))
    top = numpy.abs(eigenvalues).max() if eigenvalues.size else 0.0
    if top == 0.0 or eigenvalues.min() <= tol * top:
        return None
    smallest = eigenvalues.min()
    for m in range(1, max_multiplier + 1):
        scaled = eigenvalues * (m / smallest)
        rounded = numpy.rint(scaled)
        if numpy.all(numpy.abs(scaled - rounded) <= tol * scaled):
            integers = [int(k) for k in rounded]
            divisor = reduce(math.gcd, integers)
            return tuple(sorted(k // divisor for k in integers))
    logging.debug("No eigenvalue type within multiplier %s for %s", max_multiplier, SpectrumList(eigenvalues))
    return None


def normalize_scal(B):
    """The multiple of mu with scal = -1.

    Raises: ZeroBracket
    """
    scal = scalar_curvature(B)
    if scal == 0.0:
        raise ZeroBracket("the zero bracket cannot be normalized")
    return B.scaled(1.0 / math.sqrt(-scal))


def compare(first, second, tol=None):
    """Try to tell two structures apart by the spectra of their minimal metrics.

    Args:
        first, second (tuple of (Bracket, StructureTensor)) the two structures
        tol (float) spectral tolerance, tolerances.spectrum by default

    Returns: (Comparison) verdict "distinct" when both metrics are minimal and
        their sorted Ricci spectra differ, "inconclusive" otherwise. A
        "distinct" verdict certifies non-isomorphism; equality of spectra
        never certifies isomorphism.
    """
    tol = tolerance("spectrum") if tol is None else tol
    spectra = []
    minimal = True
    for B, gamma in (first, second):
        B = normalize_scal(B)
        minimal = minimal and certify(B, gamma).is_minimal()
        spectra.append(SpectrumList(numpy.linalg.eigvalsh(ricci_nilpotent(B))))
    if not minimal:
        logging.info("At least one metric is not minimal, comparison is inconclusive")
        return Comparison("inconclusive", None, spectra)
    if len(spectra[0]) != len(spectra[1]):
        return Comparison("distinct", None, spectra)
    distance = float(numpy.abs(numpy.asarray(spectra[0]) - numpy.asarray(spectra[1])).max())
    verdict = "distinct" if distance > tol else "inconclusive"
    logging.info("Ricci spectra differ by %s: %s", distance, verdict)
    return Comparison(verdict, distance, spectra)
