"""Descent of F(mu) = tr(Ric^gamma)^2 / ||mu||^4 along the G_gamma orbit

Each step multiplies the accumulated group element g by exp(-h Ric0), where
Ric0 is the traceless part of Ric^gamma, and the iterate is g.mu0 renormalized
to scal = -1. Since Ric^gamma always lies in the Lie algebra of G_gamma, g
stays in G_gamma. Iterates are always rebuilt from the starting bracket mu0,
so rounding does not feed back into the dynamics and they keep satisfying
Jacobi and the integrability condition.
"""
import itertools
import logging
import warnings
from collections import namedtuple

import numpy
import pandas as pd
import scipy.linalg

from nilsoliton.components.algebra import (
    act,
    infinitesimal_act,
    jacobi_residual,
    scalar_curvature,
    validate,
)
from nilsoliton.components.curvature import ricci_nilpotent
from nilsoliton.components.exceptions import (
    InvalidBracket,
    MaxIterExceeded,
    NotIntegrable,
    SingularOperator,
    ZeroBracket,
)
from nilsoliton.components.minimality import certify, normalize_scal, soliton_residual
from nilsoliton.components.structures import (
    StructureTensor,
    integrability_condition_residual,
    invariant_ricci,
    random_group_element,
)
from nilsoliton.utils.conf import get_config, tolerance
from nilsoliton.utils.random import generate_python_random_seed
from nilsoliton.utils.structs import FunctionalValueList


FlowTrace = namedtuple(
    "FlowTrace", ["iterates", "final_bracket", "converged", "final_certificate"]
)

TRACE_COLUMNS = ["step", "F", "gradnorm", "scal", "residual"]


def functional_F(B, gamma):
    """tr(Ric^gamma)^2 / ||mu||^4, invariant under scaling of mu."""
    norm_squared = B.norm_squared()
    if norm_squared == 0.0:
        raise ZeroBracket("F is undefined at the zero bracket")
    ric = invariant_ricci(ricci_nilpotent(B), gamma)
    return float(numpy.sum(ric * ric)) / norm_squared ** 2


def gradient_norm(B, A):
    """Norm of the part of pi(A)mu tangent to the sphere through mu, over ||mu||^2."""
    mu = B.tensor
    velocity = infinitesimal_act(A, B).tensor
    norm_squared = float(numpy.sum(mu * mu))
    tangent = velocity - (numpy.sum(velocity * mu) / norm_squared) * mu
    return float(numpy.sqrt(numpy.sum(tangent * tangent))) / norm_squared


def _check_start(B, gamma):
    report = validate(B)
    if report.jacobi_residual > tolerance("jacobi"):
        raise InvalidBracket("Jacobi residual {} exceeds tolerance".format(report.jacobi_residual))
    if report.nilpotency_step is None:
        raise InvalidBracket("{} is not nilpotent".format(B))
    if gamma.dim != B.dim:
        raise ValueError("structure has dim {}, bracket has dim {}".format(gamma.dim, B.dim))
    ic = integrability_condition_residual(gamma, B)
    if ic > tolerance("structure"):
        raise NotIntegrable(
            "{} structure is not integrable for {} (residual {})".format(gamma.kind, B, ic)
        )


def _on_variety(B, gamma):
    jacobi = jacobi_residual(B)
    ic = integrability_condition_residual(gamma, B)
    if jacobi > tolerance("jacobi") or ic > tolerance("structure"):
        logging.warning(
            "Flow limit left the variety: jacobi residual %s, integrability residual %s",
            jacobi,
            ic,
        )
        return False
    return True


def flow_minimize(
    B0,
    gamma=None,
    step=None,
    tol=None,
    max_iter=None,
    seed=None,
    perturb=0.0,
):
    """Run the normalized bracket flow from B0 until Ric^gamma = cI + D.

    Args:
        B0 (Bracket) starting point, nilpotent, with gamma integrable for it
        gamma (StructureTensor) defaults to no structure
        step (float) initial and largest step size, flow.step by default
        tol (float) certificate residual at which to stop, flow.tol by default
        max_iter (int) iteration budget, flow.max_iter by default
        seed (int) seed for the perturbation, drawn at random and logged when
            not given
        perturb (float) when positive, start from g.B0 for a random g in
            G_gamma at distance about `perturb` from the identity

    Returns: (FlowTrace) iterates as a pandas DataFrame with columns
        step, F, gradnorm, scal, residual

    Raises: NotIntegrable, InvalidBracket, ZeroBracket; warns MaxIterExceeded
    """
    gamma = StructureTensor.none(B0.dim) if gamma is None else gamma
    settings = get_config()["flow"]
    step = float(settings["step"]) if step is None else step
    tol = float(settings["tol"]) if tol is None else tol
    max_iter = int(settings["max_iter"]) if max_iter is None else max_iter
    shrink = float(settings["shrink"])
    slope = float(settings["slope"])
    min_step = float(settings["min_step"])
    stall = float(settings["stall"])

    _check_start(B0, gamma)
    mu0 = B0
    if perturb:
        if seed is None:
            seed = generate_python_random_seed()
        rng = numpy.random.default_rng(seed)
        mu0 = act(random_group_element(gamma, perturb, rng), mu0)
        logging.info("Perturbed starting point by %s with seed %s", perturb, seed)
    mu0 = normalize_scal(mu0)
    mu = mu0

    eye = numpy.eye(mu.dim)
    g = eye
    F = functional_F(mu, gamma)
    h = step
    converged = False
    rows = []
    for iteration in itertools.count():
        ric = invariant_ricci(ricci_nilpotent(mu), gamma)
        ric0 = ric - (numpy.trace(ric) / mu.dim) * eye
        gradnorm = gradient_norm(mu, ric0)
        residual = soliton_residual(mu, gamma)
        rows.append((iteration, F, gradnorm, scalar_curvature(mu), residual))
        logging.debug(
            "Flow step %s: F=%s gradnorm=%s residual=%s h=%s", iteration, F, gradnorm, residual, h
        )
        if residual < tol:
            converged = True
            break
        if iteration >= max_iter:
            logging.warning("Flow used all %s iterations, residual %s", max_iter, residual)
            warnings.warn(
                "flow did not converge in {} iterations".format(max_iter), MaxIterExceeded
            )
            break

        h = min(h / shrink, step)
        candidate = None
        while h >= min_step:
            g_trial = scipy.linalg.expm(-h * ric0) @ g
            try:
                trial = normalize_scal(act(g_trial, mu0))
            except SingularOperator:
                logging.warning("Group element degenerated at iteration %s", iteration)
                break
            F_trial = functional_F(trial, gamma)
            # below the rounding floor F can't tell steps apart
            if F_trial <= F - slope * h * gradnorm ** 2 or F_trial - F <= stall * F:
                candidate = trial
                break
            logging.debug("Backtracking: F=%s at h=%s", F_trial, h)
            h *= shrink
        if candidate is None:
            logging.info("Line search stalled at iteration %s, residual %s", iteration, residual)
            converged = residual < 100 * tol
            break
        mu, F, g = candidate, F_trial, g_trial

    if converged:
        converged = _on_variety(mu, gamma)
    iterates = pd.DataFrame.from_records(rows, columns=TRACE_COLUMNS)
    certificate = certify(mu, gamma)
    logging.info(
        "Flow %s after %s iterations, F=%s",
        "converged" if converged else "stopped",
        len(iterates) - 1,
        FunctionalValueList(iterates["F"]),
    )
    return FlowTrace(iterates, mu, converged, certificate)
