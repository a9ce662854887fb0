"""Geometric structures compatible with the fixed inner product

A structure gamma is one of
    none          no structure, G_gamma = GL(n)
    symplectic    omega = <., J .> with J^2 = -I, G_gamma = Sp(n, R)
    complex       J with J^2 = -I, G_gamma = GL(n, C)
    hypercomplex  J1, J2, J3 with the quaternion identities, G_gamma = GL(n, H)
and is always stored through its orthogonal matrices.
"""
import logging
from collections import namedtuple

import numpy
import scipy.linalg

from nilsoliton.components.exceptions import BadAlmostComplex, WrongKind
from nilsoliton.utils.conf import tolerance


KINDS = ("none", "symplectic", "complex", "hypercomplex")


def antidiagonal_J(dim):
    """J with omega = a_1 ^ a_2n + ... + a_n ^ a_n+1 for the orthonormal basis."""
    if dim % 2:
        raise ValueError("symplectic structures need an even dimension, got {}".format(dim))
    J = numpy.zeros((dim, dim))
    for i in range(dim):
        J[i, dim - 1 - i] = 1.0 if i < dim // 2 else -1.0
    return J


def block_J(dim):
    """J e_2k-1 = e_2k on consecutive basis pairs."""
    if dim % 2:
        raise ValueError("complex structures need an even dimension, got {}".format(dim))
    return numpy.kron(numpy.eye(dim // 2), numpy.array([[0.0, -1.0], [1.0, 0.0]]))


QUATERNION_BLOCKS = (
    numpy.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float),
    numpy.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=float),
    numpy.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float),
)


def block_quaternion(dim):
    """(J1, J2, J3) acting on each consecutive block of four basis vectors."""
    if dim % 4:
        raise ValueError("hypercomplex structures need dim divisible by 4, got {}".format(dim))
    return tuple(numpy.kron(numpy.eye(dim // 4), block) for block in QUATERNION_BLOCKS)


class StructureResiduals(
    namedtuple("StructureResiduals", ["square", "orthogonality", "quaternion"])
):
    """Residuals of J^2 + I, J^T J - I and the quaternion identities."""

    __slots__ = ()

    def ok(self, tol=None):
        tol = tolerance("structure") if tol is None else tol
        return max(self) < tol


StructureClassification = namedtuple(
    "StructureClassification",
    ["integrable", "abelian", "bi_invariant", "closed", "residuals"],
)


class StructureTensor(object):
    """A geometric structure on R^n given by its matrices.

    Use the `none`, `symplectic`, `complex` and `hypercomplex` constructors
    rather than calling this directly.
    """

    def __init__(self, kind, dim, matrices=()):
        if kind not in KINDS:
            raise ValueError("kind must be one of {}, got {!r}".format(KINDS, kind))
        expected = {"none": 0, "symplectic": 1, "complex": 1, "hypercomplex": 3}[kind]
        if len(matrices) != expected:
            raise ValueError(
                "{} structure needs {} matrices, got {}".format(kind, expected, len(matrices))
            )
        frozen = []
        for matrix in matrices:
            matrix = numpy.array(matrix, dtype=float)
            if matrix.shape != (dim, dim):
                raise ValueError(
                    "structure matrix has shape {}, expected {}".format(matrix.shape, (dim, dim))
                )
            matrix.setflags(write=False)
            frozen.append(matrix)
        self.kind = kind
        self.dim = int(dim)
        self.matrices = tuple(frozen)

    @classmethod
    def none(cls, dim):
        return cls("none", dim)

    @classmethod
    def symplectic(cls, J):
        return cls("symplectic", len(J), (J,))

    @classmethod
    def complex(cls, J):
        return cls("complex", len(J), (J,))

    @classmethod
    def hypercomplex(cls, J1, J2, J3):
        return cls("hypercomplex", len(J1), (J1, J2, J3))

    @property
    def J(self):
        if not self.matrices:
            raise WrongKind("structure of kind 'none' has no J")
        return self.matrices[0]

    @property
    def omega(self):
        """Matrix of the 2-form, omega(X, Y) = X^T J Y."""
        if self.kind != "symplectic":
            raise WrongKind("only symplectic structures carry a 2-form")
        return self.J

    def __repr__(self):
        return "StructureTensor(kind={!r}, dim={})".format(self.kind, self.dim)


def _max_abs(array):
    return float(numpy.abs(array).max()) if array.size else 0.0


def check_structure(gamma):
    eye = numpy.eye(gamma.dim)
    square = max([_max_abs(J @ J + eye) for J in gamma.matrices], default=0.0)
    orthogonality = max([_max_abs(J.T @ J - eye) for J in gamma.matrices], default=0.0)
    quaternion = 0.0
    if gamma.kind == "hypercomplex":
        J1, J2, J3 = gamma.matrices
        quaternion = max(_max_abs(J1 @ J2 - J3), _max_abs(J2 @ J1 + J3))
    return StructureResiduals(square, orthogonality, quaternion)


def closedness_residual(gamma, B):
    """Max over basis triples of omega(mu(X,Y),Z) + omega(mu(Y,Z),X) + omega(mu(Z,X),Y)."""
    if gamma.kind != "symplectic":
        raise WrongKind("closedness only applies to symplectic structures, got {!r}".format(gamma.kind))
    W = numpy.einsum("ijl,lk->ijk", B.tensor, gamma.omega)
    cyclic = W + numpy.einsum("jki->ijk", W) + numpy.einsum("kij->ijk", W)
    return _max_abs(cyclic)


def is_closed(gamma, B, tol=None):
    tol = tolerance("structure") if tol is None else tol
    residual = closedness_residual(gamma, B)
    return residual < tol, residual


def _check_almost_complex(J):
    J = numpy.asarray(J, dtype=float)
    defect = _max_abs(J @ J + numpy.eye(len(J)))
    if defect > tolerance("structure"):
        raise BadAlmostComplex("J^2 + I has residual {}".format(defect))
    return J


def _mu_JJ(J, C):
    return numpy.einsum("ia,jb,ijk->abk", J, J, C)


def _mu_J_left(J, C):
    return numpy.einsum("ia,ibk->abk", J, C)


def _J_after(J, T):
    return numpy.einsum("kl,abl->abk", J, T)


def integrability_residual(J, B):
    """Max over basis pairs of mu(JX,JY) - mu(X,Y) - J mu(JX,Y) - J mu(X,JY)."""
    J = _check_almost_complex(J)
    C = B.tensor
    mu_X_JY = numpy.einsum("jb,ajk->abk", J, C)
    defect = _mu_JJ(J, C) - C - _J_after(J, _mu_J_left(J, C)) - _J_after(J, mu_X_JY)
    return _max_abs(defect)


def is_integrable(J, B, tol=None):
    tol = tolerance("structure") if tol is None else tol
    residual = integrability_residual(J, B)
    return residual < tol, residual


def abelian_residual(J, B):
    J = _check_almost_complex(J)
    return _max_abs(_mu_JJ(J, B.tensor) - B.tensor)


def bi_invariant_residual(J, B):
    J = _check_almost_complex(J)
    return _max_abs(_mu_J_left(J, B.tensor) - _J_after(J, B.tensor))


def integrability_condition_residual(gamma, B):
    """IC(gamma, mu): zero exactly on the variety N_gamma."""
    if gamma.kind == "none":
        return 0.0
    if gamma.kind == "symplectic":
        return closedness_residual(gamma, B)
    return max(integrability_residual(J, B) for J in gamma.matrices)


def classify(gamma, B, tol=None):
    """Integrability flags of gamma against mu, each with its residual.

    Flags that do not apply to the structure kind are None. For a symplectic
    structure the flags of its compatible J are reported next to `closed`.

    Returns: (StructureClassification)
    """
    tol = tolerance("structure") if tol is None else tol
    residuals = {}
    if gamma.kind == "none":
        return StructureClassification(True, None, None, None, residuals)
    if gamma.kind == "symplectic":
        residuals["closed"] = closedness_residual(gamma, B)
    residuals["integrable"] = max(integrability_residual(J, B) for J in gamma.matrices)
    residuals["abelian"] = max(abelian_residual(J, B) for J in gamma.matrices)
    residuals["bi_invariant"] = max(bi_invariant_residual(J, B) for J in gamma.matrices)
    closed = residuals["closed"] < tol if "closed" in residuals else None
    classification = StructureClassification(
        integrable=residuals["integrable"] < tol,
        abelian=residuals["abelian"] < tol,
        bi_invariant=residuals["bi_invariant"] < tol,
        closed=closed,
        residuals=residuals,
    )
    logging.debug("Classified %s against %s: %s", gamma, B, classification)
    return classification


def invariant_ricci(ric, gamma):
    """Orthogonal projection of a symmetric operator onto p_gamma.

    symplectic: anti-complexified part 1/2 (Ric + J Ric J)
    complex: complexified part 1/2 (Ric - J Ric J)
    hypercomplex: 1/4 (Ric - sum_i J_i Ric J_i)
    none: Ric itself
    """
    ric = numpy.asarray(ric, dtype=float)
    if gamma.kind == "none":
        return ric.copy()
    if gamma.kind == "symplectic":
        J = gamma.J
        return 0.5 * (ric + J @ ric @ J)
    if gamma.kind == "complex":
        J = gamma.J
        return 0.5 * (ric - J @ ric @ J)
    return 0.25 * (ric - sum(J @ ric @ J for J in gamma.matrices))


def lie_algebra_projection(A, gamma):
    """Orthogonal projection of A in gl(n) onto the Lie algebra g_gamma."""
    A = numpy.asarray(A, dtype=float)
    if gamma.kind == "none":
        return A.copy()
    if gamma.kind == "symplectic":
        # sp(n, R) = J . Sym(n) and S -> JS is an isometry
        J = gamma.J
        S = J.T @ A
        return J @ (0.5 * (S + S.T))
    if gamma.kind == "complex":
        J = gamma.J
        return 0.5 * (A - J @ A @ J)
    return 0.25 * (A - sum(J @ A @ J for J in gamma.matrices))


def random_group_element(gamma, eps, rng):
    """exp(eps A) for a Gaussian A projected onto g_gamma, an element of G_gamma."""
    A = lie_algebra_projection(rng.standard_normal((gamma.dim, gamma.dim)), gamma)
    return scipy.linalg.expm(eps * A)
