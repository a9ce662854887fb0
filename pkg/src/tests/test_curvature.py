import numpy
import pytest

from nilsoliton.components import catalog
from nilsoliton.components.algebra import Bracket, act, scalar_curvature
from nilsoliton.components.curvature import (
    MetricSolvableAlgebra,
    curvature_report,
    levi_civita,
    ricci_general,
    ricci_nilpotent,
)
from nilsoliton.components.exceptions import InvalidBracket
from nilsoliton.components.structures import (
    StructureTensor,
    antidiagonal_J,
    integrability_condition_residual,
)
from nilsoliton.utils.random import random_nilpotent_bracket

from conftest import random_orthogonal


def test_ricci_of_zero_bracket():
    numpy.testing.assert_array_equal(ricci_nilpotent(Bracket(4)), numpy.zeros((4, 4)))


def test_ricci_of_heisenberg(h3):
    numpy.testing.assert_allclose(ricci_nilpotent(h3), numpy.diag([-0.5, -0.5, 0.5]))


def test_ricci_of_filiform(filiform4):
    numpy.testing.assert_allclose(ricci_nilpotent(filiform4), numpy.diag([-1.0, -0.5, 0.0, 0.5]))


def test_ricci_on_center_of_abc_family():
    item = catalog.symplectic_abc(1.0, 2.0, 3.0)
    ric = ricci_nilpotent(item.bracket)
    z = item.expected["center"]
    numpy.testing.assert_allclose(ric[numpy.ix_(z, z)], item.expected["center_ricci"])
    numpy.testing.assert_allclose(numpy.diag(ric)[:3], [-2.5, -5.0, -6.5])


def test_ricci_on_center_of_w_space(rng):
    for _ in range(200):
        item = catalog.hypercomplex_family(*(rng.standard_normal(4) for _ in range(4)))
        ric = ricci_nilpotent(item.bracket)
        z = item.expected["center"]
        numpy.testing.assert_allclose(
            ric[numpy.ix_(z, z)], item.expected["center_ricci"], atol=1e-12
        )
        # 2-step: Ric keeps v and z apart
        assert numpy.abs(ric[:4, 4:]).max() < 1e-12


def test_ricci_on_center_of_complex_family(rng):
    J = numpy.array([[0.0, -1.0], [1.0, 0.0]])
    for _ in range(200):
        A, B, C, D, F = rng.standard_normal((5, 2))
        E = B + J @ (C + D)
        item = catalog.complex_family(A, B, C, D, E, F)
        assert integrability_condition_residual(item.structure, item.bracket) < 1e-12
        # Ric|z = 1/2 sum over the six pairs of v v^t
        vectors = numpy.array([A, B, C, D, E, F])
        ric = ricci_nilpotent(item.bracket)
        numpy.testing.assert_allclose(ric[4:, 4:], 0.5 * vectors.T @ vectors, atol=1e-12)
        assert numpy.abs(ric[:4, 4:]).max() < 1e-12


def test_ricci_trace_is_scalar_curvature(rng):
    for _ in range(50):
        B = random_nilpotent_bracket(int(rng.integers(3, 7)), rng)
        ric = ricci_nilpotent(B)
        numpy.testing.assert_allclose(ric, ric.T, atol=1e-14)
        assert numpy.trace(ric) == pytest.approx(scalar_curvature(B), rel=1e-12)


def test_ricci_is_equivariant_and_quadratic(rng):
    for _ in range(20):
        B = random_nilpotent_bracket(5, rng)
        k = random_orthogonal(5, rng)
        numpy.testing.assert_allclose(
            ricci_nilpotent(act(k, B)), k @ ricci_nilpotent(B) @ k.T, atol=1e-10
        )
        numpy.testing.assert_allclose(
            ricci_nilpotent(B.scaled(-2.0)), 4.0 * ricci_nilpotent(B), atol=1e-12
        )


def test_levi_civita_of_abelian_algebra():
    numpy.testing.assert_array_equal(levi_civita(Bracket(3)), numpy.zeros((3, 3, 3)))


def test_levi_civita_of_heisenberg(h3):
    G = levi_civita(h3)
    assert G[0, 1, 2] == 0.5 and G[1, 0, 2] == -0.5
    assert G[0, 2, 1] == -0.5 and G[2, 0, 1] == -0.5
    assert G[1, 2, 0] == 0.5 and G[2, 1, 0] == 0.5
    # metric: skew in the last two slots
    numpy.testing.assert_array_equal(G, -G.transpose(0, 2, 1))
    # torsion free
    numpy.testing.assert_array_equal(G - G.transpose(1, 0, 2), h3.tensor)


def test_hyperbolic_plane():
    # [H, X] = X
    S = MetricSolvableAlgebra(2, [(1, 2, 2, 1.0)])
    G = levi_civita(S)
    assert G[1, 1, 0] == 1.0
    assert G[1, 0, 1] == -1.0
    numpy.testing.assert_allclose(ricci_general(S), -numpy.eye(2))


def test_compact_simple_algebra():
    so3 = MetricSolvableAlgebra(3, [(1, 2, 3, 1.0), (2, 3, 1, 1.0), (1, 3, 2, -1.0)])
    assert not so3.is_solvable
    numpy.testing.assert_allclose(ricci_general(so3), 0.5 * numpy.eye(3))


def test_levi_civita_rejects_non_lie_brackets():
    with pytest.raises(InvalidBracket):
        levi_civita(Bracket(3, [(1, 2, 3, 1.0), (1, 3, 1, 1.0)]))


def test_both_ricci_routes_agree(rng):
    for _ in range(100):
        B = random_nilpotent_bracket(int(rng.integers(3, 7)), rng)
        numpy.testing.assert_allclose(ricci_general(B), ricci_nilpotent(B), atol=1e-10)


def test_solvable_flag():
    assert MetricSolvableAlgebra(2, [(1, 2, 2, 1.0)]).is_solvable
    assert MetricSolvableAlgebra(3, [(1, 2, 3, 1.0)]).is_solvable


def test_curvature_report(filiform4):
    report = curvature_report(filiform4)
    assert report.structure_kind == "none"
    assert report.scal == pytest.approx(-1.0)
    numpy.testing.assert_allclose(report.invariant_ricci, report.ricci)

    report = curvature_report(filiform4, StructureTensor.symplectic(antidiagonal_J(4)))
    assert report.structure_kind == "symplectic"
    numpy.testing.assert_allclose(
        report.invariant_ricci, -0.25 * numpy.diag([3.0, 1.0, -1.0, -3.0])
    )
