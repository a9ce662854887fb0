import numpy
import pandas as pd
import pytest

from nilsoliton.components import catalog, flow
from nilsoliton.components.algebra import Bracket, jacobi_residual, validate
from nilsoliton.components.curvature import ricci_nilpotent
from nilsoliton.components.exceptions import InvalidBracket, MaxIterExceeded, NotIntegrable
from nilsoliton.components.flow import TRACE_COLUMNS, flow_minimize, functional_F, gradient_norm
from nilsoliton.components.structures import StructureTensor, closedness_residual, invariant_ricci


def _spectrum(B):
    return numpy.linalg.eigvalsh(ricci_nilpotent(B))


def _traceless_ricci(B, gamma):
    ric = invariant_ricci(ricci_nilpotent(B), gamma)
    return ric - numpy.trace(ric) / B.dim * numpy.eye(B.dim)


def test_functional_is_scale_invariant():
    item = catalog.symplectic_abc(1.0, 2.0, 0.5)
    F = functional_F(item.bracket, item.structure)
    assert functional_F(item.bracket.scaled(3.0), item.structure) == pytest.approx(F)
    assert functional_F(item.bracket.scaled(-0.1), item.structure) == pytest.approx(F)


def test_gradient_vanishes_at_nilsolitons(filiform4):
    gamma = StructureTensor.none(4)
    assert gradient_norm(filiform4, _traceless_ricci(filiform4, gamma)) < 1e-12

    B = catalog.filiform(5).bracket
    assert gradient_norm(B, _traceless_ricci(B, StructureTensor.none(5))) > 1e-3


def test_fixed_point_stops_immediately():
    item = catalog.filiform4_symplectic()
    trace = flow_minimize(item.bracket, item.structure)
    assert trace.converged
    assert list(trace.iterates.columns) == TRACE_COLUMNS
    assert len(trace.iterates) == 1
    assert trace.iterates["step"].tolist() == [0]
    assert trace.final_certificate.is_minimal()
    assert trace.final_bracket.allclose(item.bracket)


def test_flow_returns_to_the_symplectic_nilsoliton():
    item = catalog.symplectic_abc(1.0, 1.0, 0.0)
    target = _spectrum(item.bracket)
    for seed in range(20):
        trace = flow_minimize(item.bracket, item.structure, perturb=0.3, seed=seed)
        assert trace.converged, seed
        assert trace.iterates["residual"].iloc[-1] < 1e-8

        F = trace.iterates["F"].to_numpy()
        assert numpy.all(numpy.diff(F) <= 1e-14 * F[:-1])
        numpy.testing.assert_allclose(trace.iterates["scal"], -1.0, rtol=1e-12)

        final = trace.final_bracket
        numpy.testing.assert_allclose(_spectrum(final), target, atol=1e-6)
        assert jacobi_residual(final) < 1e-10
        assert closedness_residual(item.structure, final) < 1e-10
        assert validate(final).lcs_dims == [2, 0]
        assert trace.final_certificate.is_minimal(1e-6)


def test_flow_does_not_report_convergence_off_the_variety(monkeypatch, caplog):
    monkeypatch.setattr(flow, "jacobi_residual", lambda B: 1.0)
    item = catalog.filiform4_symplectic()
    trace = flow_minimize(item.bracket, item.structure)
    assert not trace.converged
    assert "left the variety" in caplog.text


def test_flow_is_deterministic_for_a_seed():
    item = catalog.hypercomplex_curve(0.2)
    first = flow_minimize(item.bracket, item.structure, perturb=0.2, seed=7, max_iter=50)
    second = flow_minimize(item.bracket, item.structure, perturb=0.2, seed=7, max_iter=50)
    pd.testing.assert_frame_equal(first.iterates, second.iterates)
    assert first.final_bracket == second.final_bracket


def test_flow_finds_the_filiform_nilsoliton():
    B = catalog.filiform(5).bracket
    trace = flow_minimize(B)
    assert trace.converged
    assert len(trace.iterates) > 1
    assert trace.iterates["F"].iloc[-1] < trace.iterates["F"].iloc[0]

    final = trace.final_bracket
    assert validate(final).nilpotency_step == 4
    certificate = trace.final_certificate
    ric = ricci_nilpotent(final)
    assert certificate.c == pytest.approx(numpy.sum(ric * ric) / numpy.trace(ric), abs=1e-5)


def test_flow_rejects_non_integrable_start():
    item = catalog.symplectic_abc(1.0, 0.0, 0.0)
    with pytest.raises(NotIntegrable):
        flow_minimize(item.bracket, item.structure)


@pytest.mark.parametrize(
    "bracket",
    [Bracket(2, [(1, 2, 2, 1.0)]), Bracket(3, [(1, 2, 3, 1.0), (1, 3, 1, 1.0)])],
)
def test_flow_rejects_invalid_start(bracket):
    with pytest.raises(InvalidBracket):
        flow_minimize(bracket)


def test_flow_warns_when_out_of_iterations(caplog):
    with pytest.warns(MaxIterExceeded):
        trace = flow_minimize(catalog.filiform(5).bracket, max_iter=3)
    assert not trace.converged
    assert trace.iterates["step"].tolist() == [0, 1, 2, 3]
    assert not trace.final_certificate.is_minimal()
    assert "used all 3 iterations" in caplog.text
