import logging

import numpy
import pytest

from nilsoliton.components import catalog
from nilsoliton.components.algebra import Bracket
from nilsoliton.components.exceptions import InvalidBracket
from nilsoliton.components.structures import StructureTensor
from nilsoliton.components.validate import BracketValidator, InputValidator, StructureValidator


NOT_LIE = Bracket(3, [(1, 2, 3, 1.0), (1, 3, 1, 1.0)])
NOT_NILPOTENT = Bracket(2, [(1, 2, 2, 1.0)])


def test_bracket_validator_returns_the_report(filiform4):
    report = BracketValidator().run(filiform4)
    assert report.nilpotency_step == 3


@pytest.mark.parametrize("bracket,message", [(NOT_LIE, "Jacobi identity"), (NOT_NILPOTENT, "not nilpotent")])
def test_bracket_validator_strict(bracket, message):
    with pytest.raises(InvalidBracket, match=message):
        BracketValidator(strict=True).run(bracket)


def test_bracket_validator_lenient(caplog):
    with caplog.at_level(logging.WARNING):
        assert BracketValidator(strict=False).run(NOT_LIE) is None
    assert "not running in strict mode" in caplog.text


def test_structure_validator():
    J = catalog.filiform4_symplectic().structure.J
    assert StructureValidator().run(StructureTensor.symplectic(J), 4).ok()
    with pytest.raises(InvalidBracket, match="has dim 4"):
        StructureValidator().run(StructureTensor.symplectic(J), 6)
    with pytest.raises(InvalidBracket, match="not compatible"):
        StructureValidator().run(StructureTensor.complex(numpy.eye(2)), 2)


def test_input_validator(h3):
    report, residuals = InputValidator().run(h3, StructureTensor.none(3))
    assert report.nilpotency_step == 2
    assert residuals.ok()
    assert InputValidator(strict=False).run(NOT_LIE, StructureTensor.none(3))[0] is None
