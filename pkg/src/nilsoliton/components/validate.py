import logging
from textwrap import dedent

from nilsoliton.components.algebra import validate
from nilsoliton.components.exceptions import InvalidBracket
from nilsoliton.components.structures import check_structure
from nilsoliton.utils.conf import tolerance


class Validator(object):
    def __init__(self, strict=True):
        self.strict = strict

    def run(self, *args, **kwargs):
        try:
            return self._run(*args, **kwargs)
        except ValueError as e:
            if self.strict:
                raise
            logging.warning(
                "Validation error hit, not running in strict mode so continuing on: %s",
                str(e),
            )


class BracketValidator(Validator):
    """Jacobi identity and nilpotency of a bracket.

    Returns the ValidationReport; raises InvalidBracket in strict mode.
    """

    def _run(self, bracket):
        report = validate(bracket)
        if report.jacobi_residual > tolerance("jacobi"):
            raise InvalidBracket(
                dedent(
                    """
            Jacobi identity fails for {} with residual {}
            (tolerance {}).
            """.format(bracket, report.jacobi_residual, tolerance("jacobi"))
                ).strip()
            )
        if report.nilpotency_step is None:
            raise InvalidBracket(
                "{} is not nilpotent: lower central series dims {}".format(
                    bracket, report.lcs_dims
                )
            )
        return report


class StructureValidator(Validator):
    """Compatibility of a structure with the fixed inner product."""

    def _run(self, structure, dim):
        if structure.dim != dim:
            raise InvalidBracket(
                "structure has dim {}, bracket has dim {}".format(structure.dim, dim)
            )
        residuals = check_structure(structure)
        if not residuals.ok():
            raise InvalidBracket(
                "{} is not compatible with the metric: {}".format(structure, residuals)
            )
        return residuals


class InputValidator(Validator):
    """Both checks on a loaded (bracket, structure) pair."""

    def _run(self, bracket, structure):
        report = BracketValidator(strict=self.strict).run(bracket)
        residuals = StructureValidator(strict=self.strict).run(structure, bracket.dim)
        return report, residuals
