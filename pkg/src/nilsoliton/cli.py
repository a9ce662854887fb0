"""Command line front end

Exit codes:
    0  success (valid, minimal, distinct, converged)
    1  malformed input, one line on stderr: `error: <ExceptionName>: <message>`
    2  `check` found an invalid bracket or structure
    3  not minimal: `certify` above tolerance, `flow` not converged, or
       `extend` without a certified nilsoliton to extend
    4  `compare` inconclusive
"""
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from nilsoliton.components.algebra import validate
from nilsoliton.components.catalog import CATALOG
from nilsoliton.components.curvature import curvature_report
from nilsoliton.components.exceptions import AbelianDerivation, NonPositiveTrace, NotMinimal
from nilsoliton.components.extension import einstein_check, is_standard, rank_one_extension
from nilsoliton.components.flow import flow_minimize
from nilsoliton.components.minimality import certify as certify_bracket
from nilsoliton.components.minimality import compare as compare_brackets
from nilsoliton.components.storage import (
    Store,
    bracket_document,
    dump_bracket,
    load_bracket,
    report_json,
    trace_csv,
)
from nilsoliton.components.structures import StructureTensor, check_structure, classify
from nilsoliton.components.validate import BracketValidator, InputValidator, StructureValidator
from nilsoliton.utils.conf import get_config, load_config, set_config


EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INVALID = 2
EXIT_NOT_MINIMAL = 3
EXIT_INCONCLUSIVE = 4


def _emit(text, out=None):
    Store.factory(out or "-").write(text)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="YAML file overriding the default tolerances and flow settings")
@click.option("-v", "--verbose", is_flag=True, help="log DEBUG messages to stderr")
def main(config_path, verbose):
    """Minimal compatible metrics on nilpotent Lie groups."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
        force=True,
    )
    set_config(load_config(config_path))


@main.command()
@click.argument("path")
def check(path):
    """Validate a bracket file and its structure."""
    bracket, structure = load_bracket(path)
    bracket_ok = BracketValidator(strict=False).run(bracket) is not None
    structure_ok = StructureValidator(strict=False).run(structure, bracket.dim) is not None
    result = {
        "valid": bracket_ok and structure_ok,
        "validation": validate(bracket),
        "structure": {"kind": structure.kind, "residuals": check_structure(structure)._asdict()},
    }
    if structure_ok and structure.kind != "none":
        result["structure"]["classification"] = classify(structure, bracket)._asdict()
    _emit(report_json(result))
    click.get_current_context().exit(EXIT_OK if result["valid"] else EXIT_INVALID)


@main.command()
@click.argument("path")
def ricci(path):
    """Ricci and invariant Ricci operators of the fixed metric."""
    bracket, structure = load_bracket(path)
    _emit(report_json(curvature_report(bracket, structure)))


def _certify_file(path, config):
    set_config(config)
    bracket, structure = load_bracket(path)
    InputValidator(strict=True).run(bracket, structure)
    return certify_bracket(bracket, structure)


@main.command()
@click.argument("paths", nargs=-1, required=True)
@click.option("--tol", type=float, default=None, help="threshold on residual / |scal|")
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="certify files in parallel")
def certify(paths, tol, jobs):
    """Certify (or refute) Ric^gamma = cI + D with D a derivation."""
    config = get_config()
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            certificates = list(pool.map(_certify_file, paths, [config] * len(paths)))
    else:
        certificates = [_certify_file(path, config) for path in paths]
    if len(paths) == 1:
        _emit(report_json(certificates[0]))
    else:
        _emit(report_json([{"file": p, "certificate": c} for p, c in zip(paths, certificates)]))
    minimal = all(certificate.is_minimal(tol) for certificate in certificates)
    click.get_current_context().exit(EXIT_OK if minimal else EXIT_NOT_MINIMAL)


@main.command()
@click.argument("path")
@click.option("--step", type=float, default=None)
@click.option("--max-iter", type=int, default=None)
@click.option("--tol", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--perturb", type=float, default=0.0, help="size of a random G_gamma kick")
@click.option("--out", default=None, help="trace CSV file, stdout by default")
@click.option("--report", default=None, help="certificate JSON file, stderr by default")
@click.option("--final", default=None, help="write the final bracket file here")
def flow(path, step, max_iter, tol, seed, perturb, out, report, final):
    """Descend F along the structure-preserving orbit."""
    bracket, structure = load_bracket(path)
    InputValidator(strict=True).run(bracket, structure)
    trace = flow_minimize(
        bracket, structure, step=step, tol=tol, max_iter=max_iter, seed=seed, perturb=perturb
    )
    _emit(trace_csv(trace), out)
    certificate_json = report_json(dict(
        bracket_document(trace.final_bracket, structure),
        converged=trace.converged,
        certificate=trace.final_certificate,
    ))
    if report:
        _emit(certificate_json, report)
    else:
        click.echo(certificate_json, err=True, nl=False)
    if final:
        _emit(dump_bracket(trace.final_bracket, structure), final)
    click.get_current_context().exit(EXIT_OK if trace.converged else EXIT_NOT_MINIMAL)


@main.command()
@click.argument("path")
@click.option("--out", default=None, help="write the extension bracket file here")
def extend(path, out):
    """Build the rank-one solvable extension of a nilsoliton and test Einstein."""
    bracket, _ = load_bracket(path)
    BracketValidator(strict=True).run(bracket)
    certificate = certify_bracket(bracket, StructureTensor.none(bracket.dim))
    try:
        extension = rank_one_extension(bracket, certificate)
    except (NotMinimal, AbelianDerivation, NonPositiveTrace) as e:
        click.echo("error: {}: {}".format(type(e).__name__, e), err=True)
        click.get_current_context().exit(EXIT_NOT_MINIMAL)
    verdict = einstein_check(extension)
    result = {"verdict": verdict, "standard": is_standard(extension), "c": certificate.c}
    if out:
        _emit(dump_bracket(extension), out)
    else:
        result["extension"] = bracket_document(extension)
    _emit(report_json(result))


@main.command()
@click.argument("first")
@click.argument("second")
@click.option("--tol", type=float, default=None, help="spectral tolerance")
def compare(first, second, tol):
    """Tell two structures apart by the Ricci spectra of their minimal metrics."""
    comparison = compare_brackets(load_bracket(first), load_bracket(second), tol)
    _emit(report_json(comparison))
    click.get_current_context().exit(
        EXIT_OK if comparison.verdict == "distinct" else EXIT_INCONCLUSIVE
    )


@main.group(invoke_without_command=True)
@click.pass_context
def catalog(ctx):
    """List the catalog, or emit one of its bracket files."""
    if ctx.invoked_subcommand is None:
        for name in sorted(CATALOG):
            example = CATALOG[name]
            click.echo("{}{}  [{}]".format(name, example.signature, example.domain))


@catalog.command(context_settings={"ignore_unknown_options": True})
@click.argument("name")
@click.argument("params", nargs=-1, type=click.UNPROCESSED)
@click.option("--out", default=None, help="bracket file to write, stdout by default")
def emit(name, params, out):
    """Write the bracket file of catalog item NAME built from PARAMS."""
    if name not in CATALOG:
        raise click.BadParameter("unknown catalog item {!r}".format(name), param_hint="NAME")
    example = CATALOG[name]
    item = example(*example.parse(list(params)))
    logging.info("Emitting catalog item %s%s (%s)", name, tuple(params), item.label)
    _emit(dump_bracket(item.bracket, item.structure), out)


def run(argv=None):
    """Console entry point; returns the exit code."""
    try:
        code = main.main(args=argv, prog_name="nilsoliton", standalone_mode=False)
    except click.ClickException as e:
        click.echo("error: {}: {}".format(type(e).__name__, e.format_message()), err=True)
        return EXIT_MALFORMED
    except click.exceptions.Abort:
        return EXIT_MALFORMED
    except (ValueError, ArithmeticError, OSError) as e:
        message = " ".join(str(e).split())
        click.echo("error: {}: {}".format(type(e).__name__, message), err=True)
        return EXIT_MALFORMED
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
