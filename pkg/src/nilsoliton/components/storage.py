# coding: utf-8
"""Reading and writing bracket files and reports

Bracket files are UTF-8 JSON:
    {"dim": n,
     "terms": [{"i": 1, "j": 2, "k": 3, "c": 1.0}, ...],
     "structure": {"kind": "symplectic", "J": [[...], ...]}}
with "structure" optional and "J2", "J3" present only for hypercomplex.
"""
import contextlib
import json
import logging
import os
import pathlib
import sys
from os.path import dirname

import numpy

from nilsoliton.components.algebra import Bracket, ValidationReport
from nilsoliton.components.curvature import CurvatureReport
from nilsoliton.components.exceptions import BracketFormatError
from nilsoliton.components.extension import EinsteinVerdict
from nilsoliton.components.minimality import Comparison, MinimalityCertificate
from nilsoliton.components.structures import KINDS, StructureTensor


class Store(object):
    """Base class for classes which know how to access a file in a preset medium.

    Each subclass is scoped to a specific medium (a file, the standard streams)
    and implements `open`; `load` and `write` work on text.
    """

    def __init__(self, *pathparts):
        self.pathparts = pathparts

    @classmethod
    def factory(cls, *pathparts):
        if pathparts == ("-",):
            return StreamStore()
        return FSStore(*pathparts)

    def __str__(self):
        return f"{self.__class__.__name__}(path={self.path})"

    def __repr__(self):
        return str(self)

    def exists(self):
        raise NotImplementedError

    def load(self):
        with self.open("r") as fd:
            return fd.read()

    def write(self, text):
        with self.open("w") as fd:
            fd.write(text)

    def open(self, *args, **kwargs):
        raise NotImplementedError


class FSStore(Store):
    """Store text on the local filesystem.

    Args:
        *pathparts: components of the path, joined with pathlib.Path
    """

    def __init__(self, *pathparts):
        self.path = pathlib.Path(*pathparts)

    def exists(self):
        return os.path.isfile(self.path)

    def open(self, mode="r", *args, **kwargs):
        if "w" in mode and dirname(self.path):
            os.makedirs(dirname(self.path), exist_ok=True)
        return open(self.path, mode, *args, encoding="utf-8", **kwargs)


class StreamStore(Store):
    """stdin for reading and stdout for writing, named by '-'."""

    path = "-"

    def exists(self):
        return True

    def open(self, mode="r", *args, **kwargs):
        # the interpreter's streams stay open after the with-block
        return contextlib.nullcontext(sys.stdout if "w" in mode else sys.stdin)


def _matrix(raw, dim, name):
    try:
        matrix = numpy.array(raw, dtype=float)
    except (TypeError, ValueError):
        raise BracketFormatError("{} is not a numeric matrix".format(name))
    if matrix.shape != (dim, dim):
        raise BracketFormatError(
            "{} has shape {}, expected {}".format(name, matrix.shape, (dim, dim))
        )
    return matrix


def _index(term, key):
    try:
        value = term[key]
    except (KeyError, TypeError):
        raise BracketFormatError("term {!r} is missing {!r}".format(term, key))
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not float(value).is_integer():
        raise BracketFormatError("index {}={!r} is not an integer".format(key, value))
    return int(value)


def parse_structure(document, dim):
    if document is None:
        return StructureTensor.none(dim)
    if not isinstance(document, dict):
        raise BracketFormatError("structure must be an object")
    kind = document.get("kind", "none")
    if kind not in KINDS:
        raise BracketFormatError("unknown structure kind {!r}".format(kind))
    if kind == "none":
        return StructureTensor.none(dim)
    names = ("J", "J2", "J3") if kind == "hypercomplex" else ("J",)
    missing = [name for name in names if name not in document]
    if missing:
        raise BracketFormatError("{} structure is missing {}".format(kind, missing))
    matrices = [_matrix(document[name], dim, name) for name in names]
    return StructureTensor(kind, dim, matrices)


def parse_bracket(document):
    """Turn a decoded bracket document into (Bracket, StructureTensor).

    Terms with i > j are rewritten as (j, i, k, -c); i == j and duplicate
    (i, j, k) after rewriting are errors.

    Raises: BracketFormatError
    """
    if not isinstance(document, dict):
        raise BracketFormatError("bracket document must be a JSON object")
    if "dim" not in document:
        raise BracketFormatError("bracket document is missing 'dim'")
    dim = document["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise BracketFormatError("dim must be a positive integer, got {!r}".format(dim))
    terms = []
    for term in document.get("terms", []):
        i, j, k = (_index(term, key) for key in ("i", "j", "k"))
        try:
            c = float(term["c"])
        except KeyError:
            raise BracketFormatError("term {!r} is missing 'c'".format(term))
        except (TypeError, ValueError):
            raise BracketFormatError("coefficient in {!r} is not a number".format(term))
        if i == j:
            raise BracketFormatError("term {!r} has i == j".format(term))
        if i > j:
            i, j, c = j, i, -c
        terms.append((i, j, k, c))
    return Bracket(dim, terms), parse_structure(document.get("structure"), dim)


def load_bracket(source):
    """Read a bracket file from a path, '-' for stdin, or a Store."""
    store = source if isinstance(source, Store) else Store.factory(source)
    logging.info("Loading bracket from %s", store)
    if not store.exists():
        raise FileNotFoundError("no bracket file at {}".format(store.path))
    try:
        document = json.loads(store.load())
    except json.JSONDecodeError as e:
        raise BracketFormatError("{} is not valid JSON: {}".format(store.path, e))
    return parse_bracket(document)


def bracket_document(B, gamma=None):
    document = {
        "dim": B.dim,
        "terms": [{"i": i, "j": j, "k": k, "c": c} for i, j, k, c in B.terms],
    }
    if gamma is not None and gamma.kind != "none":
        document["structure"] = {"kind": gamma.kind}
        for name, matrix in zip(("J", "J2", "J3"), gamma.matrices):
            document["structure"][name] = matrix
    return document


def dump_bracket(B, gamma=None):
    return report_json(bracket_document(B, gamma))


def _plain(obj):
    """Recursively turn reports, arrays and numpy scalars into JSON types."""
    if isinstance(obj, MinimalityCertificate):
        return _plain(
            {
                "c": obj.c,
                "D": obj.D,
                "residual": obj.residual,
                "normalized_residual": obj.normalized_residual,
                "eigenvalue_type": obj.eigenvalue_type,
                "kind": obj.structure_kind,
                "scal": obj.scal,
            }
        )
    if isinstance(obj, CurvatureReport):
        return _plain(
            {
                "ricci": obj.ricci,
                "invariant_ricci": obj.invariant_ricci,
                "scal": obj.scal,
                "kind": obj.structure_kind,
            }
        )
    if isinstance(obj, (ValidationReport, EinsteinVerdict, Comparison)):
        return _plain(obj._asdict())
    if isinstance(obj, dict):
        return {str(key): _plain(value) for key, value in obj.items()}
    if isinstance(obj, numpy.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [_plain(value) for value in obj]
    if isinstance(obj, numpy.bool_):
        return bool(obj)
    if isinstance(obj, numpy.integer):
        return int(obj)
    if isinstance(obj, (float, numpy.floating)):
        # -0.0 prints differently from 0.0 and depends on evaluation order
        return float(obj) + 0.0
    return obj


def report_json(obj):
    """Deterministic JSON: sorted keys, two-space indent, shortest round-trip
    floats and a trailing newline.
    """
    return json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n"


def trace_csv(trace):
    columns = ["step", "F", "gradnorm", "scal"]
    return trace.iterates[columns].to_csv(index=False, float_format="%.17g")
