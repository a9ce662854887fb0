import copy
import logging
import os

import yaml


DEFAULTS_PATH = os.path.join(
    os.path.dirname(os.path.dirname(__file__)), "config", "defaults.yaml"
)


def load_defaults():
    with open(DEFAULTS_PATH) as f:
        return yaml.safe_load(f)


def merge_config(base, override):
    """Deep-merge a user config dictionary over the defaults

    Args:
        base (dict) the defaults, left untouched
        override (dict) user values; every top-level section must exist in base

    Returns: (dict) a new merged dictionary

    Raises: ValueError if the override names a section the defaults don't have
    """
    merged = copy.deepcopy(base)
    for section, values in (override or {}).items():
        if section not in merged:
            raise ValueError(
                "Unknown config section {!r}, expected one of {}".format(
                    section, sorted(merged)
                )
            )
        if isinstance(values, dict):
            merged[section].update(values)
        else:
            merged[section] = values
    return merged


def parse_tolerance_env(environ=None):
    """Read the global tolerance override from the environment.

    :param environ: mapping to read from (defaults to os.environ)
    :type environ: dict

    :return: the tolerance, or None when the variable is unset or empty
    :rtype: float

    :raises: ValueError if the variable is set to something that is not a float
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(parse_tolerance_env.variable, "").strip()
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise ValueError(
            "{} must be a float, got {!r}".format(parse_tolerance_env.variable, raw)
        )


parse_tolerance_env.variable = "NILSOLITON_TOL"


def load_config(path=None, environ=None):
    """Load the numerical policy: packaged defaults, then an optional YAML
    file, then the NILSOLITON_TOL environment override.
    """
    config = load_defaults()
    if path:
        logging.info("Loading config overrides from %s", path)
        with open(path) as f:
            config = merge_config(config, yaml.safe_load(f))
    tol = parse_tolerance_env(environ)
    if tol is not None:
        logging.info(
            "%s set, using tolerance %s for minimality and flow",
            parse_tolerance_env.variable,
            tol,
        )
        config["tolerances"]["minimality"] = tol
        config["flow"]["tol"] = tol
    return config


_active = None


def get_config():
    """The process-wide config, loaded lazily on first use."""
    global _active
    if _active is None:
        _active = load_config()
    return _active


def set_config(config):
    global _active
    _active = config


def tolerance(name):
    return float(get_config()["tolerances"][name])
