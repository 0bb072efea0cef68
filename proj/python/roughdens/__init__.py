"""Densities of rough differential equations driven by Gaussian signals.

Configurations are plain dicts with the same sections as the JSON files read
by the ``roughdens`` command-line tool (``model``, ``system``, ``run``, ...).
Arrays are NumPy arrays with one row per grid point.
"""

import json as _json

import numpy as _np

from . import _core
from ._core import ConfigError, ExplosionError, InvalidInput

__version__ = _core.__version__

__all__ = [
    "ConfigError",
    "ExplosionError",
    "InvalidInput",
    "check",
    "kde",
    "lift",
    "load_config",
    "malliavin",
    "p_variation",
    "run",
    "sample",
    "solve",
]


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def _path(times, values):
    values = _np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return list(map(float, times)), values


def load_config(path):
    """Reads a JSON config file (comments allowed) into a dict after validating it."""
    return _json.loads(_core.read_config(str(path)))


def sample(config, count=1, first_index=0, base_dir="."):
    """Draws driver paths on the configured grid; returns (times, [paths])."""
    times, paths = _core.sample(_text(config), count, first_index, base_dir)
    return _np.asarray(times), paths


def lift(times, values):
    """Piecewise-linear step-2 lift: dict with level1 (n, d) and level2 (n, d, d)."""
    return _core.lift(*_path(times, values))


def solve(config, times, values, jacobian=False, base_dir="."):
    """Solves the configured system along a driver path."""
    return _core.solve(_text(config), *_path(times, values), jacobian, base_dir)


def malliavin(config, times, values, t, method="2d-young", base_dir="."):
    """Malliavin matrix at grid time t with its spectrum and verdict."""
    return _core.malliavin(_text(config), *_path(times, values), t, method, base_dir)


def check(config, base_dir="."):
    """Hypothesis report (ellipticity, Gaussian non-degeneracy, rho-variation)."""
    return _json.loads(_core.check(_text(config), base_dir))


def run(config, threads=1, out_dir=None, base_dir="."):
    """Runs the full pipeline and returns the summary; writes artifacts if out_dir is set."""
    return _json.loads(_core.run(_text(config), threads, out_dir or "", base_dir))


def p_variation(times, values, p):
    """Exact discrete p-variation norm (p-th root of the sup over partitions)."""
    return _core.p_variation(*_path(times, values), p)


def kde(samples, points=0):
    """Gaussian KDE on a grid for one- or two-dimensional samples."""
    samples = _np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    return _core.kde(samples, points)
