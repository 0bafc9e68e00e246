"""Discrete KP hierarchy: spectral curves, Poisson brackets, flows and pipe diagrams.

Each function mirrors a ``dkp`` subcommand and returns the same report as a dict.
"""

import json

from . import _core
from ._core import GcdError

__version__ = _core.version()
__all__ = ["GcdError", "check", "curve", "flow", "pipes", "suite_names", "torus"]


def _state(state):
    return None if state is None else json.dumps(state)


def curve(N, M, mode="ab", numeric=False, seed=1, state=None):
    return json.loads(_core.curve(N, M, mode, numeric, seed, _state(state)))


def check(N, M, suite="all", seed=1):
    return json.loads(_core.check(N, M, suite, seed))


def flow(N, M, degree=None, dt=1e-3, T=1.0, seed=1, sample_every=0, order_check=False, state=None):
    return json.loads(_core.flow(N, M, degree, dt, T, seed, sample_every, order_check, _state(state)))


def pipes(N, M, degree=None, pairings=False, sum_zero=False, seed=1):
    return json.loads(_core.pipes(N, M, degree, pairings, sum_zero, seed))


def torus(N, M, seed=1):
    return json.loads(_core.torus(N, M, seed))


def suite_names():
    return list(_core.suite_names())
