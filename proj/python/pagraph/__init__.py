"""Preferential-attachment degree censuses.

Thin Python wrapper over the compiled ``_pagraph`` core: the growth model,
the limiting degree frequencies and covariance tables, the exact small-n
enumeration oracle, and the replicated CLT experiment harness.
"""

try:
    from . import _pagraph as _core  # installed package layout
except ImportError:  # pragma: no cover - build-tree layout
    import _pagraph as _core

theory = _core.theory
oracle = _core.oracle
martingale = _core.martingale
experiment = _core.experiment

ModelParams = _core.ModelParams
GraphState = _core.GraphState
DegreeCensus = _core.DegreeCensus
Xoshiro256pp = _core.Xoshiro256pp
validate_delta = _core.validate_delta
grow_to = _core.grow_to
degree_census = _core.degree_census
simulate_census = _core.simulate_census

__version__ = "1.0.0"

__all__ = [
    "DegreeCensus",
    "GraphState",
    "ModelParams",
    "Xoshiro256pp",
    "degree_census",
    "experiment",
    "grow_to",
    "martingale",
    "oracle",
    "simulate_census",
    "theory",
    "validate_delta",
]
