"""Exact lifted causal inference on parametric causal factor graphs.

Example::

    import pcfg
    m = pcfg.Model.load("tests/fixtures/employees.pcfg")
    pcfg.query(m, "P(Rev | do(Train(bob,t1)=true))")["probs"]
"""

from ._pcfg import (
    Error,
    InconsistentEvidence,
    Model,
    ModelError,
    ParseError,
    PreconditionError,
    QueryError,
    SizeLimitExceeded,
    bench,
    check_ci,
    d_separated,
    lci,
    query,
    random_model,
)

__all__ = [
    "Error",
    "InconsistentEvidence",
    "Model",
    "ModelError",
    "ParseError",
    "PreconditionError",
    "QueryError",
    "SizeLimitExceeded",
    "bench",
    "check_ci",
    "d_separated",
    "distribution",
    "lci",
    "query",
    "random_model",
]


def distribution(result):
    """Map each joint value tuple of a query result to its probability."""
    import itertools

    keys = itertools.product(*result["values"])
    return dict(zip(keys, result["probs"]))
