"""Multi-agent path finding: priority-aware tree searches and baselines."""

from ._mapf import (
    Instance,
    MapfError,
    enumerate_orderings,
    generate,
    joint_optimal,
    parse_fixture,
    parse_instance,
    serialize_fixture,
    solve,
    validate,
    wellformed,
)

__all__ = [
    "Instance",
    "MapfError",
    "enumerate_orderings",
    "generate",
    "joint_optimal",
    "parse_fixture",
    "parse_instance",
    "serialize_fixture",
    "solve",
    "validate",
    "wellformed",
]
