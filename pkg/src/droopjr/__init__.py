"""Justified-representation axioms and proportional voting rules under Hare and Droop quotas."""

from .core import (
    DROOP,
    HARE,
    Election,
    ElectionFormatError,
    InstanceTooLarge,
    Quota,
    cohesive_group,
    group_clears_quota,
    parse_election,
    quota_report,
    serialize_election,
)

__version__ = "0.1.0"
