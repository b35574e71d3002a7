"""Rule outcomes, their text serialization, and tie-breaking policies."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping


class TieBreakError(RuntimeError):
    """A scripted tie-breaking choice was not legal at its decision point."""


@dataclass(frozen=True)
class TieBreak:
    """How a rule resolves choices that its definition leaves open.

    The lexicographic policy (the default) always takes the lowest indices.
    A scripted policy holds, per decision kind, a queue of explicit choices
    that are consumed in order at genuine decision points, i.e. whenever a
    rule must pick ``count`` items out of more than ``count`` options. Once
    a kind's queue is exhausted the policy falls back to lexicographic.

    Decision kinds used by the rules: ``"candidate"`` (which of several tied
    candidates to select), ``"committee"`` (index into the list of co-optimal
    committees of an exhaustive rule), ``"approvers"`` (Greedy Monroe: which approving
    voters to assign when more are available than needed) and ``"filler"``
    (Greedy Monroe: which non-approving voters fill up a round).
    """

    script: Mapping[str, tuple[tuple[int, ...], ...]] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "scripted" if self.script else "lexicographic"

    @classmethod
    def scripted(cls, **choices) -> "TieBreak":
        return cls({k: tuple(tuple(c) for c in v) for k, v in choices.items()})

    @classmethod
    def from_json(cls, text: str) -> "TieBreak":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("tie-break script must be a JSON object of kind -> list of choices")
        return cls.scripted(**data)

    def session(self) -> "TieSession":
        return TieSession(self)


LEXICOGRAPHIC = TieBreak()


class TieSession:
    """Per-run state of a :class:`TieBreak`; rules create one per call."""

    def __init__(self, policy: TieBreak):
        self._queues = {k: deque(v) for k, v in policy.script.items()}
        self.log: list[tuple[str, tuple[int, ...]]] = []

    def choose(self, kind: str, options, count: int = 1) -> tuple[int, ...]:
        options = sorted(options)
        if count > len(options):
            raise TieBreakError(f"{kind}: need {count} of only {len(options)} options")
        if count == len(options) or count == 0:
            return tuple(options[:count])
        queue = self._queues.get(kind)
        if queue:
            choice = tuple(queue.popleft())
            allowed = set(options)
            if len(choice) != count or len(set(choice)) != count or not set(choice) <= allowed:
                raise TieBreakError(
                    f"{kind}: scripted choice {list(choice)} is not {count} distinct "
                    f"items from {options}"
                )
            self.log.append((kind, choice))
            return choice
        return tuple(options[:count])

    def pick(self, kind: str, options) -> int:
        return self.choose(kind, options, 1)[0]


@dataclass(frozen=True)
class RuleOutcome:
    """A committee together with a rule-specific audit trace."""

    rule: str
    committee: tuple[int, ...]
    trace: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "committee", tuple(sorted(self.committee)))

    @property
    def W(self) -> frozenset[int]:
        return frozenset(self.committee)

    def __len__(self):
        return len(self.committee)

    def serialize(self) -> str:
        return serialize_outcome(self)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return "{" + ",".join(str(v) for v in sorted(value)) + "}"
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    if value is None:
        return "-"
    return str(value)


def serialize_outcome(outcome: RuleOutcome) -> str:
    """Stable text record: ``rule``, ``committee``, then one section per trace key.

    Scalars occupy a single line; sequences put one item per line; mappings
    put one ``key value`` pair per line with keys in sorted order; objects
    with a ``to_lines()`` method render themselves. Fractions
    print as ``a/b``, sets as ``{i,j}``.
    """
    lines = [f"rule {outcome.rule}", "committee " + ",".join(str(c) for c in outcome.committee)]
    for key, value in outcome.trace.items():
        lines.append(f"[{key}]")
        if hasattr(value, "to_lines"):
            lines.extend(value.to_lines())
        elif isinstance(value, Mapping):
            for k2 in sorted(value):
                lines.append(f"{_fmt(k2)} {_fmt(value[k2])}")
        elif isinstance(value, (list, tuple)):
            lines.extend(_fmt(item) for item in value)
        else:
            lines.append(_fmt(value))
    return "\n".join(lines) + "\n"
