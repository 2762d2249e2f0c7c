"""Error types raised by the storyline compiler.

Everything user-facing derives from StorylineError so the CLI can map any
domain failure to exit code 1 while I/O and usage problems stay exit code 2.
"""

from __future__ import annotations


class StorylineError(Exception):
    """Base class for domain errors (bad data, infeasible layout, lookups)."""


class MissingHeader(StorylineError):
    def __init__(self, expected: str, got: str):
        super().__init__(f"bad CSV header: expected '{expected}', got '{got}'")
        self.expected = expected
        self.got = got


class MalformedRow(StorylineError):
    def __init__(self, line_no: int, reason: str = ""):
        msg = f"malformed row at line {line_no}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.line_no = line_no


class DuplicateEventId(StorylineError):
    def __init__(self, event_id: str):
        super().__init__(f"duplicate event id '{event_id}'")
        self.event_id = event_id


class DegenerateTimeRange(StorylineError):
    def __init__(self, t: float):
        super().__init__(f"all timestamps equal {t}; time axis cannot be normalized")
        self.t = t


class DegenerateControls(StorylineError):
    def __init__(self, index: int):
        super().__init__(f"coincident consecutive control points at index {index}")
        self.index = index


class CyclicEventLinks(StorylineError):
    def __init__(self, involved: tuple[str, ...] = ()):
        detail = f" involving {', '.join(involved)}" if involved else ""
        super().__init__(f"declared event links form a cycle{detail}")
        self.involved = involved


class InfeasibleAngularBudget(StorylineError):
    def __init__(self, required: float, available: float):
        super().__init__(
            f"map extents plus margins need {required:.4f} rad "
            f"but only {available:.4f} rad are available"
        )
        self.required = required
        self.available = available


class UnknownScenario(StorylineError):
    def __init__(self, scenario_id: str):
        super().__init__(f"unknown scenario '{scenario_id}'")
        self.scenario_id = scenario_id


class UnknownEvent(StorylineError):
    def __init__(self, event_id: str):
        super().__init__(f"unknown event '{event_id}'")
        self.event_id = event_id


class ValidationFailed(StorylineError):
    def __init__(self, errors: tuple[str, ...]):
        super().__init__(f"dataset invalid: {len(errors)} error(s)")
        self.errors = errors


class UnsupportedSceneVersion(StorylineError):
    def __init__(self, version: str):
        super().__init__(f"unsupported scene version {version!r}")
        self.version = version
