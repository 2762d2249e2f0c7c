"""Canonical domain types, validation, and derived per-record quantities.

Raw records (SpatioTemporalPoint, EventRecord) mirror the CSV inputs.
World* types carry both the raw fields and the normalized world coordinates
so tooltips can always show original values. All types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

# Golden-angle hue stepping keeps neighbouring character hues far apart and
# never repeats for realistic character counts (first collision at k ~ 30000).
GOLDEN_ANGLE_DEG = 137.508
PALETTE_SATURATION = 0.65
PALETTE_LIGHTNESS = 0.55

HSL = tuple[float, float, float]


@dataclass(frozen=True)
class SpatioTemporalPoint:
    """One raw character observation: a location at an instant, with a weight."""

    character_id: str
    t: float
    x: float
    z: float
    impact: float = 1.0
    scenario_id: str = ""
    name: str = ""


@dataclass(frozen=True)
class EventRecord:
    """One raw event: a time span at a location, optionally linked to others."""

    event_id: str
    display_name: str
    t_start: float
    t_end: float
    x: float
    z: float
    scenario_id: str
    importance_override: float | None = None
    predecessors: tuple[str, ...] = ()


@dataclass(frozen=True)
class WorldPoint:
    """A point after normalization: world coordinates plus the raw record."""

    point_id: str
    raw: SpatioTemporalPoint
    y: float
    map_x: float
    map_z: float
    order: int  # global ordinal, stable tie-break for in-sphere sequencing

    @property
    def character_id(self) -> str:
        return self.raw.character_id

    @property
    def scenario_id(self) -> str:
        return self.raw.scenario_id

    @property
    def impact(self) -> float:
        return self.raw.impact

    @property
    def t(self) -> float:
        return self.raw.t


@dataclass(frozen=True)
class WorldEvent:
    """An event after normalization: world center, derived radius, raw record."""

    raw: EventRecord
    center_y: float
    radius: float
    map_x: float
    map_z: float

    @property
    def event_id(self) -> str:
        return self.raw.event_id

    @property
    def scenario_id(self) -> str:
        return self.raw.scenario_id

    @property
    def impact(self) -> float:
        # An event's impact factor and its sphere radius are the same number.
        return self.radius


@dataclass(frozen=True)
class CharacterTrack:
    """All observations of one character, strictly time-ordered."""

    character_id: str
    display_name: str
    points: tuple[WorldPoint, ...]
    color: HSL


@dataclass(frozen=True)
class ScenarioMap:
    """One geographic context: its footprint and the records placed on it."""

    scenario_id: str
    half_extent: tuple[float, float]  # (w/2, d/2) incl. padding, world units
    point_ids: tuple[str, ...]
    event_ids: tuple[str, ...]


@dataclass(frozen=True)
class NormalizedDataset:
    """The fully assembled dataset in world coordinates, ready for layout."""

    name: str
    tracks: tuple[CharacterTrack, ...]
    events: tuple[WorldEvent, ...]  # sorted by (center_y, event_id)
    scenarios: tuple[ScenarioMap, ...]  # sorted by scenario_id
    time_height: float
    xi_c_thre: float
    xi_e_thre: float
    config: dict[str, object] = field(default_factory=dict)

    def all_points(self) -> tuple[WorldPoint, ...]:
        return tuple(p for track in self.tracks for p in track.points)

    def scenario(self, scenario_id: str) -> ScenarioMap | None:
        for s in self.scenarios:
            if s.scenario_id == scenario_id:
                return s
        return None


def event_center(e: EventRecord) -> float:
    """Center time of an event: midpoint of its start and end."""
    return (e.t_start + e.t_end) / 2


def derive_event_impact(
    e: EventRecord,
    scale: float,
    clamp: tuple[float, float],
    time_span: float,
) -> float:
    """Event impact factor (= sphere radius), from duration or an override.

    The duration is normalized against the dataset's full time span before
    scaling, so radii are comparable across datasets with different units.
    An explicit importance_override bypasses the duration entirely; either
    way the result is clamped into [r_min, r_max].
    """
    r_min, r_max = clamp
    if e.importance_override is not None:
        value = e.importance_override
    else:
        duration_norm = (e.t_end - e.t_start) / time_span
        value = scale * duration_norm
    return min(max(value, r_min), r_max)


def assign_character_colors(character_ids: Iterable[str]) -> dict[str, HSL]:
    """Deterministic per-character HSL palette over the golden-angle hue walk."""
    palette: dict[str, HSL] = {}
    for k, cid in enumerate(sorted(set(character_ids))):
        hue = (k * GOLDEN_ANGLE_DEG) % 360.0
        palette[cid] = (hue, PALETTE_SATURATION, PALETTE_LIGHTNESS)
    return palette


@dataclass(frozen=True)
class ValidationReport:
    """All violations found in a raw dataset; empty errors means constructible."""

    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    n_characters: int = 0
    n_events: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def validate_dataset(
    points: Sequence[SpatioTemporalPoint],
    events: Sequence[EventRecord],
) -> ValidationReport:
    """Check every dataset invariant; the report is the result, never a raise."""
    errors: list[str] = []
    warnings: list[str] = []

    if not points and not events:
        errors.append("empty dataset: no character points and no events")

    by_char: dict[str, list[SpatioTemporalPoint]] = {}
    for i, p in enumerate(points):
        row = f"point {i} (character '{p.character_id}')"
        if not p.character_id:
            errors.append(f"{row}: missing character id")
        if not p.scenario_id:
            errors.append(f"{row}: missing scenario id")
        if not _finite(p.t, p.x, p.z, p.impact):
            errors.append(f"{row}: non-finite value")
        elif p.impact < 0:
            errors.append(f"{row}: negative impact {p.impact}")
        by_char.setdefault(p.character_id, []).append(p)

    for cid, pts in by_char.items():
        seen: set[float] = set()
        for p in pts:
            if p.t in seen:
                errors.append(f"character '{cid}': duplicate timestamp {p.t}")
            seen.add(p.t)
        ts = [p.t for p in pts]
        if ts != sorted(ts):
            warnings.append(f"character '{cid}': rows not in time order (will be sorted)")
        names = {p.name for p in pts if p.name}
        if len(names) > 1:
            warnings.append(f"character '{cid}': inconsistent display names {sorted(names)}")
        if "#" in cid:
            warnings.append(f"character id '{cid}' contains '#' (reserved for node ids)")

    seen_events: set[str] = set()
    event_ids = {e.event_id for e in events}
    for e in events:
        row = f"event '{e.event_id}'"
        if not e.event_id:
            errors.append("event with missing id")
        if e.event_id in seen_events:
            errors.append(f"duplicate event id '{e.event_id}'")
        seen_events.add(e.event_id)
        if not e.scenario_id:
            errors.append(f"{row}: missing scenario id")
        if not _finite(e.t_start, e.t_end, e.x, e.z):
            errors.append(f"{row}: non-finite value")
        elif e.t_start > e.t_end:
            errors.append(f"{row}: event time reversed (t_start {e.t_start} > t_end {e.t_end})")
        if e.importance_override is not None:
            if not math.isfinite(e.importance_override):
                errors.append(f"{row}: non-finite importance")
            elif e.importance_override < 0:
                errors.append(f"{row}: negative importance {e.importance_override}")
        for pred in e.predecessors:
            if pred not in event_ids:
                errors.append(f"{row}: unknown predecessor '{pred}'")
            if pred == e.event_id:
                errors.append(f"{row}: links to itself")

    return ValidationReport(
        errors=tuple(errors),
        warnings=tuple(warnings),
        n_characters=len(by_char),
        n_events=len(events),
    )
