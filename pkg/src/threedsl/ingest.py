"""CSV ingestion and space-time normalization.

Two delimited tables come in — character observations and events — and a
NormalizedDataset comes out: one shared vertical time axis scaled to the cube
height, and per-scenario ground coordinates centered and uniformly scaled so
every map has a comparable footprint regardless of the raw units.
"""

from __future__ import annotations

import csv
import io
import logging
import statistics
from dataclasses import dataclass
from typing import Sequence

from threedsl.errors import (
    DegenerateTimeRange,
    DuplicateEventId,
    MalformedRow,
    MissingHeader,
    ValidationFailed,
)
from threedsl.model import (
    CharacterTrack,
    EventRecord,
    NormalizedDataset,
    ScenarioMap,
    SpatioTemporalPoint,
    WorldEvent,
    WorldPoint,
    assign_character_colors,
    derive_event_impact,
    event_center,
    validate_dataset,
)

log = logging.getLogger(__name__)

CHARACTER_COLUMNS = ("character_id", "name", "t", "x", "z", "impact", "scenario_id")
EVENT_COLUMNS = (
    "event_id",
    "name",
    "t_start",
    "t_end",
    "x",
    "z",
    "scenario_id",
    "importance",
    "predecessors",
)

AUTO_MEDIAN = "auto-median"


@dataclass(frozen=True)
class IngestConfig:
    """Knobs of the normalization step; defaults suit the bundled datasets."""

    time_height: float = 10.0
    map_size: float = 4.0
    map_padding: float = 0.5
    radius_scale: float = 4.0
    radius_clamp: tuple[float, float] = (0.05, 2.0)
    xi_c_thre: float | str = AUTO_MEDIAN
    xi_e_thre: float | str = AUTO_MEDIAN

    def __post_init__(self) -> None:
        if not self.time_height > 0:
            raise ValueError(f"time_height must be positive, got {self.time_height}")
        if self.map_padding < 0:
            raise ValueError(f"map_padding must be non-negative, got {self.map_padding}")
        if not self.map_size > 0:
            raise ValueError(f"map_size must be positive, got {self.map_size}")
        r_min, r_max = self.radius_clamp
        if not 0 <= r_min <= r_max:
            raise ValueError(f"radius_clamp must satisfy 0 <= min <= max, got {self.radius_clamp}")
        for label, value in (("xi_c_thre", self.xi_c_thre), ("xi_e_thre", self.xi_e_thre)):
            if isinstance(value, str) and value != AUTO_MEDIAN:
                raise ValueError(f"{label} must be a number or '{AUTO_MEDIAN}', got {value!r}")


def _decode(text: str | bytes) -> str:
    return text.decode("utf-8") if isinstance(text, bytes) else text


def _rows(text: str | bytes) -> csv.reader:
    return csv.reader(io.StringIO(_decode(text), newline=""))


def _float(value: str, line_no: int, column: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise MalformedRow(line_no, f"column '{column}': not a number: {value!r}") from None


def _check_header(
    got: list[str], full: tuple[str, ...], optional: frozenset[str]
) -> tuple[str, ...]:
    """Header must be the full column list with any subset of optionals omitted."""
    header = tuple(h.strip() for h in got)
    it = iter(header)
    pending = next(it, None)
    for column in full:
        if pending == column:
            pending = next(it, None)
        elif column not in optional:
            raise MissingHeader(expected=",".join(full), got=",".join(header))
    if pending is not None:
        raise MissingHeader(expected=",".join(full), got=",".join(header))
    return header


def parse_characters_csv(text: str | bytes) -> list[SpatioTemporalPoint]:
    """Parse character observations; rows come back in file order."""
    reader = _rows(text)
    try:
        first = next(reader)
    except StopIteration:
        raise MissingHeader(expected=",".join(CHARACTER_COLUMNS), got="") from None
    header = _check_header(first, CHARACTER_COLUMNS, frozenset({"impact"}))
    points: list[SpatioTemporalPoint] = []
    for row in reader:
        line_no = reader.line_num
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRow(line_no, f"expected {len(header)} fields, got {len(row)}")
        rec = dict(zip(header, row))
        impact_text = rec.get("impact", "").strip()
        points.append(
            SpatioTemporalPoint(
                character_id=rec["character_id"].strip(),
                name=rec["name"].strip(),
                t=_float(rec["t"], line_no, "t"),
                x=_float(rec["x"], line_no, "x"),
                z=_float(rec["z"], line_no, "z"),
                impact=_float(impact_text, line_no, "impact") if impact_text else 1.0,
                scenario_id=rec.get("scenario_id", "").strip(),
            )
        )
    return points


def parse_events_csv(text: str | bytes) -> list[EventRecord]:
    """Parse event records; duplicate ids are rejected immediately."""
    reader = _rows(text)
    try:
        first = next(reader)
    except StopIteration:
        raise MissingHeader(expected=",".join(EVENT_COLUMNS), got="") from None
    header = _check_header(first, EVENT_COLUMNS, frozenset({"importance", "predecessors"}))
    events: list[EventRecord] = []
    seen: set[str] = set()
    for row in reader:
        line_no = reader.line_num
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRow(line_no, f"expected {len(header)} fields, got {len(row)}")
        rec = dict(zip(header, row))
        event_id = rec["event_id"].strip()
        if event_id in seen:
            raise DuplicateEventId(event_id)
        seen.add(event_id)
        importance_text = rec.get("importance", "").strip()
        predecessors = tuple(
            p.strip() for p in rec.get("predecessors", "").split(";") if p.strip()
        )
        events.append(
            EventRecord(
                event_id=event_id,
                display_name=rec["name"].strip(),
                t_start=_float(rec["t_start"], line_no, "t_start"),
                t_end=_float(rec["t_end"], line_no, "t_end"),
                x=_float(rec["x"], line_no, "x"),
                z=_float(rec["z"], line_no, "z"),
                scenario_id=rec["scenario_id"].strip(),
                importance_override=(
                    _float(importance_text, line_no, "importance") if importance_text else None
                ),
                predecessors=predecessors,
            )
        )
    return events


def serialize_characters_csv(points: Sequence[SpatioTemporalPoint]) -> str:
    """Inverse of parse_characters_csv; floats keep their exact values."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CHARACTER_COLUMNS)
    for p in points:
        writer.writerow(
            [p.character_id, p.name, repr(p.t), repr(p.x), repr(p.z), repr(p.impact), p.scenario_id]
        )
    return out.getvalue()


def serialize_events_csv(events: Sequence[EventRecord]) -> str:
    """Inverse of parse_events_csv; floats keep their exact values."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(EVENT_COLUMNS)
    for e in events:
        writer.writerow(
            [
                e.event_id,
                e.display_name,
                repr(e.t_start),
                repr(e.t_end),
                repr(e.x),
                repr(e.z),
                e.scenario_id,
                "" if e.importance_override is None else repr(e.importance_override),
                ";".join(e.predecessors),
            ]
        )
    return out.getvalue()


def _resolve_threshold(setting: float | str, values: Sequence[float]) -> float:
    if setting == AUTO_MEDIAN:
        return float(statistics.median(values)) if values else 0.0
    return float(setting)


def normalize_space_time(
    points: Sequence[SpatioTemporalPoint],
    events: Sequence[EventRecord],
    cfg: IngestConfig | None = None,
    name: str = "dataset",
) -> NormalizedDataset:
    """Map raw records into the cube: shared time axis, per-scenario ground.

    Time is one global affine map onto [0, H]. Ground coordinates are handled
    per scenario: the bounding box of that scenario's points and events is
    centered on the local origin and uniformly scaled so its longer side
    equals map_size, preserving aspect ratio.
    """
    cfg = cfg or IngestConfig()
    report = validate_dataset(points, events)
    for w in report.warnings:
        log.warning("%s: %s", name, w)
    if not report.ok:
        raise ValidationFailed(report.errors)

    times = [p.t for p in points] + [t for e in events for t in (e.t_start, e.t_end)]
    t_min, t_max = min(times), max(times)
    if t_min == t_max:
        raise DegenerateTimeRange(t_min)
    span = t_max - t_min
    height = cfg.time_height

    def to_y(t: float) -> float:
        return (t - t_min) / span * height

    scenario_ids = sorted(
        {p.scenario_id for p in points} | {e.scenario_id for e in events}
    )
    transforms: dict[str, tuple[float, float, float]] = {}  # (cx, cz, scale)
    extents: dict[str, tuple[float, float]] = {}
    for sid in scenario_ids:
        xs = [p.x for p in points if p.scenario_id == sid]
        zs = [p.z for p in points if p.scenario_id == sid]
        xs += [e.x for e in events if e.scenario_id == sid]
        zs += [e.z for e in events if e.scenario_id == sid]
        x_min, x_max = min(xs), max(xs)
        z_min, z_max = min(zs), max(zs)
        width, depth = x_max - x_min, z_max - z_min
        longer = max(width, depth)
        scale = cfg.map_size / longer if longer > 0 else 1.0
        transforms[sid] = ((x_min + x_max) / 2, (z_min + z_max) / 2, scale)
        extents[sid] = (
            width * scale / 2 + cfg.map_padding,
            depth * scale / 2 + cfg.map_padding,
        )

    def to_map(x: float, z: float, sid: str) -> tuple[float, float]:
        cx, cz, scale = transforms[sid]
        return (x - cx) * scale, (z - cz) * scale

    world_events: list[WorldEvent] = []
    for e in events:
        mx, mz = to_map(e.x, e.z, e.scenario_id)
        world_events.append(
            WorldEvent(
                raw=e,
                center_y=to_y(event_center(e)),
                radius=derive_event_impact(e, cfg.radius_scale, cfg.radius_clamp, span),
                map_x=mx,
                map_z=mz,
            )
        )
    world_events.sort(key=lambda w: (w.center_y, w.event_id))

    by_char: dict[str, list[SpatioTemporalPoint]] = {}
    for p in points:
        by_char.setdefault(p.character_id, []).append(p)
    colors = assign_character_colors(by_char)

    tracks: list[CharacterTrack] = []
    order = 0
    for cid in sorted(by_char):
        raw_pts = sorted(by_char[cid], key=lambda p: p.t)
        world_pts = []
        for k, p in enumerate(raw_pts):
            mx, mz = to_map(p.x, p.z, p.scenario_id)
            world_pts.append(
                WorldPoint(
                    point_id=f"{cid}#{k}",
                    raw=p,
                    y=to_y(p.t),
                    map_x=mx,
                    map_z=mz,
                    order=order,
                )
            )
            order += 1
        display = next((p.name for p in raw_pts if p.name), cid)
        tracks.append(
            CharacterTrack(
                character_id=cid,
                display_name=display,
                points=tuple(world_pts),
                color=colors[cid],
            )
        )

    scenarios = tuple(
        ScenarioMap(
            scenario_id=sid,
            half_extent=extents[sid],
            point_ids=tuple(
                p.point_id for t in tracks for p in t.points if p.scenario_id == sid
            ),
            event_ids=tuple(w.event_id for w in world_events if w.scenario_id == sid),
        )
        for sid in scenario_ids
    )

    return NormalizedDataset(
        name=name,
        tracks=tuple(tracks),
        events=tuple(world_events),
        scenarios=scenarios,
        time_height=height,
        xi_c_thre=_resolve_threshold(cfg.xi_c_thre, [p.impact for p in points]),
        xi_e_thre=_resolve_threshold(cfg.xi_e_thre, [w.radius for w in world_events]),
        config={
            "time_height": cfg.time_height,
            "map_size": cfg.map_size,
            "map_padding": cfg.map_padding,
            "radius_scale": cfg.radius_scale,
            "radius_clamp": list(cfg.radius_clamp),
            "xi_c_thre": cfg.xi_c_thre,
            "xi_e_thre": cfg.xi_e_thre,
        },
    )
