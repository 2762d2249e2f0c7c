"""Sphere membership tests and cubic-spline polyline generation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from threedsl.errors import DegenerateControls
from threedsl.model import WorldEvent, WorldPoint

Triple = tuple[float, float, float]


@dataclass(frozen=True)
class Polyline3D:
    """A sampled 3D curve ready for rendering."""

    samples: tuple[Triple, ...]
    source_id: str
    scenario_id: str | None = None
    color: tuple[float, float, float] | None = None

    def __post_init__(self) -> None:
        if len(self.samples) < 2:
            raise ValueError(f"polyline '{self.source_id}' needs >= 2 samples")
        for s in self.samples:
            if not all(math.isfinite(v) for v in s):
                raise ValueError(f"polyline '{self.source_id}' has non-finite sample {s}")


def point_position(p: WorldPoint) -> Triple:
    return (p.map_x, p.y, p.map_z)


def event_position(e: WorldEvent) -> Triple:
    return (e.map_x, e.center_y, e.map_z)


def distance(a: Triple, b: Triple) -> float:
    dx, dy, dz = a[0] - b[0], a[1] - b[1], a[2] - b[2]
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def point_event_membership(p: WorldPoint, e: WorldEvent) -> bool:
    """True iff the point sits inside or on the event's impact sphere."""
    return distance(point_position(p), event_position(e)) <= e.radius


def resolve_membership(p: WorldPoint, events: Sequence[WorldEvent]) -> str | None:
    """Unique event assignment: nearest containing sphere, ties to smaller id."""
    best: tuple[float, str] | None = None
    pos = point_position(p)
    for e in events:
        d = distance(pos, event_position(e))
        if d <= e.radius:
            key = (d, e.event_id)
            if best is None or key < best:
                best = key
    return None if best is None else best[1]


def chord_parameters(controls: Sequence[Triple]) -> list[float]:
    """Cumulative chord-length parameter; raises on a zero-length chord."""
    params = [0.0]
    for i in range(1, len(controls)):
        chord = distance(controls[i - 1], controls[i])
        cumulative = params[-1] + chord
        # A chord so short it vanishes against the accumulated length breaks
        # the strict monotonicity the spline fit requires; treat it as
        # coincident rather than letting the fit fail later.
        if cumulative <= params[-1]:
            raise DegenerateControls(i)
        params.append(cumulative)
    return params


def cubic_spline(
    controls: Sequence[Triple],
    samples_per_segment: int = 16,
    source_id: str = "",
    scenario_id: str | None = None,
    color: tuple[float, float, float] | None = None,
) -> Polyline3D:
    """Natural cubic spline through the controls over chord-length parameter.

    Each coordinate is fitted independently; the sample grid puts
    samples_per_segment points on every inter-control span plus the final
    control, and the control points themselves are emitted exactly.
    """
    if len(controls) < 2:
        raise ValueError("spline needs >= 2 control points")
    if samples_per_segment < 1:
        raise ValueError("samples_per_segment must be >= 1")
    params = np.asarray(chord_parameters(controls))
    spline = CubicSpline(params, np.asarray(controls, dtype=float), bc_type="natural")
    grid = np.concatenate(
        [
            np.linspace(params[i], params[i + 1], samples_per_segment, endpoint=False)
            for i in range(len(controls) - 1)
        ]
        + [params[-1:]]
    )
    values = spline(grid)
    # Knot rows are replaced with the exact control triples: interpolation is
    # exact mathematically, but evaluating at a stored float parameter may be
    # off by one ulp, and downstream equality checks rely on exact controls.
    for i, c in enumerate(controls):
        values[i * samples_per_segment] = c
    return Polyline3D(
        samples=tuple(tuple(float(v) for v in row) for row in values),
        source_id=source_id,
        scenario_id=scenario_id,
        color=color,
    )


def spline_through(
    controls: Sequence[Triple],
    samples_per_segment: int = 16,
    source_id: str = "",
    scenario_id: str | None = None,
    color: tuple[float, float, float] | None = None,
) -> Polyline3D | None:
    """cubic_spline with coincident consecutive controls merged away.

    Layout can legitimately park two controls on the same spot (equal
    timestamps after sequencing never happen, but identical ground tracks
    do); merging keeps the curve instead of failing. Returns None when
    fewer than two distinct controls remain.
    """
    deduped: list[Triple] = []
    for c in controls:
        if not deduped or c != deduped[-1]:
            deduped.append(c)
    if len(deduped) < 2:
        return None
    return cubic_spline(deduped, samples_per_segment, source_id, scenario_id, color)
