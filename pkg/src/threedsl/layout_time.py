"""Three-step time-axis layout: respace spheres, carry members, shift the rest.

Events are respaced along the time axis so their bounding spheres sit a fixed
boundary gap apart; points inside a sphere ride along with it and are then
sequentialized at uniform spacing inside it; every other point is moved by a
monotone piecewise-linear remap anchored at the event centers, which preserves
relative order.

This module is deliberately plain Python arithmetic (no array math): each
formula is written in one canonical form so that results are reproducible
bit-for-bit across runs and against independent re-implementations of the
same form.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Mapping, Sequence

from threedsl.geometry import resolve_membership
from threedsl.model import WorldEvent, WorldPoint


@dataclass(frozen=True)
class TimeLayoutParams:
    """Vertical spacing knobs: boundary gap and the first sphere's new center."""

    delta_e: float = 0.2
    y0: float = 0.0

    def __post_init__(self) -> None:
        if self.delta_e < 0:
            raise ValueError(f"delta_e must be non-negative, got {self.delta_e}")


@dataclass(frozen=True)
class TimeLayoutResult:
    """New vertical coordinates plus the remap that produced them."""

    event_y_new: dict[str, float]
    point_y_new: dict[str, float]
    membership: dict[str, str | None]
    monotone_map: tuple[tuple[float, float], ...]


def chronological(events: Sequence[WorldEvent]) -> list[WorldEvent]:
    """Events by original center, ties by id — the canonical sphere order."""
    return sorted(events, key=lambda e: (e.center_y, e.event_id))


def reposition_event_spheres(
    events: Sequence[WorldEvent], params: TimeLayoutParams
) -> dict[str, float]:
    """New sphere centers: consecutive boundaries sit exactly delta_e apart.

    Centers follow the cumulative-sum form: each center is y0 plus the running
    sum of (delta_e + previous radius + current radius). The accumulation
    order below is the canonical arithmetic; do not refactor it.
    """
    ordered = chronological(events)
    out: dict[str, float] = {}
    gap_sum = 0.0
    for j, e in enumerate(ordered):
        if j > 0:
            gap_sum += params.delta_e + ordered[j - 1].radius + e.radius
        out[e.event_id] = params.y0 + gap_sum
    return out


def shift_member_points(
    points: Sequence[WorldPoint],
    membership: Mapping[str, str | None],
    old_centers: Mapping[str, float],
    new_centers: Mapping[str, float],
) -> dict[str, float]:
    """Carry each member point by exactly its sphere's center displacement."""
    out: dict[str, float] = {}
    for p in points:
        eid = membership.get(p.point_id)
        if eid is not None:
            out[p.point_id] = p.y + (new_centers[eid] - old_centers[eid])
    return out


def sequentialize_points_in_sphere(
    center_new: float, radius: float, members: Sequence[WorldPoint]
) -> dict[str, float]:
    """Spread a sphere's members at uniform vertical spacing, centered.

    Spacing is the sphere's diameter split evenly over the member count; the
    offsets are symmetric around the center, so every member stays strictly
    inside the sphere. Order follows original time, ties by character then
    arrival order.
    """
    ordered = sorted(members, key=lambda p: (p.raw.t, p.character_id, p.order))
    n = len(ordered)
    dc = 2.0 * radius / n
    return {
        p.point_id: center_new + (i - (n - 1) / 2) * dc for i, p in enumerate(ordered)
    }


def build_anchor_map(
    old_centers: Sequence[float], new_centers: Sequence[float]
) -> tuple[tuple[float, float], ...]:
    """Anchor pairs (old y, new y), deduplicated on equal old coordinates."""
    groups: dict[float, list[float]] = {}
    for old, new in zip(old_centers, new_centers):
        groups.setdefault(old, []).append(new)
    return tuple(
        (old, sum(news) / len(news)) for old, news in sorted(groups.items())
    )


def evaluate_anchor_map(anchors: Sequence[tuple[float, float]], y: float) -> float:
    """Piecewise-linear remap; identity slope beyond the outermost anchors."""
    if not anchors:
        return y
    olds = [a[0] for a in anchors]
    if y <= olds[0]:
        return anchors[0][1] + (y - olds[0])
    if y >= olds[-1]:
        return anchors[-1][1] + (y - olds[-1])
    hi = bisect_right(olds, y)
    x_lo, n_lo = anchors[hi - 1]
    x_hi, n_hi = anchors[hi]
    return n_lo + (y - x_lo) * (n_hi - n_lo) / (x_hi - x_lo)


def shift_unaffiliated_points(
    points: Sequence[WorldPoint], anchors: Sequence[tuple[float, float]]
) -> dict[str, float]:
    """Remap every non-member point through the monotone anchor map."""
    return {p.point_id: evaluate_anchor_map(anchors, p.y) for p in points}


def optimize_time_layout(
    points: Sequence[WorldPoint],
    events: Sequence[WorldEvent],
    params: TimeLayoutParams | None = None,
) -> TimeLayoutResult:
    """Compose the full pipeline over one visible subset of the dataset.

    Membership candidates are restricted to events of the point's own
    scenario: ground coordinates are scenario-local, so distances across
    scenarios are not comparable.
    """
    params = params or TimeLayoutParams()
    ordered = chronological(events)

    membership: dict[str, str | None] = {}
    for p in points:
        candidates = [e for e in ordered if e.scenario_id == p.scenario_id]
        membership[p.point_id] = resolve_membership(p, candidates)

    event_y_new = reposition_event_spheres(ordered, params)
    old_centers = {e.event_id: e.center_y for e in ordered}

    members_by_event: dict[str, list[WorldPoint]] = {}
    unaffiliated: list[WorldPoint] = []
    for p in points:
        eid = membership[p.point_id]
        if eid is None:
            unaffiliated.append(p)
        else:
            members_by_event.setdefault(eid, []).append(p)

    point_y_new: dict[str, float] = {}
    for e in ordered:
        members = members_by_event.get(e.event_id)
        if members:
            point_y_new.update(
                sequentialize_points_in_sphere(event_y_new[e.event_id], e.radius, members)
            )

    anchors = build_anchor_map(
        [e.center_y for e in ordered], [event_y_new[e.event_id] for e in ordered]
    )
    point_y_new.update(shift_unaffiliated_points(unaffiliated, anchors))

    return TimeLayoutResult(
        event_y_new=event_y_new,
        point_y_new={p.point_id: point_y_new[p.point_id] for p in points},
        membership=membership,
        monotone_map=anchors,
    )
