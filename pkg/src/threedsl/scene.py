"""Scene assembly: four laid-out view variants plus canonical serialization.

A scene holds the same dataset four ways — characters or events as the
organizing perspective, each at an overview or a detail level. Visibility at
each level is a strict partition by impact threshold; both perspectives of
one level share a single time-layout run because they see the same visible
subset. The document serializes to canonical JSON (sorted keys, shortest
round-trip numbers) so builds are comparable byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from threedsl.errors import CyclicEventLinks, UnknownEvent, UnsupportedSceneVersion
from threedsl.geometry import Polyline3D, distance, spline_through
from threedsl.layout_geomap import GeomapConfig, MapPlacement, place_map_detail, place_maps_overview
from threedsl.layout_time import TimeLayoutParams, optimize_time_layout
from threedsl.model import HSL, NormalizedDataset, WorldEvent, WorldPoint

SCENE_VERSION = "3dsl-scene/1"
VARIANT_KEYS = (
    "characters_overview",
    "characters_detail",
    "events_overview",
    "events_detail",
)
OVERVIEW = "overview"
DETAIL = "detail"

# Rendering hints for character points: radius scales with impact, floored so
# zero-impact points remain visible and pickable.
POINT_RADIUS_SCALE = 0.06
POINT_RADIUS_MIN = 0.03

Triple = tuple[float, float, float]


@dataclass(frozen=True)
class PointNode:
    """One character observation as rendered in a characters variant."""

    id: str
    position: Triple
    radius: float
    character_id: str
    scenario_id: str


@dataclass(frozen=True)
class EventNode:
    """One event bounding sphere as rendered in an events variant."""

    id: str
    position: Triple
    radius: float
    scenario_id: str


@dataclass(frozen=True)
class LayoutedView:
    """Everything one variant renders: nodes of its perspective plus lines."""

    point_nodes: tuple[PointNode, ...] = ()
    event_nodes: tuple[EventNode, ...] = ()
    polylines: tuple[Polyline3D, ...] = ()


@dataclass(frozen=True)
class SceneDocument:
    """The complete compiled scene; the JSON form of this is the viewer API."""

    meta: dict
    palette: dict[str, HSL]
    maps_overview: tuple[MapPlacement, ...]
    maps_detail: tuple[MapPlacement, ...]
    variants: dict[str, LayoutedView]
    tooltips: dict[str, dict]

    def __post_init__(self) -> None:
        if tuple(sorted(self.variants)) != tuple(sorted(VARIANT_KEYS)):
            raise ValueError(f"variants must be exactly {VARIANT_KEYS}")


@dataclass(frozen=True)
class LocalView:
    """Character geometry clipped to one event's bounding sphere."""

    event_id: str
    lod: str
    point_nodes: tuple[PointNode, ...]
    segments: tuple[Polyline3D, ...]


def filter_visibility(items: Sequence, threshold: float, mode: str) -> list:
    """Overview keeps impact strictly above the threshold; detail the rest."""
    if mode == OVERVIEW:
        return [it for it in items if it.impact > threshold]
    if mode == DETAIL:
        return [it for it in items if it.impact <= threshold]
    raise ValueError(f"unknown visibility mode {mode!r}")


def check_event_links(events: Sequence[WorldEvent]) -> None:
    """Reject predecessor graphs with cycles (Kahn peeling)."""
    ids = {e.event_id for e in events}
    out_edges: dict[str, list[str]] = {eid: [] for eid in ids}
    in_deg = {eid: 0 for eid in ids}
    for e in events:
        for pred in e.raw.predecessors:
            if pred in ids:
                out_edges[pred].append(e.event_id)
                in_deg[e.event_id] += 1
    queue = [eid for eid in ids if in_deg[eid] == 0]
    seen = 0
    while queue:
        eid = queue.pop()
        seen += 1
        for succ in out_edges[eid]:
            in_deg[succ] -= 1
            if in_deg[succ] == 0:
                queue.append(succ)
    if seen != len(ids):
        involved = sorted(eid for eid in ids if in_deg[eid] > 0)
        raise CyclicEventLinks(involved)


def build_event_chain(
    events: Sequence[WorldEvent], declared: bool | None = None
) -> list[list[str]]:
    """Orderings of event ids to be connected by sequence lines.

    With declared predecessor links, each link is an edge and edges merge
    into maximal unambiguous paths; without links, all events form one
    chronological chain. `declared` can be forced by the caller so a
    filtered subset still follows the dataset-wide convention.
    """
    check_event_links(events)
    ordered = sorted(events, key=lambda e: (e.center_y, e.event_id))
    if declared is None:
        declared = any(e.raw.predecessors for e in events)
    if not declared:
        return [[e.event_id for e in ordered]] if len(ordered) >= 2 else []

    ids = [e.event_id for e in ordered]
    index = {eid: i for i, eid in enumerate(ids)}
    succs: dict[str, list[str]] = {eid: [] for eid in ids}
    in_deg = {eid: 0 for eid in ids}
    out_deg = {eid: 0 for eid in ids}
    for e in ordered:
        for pred in e.raw.predecessors:
            if pred in index:
                succs[pred].append(e.event_id)
                out_deg[pred] += 1
                in_deg[e.event_id] += 1
    for eid in ids:
        succs[eid].sort(key=index.__getitem__)

    chains: list[list[str]] = []
    for eid in ids:
        if out_deg[eid] == 0:
            continue
        if in_deg[eid] == 1 and out_deg[eid] == 1:
            continue  # interior of some chain; consumed while following it
        for nxt in succs[eid]:
            chain = [eid, nxt]
            while in_deg[chain[-1]] == 1 and out_deg[chain[-1]] == 1:
                chain.append(succs[chain[-1]][0])
            chains.append(chain)
    return chains


def _point_radius(impact: float) -> float:
    return max(POINT_RADIUS_MIN, POINT_RADIUS_SCALE * impact)


def _split_runs(items: Iterable, scenario_of) -> list[list]:
    """Consecutive same-scenario runs, each long enough to draw."""
    runs: list[list] = []
    current: list = []
    current_sid: str | None = None
    for it in items:
        sid = scenario_of(it)
        if current and sid != current_sid:
            runs.append(current)
            current = []
        current.append(it)
        current_sid = sid
    if current:
        runs.append(current)
    return [r for r in runs if len(r) >= 2]


def build_scene(
    dataset: NormalizedDataset,
    time_params: TimeLayoutParams | None = None,
    geomap_cfg: GeomapConfig | None = None,
    samples_per_segment: int = 16,
) -> SceneDocument:
    """Compile the dataset into all four variants plus maps and tooltips."""
    time_params = time_params or TimeLayoutParams()
    geomap_cfg = geomap_cfg or GeomapConfig()
    check_event_links(dataset.events)
    declared = any(e.raw.predecessors for e in dataset.events)

    overview_maps = tuple(place_maps_overview(dataset, geomap_cfg))
    detail_maps = tuple(
        place_map_detail(dataset, s.scenario_id) for s in dataset.scenarios
    )
    map_center = {p.scenario_id: p.center for p in overview_maps}

    all_points = dataset.all_points()
    palette = {t.character_id: t.color for t in dataset.tracks}

    variants: dict[str, LayoutedView] = {}
    for lod in (OVERVIEW, DETAIL):
        pts_vis = filter_visibility(all_points, dataset.xi_c_thre, lod)
        evs_vis = filter_visibility(dataset.events, dataset.xi_e_thre, lod)
        # Both perspectives of one level see the same visible subset, so one
        # deterministic layout run serves them both identically.
        layout = optimize_time_layout(pts_vis, evs_vis, time_params)

        def point_pos(p: WorldPoint) -> Triple:
            y = layout.point_y_new[p.point_id]
            if lod == OVERVIEW:
                cx, cz = map_center[p.scenario_id]
                return (cx + p.map_x, y, cz + p.map_z)
            return (p.map_x, y, p.map_z)

        def event_pos(e: WorldEvent) -> Triple:
            y = layout.event_y_new[e.event_id]
            if lod == OVERVIEW:
                cx, cz = map_center[e.scenario_id]
                return (cx + e.map_x, y, cz + e.map_z)
            return (e.map_x, y, e.map_z)

        point_nodes = tuple(
            PointNode(
                id=p.point_id,
                position=point_pos(p),
                radius=_point_radius(p.impact),
                character_id=p.character_id,
                scenario_id=p.scenario_id,
            )
            for p in sorted(pts_vis, key=lambda p: p.order)
        )
        char_lines: list[Polyline3D] = []
        visible_ids = {p.point_id for p in pts_vis}
        for track in dataset.tracks:
            track_pts = [p for p in track.points if p.point_id in visible_ids]
            groups = (
                [track_pts]
                if lod == OVERVIEW
                else _split_runs(track_pts, lambda p: p.scenario_id)
            )
            for group in groups:
                if len(group) < 2:
                    continue
                line = spline_through(
                    [point_pos(p) for p in group],
                    samples_per_segment,
                    source_id=track.character_id,
                    scenario_id=group[0].scenario_id if lod == DETAIL else None,
                    color=track.color,
                )
                if line is not None:
                    char_lines.append(line)

        evs_sorted = sorted(evs_vis, key=lambda e: (e.center_y, e.event_id))
        event_nodes = tuple(
            EventNode(
                id=e.event_id,
                position=event_pos(e),
                radius=e.radius,
                scenario_id=e.scenario_id,
            )
            for e in evs_sorted
        )
        by_id = {e.event_id: e for e in evs_vis}
        chain_lines: list[Polyline3D] = []
        for chain in build_event_chain(evs_vis, declared=declared):
            members = [by_id[eid] for eid in chain]
            groups = (
                [members]
                if lod == OVERVIEW
                else _split_runs(members, lambda e: e.scenario_id)
            )
            source = "chain:" + "+".join(chain)
            for group in groups:
                if len(group) < 2:
                    continue
                line = spline_through(
                    [event_pos(e) for e in group],
                    samples_per_segment,
                    source_id=source,
                    scenario_id=group[0].scenario_id if lod == DETAIL else None,
                )
                if line is not None:
                    chain_lines.append(line)

        variants[f"characters_{lod}"] = LayoutedView(
            point_nodes=point_nodes, polylines=tuple(char_lines)
        )
        variants[f"events_{lod}"] = LayoutedView(
            event_nodes=event_nodes, polylines=tuple(chain_lines)
        )

    tooltips: dict[str, dict] = {}
    display = {t.character_id: t.display_name for t in dataset.tracks}
    for p in all_points:
        tooltips[p.point_id] = {
            "kind": "point",
            "name": display[p.character_id],
            "t": p.raw.t,
            "x": p.raw.x,
            "z": p.raw.z,
            "scenario": p.scenario_id,
            "impact": p.impact,
        }
    for e in dataset.events:
        tooltips[e.event_id] = {
            "kind": "event",
            "name": e.raw.display_name,
            "t_start": e.raw.t_start,
            "t_end": e.raw.t_end,
            "x": e.raw.x,
            "z": e.raw.z,
            "scenario": e.scenario_id,
            "impact": e.radius,
        }

    meta = {
        "name": dataset.name,
        "version": SCENE_VERSION,
        "time_height": dataset.time_height,
        "xi_c_thre": dataset.xi_c_thre,
        "xi_e_thre": dataset.xi_e_thre,
        "config": {
            **dataset.config,
            "delta_e": time_params.delta_e,
            "y0": time_params.y0,
            "rho_min": geomap_cfg.rho_min,
            "rho_step": geomap_cfg.rho_step,
            "margin": geomap_cfg.margin,
            "samples_per_segment": samples_per_segment,
        },
    }
    return SceneDocument(
        meta=meta,
        palette=palette,
        maps_overview=overview_maps,
        maps_detail=detail_maps,
        variants=variants,
        tooltips=tooltips,
    )


def local_character_view(scene: SceneDocument, event_id: str) -> LocalView:
    """Character nodes and line segments inside one event's bounding sphere."""
    found: tuple[str, EventNode] | None = None
    for lod in (OVERVIEW, DETAIL):
        for node in scene.variants[f"events_{lod}"].event_nodes:
            if node.id == event_id:
                found = (lod, node)
                break
        if found:
            break
    if found is None:
        raise UnknownEvent(event_id)
    lod, target = found
    characters = scene.variants[f"characters_{lod}"]

    def inside(pos: Triple) -> bool:
        return distance(pos, target.position) <= target.radius

    points = tuple(p for p in characters.point_nodes if inside(p.position))
    member_characters = {p.character_id for p in points}
    segments: list[Polyline3D] = []
    for line in characters.polylines:
        # Only involved characters appear in the local view: a line merely
        # passing through the sphere does not belong to the event's story.
        if line.source_id not in member_characters:
            continue
        if lod == DETAIL and line.scenario_id not in (None, target.scenario_id):
            continue
        run: list[Triple] = []
        for s in line.samples:
            if inside(s):
                run.append(s)
            else:
                if len(run) >= 2:
                    segments.append(
                        Polyline3D(tuple(run), line.source_id, line.scenario_id, line.color)
                    )
                run = []
        if len(run) >= 2:
            segments.append(
                Polyline3D(tuple(run), line.source_id, line.scenario_id, line.color)
            )
    return LocalView(
        event_id=event_id, lod=lod, point_nodes=points, segments=tuple(segments)
    )


def _placement_payload(p: MapPlacement) -> dict:
    return {
        "scenario_id": p.scenario_id,
        "mode": p.mode,
        "center": list(p.center),
        "half_extent": list(p.half_extent),
        "rho": p.rho,
        "theta": p.theta,
        "angular_extent": p.angular_extent,
    }


def _polyline_payload(line: Polyline3D) -> dict:
    return {
        "samples": [list(s) for s in line.samples],
        "source_id": line.source_id,
        "scenario_id": line.scenario_id,
        "color": None if line.color is None else list(line.color),
    }


def _view_payload(view: LayoutedView) -> dict:
    return {
        "point_nodes": [
            {
                "id": n.id,
                "position": list(n.position),
                "radius": n.radius,
                "character_id": n.character_id,
                "scenario_id": n.scenario_id,
            }
            for n in view.point_nodes
        ],
        "event_nodes": [
            {
                "id": n.id,
                "position": list(n.position),
                "radius": n.radius,
                "scenario_id": n.scenario_id,
            }
            for n in view.event_nodes
        ],
        "polylines": [_polyline_payload(line) for line in view.polylines],
    }


def export_scene_json(scene: SceneDocument) -> bytes:
    """Canonical UTF-8 JSON: sorted keys, exact floats, one trailing LF."""
    payload = {
        "meta": scene.meta,
        "palette": {cid: list(color) for cid, color in scene.palette.items()},
        "maps": {
            "overview": [_placement_payload(p) for p in scene.maps_overview],
            "detail": {p.scenario_id: _placement_payload(p) for p in scene.maps_detail},
        },
        "variants": {key: _view_payload(v) for key, v in scene.variants.items()},
        "tooltips": scene.tooltips,
    }
    text = json.dumps(
        payload, sort_keys=True, separators=(",", ":"), allow_nan=False, ensure_ascii=False
    )
    return (text + "\n").encode("utf-8")


def _triple(values: Sequence[float]) -> Triple:
    x, y, z = values
    return (float(x), float(y), float(z))


def _parse_placement(data: dict) -> MapPlacement:
    cx, cz = data["center"]
    hw, hd = data["half_extent"]
    return MapPlacement(
        scenario_id=data["scenario_id"],
        mode=data["mode"],
        center=(cx, cz),
        half_extent=(hw, hd),
        rho=data["rho"],
        theta=data["theta"],
        angular_extent=data["angular_extent"],
    )


def _parse_view(data: dict) -> LayoutedView:
    return LayoutedView(
        point_nodes=tuple(
            PointNode(
                id=n["id"],
                position=_triple(n["position"]),
                radius=n["radius"],
                character_id=n["character_id"],
                scenario_id=n["scenario_id"],
            )
            for n in data["point_nodes"]
        ),
        event_nodes=tuple(
            EventNode(
                id=n["id"],
                position=_triple(n["position"]),
                radius=n["radius"],
                scenario_id=n["scenario_id"],
            )
            for n in data["event_nodes"]
        ),
        polylines=tuple(
            Polyline3D(
                samples=tuple(_triple(s) for s in line["samples"]),
                source_id=line["source_id"],
                scenario_id=line["scenario_id"],
                color=None if line["color"] is None else tuple(line["color"]),
            )
            for line in data["polylines"]
        ),
    )


def parse_scene_json(data: bytes | str) -> SceneDocument:
    """Inverse of export_scene_json; rejects unknown version strings."""
    payload = json.loads(data)
    version = payload.get("meta", {}).get("version")
    if version != SCENE_VERSION:
        raise UnsupportedSceneVersion(str(version))
    return SceneDocument(
        meta=payload["meta"],
        palette={cid: tuple(c) for cid, c in payload["palette"].items()},
        maps_overview=tuple(_parse_placement(p) for p in payload["maps"]["overview"]),
        maps_detail=tuple(
            _parse_placement(p)
            for _, p in sorted(payload["maps"]["detail"].items())
        ),
        variants={key: _parse_view(v) for key, v in payload["variants"].items()},
        tooltips=payload["tooltips"],
    )
