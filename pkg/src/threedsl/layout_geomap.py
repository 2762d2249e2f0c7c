"""Scenario map placement on the ground plane.

The detail level shows one map in plain Cartesian coordinates at the origin.
The overview arranges every scenario map in polar coordinates around the
viewer: radial distance follows importance rank (more important maps sit
closer), and angles come from a deterministic 1D force relaxation that pushes
maps apart until every pair clears a minimum angular margin.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from threedsl.errors import InfeasibleAngularBudget, UnknownScenario
from threedsl.model import NormalizedDataset, ScenarioMap

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
GOLDEN_ANGLE_RAD = 2.39996


@dataclass(frozen=True)
class GeomapConfig:
    """Radial ladder and angular relaxation knobs."""

    rho_min: float = 2.0
    rho_step: float = 1.5
    margin: float = math.radians(10.0)
    max_iter: int = 200
    decay: float = 0.9
    stop_tol: float = 1e-4

    def __post_init__(self) -> None:
        if not self.rho_min > 0:
            raise ValueError(f"rho_min must be positive, got {self.rho_min}")
        if self.rho_step < 0:
            raise ValueError(f"rho_step must be non-negative, got {self.rho_step}")
        if self.margin < 0:
            raise ValueError(f"margin must be non-negative, got {self.margin}")


@dataclass(frozen=True)
class MapPlacement:
    """Where one scenario map sits in the world, and how it was placed."""

    scenario_id: str
    mode: str  # "overview" | "detail"
    center: tuple[float, float]
    half_extent: tuple[float, float]
    rho: float | None = None
    theta: float | None = None
    angular_extent: float | None = None

    def __post_init__(self) -> None:
        if self.mode == "overview":
            if self.rho is None or not self.rho > 0:
                raise ValueError(f"overview placement needs rho > 0, got {self.rho}")
            if self.theta is None or not 0.0 <= self.theta < TWO_PI:
                raise ValueError(f"theta must lie in [0, 2*pi), got {self.theta}")
        elif self.mode == "detail":
            if self.center != (0.0, 0.0):
                raise ValueError("detail placement must be centered at the origin")
        else:
            raise ValueError(f"unknown placement mode {self.mode!r}")


def map_importance(scenario: ScenarioMap, dataset: NormalizedDataset) -> float:
    """Importance = every member event's impact plus every member point's."""
    radius_by_event = {e.event_id: e.radius for e in dataset.events}
    impact_by_point = {p.point_id: p.impact for p in dataset.all_points()}
    total = 0.0
    for eid in scenario.event_ids:
        total += radius_by_event[eid]
    for pid in scenario.point_ids:
        total += impact_by_point[pid]
    return total


def rank_scenarios(importances: dict[str, float]) -> list[str]:
    """Scenario ids by importance descending, ties by id ascending."""
    return sorted(importances, key=lambda sid: (-importances[sid], sid))


def assign_radial_distance(
    importances: dict[str, float], cfg: GeomapConfig | None = None
) -> dict[str, float]:
    """Radial ladder: rank k sits at rho_min + k * rho_step."""
    cfg = cfg or GeomapConfig()
    return {
        sid: cfg.rho_min + rank * cfg.rho_step
        for rank, sid in enumerate(rank_scenarios(importances))
    }


def circular_gap(theta_a: float, ext_a: float, theta_b: float, ext_b: float) -> float:
    """Angular clearance between two map extents (negative when overlapping)."""
    d = abs(theta_b - theta_a) % TWO_PI
    return min(d, TWO_PI - d) - ext_a / 2.0 - ext_b / 2.0


def force_directed_theta(
    extents: Sequence[float], cfg: GeomapConfig | None = None
) -> list[float]:
    """Relax map angles until every pair clears the margin.

    Starts from a golden-angle fan in rank order, then sweeps all pairs,
    nudging each violating pair apart along the shorter arc by half the
    violation, scaled by a step factor. The step cools geometrically, but
    only on sweeps that fail to shrink the worst displacement — cooling on
    every sweep can freeze tight instances before they separate.
    Deterministic: same extents, same angles, bit for bit.
    """
    cfg = cfg or GeomapConfig()
    n = len(extents)
    required = sum(e + cfg.margin for e in extents)
    if required > TWO_PI:
        raise InfeasibleAngularBudget(required=required, available=TWO_PI)
    thetas = [k * GOLDEN_ANGLE_RAD for k in range(n)]
    step = 1.0
    prev_disp = math.inf
    for sweep in range(cfg.max_iter):
        max_disp = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                gap = circular_gap(thetas[i], extents[i], thetas[j], extents[j])
                if gap < cfg.margin:
                    v = (cfg.margin - gap) * 0.5 * step
                    forward = (thetas[j] - thetas[i]) % TWO_PI
                    s = 1.0 if forward <= math.pi else -1.0
                    thetas[i] -= s * v
                    thetas[j] += s * v
                    if v > max_disp:
                        max_disp = v
        if max_disp < cfg.stop_tol:
            break
        if max_disp >= prev_disp:
            step *= cfg.decay
        prev_disp = max_disp
    else:
        log.debug("angular relaxation hit the iteration cap (%d sweeps)", cfg.max_iter)
    return [t % TWO_PI for t in thetas]


def place_maps_overview(
    dataset: NormalizedDataset, cfg: GeomapConfig | None = None
) -> list[MapPlacement]:
    """Polar placement of every scenario map, in importance-rank order."""
    cfg = cfg or GeomapConfig()
    if not dataset.scenarios:
        return []
    importances = {s.scenario_id: map_importance(s, dataset) for s in dataset.scenarios}
    rhos = assign_radial_distance(importances, cfg)
    ranked = rank_scenarios(importances)
    by_id = {s.scenario_id: s for s in dataset.scenarios}
    extents = []
    for sid in ranked:
        hw, hd = by_id[sid].half_extent
        extents.append(2.0 * math.atan(math.hypot(hw, hd) / rhos[sid]))
    thetas = force_directed_theta(extents, cfg)
    placements = []
    for sid, ext, theta in zip(ranked, extents, thetas):
        rho = rhos[sid]
        placements.append(
            MapPlacement(
                scenario_id=sid,
                mode="overview",
                center=(rho * math.cos(theta), rho * math.sin(theta)),
                half_extent=by_id[sid].half_extent,
                rho=rho,
                theta=theta,
                angular_extent=ext,
            )
        )
    return placements


def place_map_detail(dataset: NormalizedDataset, scenario_id: str) -> MapPlacement:
    """Single-scenario Cartesian placement at the origin."""
    scenario = dataset.scenario(scenario_id)
    if scenario is None:
        raise UnknownScenario(scenario_id)
    return MapPlacement(
        scenario_id=scenario_id,
        mode="detail",
        center=(0.0, 0.0),
        half_extent=scenario.half_extent,
    )
