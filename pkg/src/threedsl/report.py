"""Layout statistics: delimited summaries plus rendered overview figures.

Everything here reads only the compiled SceneDocument, so reports can be
produced for any scene file without re-running the pipeline.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle, Rectangle

from threedsl.scene import VARIANT_KEYS, SceneDocument


def variant_rows(scene: SceneDocument) -> list[dict]:
    rows = []
    for key in VARIANT_KEYS:
        view = scene.variants[key]
        rows.append(
            {
                "variant": key,
                "point_nodes": len(view.point_nodes),
                "event_nodes": len(view.event_nodes),
                "polylines": len(view.polylines),
                "spline_samples": sum(len(line.samples) for line in view.polylines),
            }
        )
    return rows


def map_rows(scene: SceneDocument) -> list[dict]:
    rows = []
    for p in list(scene.maps_overview) + list(scene.maps_detail):
        rows.append(
            {
                "scenario_id": p.scenario_id,
                "mode": p.mode,
                "rho": "" if p.rho is None else repr(p.rho),
                "theta": "" if p.theta is None else repr(p.theta),
                "angular_extent": "" if p.angular_extent is None else repr(p.angular_extent),
                "center_x": repr(p.center[0]),
                "center_z": repr(p.center[1]),
                "half_w": repr(p.half_extent[0]),
                "half_d": repr(p.half_extent[1]),
            }
        )
    return rows


def _write_csv(path: Path, rows: list[dict]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _figure_maps(scene: SceneDocument, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7, 7))
    for p in scene.maps_overview:
        cx, cz = p.center
        hw, hd = p.half_extent
        ax.add_patch(Rectangle((cx - hw, cz - hd), 2 * hw, 2 * hd, fill=False, lw=1.5))
        ax.add_patch(Circle((0, 0), p.rho, fill=False, ls="--", lw=0.5, color="grey"))
        ax.annotate(p.scenario_id, (cx, cz), ha="center", va="center")
    ax.plot(0, 0, marker="*", markersize=12, color="black")
    ax.annotate("viewer", (0, 0), textcoords="offset points", xytext=(8, 8))
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.set_xlabel("x (world units)")
    ax.set_ylabel("z (world units)")
    ax.set_title("Overview map placement (top-down)")
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _figure_counts(scene: SceneDocument, path: Path) -> None:
    rows = variant_rows(scene)
    labels = [r["variant"].replace("_", "\n") for r in rows]
    x = range(len(rows))
    width = 0.28
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar([i - width for i in x], [r["point_nodes"] for r in rows], width, label="point nodes")
    ax.bar(list(x), [r["event_nodes"] for r in rows], width, label="event nodes")
    ax.bar([i + width for i in x], [r["polylines"] for r in rows], width, label="polylines")
    ax.set_xticks(list(x), labels)
    ax.set_ylabel("count")
    ax.set_title("Scene contents per view variant")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _figure_impacts(scene: SceneDocument, path: Path) -> None:
    point_impacts = [t["impact"] for t in scene.tooltips.values() if t["kind"] == "point"]
    event_impacts = [t["impact"] for t in scene.tooltips.values() if t["kind"] == "event"]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=False)
    ax1.hist(point_impacts, bins=30, color="#4878a8")
    ax1.axvline(scene.meta["xi_c_thre"], color="red", ls="--", label="threshold")
    ax1.set_title("Character impact factors")
    ax1.legend()
    ax2.hist(event_impacts, bins=30, color="#a87848")
    ax2.axvline(scene.meta["xi_e_thre"], color="red", ls="--", label="threshold")
    ax2.set_title("Event impact factors (sphere radii)")
    ax2.set_xlabel("impact")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def write_report(scene: SceneDocument, out_dir: Path) -> dict[str, Path]:
    """Write the delimited summaries and figures; returns name -> path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = {
        "variants_csv": out_dir / "variants.csv",
        "maps_csv": out_dir / "maps.csv",
        "maps_png": out_dir / "overview_maps.png",
        "counts_png": out_dir / "variant_counts.png",
        "impacts_png": out_dir / "impact_histograms.png",
    }
    _write_csv(outputs["variants_csv"], variant_rows(scene))
    _write_csv(outputs["maps_csv"], map_rows(scene))
    _figure_maps(scene, outputs["maps_png"])
    _figure_counts(scene, outputs["counts_png"])
    _figure_impacts(scene, outputs["impacts_png"])
    return outputs
