"""Command-line front end: validate, layout, stats, gen-synthetic, serve.

Exit codes: 0 success, 1 domain error (validation/layout), 2 usage or I/O
error. Set THREEDSL_LOG=DEBUG (or any logging level name) for verbose output.
"""

from __future__ import annotations

import functools
import logging
import math
import os
import time
from pathlib import Path

import click

from threedsl import __version__
from threedsl.errors import StorylineError
from threedsl.ingest import (
    AUTO_MEDIAN,
    IngestConfig,
    normalize_space_time,
    parse_characters_csv,
    parse_events_csv,
    serialize_characters_csv,
    serialize_events_csv,
)
from threedsl.layout_geomap import GeomapConfig
from threedsl.layout_time import TimeLayoutParams
from threedsl.model import validate_dataset
from threedsl.scene import (
    VARIANT_KEYS,
    SceneDocument,
    build_scene,
    export_scene_json,
    parse_scene_json,
)

log = logging.getLogger(__name__)

PathArg = click.Path(exists=True, dir_okay=False, path_type=Path)


class ThresholdType(click.ParamType):
    """A float, or the literal 'auto-median' to use the dataset median."""

    name = "threshold"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        if value == AUTO_MEDIAN:
            return value
        try:
            return float(value)
        except ValueError:
            self.fail(f"{value!r} is neither a number nor {AUTO_MEDIAN!r}", param, ctx)


THRESHOLD = ThresholdType()


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" if n == 1 else f"{n} {word}s"


def guarded(fn):
    """Map domain errors to exit 1 and I/O failures to exit 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except StorylineError as exc:
            click.echo(f"{type(exc).__name__}: {exc}", err=True)
            raise SystemExit(1)
        except OSError as exc:
            click.echo(f"I/O error: {exc}", err=True)
            raise SystemExit(2)

    return wrapper


def dataset_arguments(fn):
    fn = click.argument("events_csv", type=PathArg)(fn)
    fn = click.argument("characters_csv", type=PathArg)(fn)
    return fn


_LAYOUT_OPTIONS = [
    click.option("--name", default="dataset", show_default=True, help="Dataset name stored in scene metadata."),
    click.option("--time-height", type=float, default=10.0, show_default=True, help="Height of the normalized time axis."),
    click.option("--map-size", type=float, default=4.0, show_default=True, help="Side length each scenario map is scaled to."),
    click.option("--map-padding", type=float, default=0.5, show_default=True, help="Extra half-extent padding around each map."),
    click.option("--radius-scale", type=float, default=4.0, show_default=True, help="Event radius per unit of duration fraction."),
    click.option("--radius-min", type=float, default=0.05, show_default=True, help="Lower clamp for event sphere radii."),
    click.option("--radius-max", type=float, default=2.0, show_default=True, help="Upper clamp for event sphere radii."),
    click.option("--xi-c-thre", type=THRESHOLD, default=AUTO_MEDIAN, show_default=True, help="Character impact threshold (overview keeps impacts above it)."),
    click.option("--xi-e-thre", type=THRESHOLD, default=AUTO_MEDIAN, show_default=True, help="Event radius threshold (overview keeps radii above it)."),
    click.option("--delta-e", type=float, default=0.2, show_default=True, help="Minimum vertical gap between event sphere surfaces."),
    click.option("--y0", type=float, default=0.0, show_default=True, help="Baseline height of the repositioned event column."),
    click.option("--rho-min", type=float, default=2.0, show_default=True, help="Radial distance of the most important scenario map."),
    click.option("--rho-step", type=float, default=1.5, show_default=True, help="Radial distance increment per importance rank."),
    click.option("--margin-deg", type=float, default=10.0, show_default=True, help="Angular margin between adjacent maps, in degrees."),
    click.option("--samples-per-segment", type=click.IntRange(min=1), default=16, show_default=True, help="Spline samples per control segment."),
]


def layout_options(fn):
    for deco in reversed(_LAYOUT_OPTIONS):
        fn = deco(fn)
    return fn


def _compile(characters_csv: Path, events_csv: Path, opts: dict) -> SceneDocument:
    points = parse_characters_csv(characters_csv.read_bytes())
    events = parse_events_csv(events_csv.read_bytes())
    cfg = IngestConfig(
        time_height=opts["time_height"],
        map_size=opts["map_size"],
        map_padding=opts["map_padding"],
        radius_scale=opts["radius_scale"],
        radius_clamp=(opts["radius_min"], opts["radius_max"]),
        xi_c_thre=opts["xi_c_thre"],
        xi_e_thre=opts["xi_e_thre"],
    )
    dataset = normalize_space_time(points, events, cfg, name=opts["name"])
    return build_scene(
        dataset,
        time_params=TimeLayoutParams(delta_e=opts["delta_e"], y0=opts["y0"]),
        geomap_cfg=GeomapConfig(
            rho_min=opts["rho_min"],
            rho_step=opts["rho_step"],
            margin=math.radians(opts["margin_deg"]),
        ),
        samples_per_segment=opts["samples_per_segment"],
    )


@click.group()
@click.version_option(version=__version__, prog_name="threedsl")
def main() -> None:
    """Compile narrative CSV datasets into explorable 3D storyline scenes."""
    level_name = os.environ.get("THREEDSL_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@dataset_arguments
@guarded
def validate(characters_csv: Path, events_csv: Path) -> None:
    """Check a dataset and print its validation report."""
    points = parse_characters_csv(characters_csv.read_bytes())
    events = parse_events_csv(events_csv.read_bytes())
    report = validate_dataset(points, events)
    for warning in report.warnings:
        click.echo(f"warning: {warning}")
    for error in report.errors:
        click.echo(f"error: {error}")
    if not report.ok:
        raise SystemExit(1)
    click.echo(
        f"OK ({_plural(report.n_characters, 'character')}, {_plural(report.n_events, 'event')})"
    )


@main.command()
@dataset_arguments
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=Path("scene.json"), show_default=True, help="Where to write the scene document.")
@layout_options
@guarded
def layout(characters_csv: Path, events_csv: Path, output: Path, **opts) -> None:
    """Compile the dataset into a canonical scene JSON document."""
    started = time.perf_counter()
    scene = _compile(characters_csv, events_csv, opts)
    payload = export_scene_json(scene)
    output.write_bytes(payload)
    elapsed = time.perf_counter() - started
    total_polylines = 0
    for key in VARIANT_KEYS:
        view = scene.variants[key]
        total_polylines += len(view.polylines)
        click.echo(
            f"{key}: {_plural(len(view.point_nodes), 'point')}, "
            f"{_plural(len(view.event_nodes), 'event')}, "
            f"{_plural(len(view.polylines), 'polyline')}"
        )
    click.echo(f"{len(VARIANT_KEYS)} variants, {_plural(total_polylines, 'polyline')}")
    click.echo(f"wrote {output} ({len(payload)} bytes) in {elapsed:.3f} s")


@main.command()
@dataset_arguments
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=Path("report"), show_default=True, help="Directory for the delimited summaries and figures.")
@layout_options
@guarded
def stats(characters_csv: Path, events_csv: Path, out_dir: Path, **opts) -> None:
    """Compile the dataset and write layout statistics plus figures."""
    from threedsl.report import write_report

    scene = _compile(characters_csv, events_csv, opts)
    outputs = write_report(scene, out_dir)
    for path in outputs.values():
        click.echo(f"wrote {path}")


@main.command("gen-synthetic")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--n-points", type=click.IntRange(min=1), default=411, show_default=True)
@click.option("--n-events", type=click.IntRange(min=1), default=95, show_default=True)
@click.option("--n-characters", type=click.IntRange(min=1), default=24, show_default=True)
@click.option("--n-scenarios", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True)
@guarded
def gen_synthetic(seed: int, n_points: int, n_events: int, n_characters: int, n_scenarios: int, out_dir: Path) -> None:
    """Generate a seeded synthetic dataset as a characters/events CSV pair."""
    from threedsl.synthetic import generate_dataset

    points, events = generate_dataset(
        seed=seed,
        n_points=n_points,
        n_events=n_events,
        n_characters=n_characters,
        n_scenarios=n_scenarios,
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    characters_path = out_dir / "characters.csv"
    events_path = out_dir / "events.csv"
    characters_path.write_text(serialize_characters_csv(points), encoding="utf-8")
    events_path.write_text(serialize_events_csv(events), encoding="utf-8")
    click.echo(f"wrote {characters_path} ({_plural(len(points), 'row')})")
    click.echo(f"wrote {events_path} ({_plural(len(events), 'row')})")


@main.command()
@click.option("--scene", "scene_path", type=PathArg, default=None, help="Serve this pre-compiled scene document.")
@click.option("--characters", "characters_csv", type=PathArg, default=None, help="Compile this characters CSV at startup (with --events).")
@click.option("--events", "events_csv", type=PathArg, default=None, help="Compile this events CSV at startup (with --characters).")
@click.option("--assets", type=click.Path(exists=True, file_okay=False, path_type=Path), default=None, help="Directory of static viewer assets to serve at /.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@layout_options
@guarded
def serve(scene_path: Path | None, characters_csv: Path | None, events_csv: Path | None, assets: Path | None, host: str, port: int, **opts) -> None:
    """Serve a scene document (and optional viewer assets) over HTTP."""
    from threedsl.server import make_server

    if scene_path is not None:
        payload = scene_path.read_bytes()
        parse_scene_json(payload)  # reject unreadable or wrong-version documents
    elif characters_csv is not None and events_csv is not None:
        payload = export_scene_json(_compile(characters_csv, events_csv, opts))
    else:
        raise click.UsageError("pass --scene, or both --characters and --events")

    httpd = make_server(payload, assets_dir=assets, host=host, port=port)
    actual_port = httpd.server_address[1]
    click.echo(f"serving scene on http://{host}:{actual_port}/ (Ctrl+C to stop)")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


if __name__ == "__main__":
    main()
