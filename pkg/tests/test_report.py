"""Report outputs: delimited summaries and rendered figures."""

import csv

import pytest

from threedsl.ingest import IngestConfig, normalize_space_time, parse_characters_csv, parse_events_csv
from threedsl.report import map_rows, variant_rows, write_report
from threedsl.scene import VARIANT_KEYS, build_scene

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture(scope="module")
def toy_scene():
    characters = """character_id,name,t,x,z,impact,scenario_id
a,Alice,0,0,0,2,s1
a,Alice,10,1,0,2,s1
a,Alice,20,2,1,0.5,s1
a,Alice,30,3,1,0.5,s1
b,Bob,5,0,2,2,s1
b,Bob,25,2,2,2,s1
"""
    events = """event_id,name,t_start,t_end,x,z,scenario_id,importance,predecessors
e1,Meeting,12,18,1.5,0.5,s1,,
"""
    dataset = normalize_space_time(
        parse_characters_csv(characters),
        parse_events_csv(events),
        IngestConfig(xi_c_thre=1.0, xi_e_thre=0.5),
        name="toy",
    )
    return build_scene(dataset)


@pytest.fixture()
def report_dir(toy_scene, tmp_path):
    return write_report(toy_scene, tmp_path / "report")


class TestVariantRows:
    def test_one_row_per_variant_in_order(self, toy_scene):
        rows = variant_rows(toy_scene)
        assert [r["variant"] for r in rows] == list(VARIANT_KEYS)

    def test_counts_match_scene(self, toy_scene):
        for row in variant_rows(toy_scene):
            view = toy_scene.variants[row["variant"]]
            assert row["point_nodes"] == len(view.point_nodes)
            assert row["event_nodes"] == len(view.event_nodes)
            assert row["polylines"] == len(view.polylines)
            assert row["spline_samples"] == sum(len(p.samples) for p in view.polylines)


class TestMapRows:
    def test_overview_rows_carry_polar_fields(self, toy_scene):
        rows = [r for r in map_rows(toy_scene) if r["mode"] == "overview"]
        assert len(rows) == len(toy_scene.maps_overview)
        for row in rows:
            assert float(row["rho"]) > 0
            assert row["angular_extent"] != ""

    def test_detail_rows_have_blank_polar_fields(self, toy_scene):
        rows = [r for r in map_rows(toy_scene) if r["mode"] == "detail"]
        assert len(rows) == len(toy_scene.maps_detail)
        for row in rows:
            assert row["rho"] == ""
            assert (float(row["center_x"]), float(row["center_z"])) == (0.0, 0.0)


class TestWriteReport:
    def test_all_outputs_exist_and_are_nonempty(self, report_dir):
        assert set(report_dir) == {"variants_csv", "maps_csv", "maps_png", "counts_png", "impacts_png"}
        for path in report_dir.values():
            assert path.is_file()
            assert path.stat().st_size > 0

    def test_figures_are_png(self, report_dir):
        for key in ("maps_png", "counts_png", "impacts_png"):
            assert report_dir[key].read_bytes()[:8] == PNG_MAGIC

    def test_variants_csv_parses_back(self, report_dir, toy_scene):
        with report_dir["variants_csv"].open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["variant"] for r in rows] == list(VARIANT_KEYS)
        total = sum(int(r["polylines"]) for r in rows)
        assert total == sum(len(v.polylines) for v in toy_scene.variants.values())

    def test_maps_csv_parses_back(self, report_dir, toy_scene):
        with report_dir["maps_csv"].open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == len(toy_scene.maps_overview) + len(toy_scene.maps_detail)

    def test_creates_nested_directories(self, toy_scene, tmp_path):
        outputs = write_report(toy_scene, tmp_path / "a" / "b" / "c")
        assert outputs["variants_csv"].is_file()
