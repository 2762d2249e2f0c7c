"""Acceptance gate: every primary contract checked at its stated tolerance.

Each test prints exactly one summary line (visible even under pytest capture)
of the form "[acceptance] <criterion>: PASS|FAIL (<detail>)" and then asserts.
The layout oracle below is an independent straight-line translation of the
published recurrences — plain loops, no shared code with the package beyond
the data types — so agreement has to be earned bit by bit.
"""

import math
import random
import time

from click.testing import CliRunner
from conftest import make_event, make_point

from threedsl.cli import main
from threedsl.geometry import cubic_spline
from threedsl.ingest import IngestConfig, normalize_space_time
from threedsl.layout_geomap import (
    GeomapConfig,
    assign_radial_distance,
    circular_gap,
    force_directed_theta,
    rank_scenarios,
)
from threedsl.layout_time import (
    TimeLayoutParams,
    chronological,
    optimize_time_layout,
    reposition_event_spheres,
    sequentialize_points_in_sphere,
)
from threedsl.scene import (
    DETAIL,
    OVERVIEW,
    build_scene,
    export_scene_json,
    filter_visibility,
    parse_scene_json,
)
from threedsl.synthetic import generate_dataset

TWO_PI = 2.0 * math.pi


def _report(capsys, name: str, ok: bool, detail: str = "") -> str:
    line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    with capsys.disabled():
        print(line, flush=True)
    return line


# --------------------------------------------------------------------------
# Independent layout oracle: a literal translation of the vertical-relayout
# recurrences, written as flat loops.
# --------------------------------------------------------------------------


def _oracle_remap(anchors, y):
    if not anchors:
        return y
    if y <= anchors[0][0]:
        return anchors[0][1] + (y - anchors[0][0])
    if y >= anchors[-1][0]:
        return anchors[-1][1] + (y - anchors[-1][0])
    k = 1
    while anchors[k][0] <= y:
        k += 1
    x_lo, n_lo = anchors[k - 1]
    x_hi, n_hi = anchors[k]
    return n_lo + (y - x_lo) * (n_hi - n_lo) / (x_hi - x_lo)


def oracle_time_layout(points, events, delta_e, y0):
    """Brute-force reference: respace spheres, assign members, spread, remap."""
    ordered = sorted(events, key=lambda e: (e.center_y, e.event_id))

    # New sphere centers: each consecutive pair of boundaries sits delta_e apart.
    new_center = {}
    acc = 0.0
    for j, e in enumerate(ordered):
        if j > 0:
            acc += delta_e + ordered[j - 1].radius + e.radius
        new_center[e.event_id] = y0 + acc

    # Membership: nearest containing sphere among the point's own scenario.
    member_of = {}
    for p in points:
        best = None
        for e in ordered:
            if e.scenario_id != p.scenario_id:
                continue
            dx = p.map_x - e.map_x
            dy = p.y - e.center_y
            dz = p.map_z - e.map_z
            d = math.sqrt(dx * dx + dy * dy + dz * dz)
            if d <= e.radius and (best is None or (d, e.event_id) < best):
                best = (d, e.event_id)
        member_of[p.point_id] = None if best is None else best[1]

    # Members spread uniformly across their sphere's diameter, time order.
    y_new = {}
    for e in ordered:
        members = [p for p in points if member_of[p.point_id] == e.event_id]
        if not members:
            continue
        members.sort(key=lambda p: (p.raw.t, p.character_id, p.order))
        n = len(members)
        dc = 2.0 * e.radius / n
        for i, p in enumerate(members):
            y_new[p.point_id] = new_center[e.event_id] + (i - (n - 1) / 2) * dc

    # Everyone else follows the piecewise-linear center remap.
    groups = {}
    for e in ordered:
        groups.setdefault(e.center_y, []).append(new_center[e.event_id])
    anchors = sorted((old, sum(news) / len(news)) for old, news in groups.items())
    for p in points:
        if member_of[p.point_id] is None:
            y_new[p.point_id] = _oracle_remap(anchors, p.y)

    return new_center, y_new, member_of


def _random_instance(rng, max_events=5, max_points=30):
    events = []
    for k in range(rng.randint(0, max_events)):
        if events and rng.random() < 0.2:
            cy = events[rng.randrange(len(events))].center_y
        else:
            cy = rng.uniform(-5.0, 15.0)
        events.append(
            make_event(
                event_id=f"e{k}",
                center_y=cy,
                radius=rng.uniform(0.1, 2.5),
                x=rng.uniform(-3.0, 3.0),
                z=rng.uniform(-3.0, 3.0),
                scenario_id=rng.choice(("s1", "s2")),
            )
        )
    points = []
    for k in range(rng.randint(0, max_points)):
        sid = rng.choice(("s1", "s2"))
        if events and rng.random() < 0.55:
            e = events[rng.randrange(len(events))]
            r = e.radius * rng.uniform(0.0, 1.3)
            u, v, w = rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1)
            norm = math.sqrt(u * u + v * v + w * w) or 1.0
            px = e.map_x + r * u / norm
            py = e.center_y + r * v / norm
            pz = e.map_z + r * w / norm
            if rng.random() < 0.8:
                sid = e.scenario_id
        else:
            px, py, pz = rng.uniform(-4, 4), rng.uniform(-6, 16), rng.uniform(-4, 4)
        t = round(rng.uniform(0, 50), 1) if rng.random() < 0.3 else rng.uniform(0, 50)
        points.append(
            make_point(
                x=px, y=py, z=pz, t=t,
                character_id=f"c{rng.randint(0, 4)}",
                scenario_id=sid,
                order=k,
            )
        )
    params = TimeLayoutParams(delta_e=rng.uniform(0.0, 0.5), y0=rng.uniform(-3.0, 3.0))
    return points, events, params


# --------------------------------------------------------------------------
# Criteria
# --------------------------------------------------------------------------


def test_event_respacing_gaps(capsys):
    """1,000 random event sets: boundary gaps equal delta_e, spheres disjoint."""
    rng = random.Random(101)
    started = time.perf_counter()
    max_err = 0.0
    disjoint_ok = True
    for _ in range(1000):
        n = rng.randint(1, 50)
        delta = rng.uniform(0.01, 0.5)
        events = [
            make_event(
                event_id=f"e{k:02d}",
                center_y=rng.uniform(-20.0, 20.0),
                radius=rng.uniform(0.0, 2.0),
            )
            for k in range(n)
        ]
        params = TimeLayoutParams(delta_e=delta, y0=rng.uniform(-5.0, 5.0))
        new = reposition_event_spheres(events, params)
        ordered = chronological(events)
        centers = [new[e.event_id] for e in ordered]
        radii = [e.radius for e in ordered]
        for j in range(1, n):
            gap = (centers[j] - radii[j]) - (centers[j - 1] + radii[j - 1])
            err = abs(gap - delta)
            if err > max_err:
                max_err = err
        for i in range(n):
            for j in range(i + 1, n):
                if abs(centers[j] - centers[i]) < radii[i] + radii[j] - 1e-9:
                    disjoint_ok = False
    elapsed = time.perf_counter() - started
    ok = max_err <= 1e-9 and disjoint_ok and elapsed < 5.0
    _report(capsys, "event-respacing-gaps", ok,
            f"1000 sets, max gap error {max_err:.2e}, disjoint={disjoint_ok}, {elapsed:.2f}s")
    assert max_err <= 1e-9
    assert disjoint_ok
    assert elapsed < 5.0


def test_member_spacing_progression(capsys):
    """Random spheres, 1-40 members: uniform step of diameter/count, all inside."""
    rng = random.Random(202)
    started = time.perf_counter()
    max_err = 0.0
    inside_ok = True
    for _ in range(1000):
        n = rng.randint(1, 40)
        radius = rng.uniform(0.05, 2.0)
        center = rng.uniform(-10.0, 10.0)
        members = [
            make_point(
                y=rng.uniform(-5.0, 5.0),
                t=rng.uniform(0.0, 100.0),
                character_id=f"c{rng.randint(0, 5)}",
                order=k,
            )
            for k in range(n)
        ]
        ys = sequentialize_points_in_sphere(center, radius, members)
        ordered = sorted(members, key=lambda p: (p.raw.t, p.character_id, p.order))
        vals = [ys[p.point_id] for p in ordered]
        step = 2.0 * radius / n
        for a, b in zip(vals, vals[1:]):
            err = abs((b - a) - step)
            if err > max_err:
                max_err = err
        if any(abs(v - center) >= radius for v in vals):
            inside_ok = False
    elapsed = time.perf_counter() - started
    ok = max_err <= 1e-9 and inside_ok and elapsed < 5.0
    _report(capsys, "member-spacing-progression", ok,
            f"1000 spheres, max step error {max_err:.2e}, inside={inside_ok}, {elapsed:.2f}s")
    assert max_err <= 1e-9
    assert inside_ok
    assert elapsed < 5.0


def test_layout_oracle_bit_equivalence(capsys):
    """500 random instances: the package matches the flat-loop oracle bit-exactly."""
    rng = random.Random(303)
    mismatches = 0
    for _ in range(500):
        points, events, params = _random_instance(rng)
        result = optimize_time_layout(points, events, params)
        centers, ys, members = oracle_time_layout(points, events, params.delta_e, params.y0)
        if result.event_y_new != centers:
            mismatches += 1
        elif result.membership != members:
            mismatches += 1
        elif result.point_y_new != ys:
            mismatches += 1
    ok = mismatches == 0
    _report(capsys, "layout-oracle-bit-equivalence", ok,
            f"500 instances, {mismatches} mismatches")
    assert mismatches == 0


def test_coordinate_order_preservation(capsys):
    """x/z never move; event chronology and intra-sphere point order survive."""
    rng = random.Random(404)
    order_ok = True
    for _ in range(300):
        points, events, params = _random_instance(rng)
        result = optimize_time_layout(points, events, params)
        ordered = chronological(events)
        centers = [result.event_y_new[e.event_id] for e in ordered]
        if any(b <= a for a, b in zip(centers, centers[1:])):
            order_ok = False
        groups = {}
        for p in points:
            eid = result.membership[p.point_id]
            if eid is not None:
                groups.setdefault(eid, []).append(p)
        for group in groups.values():
            group.sort(key=lambda p: (p.raw.t, p.character_id, p.order))
            ys = [result.point_y_new[p.point_id] for p in group]
            if any(b <= a for a, b in zip(ys, ys[1:])):
                order_ok = False

    # Ground coordinates through the full scene build: detail nodes carry the
    # map coordinates bit-for-bit; overview nodes are exactly map center plus
    # the same local coordinates.
    raw_points, raw_events = generate_dataset(
        seed=11, n_points=60, n_events=12, n_characters=6, n_scenarios=2
    )
    dataset = normalize_space_time(raw_points, raw_events, IngestConfig(), name="probe")
    scene = build_scene(dataset)
    world_points = {p.point_id: p for p in dataset.all_points()}
    world_events = {e.event_id: e for e in dataset.events}
    centers_by_sid = {m.scenario_id: m.center for m in scene.maps_overview}
    xz_ok = True
    for key in ("characters_detail", "events_detail"):
        for node in scene.variants[key].point_nodes:
            w = world_points[node.id]
            if node.position[0] != w.map_x or node.position[2] != w.map_z:
                xz_ok = False
        for node in scene.variants[key].event_nodes:
            w = world_events[node.id]
            if node.position[0] != w.map_x or node.position[2] != w.map_z:
                xz_ok = False
    for key in ("characters_overview", "events_overview"):
        for node in scene.variants[key].point_nodes:
            w = world_points[node.id]
            cx, cz = centers_by_sid[w.scenario_id]
            if node.position[0] != cx + w.map_x or node.position[2] != cz + w.map_z:
                xz_ok = False
        for node in scene.variants[key].event_nodes:
            w = world_events[node.id]
            cx, cz = centers_by_sid[w.scenario_id]
            if node.position[0] != cx + w.map_x or node.position[2] != cz + w.map_z:
                xz_ok = False

    ok = order_ok and xz_ok
    _report(capsys, "coordinate-order-preservation", ok,
            f"300 instances order={order_ok}, scene xz exact={xz_ok}")
    assert order_ok
    assert xz_ok


def test_membership_oracle(capsys):
    """500 instances incl. exact boundary hits: assignment equals the distance oracle."""
    rng = random.Random(505)
    mismatches = 0
    boundary_hits = 0
    for _ in range(500):
        points, events, params = _random_instance(rng)
        # Inject an exact boundary case: axis-aligned origin sphere with a
        # power-of-two radius so the distance computes to the radius exactly.
        if rng.random() < 0.5:
            r = rng.choice((0.25, 0.5, 1.0, 2.0))
            eid = f"b{len(events)}"
            events = events + [
                make_event(event_id=eid, center_y=rng.uniform(-4, 14), radius=r,
                           x=0.0, z=0.0, scenario_id="s1")
            ]
            e = events[-1]
            points = points + [
                make_point(x=r, y=e.center_y, z=0.0, t=rng.uniform(0, 50),
                           character_id="cb", scenario_id="s1", order=len(points))
            ]
            boundary_hits += 1
        result = optimize_time_layout(points, events, params)
        oracle = {}
        for p in points:
            best = None
            for e in events:
                if e.scenario_id != p.scenario_id:
                    continue
                dx = p.map_x - e.map_x
                dy = p.y - e.center_y
                dz = p.map_z - e.map_z
                d = math.sqrt(dx * dx + dy * dy + dz * dz)
                if d <= e.radius and (best is None or (d, e.event_id) < best):
                    best = (d, e.event_id)
            oracle[p.point_id] = None if best is None else best[1]
        if result.membership != oracle:
            mismatches += 1
    ok = mismatches == 0
    _report(capsys, "membership-oracle", ok,
            f"500 instances ({boundary_hits} with exact boundary points), {mismatches} mismatches")
    assert mismatches == 0


def _dist_to_line(sample, origin, direction):
    wx = sample[0] - origin[0]
    wy = sample[1] - origin[1]
    wz = sample[2] - origin[2]
    cx = wy * direction[2] - wz * direction[1]
    cy = wz * direction[0] - wx * direction[2]
    cz = wx * direction[1] - wy * direction[0]
    dlen = math.sqrt(direction[0] ** 2 + direction[1] ** 2 + direction[2] ** 2)
    return math.sqrt(cx * cx + cy * cy + cz * cz) / dlen


def test_spline_contract(capsys):
    """Controls hit exactly; collinear controls give the line; curvature is continuous."""
    rng = random.Random(606)
    spp = 16
    max_knot_err = 0.0
    max_line_err = 0.0
    max_c2_jump = 0.0

    def random_controls(n):
        while True:
            pts = [
                (rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
                for _ in range(n)
            ]
            chords = [
                math.dist(a, b) for a, b in zip(pts, pts[1:])
            ]
            if all(c > 0.3 for c in chords):
                return pts

    for _ in range(200):
        controls = random_controls(rng.randint(2, 8))
        line = cubic_spline(controls, samples_per_segment=spp)
        for i, c in enumerate(controls):
            s = line.samples[i * spp]
            err = max(abs(s[k] - c[k]) for k in range(3))
            if err > max_knot_err:
                max_knot_err = err

    for _ in range(200):
        origin = (rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
        direction = (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(1, 2))
        n = rng.randint(2, 8)
        offsets = sorted(rng.uniform(0, 10) for _ in range(n))
        if any(b - a < 0.2 for a, b in zip(offsets, offsets[1:])):
            continue
        controls = [
            (origin[0] + a * direction[0], origin[1] + a * direction[1], origin[2] + a * direction[2])
            for a in offsets
        ]
        line = cubic_spline(controls, samples_per_segment=spp)
        for s in line.samples:
            err = _dist_to_line(s, origin, direction)
            if err > max_line_err:
                max_line_err = err

    for _ in range(200):
        controls = random_controls(rng.randint(3, 8))
        n = len(controls)
        line = cubic_spline(controls, samples_per_segment=spp)
        samples = line.samples
        chords = [math.dist(a, b) for a, b in zip(controls, controls[1:])]
        for i in range(1, n - 1):
            idx = i * spp
            h_l = chords[i - 1] / spp
            h_r = chords[i] / spp
            for axis in range(3):
                y = [s[axis] for s in samples[idx - 3 : idx + 4]]
                # Central second differences are exact for cubics, and the
                # second derivative is linear per piece, so extrapolating two
                # interior estimates to the knot recovers each one-sided limit.
                d2a = (y[1] - 2 * y[2] + y[3]) / (h_l * h_l)
                d2b = (y[0] - 2 * y[1] + y[2]) / (h_l * h_l)
                left = 2 * d2a - d2b
                d2c = (y[3] - 2 * y[4] + y[5]) / (h_r * h_r)
                d2d = (y[4] - 2 * y[5] + y[6]) / (h_r * h_r)
                right = 2 * d2c - d2d
                jump = abs(left - right)
                if jump > max_c2_jump:
                    max_c2_jump = jump

    ok = max_knot_err <= 1e-9 and max_line_err <= 1e-9 and max_c2_jump <= 1e-6
    _report(capsys, "spline-contract", ok,
            f"knot err {max_knot_err:.2e}, line err {max_line_err:.2e}, curvature jump {max_c2_jump:.2e}")
    assert max_knot_err <= 1e-9
    assert max_line_err <= 1e-9
    assert max_c2_jump <= 1e-6


def test_geomap_properties(capsys):
    """Radial ladder monotone, ranks scale-invariant, gaps clear the margin, reruns identical."""
    rng = random.Random(707)
    cfg = GeomapConfig()

    monotone_ok = True
    rescale_ok = True
    for _ in range(300):
        n = rng.randint(1, 8)
        impact_lists = {f"s{k}": [rng.uniform(0.1, 3.0) for _ in range(rng.randint(1, 20))]
                        for k in range(n)}
        importances = {sid: sum(vals) for sid, vals in impact_lists.items()}
        rhos = assign_radial_distance(importances, cfg)
        ranked = rank_scenarios(importances)
        ladder = [rhos[sid] for sid in ranked]
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            monotone_ok = False
        lam = rng.uniform(0.05, 50.0)
        scaled = {sid: sum(lam * v for v in vals) for sid, vals in impact_lists.items()}
        if rank_scenarios(scaled) != ranked:
            rescale_ok = False

    gap_ok = True
    rerun_ok = True
    worst_gap = math.inf
    tested = 0
    while tested < 200:
        n = rng.randint(2, 6)
        extents = [rng.uniform(0.2, 1.6) for _ in range(n)]
        if sum(e + cfg.margin for e in extents) > TWO_PI:
            continue
        tested += 1
        thetas = force_directed_theta(extents, cfg)
        if thetas != force_directed_theta(extents, cfg):
            rerun_ok = False
        min_gap = min(
            circular_gap(thetas[i], extents[i], thetas[j], extents[j])
            for i in range(n)
            for j in range(i + 1, n)
        )
        if min_gap < worst_gap:
            worst_gap = min_gap
        if min_gap < cfg.margin - 1e-3:
            gap_ok = False

    ok = monotone_ok and rescale_ok and gap_ok and rerun_ok
    _report(capsys, "geomap-properties", ok,
            f"monotone={monotone_ok}, rescale={rescale_ok}, "
            f"worst gap {worst_gap:.4f} vs margin {cfg.margin:.4f}, rerun={rerun_ok}")
    assert monotone_ok
    assert rescale_ok
    assert gap_ok
    assert rerun_ok


def test_visibility_partition(capsys):
    """1,000 threshold draws: overview strictly above, detail the rest, exact partition."""
    rng = random.Random(808)
    ok = True
    for _ in range(1000):
        n = rng.randint(0, 50)
        threshold = rng.uniform(0.0, 3.0)
        items = []
        for k in range(n):
            impact = threshold if rng.random() < 0.15 else rng.uniform(0.0, 3.0)
            items.append(make_point(impact=impact, order=k, character_id=f"c{k}"))
        over = filter_visibility(items, threshold, OVERVIEW)
        detail = filter_visibility(items, threshold, DETAIL)
        if len(over) + len(detail) != n:
            ok = False
        if {p.point_id for p in over} & {p.point_id for p in detail}:
            ok = False
        if any(p.impact <= threshold for p in over):
            ok = False
        if any(p.impact > threshold for p in detail):
            ok = False
    _report(capsys, "visibility-partition", ok, "1000 draws")
    assert ok


def test_determinism_round_trip(capsys, tmp_path):
    """Identical bytes across runs; parse-then-export reproduces the file exactly."""
    runner = CliRunner()
    data = tmp_path / "data"
    gen = runner.invoke(main, ["gen-synthetic", "--out-dir", str(data)])
    assert gen.exit_code == 0, gen.output
    out1, out2 = tmp_path / "one.json", tmp_path / "two.json"
    args = ["layout", str(data / "characters.csv"), str(data / "events.csv")]
    r1 = runner.invoke(main, [*args, "-o", str(out1)])
    r2 = runner.invoke(main, [*args, "-o", str(out2)])
    assert r1.exit_code == 0, r1.output
    assert r2.exit_code == 0, r2.output
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    identical = b1 == b2
    round_trip = export_scene_json(parse_scene_json(b1)) == b1
    ok = identical and round_trip
    _report(capsys, "determinism-round-trip", ok,
            f"{len(b1)} bytes, identical={identical}, fixed point={round_trip}")
    assert identical
    assert round_trip


def test_dataset_scale_performance(capsys):
    """411 character records + 95 events compile to all four variants in < 1 s."""
    raw_points, raw_events = generate_dataset()
    assert len(raw_points) == 411
    assert len(raw_events) == 95
    started = time.perf_counter()
    dataset = normalize_space_time(raw_points, raw_events, IngestConfig(), name="bench")
    scene = build_scene(dataset)
    payload = export_scene_json(scene)
    elapsed = time.perf_counter() - started
    tooltip_count = len(scene.tooltips)
    ok = elapsed < 1.0 and tooltip_count == 411 + 95 and len(payload) > 0
    _report(capsys, "dataset-scale-performance", ok,
            f"compile+export {elapsed * 1000:.0f} ms, {tooltip_count} tooltips, {len(payload)} bytes")
    assert tooltip_count == 411 + 95
    assert elapsed < 1.0
