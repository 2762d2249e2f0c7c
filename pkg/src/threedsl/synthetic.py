"""Seeded synthetic narrative generator at the published dataset scale.

Produces a characters/events record pair that always validates: strictly
increasing per-character timestamps, unique event ids, acyclic predecessor
links (each event may link to the previous one in its scenario), and point
positions attracted toward concurrent same-scenario events so that sphere
membership is well exercised rather than vacuous.
"""

from __future__ import annotations

import random

from threedsl.model import EventRecord, SpatioTemporalPoint

TIME_SPAN = 1000.0

_SYLLABLES = (
    "ka", "ri", "lo", "ven", "tas", "mir", "el", "dra", "sun", "bel",
    "or", "na", "ith", "gar", "ley", "tor", "ans", "vel", "ur", "mek",
)
_EVENT_WORDS = (
    "Summit", "Heist", "Siege", "Council", "Exodus", "Parley", "Ambush",
    "Festival", "Trial", "Accord", "Uprising", "Vigil", "Crossing", "Auction",
)
_PLACE_WORDS = (
    "Harbor", "Citadel", "Bazaar", "Archive", "Terrace", "Foundry",
    "Sanctum", "Causeway", "Atrium", "Quarry",
)


def _name(rng: random.Random) -> str:
    n = rng.randint(2, 3)
    return "".join(rng.choice(_SYLLABLES) for _ in range(n)).title()


def generate_dataset(
    seed: int = 7,
    n_points: int = 411,
    n_events: int = 95,
    n_characters: int = 24,
    n_scenarios: int = 3,
) -> tuple[list[SpatioTemporalPoint], list[EventRecord]]:
    """Deterministic dataset with exactly the requested cardinalities."""
    for label, n in (
        ("n_points", n_points),
        ("n_events", n_events),
        ("n_characters", n_characters),
        ("n_scenarios", n_scenarios),
    ):
        if n < 1:
            raise ValueError(f"{label} must be >= 1, got {n}")
    rng = random.Random(seed)
    scenario_ids = [f"s{k}" for k in range(n_scenarios)]

    # Each scenario gets its own ground frame; spreads differ so the
    # per-scenario normalization has real work to do.
    scenario_spread = {sid: rng.uniform(20.0, 80.0) for sid in scenario_ids}

    # Event ids follow story time: draw the time specs first, sort, then
    # build records so each event may link to the true previous event of
    # its scenario (keeps declared chains chronological and acyclic).
    specs = sorted(
        (rng.uniform(0.0, TIME_SPAN * 0.96), rng.uniform(10.0, 200.0), rng.choice(scenario_ids))
        for _ in range(n_events)
    )
    events: list[EventRecord] = []
    last_in_scenario: dict[str, EventRecord] = {}
    for i, (t_start, duration, sid) in enumerate(specs):
        spread = scenario_spread[sid]
        prev = last_in_scenario.get(sid)
        predecessors: tuple[str, ...] = ()
        if prev is not None and prev.t_start < t_start and rng.random() < 0.8:
            predecessors = (prev.event_id,)
        record = EventRecord(
            event_id=f"e{i:02d}",
            display_name=f"{rng.choice(_EVENT_WORDS)} at {rng.choice(_PLACE_WORDS)}",
            t_start=t_start,
            t_end=min(t_start + duration, TIME_SPAN),
            x=rng.uniform(-spread, spread),
            z=rng.uniform(-spread, spread),
            scenario_id=sid,
            importance_override=(
                round(rng.uniform(0.3, 1.9), 3) if rng.random() < 0.15 else None
            ),
            predecessors=predecessors,
        )
        events.append(record)
        last_in_scenario[sid] = record

    events_by_scenario: dict[str, list[EventRecord]] = {sid: [] for sid in scenario_ids}
    for e in events:
        events_by_scenario[e.scenario_id].append(e)

    points: list[SpatioTemporalPoint] = []
    base, extra = divmod(n_points, n_characters)
    for k in range(n_characters):
        cid = f"c{k:02d}"
        name = _name(rng)
        count = base + (1 if k < extra else 0)
        sid = rng.choice(scenario_ids)
        spread = scenario_spread[sid]
        t = rng.uniform(0.0, 40.0)
        x = rng.uniform(-spread, spread)
        z = rng.uniform(-spread, spread)
        for _ in range(count):
            if rng.random() < 0.12:
                sid = rng.choice(scenario_ids)
                spread = scenario_spread[sid]
                x = rng.uniform(-spread, spread)
                z = rng.uniform(-spread, spread)
            concurrent = [
                e for e in events_by_scenario[sid] if e.t_start <= t <= e.t_end
            ]
            if concurrent and rng.random() < 0.6:
                target = rng.choice(concurrent)
                x = target.x + rng.gauss(0.0, spread * 0.03)
                z = target.z + rng.gauss(0.0, spread * 0.03)
            else:
                x += rng.gauss(0.0, spread * 0.08)
                z += rng.gauss(0.0, spread * 0.08)
            points.append(
                SpatioTemporalPoint(
                    character_id=cid,
                    name=name,
                    t=t,
                    x=x,
                    z=z,
                    impact=rng.lognormvariate(0.0, 0.5),
                    scenario_id=sid,
                )
            )
            t += rng.uniform(5.0, 40.0)
    return points, events
