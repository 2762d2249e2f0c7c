"""Shared factories for world-coordinate records used across test modules."""

import pytest

from threedsl.model import EventRecord, SpatioTemporalPoint, WorldEvent, WorldPoint


def make_point(
    x=0.0,
    y=0.0,
    z=0.0,
    character_id="c",
    scenario_id="s1",
    impact=1.0,
    t=None,
    order=0,
    point_id=None,
):
    """WorldPoint at world position (x, y, z); raw time defaults to y."""
    raw = SpatioTemporalPoint(
        character_id=character_id,
        t=y if t is None else t,
        x=x,
        z=z,
        impact=impact,
        scenario_id=scenario_id,
    )
    return WorldPoint(
        point_id=point_id or f"{character_id}#{order}",
        raw=raw,
        y=y,
        map_x=x,
        map_z=z,
        order=order,
    )


def make_event(
    event_id="e1",
    center_y=0.0,
    radius=1.0,
    x=0.0,
    z=0.0,
    scenario_id="s1",
    predecessors=(),
):
    """WorldEvent with its sphere at world position (x, center_y, z)."""
    raw = EventRecord(
        event_id=event_id,
        display_name=event_id,
        t_start=center_y - radius,
        t_end=center_y + radius,
        x=x,
        z=z,
        scenario_id=scenario_id,
        predecessors=tuple(predecessors),
    )
    return WorldEvent(raw=raw, center_y=center_y, radius=radius, map_x=x, map_z=z)


@pytest.fixture
def toy_csvs(tmp_path):
    """Tiny two-character, one-event dataset on disk; returns the two paths."""
    chars = tmp_path / "characters.csv"
    events = tmp_path / "events.csv"
    chars.write_text(
        "character_id,name,t,x,z,impact,scenario_id\n"
        "a,Alice,0.0,0.0,0.0,2.0,s1\n"
        "a,Alice,10.0,1.0,0.0,2.0,s1\n"
        "a,Alice,20.0,2.0,1.0,0.5,s1\n"
        "a,Alice,30.0,3.0,1.0,0.5,s1\n"
        "b,Bob,5.0,0.0,1.0,2.0,s1\n"
        "b,Bob,25.0,3.0,0.0,2.0,s1\n"
    )
    events.write_text(
        "event_id,name,t_start,t_end,x,z,scenario_id,importance,predecessors\n"
        "e1,Meeting,12.0,18.0,1.5,0.5,s1,,\n"
    )
    return chars, events
