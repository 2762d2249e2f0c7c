"""threedsl: compile spatio-temporal narrative records into 3D storyline scenes.

The pipeline turns two CSV tables (character observations and events) into a
canonical scene document with four view variants — characters or events, each
at an overview or a detail level — laid out inside a space-time cube where
height is time and the ground plane carries per-scenario maps.
"""

from threedsl.errors import (
    CyclicEventLinks,
    DegenerateControls,
    DegenerateTimeRange,
    DuplicateEventId,
    InfeasibleAngularBudget,
    MalformedRow,
    MissingHeader,
    StorylineError,
    UnknownEvent,
    UnknownScenario,
    UnsupportedSceneVersion,
    ValidationFailed,
)
from threedsl.model import (
    CharacterTrack,
    EventRecord,
    NormalizedDataset,
    ScenarioMap,
    SpatioTemporalPoint,
    ValidationReport,
    WorldEvent,
    WorldPoint,
    assign_character_colors,
    derive_event_impact,
    event_center,
    validate_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterTrack",
    "CyclicEventLinks",
    "DegenerateControls",
    "DegenerateTimeRange",
    "DuplicateEventId",
    "EventRecord",
    "InfeasibleAngularBudget",
    "MalformedRow",
    "MissingHeader",
    "NormalizedDataset",
    "ScenarioMap",
    "SpatioTemporalPoint",
    "StorylineError",
    "UnknownEvent",
    "UnknownScenario",
    "UnsupportedSceneVersion",
    "ValidationFailed",
    "ValidationReport",
    "WorldEvent",
    "WorldPoint",
    "assign_character_colors",
    "derive_event_impact",
    "event_center",
    "validate_dataset",
    "__version__",
]
