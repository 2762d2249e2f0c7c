/**
 * Viewer state machine, kept free of rendering concerns so transitions are
 * unit-testable: perspective/level-of-detail toggles with a timed cross-fade,
 * nearest-map scenario selection, clamped time scrolling, hover and event
 * selection.
 */

import type {
  Lod,
  Pair,
  Perspective,
  SceneDocument,
  Variant,
  VariantKey,
} from "./types.js";
import { variantKey } from "./types.js";

export const FADE_DURATION_MS = 400;

export interface Fade {
  from: VariantKey;
  to: VariantKey;
  /** 0 = source fully visible, 1 = target fully visible. */
  progress: number;
}

export interface ViewerState {
  perspective: Perspective;
  lod: Lod;
  /** Which scenario's map is on the ground in detail mode. */
  activeScenario: string | null;
  timeOffset: number;
  hoverTarget: string | null;
  selectedEvent: string | null;
  fade: Fade | null;
}

export function initialState(): ViewerState {
  return {
    perspective: "characters",
    lod: "overview",
    activeScenario: null,
    timeOffset: 0,
    hoverTarget: null,
    selectedEvent: null,
    fade: null,
  };
}

export function activeVariant(state: ViewerState): VariantKey {
  return variantKey(state.perspective, state.lod);
}

function startFade(from: VariantKey, to: VariantKey): Fade {
  return { from, to, progress: 0 };
}

export function togglePerspective(state: ViewerState): ViewerState {
  const from = activeVariant(state);
  const perspective: Perspective =
    state.perspective === "characters" ? "events" : "characters";
  const next: ViewerState = {
    ...state,
    perspective,
    // An event selection only makes sense while looking at events.
    selectedEvent: null,
    fade: null,
  };
  return { ...next, fade: startFade(from, activeVariant(next)) };
}

/** Squared ground distance from a camera ground projection to a map center. */
function groundDistanceSq(center: Pair, ground: Pair): number {
  const dx = center[0] - ground[0];
  const dz = center[1] - ground[1];
  return dx * dx + dz * dz;
}

/** The scenario whose overview map center is closest to the given ground point. */
export function nearestScenario(doc: SceneDocument, ground: Pair): string | null {
  let best: string | null = null;
  let bestD = Infinity;
  for (const placement of doc.maps.overview) {
    const d = groundDistanceSq(placement.center, ground);
    if (d < bestD) {
      bestD = d;
      best = placement.scenario_id;
    }
  }
  return best;
}

/**
 * Switch level of detail. Entering detail "walks into" the map nearest the
 * camera's ground projection; leaving detail keeps the scenario remembered.
 */
export function toggleLod(
  state: ViewerState,
  doc: SceneDocument,
  cameraGround: Pair,
): ViewerState {
  const from = activeVariant(state);
  const lod: Lod = state.lod === "overview" ? "detail" : "overview";
  const activeScenario =
    lod === "detail" ? nearestScenario(doc, cameraGround) : state.activeScenario;
  const next: ViewerState = { ...state, lod, activeScenario, fade: null };
  return { ...next, fade: startFade(from, activeVariant(next)) };
}

/** Advance the cross-fade; once complete the fade record is dropped. */
export function tickFade(state: ViewerState, dtMs: number): ViewerState {
  if (state.fade === null) {
    return state;
  }
  const progress = Math.min(1, state.fade.progress + dtMs / FADE_DURATION_MS);
  if (progress >= 1) {
    return { ...state, fade: null };
  }
  return { ...state, fade: { ...state.fade, progress } };
}

/**
 * Per-variant opacity. Settled: the active variant alone at 1. During a
 * fade the source and target split the opacity, so the two are never both
 * fully opaque.
 */
export function variantOpacities(state: ViewerState): Record<VariantKey, number> {
  const out: Record<VariantKey, number> = {
    characters_overview: 0,
    characters_detail: 0,
    events_overview: 0,
    events_detail: 0,
  };
  if (state.fade === null) {
    out[activeVariant(state)] = 1;
  } else {
    out[state.fade.from] = 1 - state.fade.progress;
    out[state.fade.to] = state.fade.progress;
  }
  return out;
}

export interface Bounds {
  min: number;
  max: number;
}

/** Vertical extent of everything that scrolls with time in one variant. */
export function storylineBounds(variant: Variant): Bounds | null {
  let min = Infinity;
  let max = -Infinity;
  for (const node of variant.point_nodes) {
    min = Math.min(min, node.position[1]);
    max = Math.max(max, node.position[1]);
  }
  for (const node of variant.event_nodes) {
    min = Math.min(min, node.position[1] - node.radius);
    max = Math.max(max, node.position[1] + node.radius);
  }
  for (const line of variant.polylines) {
    for (const sample of line.samples) {
      min = Math.min(min, sample[1]);
      max = Math.max(max, sample[1]);
    }
  }
  return min <= max ? { min, max } : null;
}

/**
 * Scroll the storyline along the time axis. The offset is clamped so the
 * storyline's y-extent always intersects the visible volume: the maps stay
 * fixed and the story can never be pushed entirely out of view.
 */
export function timeScroll(
  state: ViewerState,
  delta: number,
  storyline: Bounds | null,
  visible: Bounds,
): ViewerState {
  if (storyline === null) {
    return state;
  }
  const lower = visible.min - storyline.max;
  const upper = visible.max - storyline.min;
  const timeOffset = Math.min(upper, Math.max(lower, state.timeOffset + delta));
  return { ...state, timeOffset };
}

export function setHover(state: ViewerState, target: string | null): ViewerState {
  if (state.hoverTarget === target) {
    return state;
  }
  return { ...state, hoverTarget: target };
}

/**
 * Toggle the event-local character view. Only meaningful while the events
 * perspective is active; a second selection of the same event deselects it.
 */
export function selectEvent(state: ViewerState, eventId: string): ViewerState {
  if (state.perspective !== "events") {
    return state;
  }
  return {
    ...state,
    selectedEvent: state.selectedEvent === eventId ? null : eventId,
  };
}
