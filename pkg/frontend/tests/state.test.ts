import { describe, expect, it } from "vitest";

import {
  activeVariant,
  FADE_DURATION_MS,
  initialState,
  nearestScenario,
  selectEvent,
  setHover,
  storylineBounds,
  tickFade,
  timeScroll,
  togglePerspective,
  toggleLod,
  variantOpacities,
  type ViewerState,
} from "../src/state";
import type { VariantKey } from "../src/types";
import { goldenScene } from "./helpers";

const VISIBLE = { min: -2, max: 14 };

function settle(state: ViewerState): ViewerState {
  return tickFade(state, FADE_DURATION_MS);
}

describe("initial state", () => {
  it("starts on the characters overview variant", () => {
    const state = initialState();
    expect(activeVariant(state)).toBe("characters_overview");
    expect(state.timeOffset).toBe(0);
    expect(state.hoverTarget).toBeNull();
    expect(state.selectedEvent).toBeNull();
    expect(state.fade).toBeNull();
  });
});

describe("perspective and level-of-detail toggles", () => {
  it("switches characters_overview to events_overview", () => {
    const state = togglePerspective(initialState());
    expect(activeVariant(state)).toBe("events_overview");
    expect(state.fade).toEqual({
      from: "characters_overview",
      to: "events_overview",
      progress: 0,
    });
  });

  it("is an involution", () => {
    const once = settle(togglePerspective(initialState()));
    const twice = settle(togglePerspective(once));
    expect(activeVariant(twice)).toBe("characters_overview");

    const doc = goldenScene();
    const down = settle(toggleLod(initialState(), doc, [0, 0]));
    expect(activeVariant(down)).toBe("characters_detail");
    const back = settle(toggleLod(down, doc, [0, 0]));
    expect(activeVariant(back)).toBe("characters_overview");
  });

  it("reaches all four variants via alternating toggles", () => {
    const doc = goldenScene();
    let state = initialState();
    const seen: VariantKey[] = [activeVariant(state)];
    state = settle(togglePerspective(state));
    seen.push(activeVariant(state));
    state = settle(toggleLod(state, doc, [0, 0]));
    seen.push(activeVariant(state));
    state = settle(togglePerspective(state));
    seen.push(activeVariant(state));
    state = settle(toggleLod(state, doc, [0, 0]));
    expect(new Set(seen).size).toBe(4);
    expect(activeVariant(state)).toBe("characters_overview");
  });

  it("entering detail picks the scenario nearest the camera ground point", () => {
    const doc = goldenScene(); // maps at (2.0, 0.0) for s1 and (-2.58, 2.36) for s2
    const near = toggleLod(initialState(), doc, [2.1, 0]);
    expect(near.activeScenario).toBe("s1");
    const far = toggleLod(initialState(), doc, [-3, 2.5]);
    expect(far.activeScenario).toBe("s2");
  });

  it("nearestScenario compares square ground distance", () => {
    const doc = goldenScene();
    expect(nearestScenario(doc, [2.1, 0])).toBe("s1");
    expect(nearestScenario(doc, [-2.5, 2.3])).toBe("s2");
    expect(nearestScenario({ ...doc, maps: { overview: [], detail: {} } }, [0, 0])).toBeNull();
  });
});

describe("cross-fade", () => {
  it("halfway through, source and target split the opacity", () => {
    let state = togglePerspective(initialState());
    state = tickFade(state, FADE_DURATION_MS / 2);
    const opacities = variantOpacities(state);
    expect(opacities.characters_overview).toBeCloseTo(0.5, 10);
    expect(opacities.events_overview).toBeCloseTo(0.5, 10);
    expect(opacities.characters_detail).toBe(0);
    expect(opacities.events_detail).toBe(0);
  });

  it("never leaves two variants at full opacity", () => {
    let state = togglePerspective(initialState());
    for (let elapsed = 0; elapsed <= FADE_DURATION_MS; elapsed += 40) {
      const opacities = Object.values(variantOpacities(state));
      const fullyOpaque = opacities.filter((o) => o === 1).length;
      expect(fullyOpaque).toBeLessThanOrEqual(1);
      expect(Math.max(...opacities)).toBeLessThanOrEqual(1);
      state = tickFade(state, 40);
    }
  });

  it("settles on the target after the full duration", () => {
    let state = togglePerspective(initialState());
    state = tickFade(state, FADE_DURATION_MS);
    expect(state.fade).toBeNull();
    expect(variantOpacities(state).events_overview).toBe(1);
  });

  it("ticking without a fade is a no-op", () => {
    const state = initialState();
    expect(tickFade(state, 100)).toBe(state);
  });
});

describe("time scrolling", () => {
  const doc = goldenScene();
  const bounds = storylineBounds(doc.variants.characters_overview);

  it("derives a finite storyline extent from the golden scene", () => {
    expect(bounds).not.toBeNull();
    expect(bounds!.min).toBeLessThan(bounds!.max);
  });

  it("delta zero changes nothing", () => {
    const state = initialState();
    expect(timeScroll(state, 0, bounds, VISIBLE).timeOffset).toBe(0);
  });

  it("clamps large scrolls so the storyline still intersects the view", () => {
    const state = timeScroll(initialState(), 1e6, bounds, VISIBLE);
    expect(state.timeOffset).toBe(VISIBLE.max - bounds!.min);
    const down = timeScroll(initialState(), -1e6, bounds, VISIBLE);
    expect(down.timeOffset).toBe(VISIBLE.min - bounds!.max);
    // In both extremes the shifted extent still touches the visible volume.
    expect(bounds!.min + state.timeOffset).toBeLessThanOrEqual(VISIBLE.max);
    expect(bounds!.max + down.timeOffset).toBeGreaterThanOrEqual(VISIBLE.min);
  });

  it("equal scroll up then down returns to the original offset", () => {
    let state = initialState();
    state = timeScroll(state, 3, bounds, VISIBLE);
    state = timeScroll(state, -3, bounds, VISIBLE);
    expect(state.timeOffset).toBe(0);
  });

  it("ignores scrolling when the variant is empty", () => {
    const state = initialState();
    expect(timeScroll(state, 5, null, VISIBLE)).toBe(state);
  });
});

describe("hover and event selection", () => {
  it("hover sets and clears the target", () => {
    let state = initialState();
    state = setHover(state, "a#0");
    expect(state.hoverTarget).toBe("a#0");
    expect(setHover(state, "a#0")).toBe(state);
    expect(setHover(state, null).hoverTarget).toBeNull();
  });

  it("selection only works in the events perspective", () => {
    const characters = initialState();
    expect(selectEvent(characters, "e1")).toBe(characters);

    let state = settle(togglePerspective(initialState()));
    state = selectEvent(state, "e1");
    expect(state.selectedEvent).toBe("e1");
  });

  it("selecting the same event again deselects it", () => {
    let state = settle(togglePerspective(initialState()));
    state = selectEvent(state, "e1");
    state = selectEvent(state, "e1");
    expect(state.selectedEvent).toBeNull();
  });

  it("switching perspective clears the selection", () => {
    let state = settle(togglePerspective(initialState()));
    state = selectEvent(state, "e1");
    state = togglePerspective(state);
    expect(state.selectedEvent).toBeNull();
  });
});
