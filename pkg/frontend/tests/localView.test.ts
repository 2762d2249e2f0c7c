import { describe, expect, it } from "vitest";

import { localCharacterView, UnknownEventError } from "../src/localView";
import { distance } from "../src/types";
import { goldenScene } from "./helpers";

// Expected counts below were produced by the reference pipeline's own
// local-view computation on the committed golden scene.
describe("event-local character views", () => {
  const doc = goldenScene();

  it("e1: three member points from two characters, two clipped segments", () => {
    const view = localCharacterView(doc, "e1");
    expect(view.lod).toBe("detail");
    expect(view.points.length).toBe(3);
    const characters = new Set(view.points.map((p) => p.character_id));
    expect([...characters].sort()).toEqual(["a", "b"]);
    expect(view.segments.length).toBe(2);
    expect(view.segments.map((s) => s.characterId).sort()).toEqual(["a", "b"]);
    expect(view.segments.map((s) => s.samples.length).sort((x, y) => x - y)).toEqual([16, 17]);
  });

  it("every segment sample lies inside the sphere", () => {
    const view = localCharacterView(doc, "e1");
    const event = doc.variants.events_detail.event_nodes.find((n) => n.id === "e1")!;
    for (const segment of view.segments) {
      for (const sample of segment.samples) {
        expect(distance(sample, event.position)).toBeLessThanOrEqual(event.radius + 1e-12);
      }
      expect(segment.samples.length).toBeGreaterThanOrEqual(2);
    }
  });

  it("member points lie inside the sphere and carry palette colors on segments", () => {
    const view = localCharacterView(doc, "e1");
    const event = doc.variants.events_detail.event_nodes.find((n) => n.id === "e1")!;
    for (const point of view.points) {
      expect(distance(point.position, event.position)).toBeLessThanOrEqual(event.radius);
    }
    for (const segment of view.segments) {
      expect(segment.color).toEqual(doc.palette[segment.characterId]);
    }
  });

  it("empty-membership events produce empty sub-views", () => {
    for (const eventId of ["e2", "e3"]) {
      const view = localCharacterView(doc, eventId);
      expect(view.points.length).toBe(0);
      expect(view.segments.length).toBe(0);
    }
  });

  it("e4: one member point of one character, one short segment", () => {
    const view = localCharacterView(doc, "e4");
    expect(view.lod).toBe("overview");
    expect(view.points.length).toBe(1);
    expect(view.points[0].character_id).toBe("c");
    expect(view.segments.length).toBe(1);
    expect(view.segments[0].samples.length).toBe(3);
  });

  it("unknown event ids raise UnknownEventError", () => {
    expect(() => localCharacterView(doc, "nope")).toThrowError(UnknownEventError);
  });
});
