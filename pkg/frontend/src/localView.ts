/**
 * Event-local character view: the points and clipped line segments that fall
 * inside one event's bounding sphere, derived purely from the scene document.
 * Mirrors the reference pipeline's sub-view rule: membership by final
 * position, clipping restricted to the member characters' own lines.
 */

import type {
  EventNode,
  Hsl,
  Lod,
  PointNode,
  SceneDocument,
  Triple,
} from "./types.js";
import { distance, variantKey } from "./types.js";

export class UnknownEventError extends Error {
  constructor(eventId: string) {
    super(`no event node with id ${eventId} in any events variant`);
  }
}

export interface LocalSegment {
  characterId: string;
  samples: Triple[];
  color: Hsl | null;
}

export interface LocalView {
  eventId: string;
  lod: Lod;
  points: PointNode[];
  segments: LocalSegment[];
}

function findEvent(doc: SceneDocument, eventId: string): { node: EventNode; lod: Lod } {
  for (const lod of ["overview", "detail"] as const) {
    const node = doc.variants[variantKey("events", lod)].event_nodes.find(
      (candidate) => candidate.id === eventId,
    );
    if (node !== undefined) {
      return { node, lod };
    }
  }
  throw new UnknownEventError(eventId);
}

/**
 * Compute the in-sphere sub-view for one event. Points come from the same
 * level of detail's characters variant by final-position distance; a line
 * contributes clipped runs only if its character has at least one member
 * point (and, in detail mode, the line lives in the event's scenario, since
 * detail coordinates are scenario-local).
 */
export function localCharacterView(doc: SceneDocument, eventId: string): LocalView {
  const { node: event, lod } = findEvent(doc, eventId);
  const characters = doc.variants[variantKey("characters", lod)];

  const points = characters.point_nodes.filter(
    (point) => distance(point.position, event.position) <= event.radius,
  );
  const memberCharacters = new Set(points.map((point) => point.character_id));

  const segments: LocalSegment[] = [];
  for (const line of characters.polylines) {
    if (!memberCharacters.has(line.source_id)) {
      continue;
    }
    if (lod === "detail" && line.scenario_id !== null && line.scenario_id !== event.scenario_id) {
      continue;
    }
    let run: Triple[] = [];
    for (const sample of line.samples) {
      if (distance(sample, event.position) <= event.radius) {
        run.push(sample);
      } else {
        if (run.length >= 2) {
          segments.push({ characterId: line.source_id, samples: run, color: line.color });
        }
        run = [];
      }
    }
    if (run.length >= 2) {
      segments.push({ characterId: line.source_id, samples: run, color: line.color });
    }
  }
  return { eventId, lod, points, segments };
}
