/**
 * Pointer picking: cast a ray into a variant group and return the nearest
 * node's id. Lines get a widened hit cylinder so thin storylines stay
 * hoverable.
 */

import * as THREE from "three";

import type { NodeUserData } from "./sceneGraph.js";

/** World-unit half-width of the pick cylinder around line segments. */
export const LINE_PICK_THRESHOLD = 0.08;

export function makeRaycaster(): THREE.Raycaster {
  const raycaster = new THREE.Raycaster();
  raycaster.params.Line = { threshold: LINE_PICK_THRESHOLD };
  return raycaster;
}

export interface PickHit {
  id: string;
  kind: NodeUserData["kind"];
  distance: number;
}

/**
 * Nearest pickable object along the ray, or null. Intersections come back
 * sorted by distance, so the first tagged hit wins (overlapping targets:
 * nearest to the camera).
 */
export function pick(raycaster: THREE.Raycaster, root: THREE.Object3D): PickHit | null {
  // Node positions live in object transforms; make sure world matrices are
  // current even if the tree has never been rendered.
  root.updateMatrixWorld(true);
  const intersections = raycaster.intersectObject(root, true);
  for (const hit of intersections) {
    const data = hit.object.userData as Partial<NodeUserData>;
    if (data.kind !== undefined && data.id !== undefined) {
      return { id: data.id, kind: data.kind, distance: hit.distance };
    }
  }
  return null;
}

/** Convenience: pick from an explicit origin/direction (tests, VR cursors). */
export function pickFromRay(
  origin: THREE.Vector3,
  direction: THREE.Vector3,
  root: THREE.Object3D,
): PickHit | null {
  const raycaster = makeRaycaster();
  raycaster.set(origin, direction.clone().normalize());
  return pick(raycaster, root);
}
