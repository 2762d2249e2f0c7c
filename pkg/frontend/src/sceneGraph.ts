/**
 * Build three.js object trees from a scene document: one group per view
 * variant (points, event spheres, lines) plus the ground maps. Nodes carry
 * their document ids in userData so picking can map hits back to tooltips.
 */

import * as THREE from "three";

import type {
  Hsl,
  MapPlacement,
  SceneDocument,
  Variant,
  VariantKey,
} from "./types.js";
import { VARIANT_KEYS } from "./types.js";

export type NodeKind = "point" | "event" | "line" | "map";

export interface NodeUserData {
  kind: NodeKind;
  id: string;
  characterId?: string;
  scenarioId?: string | null;
}

const POINT_SEGMENTS = 16;
const EVENT_SEGMENTS = 24;
const EVENT_OPACITY = 0.28;
const MAP_COLOR = 0x2b3440;
const FALLBACK_COLOR: Hsl = [0, 0, 0.7];

export function hslToColor(hsl: Hsl | null): THREE.Color {
  const [h, s, l] = hsl ?? FALLBACK_COLOR;
  return new THREE.Color().setHSL(h / 360, s, l);
}

function tag(object: THREE.Object3D, data: NodeUserData): void {
  object.userData = data;
}

function buildVariantGroup(variant: Variant, doc: SceneDocument): THREE.Group {
  const group = new THREE.Group();
  for (const node of variant.point_nodes) {
    const material = new THREE.MeshStandardMaterial({
      color: hslToColor(doc.palette[node.character_id] ?? null),
      transparent: true,
    });
    const mesh = new THREE.Mesh(
      new THREE.SphereGeometry(node.radius, POINT_SEGMENTS, POINT_SEGMENTS),
      material,
    );
    mesh.position.set(...node.position);
    tag(mesh, {
      kind: "point",
      id: node.id,
      characterId: node.character_id,
      scenarioId: node.scenario_id,
    });
    group.add(mesh);
  }
  for (const node of variant.event_nodes) {
    const material = new THREE.MeshStandardMaterial({
      color: 0xccd5e0,
      transparent: true,
      opacity: EVENT_OPACITY,
      depthWrite: false,
    });
    const mesh = new THREE.Mesh(
      new THREE.SphereGeometry(node.radius, EVENT_SEGMENTS, EVENT_SEGMENTS),
      material,
    );
    mesh.position.set(...node.position);
    tag(mesh, { kind: "event", id: node.id, scenarioId: node.scenario_id });
    group.add(mesh);
  }
  for (const line of variant.polylines) {
    const geometry = new THREE.BufferGeometry().setFromPoints(
      line.samples.map(([x, y, z]) => new THREE.Vector3(x, y, z)),
    );
    const material = new THREE.LineBasicMaterial({
      color: hslToColor(line.color),
      transparent: true,
    });
    const object = new THREE.Line(geometry, material);
    tag(object, {
      kind: "line",
      id: line.source_id,
      scenarioId: line.scenario_id,
    });
    group.add(object);
  }
  return group;
}

/** One group per variant key, each a self-contained renderable storyline. */
export function buildVariantGroups(doc: SceneDocument): Map<VariantKey, THREE.Group> {
  const groups = new Map<VariantKey, THREE.Group>();
  for (const key of VARIANT_KEYS) {
    const group = buildVariantGroup(doc.variants[key], doc);
    group.name = key;
    groups.set(key, group);
  }
  return groups;
}

function buildMapQuad(placement: MapPlacement): THREE.Mesh {
  const [hw, hd] = placement.half_extent;
  const material = new THREE.MeshStandardMaterial({
    color: MAP_COLOR,
    transparent: true,
    opacity: 0.85,
    side: THREE.DoubleSide,
  });
  const mesh = new THREE.Mesh(new THREE.PlaneGeometry(2 * hw, 2 * hd), material);
  mesh.rotation.x = -Math.PI / 2;
  mesh.position.set(placement.center[0], 0, placement.center[1]);
  tag(mesh, { kind: "map", id: placement.scenario_id });
  return mesh;
}

/** All overview maps laid out around the viewer. */
export function buildOverviewMaps(doc: SceneDocument): THREE.Group {
  const group = new THREE.Group();
  group.name = "maps_overview";
  for (const placement of doc.maps.overview) {
    group.add(buildMapQuad(placement));
  }
  return group;
}

/** The single origin-centered map for one scenario in detail mode. */
export function buildDetailMap(doc: SceneDocument, scenarioId: string): THREE.Group {
  const group = new THREE.Group();
  group.name = "map_detail";
  const placement = doc.maps.detail[scenarioId];
  if (placement) {
    group.add(buildMapQuad(placement));
  }
  return group;
}

export interface RenderCounts {
  points: number;
  events: number;
  polylines: number;
}

/** Count renderables by kind; the contract is that these match the JSON. */
export function countRenderables(group: THREE.Group): RenderCounts {
  const counts: RenderCounts = { points: 0, events: 0, polylines: 0 };
  group.traverse((object) => {
    const data = object.userData as Partial<NodeUserData>;
    if (data.kind === "point") counts.points += 1;
    else if (data.kind === "event") counts.events += 1;
    else if (data.kind === "line") counts.polylines += 1;
  });
  return counts;
}

/** Apply one variant opacity to every material in the group. */
export function applyOpacity(group: THREE.Group, opacity: number): void {
  group.visible = opacity > 0;
  group.traverse((object) => {
    const mesh = object as THREE.Mesh;
    if (mesh.material !== undefined) {
      const materials = Array.isArray(mesh.material) ? mesh.material : [mesh.material];
      for (const material of materials) {
        const data = object.userData as Partial<NodeUserData>;
        const base = data.kind === "event" ? EVENT_OPACITY : 1;
        material.opacity = base * opacity;
      }
    }
  });
}
