/**
 * Scene document schema ("3dsl-scene/1") as served at /scene.json, plus a
 * validating parser. The viewer consumes this JSON contract and nothing else.
 */

export type Triple = [number, number, number];
export type Pair = [number, number];
export type Hsl = [number, number, number];

export type Perspective = "characters" | "events";
export type Lod = "overview" | "detail";

export type VariantKey =
  | "characters_overview"
  | "characters_detail"
  | "events_overview"
  | "events_detail";

export const VARIANT_KEYS: readonly VariantKey[] = [
  "characters_overview",
  "characters_detail",
  "events_overview",
  "events_detail",
];

export const SCENE_VERSION = "3dsl-scene/1";

export interface PointNode {
  id: string;
  position: Triple;
  radius: number;
  character_id: string;
  scenario_id: string;
}

export interface EventNode {
  id: string;
  position: Triple;
  radius: number;
  scenario_id: string;
}

export interface Polyline {
  samples: Triple[];
  source_id: string;
  scenario_id: string | null;
  color: Hsl | null;
}

export interface Variant {
  point_nodes: PointNode[];
  event_nodes: EventNode[];
  polylines: Polyline[];
}

export interface MapPlacement {
  scenario_id: string;
  mode: "overview" | "detail";
  center: Pair;
  half_extent: Pair;
  rho: number | null;
  theta: number | null;
  angular_extent: number | null;
}

export interface PointTooltip {
  kind: "point";
  name: string;
  t: number;
  x: number;
  z: number;
  scenario: string;
  impact: number;
}

export interface EventTooltip {
  kind: "event";
  name: string;
  t_start: number;
  t_end: number;
  x: number;
  z: number;
  scenario: string;
  impact: number;
}

export type Tooltip = PointTooltip | EventTooltip;

export interface SceneMeta {
  name: string;
  version: string;
  time_height: number;
  xi_c_thre: number;
  xi_e_thre: number;
  config: Record<string, unknown>;
}

export interface SceneDocument {
  meta: SceneMeta;
  palette: Record<string, Hsl>;
  maps: {
    overview: MapPlacement[];
    detail: Record<string, MapPlacement>;
  };
  variants: Record<VariantKey, Variant>;
  tooltips: Record<string, Tooltip>;
}

export class SceneFormatError extends Error {}

function isObject(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

/**
 * Validate the parts of the payload the viewer depends on and return it as a
 * typed document. Throws SceneFormatError with a human-readable message; the
 * version gate message is surfaced verbatim in the error banner.
 */
export function parseSceneDocument(data: unknown): SceneDocument {
  if (!isObject(data)) {
    throw new SceneFormatError("scene payload is not a JSON object");
  }
  const meta = data["meta"];
  if (!isObject(meta) || typeof meta["version"] !== "string") {
    throw new SceneFormatError("scene payload has no version field");
  }
  if (meta["version"] !== SCENE_VERSION) {
    throw new SceneFormatError(
      `unsupported scene version: ${meta["version"]} (expected ${SCENE_VERSION})`,
    );
  }
  const variants = data["variants"];
  if (!isObject(variants)) {
    throw new SceneFormatError("scene payload has no variants table");
  }
  for (const key of VARIANT_KEYS) {
    const variant = variants[key];
    if (!isObject(variant)) {
      throw new SceneFormatError(`scene payload is missing variant ${key}`);
    }
    for (const field of ["point_nodes", "event_nodes", "polylines"]) {
      if (!Array.isArray(variant[field])) {
        throw new SceneFormatError(`variant ${key} is missing ${field}`);
      }
    }
  }
  const extraneous = Object.keys(variants).filter(
    (key) => !(VARIANT_KEYS as readonly string[]).includes(key),
  );
  if (extraneous.length > 0) {
    throw new SceneFormatError(`unexpected variant keys: ${extraneous.join(", ")}`);
  }
  const maps = data["maps"];
  if (!isObject(maps) || !Array.isArray(maps["overview"]) || !isObject(maps["detail"])) {
    throw new SceneFormatError("scene payload has no maps table");
  }
  if (!isObject(data["palette"]) || !isObject(data["tooltips"])) {
    throw new SceneFormatError("scene payload is missing palette or tooltips");
  }
  return data as unknown as SceneDocument;
}

export function variantKey(perspective: Perspective, lod: Lod): VariantKey {
  return `${perspective}_${lod}` as VariantKey;
}

export function distance(a: Triple, b: Triple): number {
  const dx = a[0] - b[0];
  const dy = a[1] - b[1];
  const dz = a[2] - b[2];
  return Math.sqrt(dx * dx + dy * dy + dz * dz);
}
