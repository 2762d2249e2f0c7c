import { readFileSync } from "node:fs";

import { parseSceneDocument, type SceneDocument } from "../src/types";

let cached: SceneDocument | null = null;

/** The committed golden scene, compiled by the reference pipeline CLI. */
export function goldenScene(): SceneDocument {
  if (cached === null) {
    const raw = readFileSync(
      new URL("./fixtures/golden-scene.json", import.meta.url),
      "utf8",
    );
    cached = parseSceneDocument(JSON.parse(raw));
  }
  return cached;
}

/** A deep structural copy for tests that mutate the document. */
export function goldenSceneCopy(): unknown {
  return JSON.parse(
    readFileSync(new URL("./fixtures/golden-scene.json", import.meta.url), "utf8"),
  );
}
