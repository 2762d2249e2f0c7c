/**
 * Browser entry point: fetch the scene document, build the renderable
 * groups, and drive the interaction loop (toggles with cross-fades, time
 * scrolling, orbit + walk camera, hover tooltips, event-local views).
 *
 * Bindings: P perspective, L level of detail, mouse wheel time scroll,
 * drag orbit, WASD walk, hover inspect, click select event.
 */

import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";

import { localCharacterView } from "./localView.js";
import { makeRaycaster, pick } from "./picking.js";
import {
  applyOpacity,
  buildDetailMap,
  buildOverviewMaps,
  buildVariantGroups,
  hslToColor,
} from "./sceneGraph.js";
import {
  activeVariant,
  initialState,
  selectEvent,
  setHover,
  storylineBounds,
  tickFade,
  timeScroll,
  togglePerspective,
  toggleLod,
  variantOpacities,
  type ViewerState,
} from "./state.js";
import {
  parseSceneDocument,
  type Pair,
  type SceneDocument,
  type Tooltip,
  type VariantKey,
} from "./types.js";

const VISIBLE_VOLUME = { min: -2, max: 14 };
const WALK_SPEED = 6; // world units per second

function showBanner(message: string): void {
  const banner = document.getElementById("banner");
  if (banner) {
    banner.textContent = message;
    banner.style.display = "block";
  }
}

function tooltipText(id: string, tooltip: Tooltip): string {
  if (tooltip.kind === "event") {
    return (
      `${tooltip.name} — t ${tooltip.t_start}..${tooltip.t_end}, ` +
      `at (${tooltip.x}, ${tooltip.z}), ${tooltip.scenario}`
    );
  }
  return (
    `${tooltip.name} — t ${tooltip.t}, at (${tooltip.x}, ${tooltip.z}), ` +
    `${tooltip.scenario}`
  );
}

function cameraGround(camera: THREE.Camera): Pair {
  return [camera.position.x, camera.position.z];
}

function start(doc: SceneDocument): void {
  const renderer = new THREE.WebGLRenderer({ antialias: true });
  renderer.setSize(window.innerWidth, window.innerHeight);
  renderer.setPixelRatio(window.devicePixelRatio);
  document.body.appendChild(renderer.domElement);

  const scene3 = new THREE.Scene();
  scene3.background = new THREE.Color(0x10141a);
  scene3.add(new THREE.AmbientLight(0xffffff, 0.7));
  const sun = new THREE.DirectionalLight(0xffffff, 1.2);
  sun.position.set(8, 14, 6);
  scene3.add(sun);

  const camera = new THREE.PerspectiveCamera(
    60,
    window.innerWidth / window.innerHeight,
    0.05,
    500,
  );
  camera.position.set(9, 7, 9);
  const controls = new OrbitControls(camera, renderer.domElement);
  controls.target.set(0, 4, 0);
  controls.enableZoom = false; // the wheel is reserved for time scrolling

  // Storyline content scrolls with time; maps stay fixed on the ground.
  const storyRoot = new THREE.Group();
  scene3.add(storyRoot);
  const groups = buildVariantGroups(doc);
  for (const group of groups.values()) {
    storyRoot.add(group);
  }
  const overviewMaps = buildOverviewMaps(doc);
  scene3.add(overviewMaps);
  let detailMap: THREE.Group | null = null;
  let localGroup: THREE.Group | null = null;
  let renderedScenario: string | null = null;
  let renderedSelection: string | null = null;

  let state: ViewerState = initialState();
  const raycaster = makeRaycaster();
  const pointer = new THREE.Vector2();
  const tooltipDiv = document.getElementById("tooltip") as HTMLDivElement;

  function rebuildLocalView(): void {
    if (localGroup !== null) {
      storyRoot.remove(localGroup);
      localGroup = null;
    }
    if (state.selectedEvent === null) {
      return;
    }
    const view = localCharacterView(doc, state.selectedEvent);
    localGroup = new THREE.Group();
    localGroup.name = "local_view";
    for (const point of view.points) {
      const mesh = new THREE.Mesh(
        new THREE.SphereGeometry(point.radius, 12, 12),
        new THREE.MeshStandardMaterial({
          color: hslToColor(doc.palette[point.character_id] ?? null),
        }),
      );
      mesh.position.set(...point.position);
      localGroup.add(mesh);
    }
    for (const segment of view.segments) {
      const geometry = new THREE.BufferGeometry().setFromPoints(
        segment.samples.map(([x, y, z]) => new THREE.Vector3(x, y, z)),
      );
      localGroup.add(
        new THREE.Line(
          geometry,
          new THREE.LineBasicMaterial({ color: hslToColor(segment.color), linewidth: 2 }),
        ),
      );
    }
    storyRoot.add(localGroup);
  }

  function syncDetailMap(): void {
    const wanted = state.lod === "detail" ? state.activeScenario : null;
    if (wanted === renderedScenario) {
      return;
    }
    if (detailMap !== null) {
      scene3.remove(detailMap);
      detailMap = null;
    }
    if (wanted !== null) {
      detailMap = buildDetailMap(doc, wanted);
      scene3.add(detailMap);
    }
    renderedScenario = wanted;
  }

  window.addEventListener("keydown", (event) => {
    if (event.key === "p" || event.key === "P") {
      state = togglePerspective(state);
      state = { ...state };
      rebuildLocalView();
    } else if (event.key === "l" || event.key === "L") {
      state = toggleLod(state, doc, cameraGround(camera));
    } else if ("wasd".includes(event.key.toLowerCase())) {
      const forward = new THREE.Vector3();
      camera.getWorldDirection(forward);
      forward.y = 0;
      forward.normalize();
      const right = new THREE.Vector3(forward.z, 0, -forward.x);
      const step = WALK_SPEED * 0.05;
      const move = {
        w: forward.clone().multiplyScalar(step),
        s: forward.clone().multiplyScalar(-step),
        a: right.clone().multiplyScalar(step),
        d: right.clone().multiplyScalar(-step),
      }[event.key.toLowerCase() as "w" | "a" | "s" | "d"];
      camera.position.add(move);
      controls.target.add(move);
    }
  });

  window.addEventListener("wheel", (event) => {
    const variant = doc.variants[activeVariant(state)];
    state = timeScroll(
      state,
      -event.deltaY * 0.01,
      storylineBounds(variant),
      VISIBLE_VOLUME,
    );
  });

  renderer.domElement.addEventListener("pointermove", (event) => {
    pointer.x = (event.clientX / window.innerWidth) * 2 - 1;
    pointer.y = -(event.clientY / window.innerHeight) * 2 + 1;
    raycaster.setFromCamera(pointer, camera);
    const active = groups.get(activeVariant(state));
    const hit = active ? pick(raycaster, active) : null;
    state = setHover(state, hit?.id ?? null);
    if (hit !== null && doc.tooltips[hit.id] !== undefined) {
      tooltipDiv.textContent = tooltipText(hit.id, doc.tooltips[hit.id]);
      tooltipDiv.style.display = "block";
      tooltipDiv.style.left = `${event.clientX + 14}px`;
      tooltipDiv.style.top = `${event.clientY + 14}px`;
    } else {
      tooltipDiv.style.display = "none";
    }
  });

  renderer.domElement.addEventListener("click", () => {
    raycaster.setFromCamera(pointer, camera);
    const active = groups.get(activeVariant(state));
    const hit = active ? pick(raycaster, active) : null;
    if (hit !== null && hit.kind === "event") {
      state = selectEvent(state, hit.id);
    }
  });

  window.addEventListener("resize", () => {
    camera.aspect = window.innerWidth / window.innerHeight;
    camera.updateProjectionMatrix();
    renderer.setSize(window.innerWidth, window.innerHeight);
  });

  const clock = new THREE.Clock();
  renderer.setAnimationLoop(() => {
    state = tickFade(state, clock.getDelta() * 1000);
    const opacities = variantOpacities(state);
    for (const [key, group] of groups.entries()) {
      applyOpacity(group, opacities[key as VariantKey]);
    }
    overviewMaps.visible = state.lod === "overview" || state.fade !== null;
    syncDetailMap();
    if (renderedSelection !== state.selectedEvent) {
      rebuildLocalView();
      renderedSelection = state.selectedEvent;
    }
    storyRoot.position.y = state.timeOffset;
    controls.update();
    renderer.render(scene3, camera);
  });
}

async function boot(): Promise<void> {
  try {
    const response = await fetch("/scene.json");
    if (!response.ok) {
      throw new Error(`scene fetch failed: HTTP ${response.status}`);
    }
    start(parseSceneDocument(await response.json()));
  } catch (error) {
    showBanner(error instanceof Error ? error.message : String(error));
  }
}

void boot();
