/**
 * Minimal ambient type declarations for the subset of the three.js API this
 * viewer uses. They stand in for the upstream `@types/three` package so the
 * build is self-contained; signatures mirror the real library.
 */

declare module "three" {
  export class Vector2 {
    x: number;
    y: number;
    constructor(x?: number, y?: number);
    set(x: number, y: number): this;
  }

  export class Vector3 {
    x: number;
    y: number;
    z: number;
    constructor(x?: number, y?: number, z?: number);
    set(x: number, y: number, z: number): this;
    clone(): Vector3;
    copy(v: Vector3): this;
    add(v: Vector3): this;
    sub(v: Vector3): this;
    normalize(): this;
    multiplyScalar(scalar: number): this;
    length(): number;
    distanceTo(v: Vector3): number;
  }

  export class Euler {
    x: number;
    y: number;
    z: number;
    set(x: number, y: number, z: number): this;
  }

  export class Color {
    r: number;
    g: number;
    b: number;
    constructor(color?: number | string | Color);
    set(color: number | string | Color): this;
    setHSL(h: number, s: number, l: number): this;
    getHexString(): string;
  }

  export class Object3D {
    name: string;
    visible: boolean;
    position: Vector3;
    rotation: Euler;
    userData: Record<string, any>;
    children: Object3D[];
    parent: Object3D | null;
    add(...objects: Object3D[]): this;
    remove(...objects: Object3D[]): this;
    traverse(callback: (object: Object3D) => void): void;
    getWorldDirection(target: Vector3): Vector3;
    updateMatrixWorld(force?: boolean): void;
  }

  export class Group extends Object3D {
    constructor();
  }

  export class Scene extends Object3D {
    background: Color | null;
    constructor();
  }

  export class Camera extends Object3D {
    constructor();
  }

  export class PerspectiveCamera extends Camera {
    fov: number;
    aspect: number;
    near: number;
    far: number;
    constructor(fov?: number, aspect?: number, near?: number, far?: number);
    updateProjectionMatrix(): void;
  }

  export class Material {
    transparent: boolean;
    opacity: number;
    depthWrite: boolean;
    dispose(): void;
  }

  export interface MaterialParameters {
    transparent?: boolean;
    opacity?: number;
    depthWrite?: boolean;
    side?: number;
  }

  export interface MeshStandardMaterialParameters extends MaterialParameters {
    color?: number | string | Color;
    roughness?: number;
    metalness?: number;
  }

  export class MeshStandardMaterial extends Material {
    color: Color;
    constructor(parameters?: MeshStandardMaterialParameters);
  }

  export interface LineBasicMaterialParameters extends MaterialParameters {
    color?: number | string | Color;
    linewidth?: number;
  }

  export class LineBasicMaterial extends Material {
    color: Color;
    constructor(parameters?: LineBasicMaterialParameters);
  }

  export class BufferGeometry {
    constructor();
    setFromPoints(points: Vector3[]): this;
    getAttribute(name: string): { count: number; array: ArrayLike<number> };
    dispose(): void;
  }

  export class SphereGeometry extends BufferGeometry {
    constructor(radius?: number, widthSegments?: number, heightSegments?: number);
    parameters: { radius: number };
  }

  export class PlaneGeometry extends BufferGeometry {
    constructor(width?: number, height?: number);
    parameters: { width: number; height: number };
  }

  export class Mesh extends Object3D {
    geometry: BufferGeometry;
    material: Material | Material[];
    constructor(geometry?: BufferGeometry, material?: Material | Material[]);
  }

  export class Line extends Object3D {
    geometry: BufferGeometry;
    material: Material;
    constructor(geometry?: BufferGeometry, material?: Material);
  }

  export class Light extends Object3D {
    intensity: number;
    constructor(color?: number | string | Color, intensity?: number);
  }

  export class AmbientLight extends Light {
    constructor(color?: number | string | Color, intensity?: number);
  }

  export class DirectionalLight extends Light {
    constructor(color?: number | string | Color, intensity?: number);
  }

  export interface Intersection {
    distance: number;
    point: Vector3;
    object: Object3D;
  }

  export interface RaycasterLineParams {
    threshold: number;
  }

  export class Ray {
    origin: Vector3;
    direction: Vector3;
  }

  export class Raycaster {
    ray: Ray;
    near: number;
    far: number;
    params: {
      Line?: RaycasterLineParams;
      Points?: { threshold: number };
      [key: string]: unknown;
    };
    constructor(origin?: Vector3, direction?: Vector3, near?: number, far?: number);
    set(origin: Vector3, direction: Vector3): void;
    setFromCamera(coords: Vector2, camera: Camera): void;
    intersectObject(object: Object3D, recursive?: boolean): Intersection[];
  }

  export class Clock {
    constructor(autoStart?: boolean);
    getDelta(): number;
    getElapsedTime(): number;
  }

  export interface WebGLRendererParameters {
    antialias?: boolean;
    canvas?: HTMLCanvasElement;
  }

  export class WebGLRenderer {
    domElement: HTMLCanvasElement;
    constructor(parameters?: WebGLRendererParameters);
    setSize(width: number, height: number): void;
    setPixelRatio(value: number): void;
    setAnimationLoop(callback: (() => void) | null): void;
    render(scene: Object3D, camera: Camera): void;
    dispose(): void;
  }

  export const DoubleSide: number;
  export const FrontSide: number;
  export const BackSide: number;
}

declare module "three/addons/controls/OrbitControls.js" {
  import { Camera, Vector3 } from "three";

  export class OrbitControls {
    target: Vector3;
    enableZoom: boolean;
    enablePan: boolean;
    enableDamping: boolean;
    dampingFactor: number;
    constructor(camera: Camera, domElement?: HTMLElement);
    update(): void;
    dispose(): void;
  }
}
