// Wire types mirroring the vividmap service JSON responses.

export type BboxWire = [number, number, number, number]; // [west, south, east, north]
export type RGB = [number, number, number];
export type RGBA = [number, number, number, number];

export interface CategoryInfo {
  id: string;
  label: string;
  color: RGB;
  icon_id: string | null;
  parent_id: string | null;
  default_height_m: number | null;
}

export interface DatasetInfo {
  dataset_id: string;
  feature_count: number;
  categories_present: string[];
  bbox: BboxWire | null;
}

export interface SessionState {
  session_id: string;
  dataset_id: string;
  mode: '2D' | '3D';
  bbox: BboxWire;
  viewport: [number, number];
  opacity: Record<string, number>;
  visible: string[];
  annotations: number[][][];
}

export interface SearchHit {
  feature_id: string;
  name: string;
  category_id: string;
  anchor: [number, number];
  bbox: BboxWire;
}

export type DetailRow = [string, string];

export interface SceneMesh {
  vertices: number[];   // flat x,y,z triples, local meters
  triangles: number[];  // flat index triples
  color: RGBA;
}

export interface ScenePath {
  positions: number[];
  color: RGBA;
  width: number;
}

export interface SceneBillboard {
  position: [number, number, number];
  icon_ref: string;
  color: RGBA;
}

export interface SceneNode {
  feature_id: string;
  category_id: string;
  kind: 'mesh' | 'polyline' | 'billboard';
  height_m?: number;
  meshes?: SceneMesh[];
  paths?: ScenePath[];
  billboards?: SceneBillboard[];
}

export interface SceneDoc {
  origin: [number, number];
  meters_per_degree: number;
  nodes: SceneNode[];
  warnings: string[];
}

export interface PanelEntry {
  categoryId: string;
  label: string;
  swatch: RGB;
  checked: boolean;
  slider: number; // opacity in [0, 1]
}
