// Minimal scene painter: projects the extruded meshes with a fixed oblique
// view and depth-sorts triangles (painter's algorithm) for a 2D canvas.
// All colors come from the scene nodes; nothing is styled client-side.

import type { RGBA, SceneDoc } from './types.js';

const YAW = Math.PI / 6;     // rotation about the up axis
const TILT = Math.PI / 3.6;  // camera elevation

export interface PaintedTriangle {
  points: [number, number][]; // canvas coordinates, 3 corners
  color: RGBA;
  depth: number;
}

export interface PaintedPath {
  points: [number, number][];
  color: RGBA;
  width: number;
}

export interface PaintedMarker {
  x: number;
  y: number;
  color: RGBA;
  iconRef: string;
}

export interface PaintedScene {
  triangles: PaintedTriangle[]; // back-to-front
  paths: PaintedPath[];
  markers: PaintedMarker[];
}

function view(x: number, y: number, z: number): [number, number, number] {
  const vx = x * Math.cos(YAW) - y * Math.sin(YAW);
  const wy = x * Math.sin(YAW) + y * Math.cos(YAW);
  const vy = wy * Math.cos(TILT) + z * Math.sin(TILT);
  const depth = wy * Math.sin(TILT) - z * Math.cos(TILT);
  return [vx, vy, depth];
}

export function paintScene(scene: SceneDoc, width: number, height: number): PaintedScene {
  const projected: [number, number, number][] = [];
  const collect = (x: number, y: number, z: number) => {
    const p = view(x, y, z);
    projected.push(p);
    return p;
  };

  type RawTri = { pts: [number, number, number][]; color: RGBA };
  const tris: RawTri[] = [];
  const rawPaths: { pts: [number, number, number][]; color: RGBA; width: number }[] = [];
  const rawMarkers: { p: [number, number, number]; color: RGBA; iconRef: string }[] = [];

  for (const node of scene.nodes) {
    for (const mesh of node.meshes ?? []) {
      const vs: [number, number, number][] = [];
      for (let i = 0; i < mesh.vertices.length; i += 3) {
        vs.push(collect(mesh.vertices[i], mesh.vertices[i + 1], mesh.vertices[i + 2]));
      }
      for (let t = 0; t < mesh.triangles.length; t += 3) {
        tris.push({
          pts: [vs[mesh.triangles[t]], vs[mesh.triangles[t + 1]], vs[mesh.triangles[t + 2]]],
          color: mesh.color,
        });
      }
    }
    for (const path of node.paths ?? []) {
      const pts: [number, number, number][] = [];
      for (let i = 0; i < path.positions.length; i += 3) {
        pts.push(collect(path.positions[i], path.positions[i + 1], path.positions[i + 2]));
      }
      rawPaths.push({ pts, color: path.color, width: path.width });
    }
    for (const billboard of node.billboards ?? []) {
      rawMarkers.push({
        p: collect(...billboard.position),
        color: billboard.color,
        iconRef: billboard.icon_ref,
      });
    }
  }

  if (projected.length === 0) {
    return { triangles: [], paths: [], markers: [] };
  }

  // fit the view extent into the canvas with a margin
  let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
  for (const [x, y] of projected) {
    if (x < minX) minX = x;
    if (x > maxX) maxX = x;
    if (y < minY) minY = y;
    if (y > maxY) maxY = y;
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = 0.9 * Math.min(width / spanX, height / spanY);
  const toCanvas = ([x, y]: [number, number, number]): [number, number] => [
    (x - (minX + maxX) / 2) * scale + width / 2,
    height / 2 - (y - (minY + maxY) / 2) * scale,
  ];

  const triangles = tris
    .map((t) => ({
      points: t.pts.map(toCanvas) as [number, number][],
      color: t.color,
      depth: (t.pts[0][2] + t.pts[1][2] + t.pts[2][2]) / 3,
    }))
    .sort((a, b) => b.depth - a.depth); // far first

  return {
    triangles,
    paths: rawPaths.map((p) => ({
      points: p.pts.map(toCanvas) as [number, number][],
      color: p.color,
      width: p.width,
    })),
    markers: rawMarkers.map((m) => {
      const [x, y] = toCanvas(m.p);
      return { x, y, color: m.color, iconRef: m.iconRef };
    }),
  };
}

export function rgbaCss([r, g, b, a]: RGBA): string {
  return `rgba(${r}, ${g}, ${b}, ${a})`;
}
