// Client-side copy of the server's Web Mercator viewport mapping, used to
// translate click pixels back to lon/lat for hit-testing.

import type { BboxWire } from './types.js';

const MAX_LAT = 85.05113;

function mercUnit(lon: number, lat: number): [number, number] {
  const clamped = Math.min(Math.max(lat, -MAX_LAT), MAX_LAT);
  const mx = lon / 360 + 0.5;
  const my = 0.5 - Math.log(Math.tan(Math.PI / 4 + (clamped * Math.PI) / 360)) / (2 * Math.PI);
  return [mx, my];
}

export function project(
  lon: number, lat: number, bbox: BboxWire, viewport: [number, number],
): { x: number; y: number } {
  const [w, s, e, n] = bbox;
  const [x0, y1] = mercUnit(w, s);
  const [x1, y0] = mercUnit(e, n);
  const [mx, my] = mercUnit(lon, lat);
  return {
    x: ((mx - x0) / (x1 - x0)) * viewport[0],
    y: ((my - y0) / (y1 - y0)) * viewport[1],
  };
}

export function unproject(
  px: number, py: number, bbox: BboxWire, viewport: [number, number],
): { lon: number; lat: number } {
  const [w, s, e, n] = bbox;
  const [x0, y1] = mercUnit(w, s);
  const [x1, y0] = mercUnit(e, n);
  const mx = x0 + (px / viewport[0]) * (x1 - x0);
  const my = y0 + (py / viewport[1]) * (y1 - y0);
  const lon = (mx - 0.5) * 360;
  const lat = (Math.atan(Math.exp((0.5 - my) * 2 * Math.PI)) * 2 - Math.PI / 2) * (180 / Math.PI);
  return { lon, lat };
}

export function clampToBbox(
  p: { lon: number; lat: number }, bbox: BboxWire,
): { lon: number; lat: number } {
  return {
    lon: Math.min(Math.max(p.lon, bbox[0]), bbox[2]),
    lat: Math.min(Math.max(p.lat, bbox[1]), bbox[3]),
  };
}

/** New bbox of the same span centered on a point (for search recentering). */
export function recenter(bbox: BboxWire, lon: number, lat: number): BboxWire {
  const halfW = (bbox[2] - bbox[0]) / 2;
  const halfH = (bbox[3] - bbox[1]) / 2;
  const cx = Math.min(Math.max(lon, -180 + halfW), 180 - halfW);
  const cy = Math.min(Math.max(lat, -90 + halfH), 90 - halfH);
  return [cx - halfW, cy - halfH, cx + halfW, cy + halfH];
}

/** Zoomed/panned bbox: factor > 1 zooms out, < 1 zooms in. */
export function zoom(bbox: BboxWire, factor: number): BboxWire {
  const cx = (bbox[0] + bbox[2]) / 2;
  const cy = (bbox[1] + bbox[3]) / 2;
  const halfW = ((bbox[2] - bbox[0]) / 2) * factor;
  const halfH = ((bbox[3] - bbox[1]) / 2) * factor;
  return [
    Math.max(cx - halfW, -180), Math.max(cy - halfH, -85),
    Math.min(cx + halfW, 180), Math.min(cy + halfH, 85),
  ];
}

export function pan(bbox: BboxWire, dxFrac: number, dyFrac: number): BboxWire {
  const dw = (bbox[2] - bbox[0]) * dxFrac;
  const dh = (bbox[3] - bbox[1]) * dyFrac;
  return [bbox[0] + dw, bbox[1] + dh, bbox[2] + dw, bbox[3] + dh];
}
