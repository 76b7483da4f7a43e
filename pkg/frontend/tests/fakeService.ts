// In-memory stand-in for the vividmap service, faithful to its contract:
// PUTs echo full state, hit-testing skips hidden and opacity-0 categories,
// detail tables list the name row first. Request counts are recorded so the
// UI-loop tests can assert "exactly one PUT, exactly one render fetch".

import type { FetchLike } from '../src/api.js';
import type { CategoryInfo, DetailRow } from '../src/types.js';

export interface FakeFeature {
  id: string;
  categoryId: string;
  lonLat: [number, number];
  rows: DetailRow[];
}

export class FakeService {
  counts = {
    opacityPut: 0,
    visibilityPut: 0,
    viewPut: 0,
    renderGet: 0,
    sceneGet: 0,
    hitGet: 0,
    detailGet: 0,
    searchGet: 0,
  };

  opacity: Record<string, number> = {};
  visible: Set<string>;
  mode: '2D' | '3D' = '2D';
  bbox: [number, number, number, number] = [0, 0, 10, 10];
  viewport: [number, number] = [800, 600];
  renderVersion = 0;

  constructor(
    readonly categories: CategoryInfo[],
    readonly features: FakeFeature[],
  ) {
    this.visible = new Set(categories.map((c) => c.id));
  }

  private json(body: unknown, status = 200): Response {
    return new Response(JSON.stringify(body), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  }

  private fullOpacity(): Record<string, number> {
    const out: Record<string, number> = {};
    for (const c of this.categories) out[c.id] = this.opacity[c.id] ?? 1.0;
    return out;
  }

  private sessionState() {
    return {
      session_id: 's1', dataset_id: 'd1', mode: this.mode,
      bbox: this.bbox, viewport: this.viewport,
      opacity: { ...this.opacity }, visible: [...this.visible].sort(),
      annotations: [],
    };
  }

  /** Nearest feature within a degree tolerance, respecting interactivity rules. */
  private hitTest(lon: number, lat: number): string | null {
    for (const f of this.features) {
      if (!this.visible.has(f.categoryId)) continue;
      if ((this.opacity[f.categoryId] ?? 1.0) === 0.0) continue;
      const d = Math.hypot(f.lonLat[0] - lon, f.lonLat[1] - lat);
      if (d < 0.2) return f.id;
    }
    return null;
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? 'GET';
    const { pathname, searchParams } = new URL(url, 'http://fake');
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;

    if (pathname === '/ontology') {
      return this.json({ categories: this.categories });
    }
    if (pathname === '/sessions' && method === 'POST') {
      this.mode = body.mode;
      this.bbox = body.bbox;
      this.viewport = body.viewport;
      return this.json({ session_id: 's1' }, 201);
    }
    if (pathname === '/sessions/s1' && method === 'GET') {
      return this.json(this.sessionState());
    }
    if (pathname === '/sessions/s1/opacity' && method === 'PUT') {
      this.counts.opacityPut += 1;
      const alpha = body.alpha;
      if (typeof alpha !== 'number' || Number.isNaN(alpha) || alpha < 0 || alpha > 1) {
        return this.json({ code: 'alpha_out_of_range', message: 'alpha outside [0, 1]' }, 422);
      }
      if (!this.categories.some((c) => c.id === body.category_id)) {
        return this.json({ code: 'unknown_category', message: 'unknown category' }, 404);
      }
      this.opacity[body.category_id] = alpha;
      this.renderVersion += 1;
      return this.json({ session_id: 's1', opacity: this.fullOpacity() });
    }
    if (pathname === '/sessions/s1/visibility' && method === 'PUT') {
      this.counts.visibilityPut += 1;
      if (body.visible) this.visible.add(body.category_id);
      else this.visible.delete(body.category_id);
      this.renderVersion += 1;
      return this.json({ session_id: 's1', visible: [...this.visible].sort() });
    }
    if (pathname === '/sessions/s1/view' && method === 'PUT') {
      this.counts.viewPut += 1;
      if (body.bbox) this.bbox = body.bbox;
      if (body.viewport) this.viewport = body.viewport;
      if (body.mode) this.mode = body.mode;
      this.renderVersion += 1;
      return this.json(this.sessionState());
    }
    if (pathname === '/sessions/s1/render.svg') {
      this.counts.renderGet += 1;
      return new Response(`<svg data-version="${this.renderVersion}"></svg>`, {
        status: 200, headers: { 'content-type': 'image/svg+xml' },
      });
    }
    if (pathname === '/sessions/s1/scene.json') {
      this.counts.sceneGet += 1;
      return this.json({ origin: [5, 5], meters_per_degree: 111320,
                         nodes: [], warnings: [] });
    }
    if (pathname === '/sessions/s1/hit') {
      this.counts.hitGet += 1;
      const lon = Number(searchParams.get('lon'));
      const lat = Number(searchParams.get('lat'));
      return this.json({ feature_id: this.hitTest(lon, lat) });
    }
    if (pathname === '/datasets/d1/search') {
      this.counts.searchGet += 1;
      const q = (searchParams.get('q') ?? '').toLowerCase();
      const results = q === '' ? [] : this.features
        .filter((f) => f.rows.some(([k, v]) => k === 'name' && v.toLowerCase().includes(q)))
        .map((f) => ({
          feature_id: f.id,
          name: f.rows.find(([k]) => k === 'name')?.[1] ?? '',
          category_id: f.categoryId,
          anchor: f.lonLat,
          bbox: [...f.lonLat, ...f.lonLat],
        }));
      return this.json({ results });
    }
    const detail = pathname.match(/^\/datasets\/d1\/features\/(.+)$/);
    if (detail) {
      this.counts.detailGet += 1;
      const feature = this.features.find((f) => f.id === decodeURIComponent(detail[1]));
      if (!feature) return this.json({ code: 'unknown_feature', message: 'nope' }, 404);
      return this.json({ feature_id: feature.id, rows: feature.rows });
    }
    return this.json({ code: 'not_found', message: `no route ${method} ${pathname}` }, 404);
  };
}
