// Typed client for the vividmap HTTP API. The fetch implementation is
// injected so tests can drive the client without a network or a browser.

import type {
  BboxWire,
  CategoryInfo,
  DatasetInfo,
  DetailRow,
  SceneDoc,
  SearchHit,
  SessionState,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
  }
}

async function fail(response: Response): Promise<never> {
  let code = 'error';
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.code === 'string') code = body.code;
    if (body && typeof body.message === 'string') message = body.message;
  } catch {
    // non-JSON error body; keep defaults
  }
  throw new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) await fail(response);
    return (await response.json()) as T;
  }

  private put<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  getOntology(): Promise<{ categories: CategoryInfo[] }> {
    return this.json('/ontology');
  }

  createDataset(geojsonText: string): Promise<{ dataset_id: string; feature_count: number }> {
    return this.json('/datasets', {
      method: 'POST',
      headers: { 'content-type': 'application/geo+json' },
      body: geojsonText,
    });
  }

  datasetInfo(datasetId: string): Promise<DatasetInfo> {
    return this.json(`/datasets/${encodeURIComponent(datasetId)}`);
  }

  createSession(body: {
    dataset_id: string;
    mode: '2D' | '3D';
    bbox: BboxWire;
    viewport: [number, number];
  }): Promise<{ session_id: string }> {
    return this.json('/sessions', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return this.json(`/sessions/${encodeURIComponent(sessionId)}`);
  }

  putOpacity(sessionId: string, categoryId: string, alpha: number):
      Promise<{ session_id: string; opacity: Record<string, number> }> {
    return this.put(`/sessions/${encodeURIComponent(sessionId)}/opacity`,
                    { category_id: categoryId, alpha });
  }

  putVisibility(sessionId: string, categoryId: string, visible: boolean):
      Promise<{ session_id: string; visible: string[] }> {
    return this.put(`/sessions/${encodeURIComponent(sessionId)}/visibility`,
                    { category_id: categoryId, visible });
  }

  putView(sessionId: string, body: {
    bbox?: BboxWire; viewport?: [number, number]; mode?: '2D' | '3D';
  }): Promise<SessionState> {
    return this.put(`/sessions/${encodeURIComponent(sessionId)}/view`, body);
  }

  putAnnotations(sessionId: string, rings: number[][][]): Promise<SessionState> {
    return this.put(`/sessions/${encodeURIComponent(sessionId)}/annotations`, { rings });
  }

  async renderSvg(sessionId: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/render.svg`);
    if (!response.ok) await fail(response);
    return response.text();
  }

  sceneJson(sessionId: string): Promise<SceneDoc> {
    return this.json(`/sessions/${encodeURIComponent(sessionId)}/scene.json`);
  }

  hit(sessionId: string, lon: number, lat: number): Promise<{ feature_id: string | null }> {
    return this.json(
      `/sessions/${encodeURIComponent(sessionId)}/hit?lon=${lon}&lat=${lat}`);
  }

  search(datasetId: string, text: string): Promise<{ results: SearchHit[] }> {
    return this.json(
      `/datasets/${encodeURIComponent(datasetId)}/search?q=${encodeURIComponent(text)}`);
  }

  featureDetail(datasetId: string, featureId: string):
      Promise<{ feature_id: string; rows: DetailRow[] }> {
    return this.json(`/datasets/${encodeURIComponent(datasetId)}/features/`
                     + encodeURIComponent(featureId));
  }
}
