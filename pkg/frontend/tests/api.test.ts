import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';

interface Recorded {
  url: string;
  method: string;
  body?: string;
}

function stub(status: number, body: unknown) {
  const calls: Recorded[] = [];
  const fetchFn = async (url: string, init?: RequestInit) => {
    calls.push({ url, method: init?.method ?? 'GET',
                 body: init?.body ? String(init.body) : undefined });
    return new Response(JSON.stringify(body), {
      status, headers: { 'content-type': 'application/json' },
    });
  };
  return { calls, fetchFn };
}

describe('ApiClient', () => {
  it('builds session endpoints and JSON bodies', async () => {
    const { calls, fetchFn } = stub(200, { session_id: 's1', opacity: { a: 0.5 } });
    const api = new ApiClient('http://x', fetchFn);
    await api.putOpacity('s1', 'a', 0.5);
    expect(calls[0]).toEqual({
      url: 'http://x/sessions/s1/opacity',
      method: 'PUT',
      body: JSON.stringify({ category_id: 'a', alpha: 0.5 }),
    });
  });

  it('url-encodes identifiers', async () => {
    const { calls, fetchFn } = stub(200, { feature_id: 'a b', rows: [] });
    const api = new ApiClient('', fetchFn);
    await api.featureDetail('d 1', 'a b');
    expect(calls[0].url).toBe('/datasets/d%201/features/a%20b');
  });

  it('raises ApiError with the server error code', async () => {
    const { fetchFn } = stub(422, { code: 'alpha_out_of_range', message: 'nope' });
    const api = new ApiClient('', fetchFn);
    await expect(api.putOpacity('s1', 'a', 2)).rejects.toMatchObject({
      status: 422, code: 'alpha_out_of_range',
    });
    await expect(api.putOpacity('s1', 'a', 2)).rejects.toBeInstanceOf(ApiError);
  });

  it('posts datasets as raw GeoJSON text', async () => {
    const { calls, fetchFn } = stub(201, { dataset_id: 'd1', feature_count: 0 });
    const api = new ApiClient('', fetchFn);
    await api.createDataset('{"type":"FeatureCollection","features":[]}');
    expect(calls[0].method).toBe('POST');
    expect(calls[0].body).toContain('FeatureCollection');
  });
});
