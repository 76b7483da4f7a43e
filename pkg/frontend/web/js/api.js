// Typed client for the vividmap HTTP API. The fetch implementation is
// injected so tests can drive the client without a network or a browser.
export class ApiError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function fail(response) {
    let code = 'error';
    let message = `HTTP ${response.status}`;
    try {
        const body = await response.json();
        if (body && typeof body.code === 'string')
            code = body.code;
        if (body && typeof body.message === 'string')
            message = body.message;
    }
    catch {
        // non-JSON error body; keep defaults
    }
    throw new ApiError(response.status, code, message);
}
export class ApiClient {
    constructor(baseUrl = '', fetchFn = (url, init) => fetch(url, init)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async json(path, init) {
        const response = await this.fetchFn(this.baseUrl + path, init);
        if (!response.ok)
            await fail(response);
        return (await response.json());
    }
    put(path, body) {
        return this.json(path, {
            method: 'PUT',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(body),
        });
    }
    getOntology() {
        return this.json('/ontology');
    }
    createDataset(geojsonText) {
        return this.json('/datasets', {
            method: 'POST',
            headers: { 'content-type': 'application/geo+json' },
            body: geojsonText,
        });
    }
    datasetInfo(datasetId) {
        return this.json(`/datasets/${encodeURIComponent(datasetId)}`);
    }
    createSession(body) {
        return this.json('/sessions', {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(body),
        });
    }
    getSession(sessionId) {
        return this.json(`/sessions/${encodeURIComponent(sessionId)}`);
    }
    putOpacity(sessionId, categoryId, alpha) {
        return this.put(`/sessions/${encodeURIComponent(sessionId)}/opacity`, { category_id: categoryId, alpha });
    }
    putVisibility(sessionId, categoryId, visible) {
        return this.put(`/sessions/${encodeURIComponent(sessionId)}/visibility`, { category_id: categoryId, visible });
    }
    putView(sessionId, body) {
        return this.put(`/sessions/${encodeURIComponent(sessionId)}/view`, body);
    }
    putAnnotations(sessionId, rings) {
        return this.put(`/sessions/${encodeURIComponent(sessionId)}/annotations`, { rings });
    }
    async renderSvg(sessionId) {
        const response = await this.fetchFn(`${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/render.svg`);
        if (!response.ok)
            await fail(response);
        return response.text();
    }
    sceneJson(sessionId) {
        return this.json(`/sessions/${encodeURIComponent(sessionId)}/scene.json`);
    }
    hit(sessionId, lon, lat) {
        return this.json(`/sessions/${encodeURIComponent(sessionId)}/hit?lon=${lon}&lat=${lat}`);
    }
    search(datasetId, text) {
        return this.json(`/datasets/${encodeURIComponent(datasetId)}/search?q=${encodeURIComponent(text)}`);
    }
    featureDetail(datasetId, featureId) {
        return this.json(`/datasets/${encodeURIComponent(datasetId)}/features/`
            + encodeURIComponent(featureId));
    }
}
