// Orchestrates the UI loop: panel changes go to the server, acknowledged
// state comes back, and exactly one render re-fetch follows each change.

import { ApiClient, ApiError } from './api.js';
import { debounce, type Debounced } from './debounce.js';
import { recenter, unproject } from './mercator.js';
import { RenderChannel } from './render.js';
import { applyOpacityEcho, applyVisibilityEcho, buildPanel } from './state.js';
import type {
  BboxWire,
  CategoryInfo,
  DetailRow,
  PanelEntry,
  SceneDoc,
  SearchHit,
  SessionState,
} from './types.js';

export interface ControllerEvents {
  onPanel(entries: PanelEntry[]): void;
  onSvg(svgText: string): void;
  onScene(scene: SceneDoc): void;
  onPopup(rows: DetailRow[] | null): void;
  onSearchResults(hits: SearchHit[], notice: string | null): void;
  onError(message: string): void;
}

export const SLIDER_DEBOUNCE_MS = 200; // at most 5 slider updates per second

export class MapController {
  private categories: CategoryInfo[] = [];
  private panel: PanelEntry[] = [];
  private session: SessionState | null = null;
  private channel = new RenderChannel();
  private sliderDebouncers = new Map<string, Debounced<[number]>>();

  constructor(
    private readonly api: ApiClient,
    private readonly events: ControllerEvents,
    private readonly debounceMs: number = SLIDER_DEBOUNCE_MS,
  ) {}

  get sessionState(): SessionState | null {
    return this.session;
  }

  get panelEntries(): PanelEntry[] {
    return this.panel;
  }

  async openSession(datasetId: string, bbox: BboxWire,
                    viewport: [number, number], mode: '2D' | '3D' = '2D'): Promise<void> {
    this.categories = (await this.api.getOntology()).categories;
    const { session_id } = await this.api.createSession({
      dataset_id: datasetId, mode, bbox, viewport,
    });
    this.session = await this.api.getSession(session_id);
    this.panel = buildPanel(this.categories, this.session);
    this.events.onPanel(this.panel);
    await this.refresh();
  }

  /** Debounced slider move: one PUT and one render re-fetch per burst. */
  sliderMoved(categoryId: string, alpha: number): void {
    let debounced = this.sliderDebouncers.get(categoryId);
    if (!debounced) {
      debounced = debounce((value: number) => {
        void this.commitOpacity(categoryId, value);
      }, this.debounceMs);
      this.sliderDebouncers.set(categoryId, debounced);
    }
    debounced(alpha);
  }

  private async commitOpacity(categoryId: string, alpha: number): Promise<void> {
    if (!this.session) return;
    try {
      const echo = await this.api.putOpacity(this.session.session_id, categoryId, alpha);
      this.session = { ...this.session, opacity: echo.opacity };
      this.panel = applyOpacityEcho(this.panel, echo.opacity);
      this.events.onPanel(this.panel);
      await this.refresh();
    } catch (error) {
      // snap the slider back to the acknowledged server state
      this.panel = applyOpacityEcho(this.panel, this.session.opacity);
      this.events.onPanel(this.panel);
      this.events.onError(error instanceof ApiError ? error.message : String(error));
    }
  }

  async checkboxToggled(categoryId: string, visible: boolean): Promise<void> {
    if (!this.session) return;
    try {
      const echo = await this.api.putVisibility(this.session.session_id, categoryId, visible);
      this.session = { ...this.session, visible: echo.visible };
      this.panel = applyVisibilityEcho(this.panel, echo.visible);
      this.events.onPanel(this.panel);
      await this.refresh();
    } catch (error) {
      this.events.onError(error instanceof ApiError ? error.message : String(error));
    }
  }

  /** Click at viewport pixels: hit-test, then show the detail table popup. */
  async featureClicked(px: number, py: number): Promise<void> {
    if (!this.session) return;
    const { bbox, viewport } = this.session;
    const { lon, lat } = unproject(px, py, bbox, viewport);
    try {
      const hit = await this.api.hit(this.session.session_id, lon, lat);
      if (hit.feature_id === null) {
        this.events.onPopup(null);
        return;
      }
      const detail = await this.api.featureDetail(this.session.dataset_id, hit.feature_id);
      this.events.onPopup(detail.rows);
    } catch (error) {
      this.events.onPopup(null);
      this.events.onError(error instanceof ApiError ? error.message : String(error));
    }
  }

  async searchSubmitted(text: string): Promise<void> {
    if (!this.session) return;
    const { results } = await this.api.search(this.session.dataset_id, text);
    this.events.onSearchResults(results, results.length === 0 ? 'no matches' : null);
  }

  /** Recenter the view on a search hit, keeping the current span. */
  async searchResultChosen(hit: SearchHit): Promise<void> {
    if (!this.session) return;
    await this.panZoom(recenter(this.session.bbox, hit.anchor[0], hit.anchor[1]));
  }

  async modeToggled(mode: '2D' | '3D'): Promise<void> {
    if (!this.session) return;
    this.session = await this.api.putView(this.session.session_id, { mode });
    await this.refresh();
  }

  async panZoom(bbox: BboxWire): Promise<void> {
    if (!this.session) return;
    this.session = await this.api.putView(this.session.session_id, { bbox });
    await this.refresh();
  }

  /** Fetch the current render channel; stale responses are dropped. */
  async refresh(): Promise<void> {
    if (!this.session) return;
    const session = this.session;
    if (session.mode === '3D') {
      const scene = await this.channel.latest(() => this.api.sceneJson(session.session_id));
      if (scene !== null) this.events.onScene(scene);
    } else {
      const svg = await this.channel.latest(() => this.api.renderSvg(session.session_id));
      if (svg !== null) this.events.onSvg(svg);
    }
  }
}
