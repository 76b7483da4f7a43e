// Browser entry point: DOM wiring around MapController. Logic lives in the
// other modules; this file only moves values between the DOM and the
// controller, so it stays untested glue.

import { ApiClient } from './api.js';
import { MapController } from './controller.js';
import { pan, zoom } from './mercator.js';
import { swatchCss } from './state.js';
import { paintScene, rgbaCss } from './viewer3d.js';
import type { DetailRow, PanelEntry, SceneDoc, SearchHit } from './types.js';

const VIEWPORT: [number, number] = [800, 600];

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

const api = new ApiClient('');
let mode: '2D' | '3D' = '2D';

function renderPanel(entries: PanelEntry[]): void {
  const panel = $('panel');
  panel.innerHTML = '';
  for (const entry of entries) {
    const row = document.createElement('div');
    row.className = 'panel-row';

    const checkbox = document.createElement('input');
    checkbox.type = 'checkbox';
    checkbox.checked = entry.checked;
    checkbox.addEventListener('change', () => {
      void controller.checkboxToggled(entry.categoryId, checkbox.checked);
    });

    const swatch = document.createElement('span');
    swatch.className = 'swatch';
    swatch.style.background = swatchCss(entry);

    const label = document.createElement('span');
    label.className = 'label';
    label.textContent = entry.label;

    const slider = document.createElement('input');
    slider.type = 'range';
    slider.min = '0';
    slider.max = '1';
    slider.step = '0.01';
    slider.value = String(entry.slider);
    slider.addEventListener('input', () => {
      controller.sliderMoved(entry.categoryId, Number(slider.value));
    });

    row.append(checkbox, swatch, label, slider);
    panel.appendChild(row);
  }
}

function showSvg(svgText: string): void {
  $('map2d').innerHTML = svgText;
  $('map2d').style.display = 'block';
  $<HTMLCanvasElement>('map3d').style.display = 'none';
}

function showScene(scene: SceneDoc): void {
  const canvas = $<HTMLCanvasElement>('map3d');
  canvas.style.display = 'block';
  $('map2d').style.display = 'none';
  const ctx = canvas.getContext('2d');
  if (!ctx) return;
  ctx.fillStyle = '#ECECEC';
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  const painted = paintScene(scene, canvas.width, canvas.height);
  for (const tri of painted.triangles) {
    ctx.beginPath();
    ctx.moveTo(tri.points[0][0], tri.points[0][1]);
    ctx.lineTo(tri.points[1][0], tri.points[1][1]);
    ctx.lineTo(tri.points[2][0], tri.points[2][1]);
    ctx.closePath();
    ctx.fillStyle = rgbaCss(tri.color);
    ctx.fill();
  }
  for (const path of painted.paths) {
    ctx.beginPath();
    path.points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
    ctx.strokeStyle = rgbaCss(path.color);
    ctx.lineWidth = path.width;
    ctx.stroke();
  }
  for (const marker of painted.markers) {
    ctx.beginPath();
    ctx.arc(marker.x, marker.y, 7, 0, 2 * Math.PI);
    ctx.fillStyle = rgbaCss(marker.color);
    ctx.fill();
    ctx.strokeStyle = '#FFFFFF';
    ctx.lineWidth = 2;
    ctx.stroke();
  }
}

function showPopup(rows: DetailRow[] | null): void {
  const popup = $('popup');
  if (rows === null) {
    popup.style.display = 'none';
    return;
  }
  const table = document.createElement('table');
  for (const [key, value] of rows) {
    const tr = document.createElement('tr');
    const th = document.createElement('th');
    th.textContent = key;
    const td = document.createElement('td');
    td.textContent = value;
    tr.append(th, td);
    table.appendChild(tr);
  }
  popup.innerHTML = '';
  popup.appendChild(table);
  popup.style.display = 'block';
}

function showSearchResults(hits: SearchHit[], notice: string | null): void {
  const box = $('search-results');
  box.innerHTML = '';
  if (notice) {
    box.textContent = notice;
    return;
  }
  for (const hit of hits) {
    const item = document.createElement('div');
    item.className = 'search-hit';
    item.textContent = hit.name;
    item.addEventListener('click', () => void controller.searchResultChosen(hit));
    box.appendChild(item);
  }
}

function toast(message: string): void {
  const el = $('toast');
  el.textContent = message;
  el.style.display = 'block';
  setTimeout(() => (el.style.display = 'none'), 2500);
}

const controller = new MapController(api, {
  onPanel: renderPanel,
  onSvg: showSvg,
  onScene: showScene,
  onPopup: showPopup,
  onSearchResults: showSearchResults,
  onError: toast,
});

async function boot(): Promise<void> {
  const fileInput = $<HTMLInputElement>('dataset-file');
  fileInput.addEventListener('change', async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    try {
      const { dataset_id } = await api.createDataset(await file.text());
      const info = await api.datasetInfo(dataset_id);
      const bbox = info.bbox ?? [-180, -85, 180, 85];
      const pad = 0.1 * Math.max(bbox[2] - bbox[0], bbox[3] - bbox[1], 0.001);
      await controller.openSession(
        dataset_id,
        [bbox[0] - pad, bbox[1] - pad, bbox[2] + pad, bbox[3] + pad],
        VIEWPORT, mode);
      $('hud').textContent = `${info.feature_count} features in ${dataset_id}`;
    } catch (error) {
      toast(String(error));
    }
  });

  $('map2d').addEventListener('click', (event) => {
    const target = $('map2d').querySelector('svg');
    if (!target) return;
    const rect = target.getBoundingClientRect();
    const px = ((event.clientX - rect.left) / rect.width) * VIEWPORT[0];
    const py = ((event.clientY - rect.top) / rect.height) * VIEWPORT[1];
    void controller.featureClicked(px, py);
  });

  $('search-form').addEventListener('submit', (event) => {
    event.preventDefault();
    void controller.searchSubmitted($<HTMLInputElement>('search-input').value);
  });

  $('mode-2d').addEventListener('click', () => {
    mode = '2D';
    void controller.modeToggled(mode);
  });
  $('mode-3d').addEventListener('click', () => {
    mode = '3D';
    void controller.modeToggled(mode);
  });

  const move = (dx: number, dy: number) => {
    const s = controller.sessionState;
    if (s) void controller.panZoom(pan(s.bbox, dx, dy));
  };
  $('pan-left').addEventListener('click', () => move(-0.2, 0));
  $('pan-right').addEventListener('click', () => move(0.2, 0));
  $('pan-up').addEventListener('click', () => move(0, 0.2));
  $('pan-down').addEventListener('click', () => move(0, -0.2));
  $('zoom-in').addEventListener('click', () => {
    const s = controller.sessionState;
    if (s) void controller.panZoom(zoom(s.bbox, 0.5));
  });
  $('zoom-out').addEventListener('click', () => {
    const s = controller.sessionState;
    if (s) void controller.panZoom(zoom(s.bbox, 2.0));
  });
}

void boot();
