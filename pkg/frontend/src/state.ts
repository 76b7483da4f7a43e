// Category panel state: built from the ontology, kept equal to the server
// echo after every acknowledged update. Panel order follows config order.

import type { CategoryInfo, PanelEntry, SessionState } from './types.js';

export function buildPanel(categories: CategoryInfo[], session: SessionState): PanelEntry[] {
  const visible = new Set(session.visible);
  return categories.map((c) => ({
    categoryId: c.id,
    label: c.label,
    swatch: c.color,
    checked: visible.has(c.id),
    slider: session.opacity[c.id] ?? 1.0,
  }));
}

export function applyOpacityEcho(
  entries: PanelEntry[], opacity: Record<string, number>,
): PanelEntry[] {
  return entries.map((e) => ({ ...e, slider: opacity[e.categoryId] ?? 1.0 }));
}

export function applyVisibilityEcho(entries: PanelEntry[], visible: string[]): PanelEntry[] {
  const set = new Set(visible);
  return entries.map((e) => ({ ...e, checked: set.has(e.categoryId) }));
}

export function swatchCss(entry: PanelEntry): string {
  const [r, g, b] = entry.swatch;
  return `rgb(${r}, ${g}, ${b})`;
}
