import { describe, expect, it } from 'vitest';

import { applyOpacityEcho, applyVisibilityEcho, buildPanel, swatchCss } from '../src/state.js';
import type { CategoryInfo, SessionState } from '../src/types.js';

const CATEGORIES: CategoryInfo[] = [
  { id: 'hospital', label: 'Hospitals', color: [220, 20, 60], icon_id: 'cross',
    parent_id: null, default_height_m: null },
  { id: 'park', label: 'Parks', color: [0, 128, 255], icon_id: null,
    parent_id: null, default_height_m: null },
];

const SESSION: SessionState = {
  session_id: 's1', dataset_id: 'd1', mode: '2D',
  bbox: [0, 0, 1, 1], viewport: [800, 600],
  opacity: { hospital: 0.5 }, visible: ['hospital'], annotations: [],
};

describe('buildPanel', () => {
  it('mirrors server opacity and visibility in config order', () => {
    const panel = buildPanel(CATEGORIES, SESSION);
    expect(panel.map((e) => e.categoryId)).toEqual(['hospital', 'park']);
    expect(panel[0]).toMatchObject({ checked: true, slider: 0.5, label: 'Hospitals' });
    expect(panel[1]).toMatchObject({ checked: false, slider: 1.0 });
  });
});

describe('echo application', () => {
  it('opacity echo replaces slider values', () => {
    const panel = buildPanel(CATEGORIES, SESSION);
    const updated = applyOpacityEcho(panel, { hospital: 1.0, park: 0.25 });
    expect(updated.map((e) => e.slider)).toEqual([1.0, 0.25]);
  });

  it('visibility echo replaces checkboxes', () => {
    const panel = buildPanel(CATEGORIES, SESSION);
    const updated = applyVisibilityEcho(panel, ['park']);
    expect(updated.map((e) => e.checked)).toEqual([false, true]);
  });
});

describe('swatchCss', () => {
  it('renders the server color verbatim', () => {
    const panel = buildPanel(CATEGORIES, SESSION);
    expect(swatchCss(panel[0])).toBe('rgb(220, 20, 60)');
  });
});
