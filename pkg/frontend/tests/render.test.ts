// @vitest-environment jsdom
import { describe, expect, it } from 'vitest';

import { CurvePayload, QueryPayload } from '../src/api';
import { renderBanner, renderButtons, renderCurve, renderQuery } from '../src/render';

function query(hint: QueryPayload['render_hint']): QueryPayload {
  return {
    sample_id: 12,
    features: hint === 'bar' ? [0.5, 0.3, 0.2] : [0.4, -0.2, 0.9],
    render_hint: hint,
    strategy_score: 0.123,
    round: 2,
    labels_used: 5,
    budget_remaining: 10,
    class_names: ['a', 'b'],
    pool_features: [
      [1, 0, 0],
      [0, 1, 0],
      [0, 0, 1],
    ],
  };
}

const host = (): HTMLElement => document.createElement('div');

describe('renderQuery', () => {
  it('scatter2d shows exactly one highlighted point', () => {
    const el = host();
    renderQuery(el, query('scatter2d'));
    expect(el.querySelectorAll('.queried-point')).toHaveLength(1);
    expect(el.querySelectorAll('.pool-point')).toHaveLength(3);
  });

  it('bloch projects onto (x, z) with one highlighted point', () => {
    const el = host();
    renderQuery(el, query('bloch'));
    expect(el.querySelectorAll('.queried-point')).toHaveLength(1);
  });

  it('bar draws one bar per basis state', () => {
    const el = host();
    renderQuery(el, query('bar'));
    expect(el.querySelectorAll('.amp-bar')).toHaveLength(3);
  });

  it('re-render replaces, never accumulates', () => {
    const el = host();
    renderQuery(el, query('scatter2d'));
    renderQuery(el, query('scatter2d'));
    expect(el.querySelectorAll('.queried-point')).toHaveLength(1);
  });
});

describe('renderButtons', () => {
  it('shows one button per class, disabled when labeling is not allowed', () => {
    const el = host();
    renderButtons(el, ['a', 'b', 'c'], false, () => undefined);
    const buttons = el.querySelectorAll<HTMLButtonElement>('.label-button');
    expect(buttons).toHaveLength(3);
    buttons.forEach((b) => expect(b.disabled).toBe(true));
  });

  it('click reports the class index', () => {
    const el = host();
    const picks: number[] = [];
    renderButtons(el, ['a', 'b'], true, (i) => picks.push(i));
    el.querySelectorAll<HTMLButtonElement>('.label-button')[1]?.click();
    expect(picks).toEqual([1]);
  });
});

describe('renderCurve', () => {
  it('draws one marker per point, values verbatim from the payload', () => {
    const el = host();
    const curve: CurvePayload = {
      points: [
        [0, 0.5, 0],
        [3, 0.7, 0],
        [6, 0.9, 0],
      ],
      partial: false,
    };
    renderCurve(el, curve);
    expect(el.querySelectorAll('.curve-marker')).toHaveLength(3);
    expect(el.querySelector('.curve-caption')?.textContent).toBe(
      'accuracy 0.900 at 6 labels',
    );
  });

  it('single-point curve draws one marker', () => {
    const el = host();
    renderCurve(el, { points: [[0, 0.5, 0]], partial: false });
    expect(el.querySelectorAll('.curve-marker')).toHaveLength(1);
  });

  it('shows fidelity spend when present', () => {
    const el = host();
    renderCurve(el, { points: [[5, 0.8, 12.5]], partial: false });
    expect(el.querySelector('.curve-caption')?.textContent).toContain(
      'fidelity spent 12.50',
    );
  });
});

describe('renderBanner', () => {
  it('renders the message, clears on null', () => {
    const el = host();
    renderBanner(el, 'session complete');
    expect(el.querySelector('.banner')?.textContent).toBe('session complete');
    renderBanner(el, null);
    expect(el.querySelector('.banner')).toBeNull();
  });
});
