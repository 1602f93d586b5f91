/**
 * SVG renderers: the queried sample (per render hint), the label buttons,
 * and the learning curve. No client-side transforms beyond plotting —
 * every plotted value is the gateway's, verbatim.
 */

import { CurvePayload, QueryPayload } from './api';

const SVG_NS = 'http://www.w3.org/2000/svg';
const W = 360;
const H = 300;
const PAD = 30;

function svg(width = W, height = H): SVGSVGElement {
  const el = document.createElementNS(SVG_NS, 'svg');
  el.setAttribute('viewBox', `0 0 ${width} ${height}`);
  el.setAttribute('width', String(width));
  el.setAttribute('height', String(height));
  return el;
}

function circle(cx: number, cy: number, r: number, cls: string): SVGCircleElement {
  const el = document.createElementNS(SVG_NS, 'circle');
  el.setAttribute('cx', String(cx));
  el.setAttribute('cy', String(cy));
  el.setAttribute('r', String(r));
  el.setAttribute('class', cls);
  return el;
}

interface Scale {
  x: (v: number) => number;
  y: (v: number) => number;
}

function fitScale(xs: number[], ys: number[]): Scale {
  const span = (vals: number[]): [number, number] => {
    const lo = Math.min(...vals);
    const hi = Math.max(...vals);
    return hi > lo ? [lo, hi] : [lo - 1, hi + 1];
  };
  const [x0, x1] = span(xs);
  const [y0, y1] = span(ys);
  return {
    x: (v) => PAD + ((v - x0) / (x1 - x0)) * (W - 2 * PAD),
    y: (v) => H - PAD - ((v - y0) / (y1 - y0)) * (H - 2 * PAD),
  };
}

/** Pool as gray points with the queried sample highlighted. */
function renderScatter(query: QueryPayload, dims: [number, number]): SVGSVGElement {
  const [dx, dy] = dims;
  const points = [...query.pool_features, query.features];
  const scale = fitScale(
    points.map((p) => p[dx] ?? 0),
    points.map((p) => p[dy] ?? 0),
  );
  const el = svg();
  for (const p of query.pool_features) {
    el.appendChild(circle(scale.x(p[dx] ?? 0), scale.y(p[dy] ?? 0), 3, 'pool-point'));
  }
  const q = query.features;
  el.appendChild(circle(scale.x(q[dx] ?? 0), scale.y(q[dy] ?? 0), 6, 'queried-point'));
  return el;
}

/** Squared-modulus bars for qudit features (already |amp|^2 server-side). */
function renderBars(query: QueryPayload): SVGSVGElement {
  const el = svg();
  const n = query.features.length;
  const slot = (W - 2 * PAD) / n;
  query.features.forEach((value, i) => {
    const h = Math.max(1, value * (H - 2 * PAD));
    const rect = document.createElementNS(SVG_NS, 'rect');
    rect.setAttribute('x', String(PAD + i * slot + slot * 0.15));
    rect.setAttribute('y', String(H - PAD - h));
    rect.setAttribute('width', String(slot * 0.7));
    rect.setAttribute('height', String(h));
    rect.setAttribute('class', 'amp-bar');
    el.appendChild(rect);
  });
  return el;
}

/**
 * Render the queried sample into `container` per the gateway's hint.
 * bloch uses the (x, z) projection of the Bloch coordinates so the
 * class boundary (the equator) reads as a horizontal line.
 */
export function renderQuery(container: HTMLElement, query: QueryPayload): void {
  container.replaceChildren();
  let el: SVGSVGElement;
  switch (query.render_hint) {
    case 'bar':
      el = renderBars(query);
      break;
    case 'bloch':
      el = renderScatter(query, [0, 2]);
      break;
    default:
      el = renderScatter(query, [0, 1]);
  }
  const caption = document.createElement('p');
  caption.className = 'query-caption';
  caption.textContent =
    `sample ${query.sample_id} — score ${query.strategy_score.toFixed(4)} — ` +
    `${query.labels_used} labeled, ${query.budget_remaining} left`;
  container.append(el, caption);
}

export function renderButtons(
  container: HTMLElement,
  classNames: string[],
  enabled: boolean,
  onPick: (label: number) => void,
): void {
  container.replaceChildren();
  classNames.forEach((name, i) => {
    const button = document.createElement('button');
    button.className = 'label-button';
    button.textContent = name;
    button.disabled = !enabled;
    button.addEventListener('click', () => onPick(i));
    container.appendChild(button);
  });
}

/** Accuracy vs labels_used; fidelity spend in the caption when nonzero. */
export function renderCurve(container: HTMLElement, curve: CurvePayload): void {
  container.replaceChildren();
  const el = svg();
  if (curve.points.length > 0) {
    const scale = fitScale(
      curve.points.map((p) => p[0]),
      curve.points.map((p) => p[1]),
    );
    const line = document.createElementNS(SVG_NS, 'polyline');
    line.setAttribute(
      'points',
      curve.points.map((p) => `${scale.x(p[0])},${scale.y(p[1])}`).join(' '),
    );
    line.setAttribute('class', 'curve-line');
    line.setAttribute('fill', 'none');
    el.appendChild(line);
    for (const p of curve.points) {
      el.appendChild(circle(scale.x(p[0]), scale.y(p[1]), 4, 'curve-marker'));
    }
  }
  container.appendChild(el);
  const last = curve.points[curve.points.length - 1];
  if (last) {
    const caption = document.createElement('p');
    caption.className = 'curve-caption';
    caption.textContent = `accuracy ${last[1].toFixed(3)} at ${last[0]} labels`;
    if (last[2] > 0) caption.textContent += ` — fidelity spent ${last[2].toFixed(2)}`;
    container.appendChild(caption);
  }
}

export function renderBanner(container: HTMLElement, message: string | null): void {
  container.replaceChildren();
  if (message === null) return;
  const div = document.createElement('div');
  div.className = 'banner';
  div.textContent = message;
  container.appendChild(div);
}
