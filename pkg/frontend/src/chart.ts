/**
 * Deterministic SVG line charts: fixed layout, fixed palette, fixed number
 * formatting, no timestamps, so identical inputs give identical bytes.
 */

export type Scale = "linear" | "log";

export interface Series {
  label: string;
  points: Array<[number, number]>;
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: Scale;
  yScale: Scale;
}

const WIDTH = 860;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 200, bottom: 56, left: 76 };
const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
];

function fmt(x: number): string {
  return x.toFixed(2);
}

function tickLabel(x: number): string {
  if (Number.isInteger(x) && Math.abs(x) < 1e7) return String(x);
  if (x !== 0 && (Math.abs(x) >= 1e5 || Math.abs(x) < 1e-3)) {
    return x.toExponential(1);
  }
  return String(Number(x.toPrecision(3)));
}

class Axis {
  constructor(
    readonly scale: Scale,
    readonly lo: number,
    readonly hi: number,
    readonly pixLo: number,
    readonly pixHi: number,
  ) {}

  place(v: number): number {
    let t: number;
    if (this.scale === "log") {
      t = (Math.log(v) - Math.log(this.lo)) /
        (Math.log(this.hi) - Math.log(this.lo));
    } else {
      t = (v - this.lo) / (this.hi - this.lo);
    }
    return this.pixLo + t * (this.pixHi - this.pixLo);
  }

  ticks(): number[] {
    if (this.scale === "log") {
      const out: number[] = [];
      let p = Math.pow(2, Math.ceil(Math.log2(this.lo) - 1e-9));
      while (p <= this.hi * (1 + 1e-9)) {
        if (p >= this.lo * (1 - 1e-9)) out.push(p);
        p *= 2;
      }
      return out.length >= 2 ? out : [this.lo, this.hi];
    }
    const span = this.hi - this.lo;
    const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
    const mult = span / step > 8 ? 2 : 1;
    const out: number[] = [];
    const s = step * mult;
    for (let v = Math.ceil(this.lo / s) * s; v <= this.hi + 1e-9; v += s) {
      out.push(Number(v.toPrecision(12)));
    }
    return out;
  }
}

function bounds(values: number[], scale: Scale): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (scale === "log") {
    if (lo <= 0) throw new Error("log scale needs positive values");
    if (lo === hi) return [lo / 2, hi * 2];
    return [lo, hi];
  }
  if (lo === hi) {
    return [lo - 1, hi + 1];
  }
  const pad = (hi - lo) * 0.05;
  return [lo > 0 && lo - pad < 0 ? 0 : lo - pad, hi + pad];
}

export function renderChart(series: Series[], opts: ChartOptions): string {
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  if (xs.length === 0) throw new Error("nothing to plot");
  const [xlo, xhi] = bounds(xs, opts.xScale);
  const [ylo, yhi] = bounds(ys, opts.yScale);
  const xAxis = new Axis(opts.xScale, xlo, xhi, MARGIN.left,
    WIDTH - MARGIN.right);
  const yAxis = new Axis(opts.yScale, ylo, yhi, HEIGHT - MARGIN.bottom,
    MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="26" text-anchor="middle" font-size="17" ` +
    `fill="#222222">${escapeXml(opts.title)}</text>`,
  );

  // gridlines and ticks
  for (const t of xAxis.ticks()) {
    const x = fmt(xAxis.place(t));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" ` +
      `y2="${HEIGHT - MARGIN.bottom}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${x}" y="${HEIGHT - MARGIN.bottom + 20}" ` +
      `text-anchor="middle" font-size="12" fill="#444444">` +
      `${tickLabel(t)}</text>`,
    );
  }
  for (const t of yAxis.ticks()) {
    const y = fmt(yAxis.place(t));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${WIDTH - MARGIN.right}" ` +
      `y2="${y}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" ` +
      `dominant-baseline="middle" font-size="12" fill="#444444">` +
      `${tickLabel(t)}</text>`,
    );
  }

  // axes frame + labels
  parts.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" ` +
    `x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" ` +
    `stroke="#222222" stroke-width="1.5"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
    `y2="${HEIGHT - MARGIN.bottom}" stroke="#222222" stroke-width="1.5"/>`,
  );
  parts.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" ` +
    `y="${HEIGHT - 14}" text-anchor="middle" font-size="13" ` +
    `fill="#222222">${escapeXml(opts.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2}" ` +
    `text-anchor="middle" font-size="13" fill="#222222" ` +
    `transform="rotate(-90 20 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})"` +
    `>${escapeXml(opts.yLabel)}</text>`,
  );

  // series lines, markers, legend
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = [...s.points].sort((a, b) => a[0] - b[0]);
    const path = pts
      .map((p) => `${fmt(xAxis.place(p[0]))},${fmt(yAxis.place(p[1]))}`)
      .join(" ");
    parts.push(
      `<polyline points="${path}" fill="none" stroke="${color}" ` +
      `stroke-width="2"/>`,
    );
    for (const p of pts) {
      parts.push(
        `<circle cx="${fmt(xAxis.place(p[0]))}" ` +
        `cy="${fmt(yAxis.place(p[1]))}" r="3.5" fill="${color}"/>`,
      );
    }
    const ly = MARGIN.top + 10 + i * 22;
    const lx = WIDTH - MARGIN.right + 16;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" ` +
      `stroke="${color}" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${lx + 32}" y="${ly}" dominant-baseline="middle" ` +
      `font-size="12" fill="#222222">${escapeXml(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
