/**
 * Chart specs bind a CSV report to a figure: which columns plot where, how
 * series are grouped, and the scales. Rendering is pure: same spec + same
 * inputs, same SVG bytes.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { renderChart, Scale, Series } from "./chart.js";
import { parseCsv, requireColumns, Row, SchemaMismatch } from "./csv.js";

export interface ChartSpec {
  input: string;
  x: string;
  y: string;
  groupBy?: string;
  xScale?: Scale;
  yScale?: Scale;
  title?: string;
  output: string;
}

export function loadSpec(path: string): ChartSpec {
  const raw = JSON.parse(readFileSync(path, "utf-8")) as ChartSpec;
  for (const field of ["input", "x", "y", "output"] as const) {
    if (!raw[field]) {
      throw new SchemaMismatch(`spec is missing required field '${field}'`);
    }
  }
  const base = dirname(resolve(path));
  return {
    ...raw,
    input: resolve(base, raw.input),
    output: resolve(base, raw.output),
  };
}

export function renderSpec(spec: ChartSpec): string {
  const table = parseCsv(readFileSync(spec.input, "utf-8"));
  const needed = [spec.x, spec.y];
  if (spec.groupBy) needed.push(spec.groupBy);
  requireColumns(table, needed);

  const groups = new Map<string, Array<[number, number]>>();
  for (const row of table.rows) {
    const key = spec.groupBy ? String(row[spec.groupBy]) : spec.y;
    const x = asNumber(row, spec.x);
    const y = asNumber(row, spec.y);
    let pts = groups.get(key);
    if (!pts) {
      pts = [];
      groups.set(key, pts);
    }
    pts.push([x, y]);
  }
  const series: Series[] = [...groups.keys()].sort().map((label) => ({
    label,
    points: groups.get(label)!,
  }));
  return renderChart(series, {
    title: spec.title ?? `${spec.y} vs ${spec.x} (${table.schema})`,
    xLabel: spec.x,
    yLabel: spec.y,
    xScale: spec.xScale ?? "linear",
    yScale: spec.yScale ?? "linear",
  });
}

export function renderSpecToFile(spec: ChartSpec): string {
  const svg = renderSpec(spec);
  writeFileSync(spec.output, svg, "utf-8");
  return spec.output;
}

function asNumber(row: Row, column: string): number {
  const v = row[column];
  if (typeof v !== "number") {
    throw new SchemaMismatch(
      `column '${column}' holds non-numeric value '${v}'`,
    );
  }
  return v;
}
