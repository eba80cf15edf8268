import { mkdirSync, readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { SchemaMismatch } from "../src/csv.js";
import { loadSpec, renderSpec, renderSpecToFile } from "../src/render.js";

const here = dirname(fileURLToPath(import.meta.url));
const spec = (name: string) => resolve(here, "..", "specs", name);

mkdirSync(resolve(here, "..", "out"), { recursive: true });

describe("spec rendering", () => {
  it("renders the trade-off chart from the shipped sample", () => {
    const svg = renderSpec(loadSpec(spec("tradeoff.json")));
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("Worst-case find probes");
    // one labeled series per n group
    expect(svg).toContain(">1024<");
    expect(svg).toContain(">65536<");
  });

  it("renders the per-epoch overlap chart from the shipped sample", () => {
    const svg = renderSpec(loadSpec(spec("epochs.json")));
    expect(svg).toContain("Metaquery reads");
    expect(svg).toContain("lf-general");
  });

  it("is byte-identical across two runs", () => {
    for (const name of ["tradeoff.json", "epochs.json", "amortized.json", "games.json"]) {
      const s = loadSpec(spec(name));
      const first = renderSpec(s);
      const second = renderSpec(s);
      expect(second).toBe(first);
      const path = renderSpecToFile(s);
      expect(readFileSync(path, "utf-8")).toBe(first);
    }
  });

  it("reports schema mismatches with the column list", () => {
    const s = loadSpec(spec("tradeoff.json"));
    expect(() => renderSpec({ ...s, y: "not_a_column" })).toThrow(
      SchemaMismatch,
    );
    expect(() => renderSpec({ ...s, y: "not_a_column" })).toThrow(/have:/);
  });

  it("rejects specs missing required fields", () => {
    expect(() =>
      renderSpec({ input: "", x: "k", y: "", output: "" } as never),
    ).toThrow();
  });
});
