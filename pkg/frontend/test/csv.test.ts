import { describe, expect, it } from "vitest";

import { parseCsv, requireColumns, SchemaMismatch } from "../src/csv.js";

const SAMPLE = [
  "# schema: probelab-tradeoff-v1",
  "structure,n,k,max_find_probes",
  "uf-worstcase:2,1024,2,11",
  "uf-worstcase:8,1024,8,5",
].join("\n");

describe("csv reader", () => {
  it("parses schema, header and typed rows", () => {
    const table = parseCsv(SAMPLE);
    expect(table.schema).toBe("probelab-tradeoff-v1");
    expect(table.columns).toEqual(["structure", "n", "k", "max_find_probes"]);
    expect(table.rows[0].structure).toBe("uf-worstcase:2");
    expect(table.rows[0].n).toBe(1024);
    expect(table.rows[1].max_find_probes).toBe(5);
  });

  it("rejects empty input with the expectation spelled out", () => {
    expect(() => parseCsv("")).toThrow(SchemaMismatch);
    expect(() => parseCsv("")).toThrow(/schema/);
  });

  it("rejects files without the schema comment", () => {
    expect(() => parseCsv("a,b\n1,2\n")).toThrow(SchemaMismatch);
  });

  it("rejects ragged rows, naming the columns", () => {
    const bad = "# schema: s-v1\na,b\n1\n";
    expect(() => parseCsv(bad)).toThrow(/columns: a, b/);
  });

  it("requireColumns lists what is missing and what exists", () => {
    const table = parseCsv(SAMPLE);
    expect(() => requireColumns(table, ["n", "nope"])).toThrow(
      /missing column\(s\) nope.*have: structure, n, k, max_find_probes/,
    );
    expect(() => requireColumns(table, ["n", "k"])).not.toThrow();
  });
});
