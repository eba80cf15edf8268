/**
 * Reader for the bench CLI's versioned CSV reports.
 *
 * Every file starts with a `# schema: <name>` comment followed by a header
 * row; anything else is a SchemaMismatch. Numeric-looking fields parse to
 * numbers, everything else stays a string.
 */

export class SchemaMismatch extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaMismatch";
  }
}

export type Row = Record<string, string | number>;

export interface Table {
  schema: string;
  columns: string[];
  rows: Row[];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatch("empty file: expected a '# schema:' line");
  }
  const schemaMatch = lines[0].match(/^#\s*schema:\s*(\S+)\s*$/);
  if (!schemaMatch) {
    throw new SchemaMismatch(`missing schema line, got: ${lines[0]}`);
  }
  if (lines.length < 2) {
    throw new SchemaMismatch("schema line present but no header row");
  }
  const columns = lines[1].split(",").map((c) => c.trim());
  const rows: Row[] = [];
  for (let i = 2; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new SchemaMismatch(
        `row ${i - 1} has ${parts.length} fields, header has ` +
        `${columns.length} (columns: ${columns.join(", ")})`,
      );
    }
    const row: Row = {};
    for (let j = 0; j < columns.length; j++) {
      const raw = parts[j].trim();
      const num = Number(raw);
      row[columns[j]] = raw !== "" && Number.isFinite(num) ? num : raw;
    }
    rows.push(row);
  }
  return { schema: schemaMatch[1], columns, rows };
}

/** Assert the columns a chart needs exist, with a helpful message. */
export function requireColumns(table: Table, needed: string[]): void {
  const missing = needed.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaMismatch(
      `missing column(s) ${missing.join(", ")} in schema ${table.schema} ` +
      `(have: ${table.columns.join(", ")})`,
    );
  }
}
