/**
 * plots CLI: `render --spec <file.json>` turns a chart spec into an SVG.
 * Exit 0 on success, 1 on bad specs or schema mismatches.
 */

import { loadSpec, renderSpecToFile } from "./render.js";

function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (command !== "render") {
    console.error("usage: plots render --spec <spec.json>");
    return 1;
  }
  const flag = rest.indexOf("--spec");
  if (flag === -1 || flag + 1 >= rest.length) {
    console.error("render needs --spec <spec.json>");
    return 1;
  }
  try {
    const out = renderSpecToFile(loadSpec(rest[flag + 1]));
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
