"""Replayable operation traces and their text exchange format.

Ops are plain tuples; the first element is the kind:

    ("L", u, v)            link
    ("F", v, expect|None)  find, optional expected representative
    ("I", u, v)            insert edge
    ("D", u, v)            delete edge
    ("Q", u, v, expect)    connectivity query, expected 0/1
    ("tag", label)         begin interval
    ("endtag",)            end interval
    ("snap",)              snapshot memory
    ("restore",)           restore most recent snapshot

The text form is one op per line, directives prefixed with ``#``:
``L u v``, ``F v [expect r]``, ``I u v``, ``D u v``, ``Q u v expect 0|1``,
``# tag <label>``, ``# endtag``, ``# snap``, ``# restore``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import TraceFormatError


@dataclass
class Trace:
    ops: list[tuple] = field(default_factory=list)
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.ops)

    def node_count(self) -> int:
        """Smallest universe covering every node id the trace touches."""
        top = -1
        for op in self.ops:
            kind = op[0]
            if kind in ("L", "I", "D", "Q"):
                m = op[1] if op[1] > op[2] else op[2]
            elif kind == "F":
                m = op[1]
            else:
                continue
            if m > top:
                top = m
        return top + 1

    def op_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for op in self.ops:
            counts[op[0]] = counts.get(op[0], 0) + 1
        return counts

    def to_text(self) -> str:
        lines = []
        for op in self.ops:
            kind = op[0]
            if kind == "L":
                lines.append(f"L {op[1]} {op[2]}")
            elif kind == "F":
                if op[2] is None:
                    lines.append(f"F {op[1]}")
                else:
                    lines.append(f"F {op[1]} expect {op[2]}")
            elif kind == "I":
                lines.append(f"I {op[1]} {op[2]}")
            elif kind == "D":
                lines.append(f"D {op[1]} {op[2]}")
            elif kind == "Q":
                lines.append(f"Q {op[1]} {op[2]} expect {op[3]}")
            elif kind == "tag":
                lines.append(f"# tag {op[1]}")
            elif kind == "endtag":
                lines.append("# endtag")
            elif kind == "snap":
                lines.append("# snap")
            elif kind == "restore":
                lines.append("# restore")
            else:
                raise TraceFormatError(f"unknown op kind {kind!r}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "Trace":
        ops: list[tuple] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "#":
                    if parts[1] == "tag":
                        ops.append(("tag", parts[2]))
                    elif parts[1] == "endtag":
                        ops.append(("endtag",))
                    elif parts[1] == "snap":
                        ops.append(("snap",))
                    elif parts[1] == "restore":
                        ops.append(("restore",))
                    else:
                        raise TraceFormatError(
                            f"line {lineno}: unknown directive {parts[1]!r}")
                elif parts[0] == "L":
                    ops.append(("L", int(parts[1]), int(parts[2])))
                elif parts[0] == "F":
                    if len(parts) == 2:
                        ops.append(("F", int(parts[1]), None))
                    elif len(parts) == 4 and parts[2] == "expect":
                        ops.append(("F", int(parts[1]), int(parts[3])))
                    else:
                        raise TraceFormatError(f"line {lineno}: bad find")
                elif parts[0] == "I":
                    ops.append(("I", int(parts[1]), int(parts[2])))
                elif parts[0] == "D":
                    ops.append(("D", int(parts[1]), int(parts[2])))
                elif parts[0] == "Q":
                    if parts[3] != "expect":
                        raise TraceFormatError(f"line {lineno}: bad query")
                    ops.append(("Q", int(parts[1]), int(parts[2]),
                                int(parts[4])))
                else:
                    raise TraceFormatError(
                        f"line {lineno}: unknown op {parts[0]!r}")
            except (IndexError, ValueError) as exc:
                raise TraceFormatError(f"line {lineno}: {raw!r}") from exc
        return cls(ops=ops)

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()[:16]

    def check_balance(self) -> bool:
        """Interval markers balanced, snapshots never under-popped."""
        open_tag = False
        snaps = 0
        for op in self.ops:
            kind = op[0]
            if kind == "tag":
                if open_tag:
                    return False
                open_tag = True
            elif kind == "endtag":
                if not open_tag:
                    return False
                open_tag = False
            elif kind == "snap":
                snaps += 1
            elif kind == "restore":
                if snaps == 0:
                    return False
                snaps -= 1
        return not open_tag

    # -- files ------------------------------------------------------------

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def read(cls, path: str | Path) -> "Trace":
        trace = cls.from_text(Path(path).read_text(encoding="utf-8"))
        sidecar = Path(str(path) + ".params.json")
        if sidecar.exists():
            meta = json.loads(sidecar.read_text(encoding="utf-8"))
            trace.seed = meta.pop("seed", None)
            trace.params = meta
        return trace

    def write_params(self, path: str | Path) -> None:
        record = dict(self.params)
        record["seed"] = self.seed
        Path(str(path) + ".params.json").write_text(
            json.dumps(record, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")
