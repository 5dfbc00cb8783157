#!/usr/bin/env python3
"""Convert GAP transgrp library files into quandleforge group-database files.

The GAP data is not shipped with quandleforge.  One way to get it:

    pip download --no-deps passagemath-gap-pkg-transgrp-data -d /tmp/tg
    python scripts/transgrp_to_db.py /tmp/tg/*.whl --degrees 9-12 --out groups/

``source`` may be a wheel/zip, a directory (searched recursively) or a single
``transN*.grp[.gz]`` file.  Each output file ``trans<N>.grp`` holds one line
``N; gen1, gen2, ...`` per group, with the GAP name as a comment.
"""

from __future__ import annotations

import argparse
import gzip
import os
import re
import sys
import zipfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from quandleforge.perm import PermGroup, parse_cycles  # noqa: E402

_FILE = re.compile(r"(?:^|/)trans(\d+)([a-z]*)\.grp(\.gz)?$")
_ASSIGN = re.compile(r"TRANSGRP\[(\d+)\](\{\[(\d+)\.\.(\d+)\]\})?\s*:=")
_PERM = re.compile(r"^(\(\d+(,\d+)*\))+$|^\(\)$")


def _sources(source: str):
    """Yield (name, text) for every transgrp data file in ``source``."""

    def decode(name, raw):
        if name.endswith(".gz"):
            raw = gzip.decompress(raw)
        return raw.decode("latin-1")

    if zipfile.is_zipfile(source):
        with zipfile.ZipFile(source) as z:
            for name in z.namelist():
                if _FILE.search(name):
                    yield name, decode(name, z.read(name))
    elif os.path.isdir(source):
        for root, _, files in os.walk(source):
            for f in files:
                path = os.path.join(root, f)
                if _FILE.search(path):
                    with open(path, "rb") as fh:
                        yield path, decode(path, fh.read())
    else:
        with open(source, "rb") as fh:
            yield source, decode(source, fh.read())


def _split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside brackets, parentheses and strings."""
    out, depth, cur, in_str, i = [], 0, [], False, 0
    while i < len(text):
        ch = text[i]
        if in_str:
            cur.append(ch)
            if ch == "\\":
                cur.append(text[i + 1])
                i += 1
            elif ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
            cur.append(ch)
        elif ch in "[(":
            depth += 1
            cur.append(ch)
        elif ch in "])":
            depth -= 1
            cur.append(ch)
        elif ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    if "".join(cur).strip():
        out.append("".join(cur))
    return out


def _list_after(text: str, start: int) -> str:
    """The bracketed list beginning at or after ``start``."""
    i = text.index("[", start)
    depth, in_str = 0, False
    for j in range(i, len(text)):
        ch = text[j]
        if in_str:
            if ch == '"' and text[j - 1] != "\\":
                in_str = False
        elif ch == '"':
            in_str = True
        elif ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                return text[i : j + 1]
    raise ValueError("unterminated list")


def parse_transgrp(text: str) -> dict[int, dict[int, tuple[list[str], str]]]:
    """Map degree -> {1-based index -> (generator strings, name)}."""
    text = "\n".join(ln for ln in text.splitlines() if not ln.lstrip().startswith("#"))
    text = text.replace("\\\n", "")
    out: dict[int, dict[int, tuple[list[str], str]]] = {}
    for m in _ASSIGN.finditer(text):
        degree = int(m.group(1))
        first = int(m.group(3)) if m.group(2) else 1
        body = _list_after(text, m.end())
        entries = _split_top(body[1:-1])
        if not any(e.strip() for e in entries):
            continue
        for k, entry in enumerate(entries):
            entry = entry.strip()
            if not entry.startswith("["):
                raise ValueError(f"degree {degree}: unexpected entry {entry[:40]!r}")
            gens, name = [], ""
            for item in _split_top(entry[1:-1]):
                item = re.sub(r"\s+", "", item)
                if _PERM.match(item):
                    gens.append(item)
                elif item.startswith('"'):
                    name = item.strip('"')
            out.setdefault(degree, {})[first + k] = (gens, name)
    return out


def _degree_list(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source", help="transgrp wheel/zip, directory or .grp file")
    ap.add_argument("--degrees", required=True, help="e.g. 9-12,18,20")
    ap.add_argument("--out", default="groups", help="output directory (default: groups)")
    ap.add_argument("--verify", action="store_true", help="check transitivity of every group")
    args = ap.parse_args(argv)

    wanted = set(_degree_list(args.degrees))
    found: dict[int, dict[int, tuple[list[str], str]]] = {}
    for name, text in _sources(args.source):
        m = _FILE.search(name)
        if m and int(m.group(1)) not in wanted:
            continue
        for degree, entries in parse_transgrp(text).items():
            if degree in wanted:
                found.setdefault(degree, {}).update(entries)

    os.makedirs(args.out, exist_ok=True)
    status = 0
    for degree in sorted(wanted):
        entries = found.get(degree)
        if not entries:
            print(f"degree {degree}: no data found", file=sys.stderr)
            status = 1
            continue
        lines = [f"# transitive groups of degree {degree} converted from the GAP transgrp library"]
        for idx in sorted(entries):
            gens, name = entries[idx]
            gen_text = ", ".join(gens) or "()"
            if args.verify:
                G = PermGroup([parse_cycles(g, degree) for g in gens], degree)
                if not G.is_transitive():
                    raise SystemExit(f"degree {degree} group {idx} is not transitive")
            lines.append(f"{degree}; {gen_text}  # T{idx} {name}")
        path = os.path.join(args.out, f"trans{degree}.grp")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"degree {degree}: {len(entries)} groups -> {path}")
    return status


if __name__ == "__main__":
    sys.exit(main())
