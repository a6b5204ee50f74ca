"""File formats: edge-list graphs, JSON instances/witnesses/roles, DOT export.

Graph files are line oriented.  The first meaningful line is
``p <n> <m>``, followed by one ``v <label>`` line per vertex and then one
``e <label> <label>`` line per edge.  Labels are whitespace-free tokens;
lines starting with ``c`` are comments.  Readers reject duplicate labels,
unknown endpoints, loops, duplicate edges, and count mismatches, naming
the offending line.  Writers emit the canonical form: sorted vertex lines,
then sorted edge lines.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import EdgeListParseError, FormatError
from .graphs import Graph, canonical_pair
from .reductions import Role
from .setsplit import Partition3, SetSplitInstance


# -- edge-list text ------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    declared: tuple[int, int] | None = None
    p_line = 0
    vertices: list[str] = []
    seen_vertices: set[str] = set()
    edges: list[tuple[str, str]] = []
    seen_edges: set[tuple[str, str]] = set()
    edges_started = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if declared is not None:
                raise EdgeListParseError(line_no, "second p line")
            if len(tokens) != 3:
                raise EdgeListParseError(line_no, "p line must be `p <n> <m>`")
            try:
                declared = (int(tokens[1]), int(tokens[2]))
            except ValueError:
                raise EdgeListParseError(line_no, "p line counts must be integers") from None
            if declared[0] < 0 or declared[1] < 0:
                raise EdgeListParseError(line_no, "p line counts must be nonnegative")
            p_line = line_no
        elif kind == "v":
            if declared is None:
                raise EdgeListParseError(line_no, "v line before the p line")
            if edges_started:
                raise EdgeListParseError(line_no, "v line after the first e line")
            if len(tokens) != 2:
                raise EdgeListParseError(line_no, "v line must be `v <label>`")
            label = tokens[1]
            if label in seen_vertices:
                raise EdgeListParseError(line_no, f"duplicate vertex label {label!r}")
            seen_vertices.add(label)
            vertices.append(label)
        elif kind == "e":
            if declared is None:
                raise EdgeListParseError(line_no, "e line before the p line")
            edges_started = True
            if len(tokens) != 3:
                raise EdgeListParseError(line_no, "e line must be `e <label> <label>`")
            u, v = tokens[1], tokens[2]
            if u == v:
                raise EdgeListParseError(line_no, f"loop at {u!r}")
            for end in (u, v):
                if end not in seen_vertices:
                    raise EdgeListParseError(line_no, f"unknown endpoint {end!r}")
            pair = canonical_pair(u, v)
            if pair in seen_edges:
                raise EdgeListParseError(line_no, f"duplicate edge {u!r}-{v!r}")
            seen_edges.add(pair)
            edges.append(pair)
        else:
            raise EdgeListParseError(line_no, f"unknown line kind {kind!r}")

    if declared is None:
        raise EdgeListParseError(1, "missing p line")
    if declared != (len(vertices), len(edges)):
        raise EdgeListParseError(
            p_line,
            f"p line declares n={declared[0]} m={declared[1]} "
            f"but the file has n={len(vertices)} m={len(edges)}",
        )
    return Graph(vertices, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"v {v}" for v in sorted(g.vertices)]
    lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_graph(path: str | Path, g: Graph) -> None:
    Path(path).write_text(format_edge_list(g))


# -- JSON instance, witness, role map -------------------------------------------

def instance_from_dict(data: object) -> SetSplitInstance:
    if not isinstance(data, dict):
        raise FormatError("instance JSON must be an object")
    ground = data.get("ground_set")
    collection = data.get("collection")
    if not isinstance(ground, list) or not all(isinstance(e, str) for e in ground):
        raise FormatError("`ground_set` must be a list of strings")
    if not isinstance(collection, list) or not all(
        isinstance(c, list) and all(isinstance(e, str) for e in c) for c in collection
    ):
        raise FormatError("`collection` must be a list of lists of strings")
    return SetSplitInstance(tuple(ground), tuple(tuple(c) for c in collection))


def instance_to_dict(inst: SetSplitInstance) -> dict:
    return {
        "ground_set": list(inst.ground_set),
        "collection": [list(c) for c in inst.collection],
    }


def partition_from_dict(data: object) -> Partition3:
    if not isinstance(data, dict) or "parts" not in data:
        raise FormatError("witness JSON must be an object with a `parts` field")
    parts = data["parts"]
    if (
        not isinstance(parts, list)
        or len(parts) != 3
        or not all(isinstance(p, list) and all(isinstance(e, str) for e in p) for p in parts)
    ):
        raise FormatError("`parts` must be three lists of strings")
    return Partition3.of(*parts)


def partition_to_dict(p: Partition3) -> dict:
    return {"parts": [sorted(part) for part in p.parts]}


def roles_from_dict(data: object) -> dict[str, Role]:
    if not isinstance(data, dict):
        raise FormatError("role map JSON must be an object")
    roles: dict[str, Role] = {}
    for label, entry in data.items():
        if not isinstance(entry, dict) or "role" not in entry:
            raise FormatError(f"role entry for {label!r} must carry a `role` field")
        args = entry.get("args", [])
        if not isinstance(args, list):
            raise FormatError(f"role args for {label!r} must be a list")
        roles[label] = Role(str(entry["role"]), tuple(args))
    return roles


def roles_to_dict(roles: dict[str, Role]) -> dict:
    return {
        label: {"role": role.kind, "args": list(role.args)}
        for label, role in sorted(roles.items())
    }


def load_json(path: str | Path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc


def dump_json(path: str | Path, data: object) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


# -- DOT export ------------------------------------------------------------------

_DOT_STYLES = {
    "Element": 'shape=circle fillcolor="#bcd9ff"',
    "SetVertex": 'shape=box fillcolor="#ffe59a"',
    "SetTail": 'shape=circle fillcolor="#e6e6e6"',
    "A": 'shape=diamond fillcolor="#ff9e9e"',
    "B": 'shape=hexagon fillcolor="#ffc97e"',
    "BTail": 'shape=circle fillcolor="#d9d9d9"',
    "Original": 'shape=circle fillcolor="#bcd9ff"',
    "EdgeHelper": 'shape=circle fillcolor="#c9eec9"',
}


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: Graph, roles: dict[str, Role] | None = None) -> str:
    lines = ["graph G {", "  node [style=filled fillcolor=white];"]
    for v in sorted(g.vertices):
        style = _DOT_STYLES.get(roles[v].kind) if roles and v in roles else None
        if style:
            lines.append(f"  {_quote(v)} [{style}];")
        else:
            lines.append(f"  {_quote(v)};")
    for u, v in sorted(g.edges):
        lines.append(f"  {_quote(u)} -- {_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
