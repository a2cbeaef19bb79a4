"""JSON graph ingestion and export.

Format::

    {"vertices": ["v0", ...],
     "edges": [["v0", "v1"], ...],
     "families": [{"label": "Y0", "members": ["v0", "v2"]}, ...]}

``families`` is optional.  Schema errors carry the line of the offending
element in the source text.
"""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import GraphInvalid, UnknownVertex
from .core import Graph, SubsetFamily


def _line_of(text: str, needle: str, after: str | None = None) -> int:
    start = 0
    if after is not None:
        k = text.find(f'"{after}"')
        start = max(k, 0)
    k = text.find(needle, start)
    if k < 0:
        k = start
    return text.count("\n", 0, k) + 1


def parse_graph(text: str, source: str = "<graph>") -> tuple[Graph, SubsetFamily]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInvalid(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None

    def fail(msg, needle=None, after=None):
        line = _line_of(text, needle, after) if needle else 1
        raise GraphInvalid(f"{source}:{line}: {msg}")

    if not isinstance(data, dict):
        fail("top level must be an object")
    for key in ("vertices", "edges"):
        if not isinstance(data.get(key), list):
            fail(f'"{key}" must be a list', f'"{key}"' if key in data else None)
    vertices = data["vertices"]
    for v in vertices:
        if not isinstance(v, str):
            fail(f"vertex {v!r} is not a string", json.dumps(v), "vertices")
    known = set(vertices)
    edges = []
    for k, e in enumerate(data["edges"]):
        if not (isinstance(e, list) and len(e) == 2):
            fail(f"edges[{k}] must be a 2-element list", json.dumps(e)[:20].rstrip("]"), "edges")
        for v in e:
            if v not in known:
                fail(f"edges[{k}] uses unknown vertex {v!r}", json.dumps(v), "edges")
        edges.append(tuple(e))
    members, labels = [], []
    fams = data.get("families", [])
    if not isinstance(fams, list):
        fail('"families" must be a list', '"families"')
    for k, f in enumerate(fams):
        if not isinstance(f, dict) or not isinstance(f.get("members"), list):
            fail(f"families[{k}] needs a members list", '"members"', "families")
        if not f["members"]:
            fail(f"families[{k}] is empty", '"members"', "families")
        for v in f["members"]:
            if v not in known:
                fail(f"families[{k}] uses unknown vertex {v!r}", json.dumps(v), "families")
        members.append(f["members"])
        labels.append(str(f.get("label", k)))
    try:
        g = Graph(vertices, edges)
    except (GraphInvalid, UnknownVertex) as exc:
        fail(str(exc), None)
    return g, SubsetFamily(members, labels)


def load_graph(path) -> tuple[Graph, SubsetFamily]:
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), str(path))


def dump_graph(g: Graph, family: SubsetFamily | None = None) -> dict:
    out = {
        "vertices": [str(v) for v in g.vertices],
        "edges": [[str(u), str(v)] for u, v in g.edges],
    }
    if family is not None:
        out["families"] = [
            {"label": lab if lab is not None else str(i), "members": sorted(str(v) for v in m)}
            for i, (lab, m) in enumerate(zip(family.labels, family.members))
        ]
    return out
