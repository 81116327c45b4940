"""JSON documents read and written by the CLI, plus a DOT dump for visualization."""

from __future__ import annotations

import json
import re
from typing import Any, Iterable, Mapping

from .augmentation import CobipartiteAugment, ElementaryPresentation
from .errors import InvalidInput
from .graph_core import BipartiteMultigraph, SimpleGraph


_FLAT_LIST = re.compile(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]")


def dumps(doc: Any) -> str:
    """Indented JSON with integer lists kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT_LIST.sub(_inline, text) + "\n"


def _inline(m: re.Match) -> str:
    return "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc


def read_document(path: str) -> Any:
    if path == "-":
        import sys

        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _field(doc: Any, key: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise InvalidInput(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InvalidInput(f"field {key!r} has the wrong type")
    return value


def _pairs(value: Any, what: str) -> list[tuple[int, int]]:
    out = []
    for item in value:
        if not isinstance(item, (list, tuple)) or len(item) != 2 or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in item
        ):
            raise InvalidInput(f"{what} entries must be integer pairs, got {item!r}")
        out.append((item[0], item[1]))
    return out


def graph_to_doc(g: SimpleGraph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def graph_from_doc(doc: Any) -> SimpleGraph:
    n = _field(doc, "n", int)
    return SimpleGraph.from_edges(n, _pairs(_field(doc, "edges", list), "edges"))


def multigraph_to_doc(b: BipartiteMultigraph) -> dict[str, Any]:
    return {"left": b.left, "right": b.right, "edges": [list(e) for e in b.edges]}


def multigraph_from_doc(doc: Any) -> BipartiteMultigraph:
    left, right = _field(doc, "left", int), _field(doc, "right", int)
    return BipartiteMultigraph(left, right, tuple(_pairs(_field(doc, "edges", list), "edges")))


def presentation_to_doc(p: ElementaryPresentation) -> dict[str, Any]:
    return {
        "b": multigraph_to_doc(p.b),
        "augments": [
            {
                "flat_edge": list(fe),
                "x_size": a.x_size,
                "y_size": a.y_size,
                "cross_edges": [list(e) for e in sorted(a.cross_edges)],
            }
            for fe, a in zip(p.flat_edges, p.augments)
        ],
    }


def presentation_from_doc(doc: Any) -> ElementaryPresentation:
    b = multigraph_from_doc(_field(doc, "b", dict))
    flats, augs = [], []
    for item in doc.get("augments", []):
        fe = _pairs([_field(item, "flat_edge", list)], "flat_edge")[0]
        flats.append(fe)
        augs.append(
            CobipartiteAugment(
                _field(item, "x_size", int),
                _field(item, "y_size", int),
                frozenset(_pairs(_field(item, "cross_edges", list), "cross_edges")),
            )
        )
    return ElementaryPresentation(b, tuple(flats), tuple(augs))


def lists_to_doc(lists: Mapping[int, Iterable[int]]) -> dict[str, Any]:
    return {"lists": {str(v): sorted(lists[v]) for v in sorted(lists)}}


def lists_from_doc(doc: Any) -> dict[int, frozenset[int]]:
    raw = _field(doc, "lists", dict)
    out = {}
    for key, colors in raw.items():
        try:
            v = int(key)
        except ValueError as exc:
            raise InvalidInput(f"list key {key!r} is not an index") from exc
        if not isinstance(colors, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in colors
        ):
            raise InvalidInput(f"list for {key} must hold nonnegative integers")
        out[v] = frozenset(colors)
    return out


def coloring_to_doc(c: Mapping[int, int]) -> dict[str, Any]:
    return {"colors": {str(v): c[v] for v in sorted(c)}}


def coloring_from_doc(doc: Any) -> dict[int, int]:
    raw = _field(doc, "colors", dict)
    try:
        return {int(k): int(v) for k, v in raw.items()}
    except (TypeError, ValueError) as exc:
        raise InvalidInput("colors must map indices to integers") from exc


def bicoloring_to_doc(tags: Mapping[tuple[int, int], str]) -> dict[str, Any]:
    return {
        "pink": [list(e) for e in sorted(e for e, t in tags.items() if t == "pink")],
        "green": [list(e) for e in sorted(e for e, t in tags.items() if t == "green")],
    }


def bicoloring_from_doc(doc: Any) -> dict[tuple[int, int], str]:
    tags: dict[tuple[int, int], str] = {}
    for name in ("pink", "green"):
        for u, v in _pairs(_field(doc, name, list), name):
            tags[(min(u, v), max(u, v))] = name
    return tags


def witness_to_doc(cycle: list[tuple[int, int]]) -> dict[str, Any]:
    return {"odd_gallai_cycle": [list(e) for e in cycle]}


def to_dot(g: SimpleGraph, name: str = "G", tags: Mapping[tuple[int, int], str] | None = None) -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in g.vertices)
    for u, v in g.edge_list():
        attr = f' [color="{tags[(u, v)]}"]' if tags and (u, v) in tags else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
