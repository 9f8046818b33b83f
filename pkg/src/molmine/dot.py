"""Graphviz DOT serialization of association graphs and communities.

A double bond is rendered as one edge with ``dir=both``; single bonds keep
their direction. Nodes and edges are emitted in lexicographic order so the
output is deterministic.
"""

from __future__ import annotations

from .decompose import Community
from .graph import AssocGraph

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r"}


def _quote(name: str) -> str:
    return '"' + "".join(_ESCAPES.get(ch, ch) for ch in name) + '"'


def to_dot(obj: AssocGraph | Community, name: str = "G") -> str:
    """Render a graph or community as a DOT digraph."""
    if isinstance(obj, Community):
        nodes, edges = obj.members, obj.edges
    else:
        nodes, edges = obj.nodes, obj.edges

    lines = [f"digraph {name} {{"]
    for node in sorted(nodes):
        lines.append(f"  {_quote(node)};")

    edge_set = set(edges)
    rendered: list[tuple[str, str, bool]] = []
    for a, b in edge_set:
        if (b, a) in edge_set:
            if a < b:  # one line per double bond
                rendered.append((a, b, True))
        else:
            rendered.append((a, b, False))
    for a, b, double in sorted(rendered):
        suffix = " [dir=both]" if double else ""
        lines.append(f"  {_quote(a)} -> {_quote(b)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
