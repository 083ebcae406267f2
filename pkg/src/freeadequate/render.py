"""Graphviz DOT rendering of trees."""

from __future__ import annotations

from .tree import SigmaTree


def to_dot(x: SigmaTree, name: str = "tree") -> str:
    """Directed edges carry ``label``; the start vertex is a point, the end vertex has two peripheries."""
    lines = [f"digraph {name} {{", "  node [shape=circle, label=\"\", width=0.25];"]
    for v in range(x.vertex_count):
        attrs = []
        notes = []
        if v == x.start:
            attrs.append("shape=point, width=0.12")
            notes.append("start")
        if v == x.end:
            attrs.append("peripheries=2")
            notes.append("end")
        line = f"  n{v}"
        if attrs:
            line += f" [{', '.join(attrs)}]"
        line += ";"
        if notes:
            line += f"  // {', '.join(notes)}"
        lines.append(line)
    for s, d, label in x.edges:
        lines.append(f'  n{s} -> n{d} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
