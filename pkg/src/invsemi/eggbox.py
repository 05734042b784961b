"""Egg-box diagrams of D-classes: rows are R-classes, columns L-classes."""
from __future__ import annotations

from .finite import FiniteInvSemigroup, GreensData, PartialInjection, greens


def label(a: PartialInjection) -> str:
    return "[" + " ".join(f"{i}:{j}" for i, j in a.graph) + "]"


def boxes(S: FiniteInvSemigroup, G: GreensData | None = None) -> list[dict]:
    """One grid per D-class, top-down in the J-order."""
    G = greens(S) if G is None else G
    out = []
    for d, members in enumerate(G.d_classes):
        idems = sorted(a for a in members if a.is_idempotent())
        pos = {e: n for n, e in enumerate(idems)}
        size = len(idems)
        cells = [[None] * size for _ in range(size)]
        for h in G.h_classes:
            a = h[0]
            if G.d_index[a] != d:
                continue
            r, c = pos[a * a.inverse()], pos[a.inverse() * a]
            cells[r][c] = {"elements": list(h), "group": any(x.is_idempotent() for x in h)}
        out.append({"index": d, "cells": cells, "kernel": d == G.kernel})
    return out


def covers(G: GreensData) -> list[tuple[int, int]]:
    """Hasse edges (upper, lower) of the J-order."""
    n = len(G.d_classes)
    below = {i: {j for j in range(n) if j != i and G.leq(j, i)} for i in range(n)}
    return [(i, j) for i in range(n) for j in sorted(below[i])
            if not any(j in below[m] for m in below[i])]


def emit_eggbox_dot(S: FiniteInvSemigroup, G: GreensData | None = None) -> str:
    G = greens(S) if G is None else G
    lines = ["digraph eggbox {", "  rankdir=TB;", "  node [shape=plaintext];"]
    for box in boxes(S, G):
        d = box["index"]
        lines.append(f"  subgraph cluster_D{d} {{")
        lines.append(f'    label="D{d}{" (kernel)" if box["kernel"] else ""}";')
        rows = []
        for row in box["cells"]:
            tds = []
            for cell in row:
                text = "<BR/>".join(label(a) for a in cell["elements"])
                if cell["group"]:
                    tds.append(f'<TD BGCOLOR="lightgrey">*{text}</TD>')
                else:
                    tds.append(f"<TD>{text}</TD>")
            rows.append("<TR>" + "".join(tds) + "</TR>")
        table = '<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">' + "".join(rows) + "</TABLE>"
        lines.append(f"    D{d} [label=<{table}>];")
        lines.append("  }")
    for i, j in covers(G):
        lines.append(f"  D{i} -> D{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_eggbox_text(S: FiniteInvSemigroup, G: GreensData | None = None) -> str:
    G = greens(S) if G is None else G
    out = []
    for box in boxes(S, G):
        n = len(box["cells"])
        out.append(f"D{box['index']}{' (kernel)' if box['kernel'] else ''}: {n} x {n}")
        for row in box["cells"]:
            parts = []
            for cell in row:
                mark = "*" if cell["group"] else " "
                parts.append(mark + ",".join(label(a) for a in cell["elements"]))
            out.append("  | " + " | ".join(parts) + " |")
    return "\n".join(out) + "\n"
