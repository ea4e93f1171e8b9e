"""Hasse diagrams in DOT syntax; byte-identical across runs for the same input."""
from __future__ import annotations

from typing import Mapping, Optional


def _covers(lattice) -> list[tuple[int, int]]:
    cached = getattr(lattice, "covers", None)
    if cached is not None:
        return list(cached)
    n = lattice.n
    pairs = []
    for u in range(n):
        for v in range(n):
            if u == v or not lattice.leq(u, v):
                continue
            if not any(
                w != u and w != v and lattice.leq(u, w) and lattice.leq(w, v)
                for w in range(n)
            ):
                pairs.append((u, v))
    return pairs


def export_dot(lattice, labels: Optional[Mapping[int, str]] = None) -> str:
    """Hasse diagram of the covering relation, edges pointing bottom to top."""
    lines = ["digraph frame {", "  rankdir=BT;"]
    for u in range(lattice.n):
        label = labels[u] if labels and u in labels else lattice.element_name(u)
        lines.append(f'  e{u} [label="{label}"];')
    for u, v in sorted(_covers(lattice)):
        lines.append(f"  e{u} -> e{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
