"""Text formats: posets, frames (downset or direct), and element maps.

Poset files declare points and order generators; the parser closes the
relation reflexively and transitively and rejects cycles.  A frame file is
either `frame from-poset <ref>`, a bare poset (downset frame implied), or a
direct lattice marked by `top`/`bottom` declarations, which only the law
checker accepts.  Map files name two frames and list a total element table.
"""
from __future__ import annotations

from pathlib import Path
from typing import Callable, Optional, Union

from .adjunction import FrameHom
from .frame import DirectLattice, FiniteFrame, FrameError
from .poset import FinPoset, PosetError


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def parse_poset(text: str) -> FinPoset:
    points: list[str] = []
    pairs: list[tuple[str, str]] = []
    for parts in _lines(text):
        if parts[0] == "elem" and len(parts) == 2:
            points.append(parts[1])
        elif parts[0] == "le" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        else:
            raise FormatError(f"bad poset line: {' '.join(parts)}")
    try:
        return FinPoset.from_pairs(points, pairs)
    except PosetError as exc:
        raise FormatError(str(exc)) from exc


PosetLookup = Callable[[str], str]


def parse_frame(
    text: str, poset_lookup: Optional[PosetLookup] = None
) -> Union[FiniteFrame, DirectLattice]:
    """Parse a frame file; `poset_lookup` resolves `frame from-poset` references."""
    lines = _lines(text)
    if lines and lines[0][0] == "frame":
        if len(lines[0]) != 3 or lines[0][1] != "from-poset" or len(lines) != 1:
            raise FormatError("expected a single `frame from-poset <ref>` line")
        if poset_lookup is None:
            raise FormatError("from-poset references are not available here; inline the poset")
        return FiniteFrame(parse_poset(poset_lookup(lines[0][2])))
    if any(parts[0] in ("top", "bottom") for parts in lines):
        return _parse_direct(lines)
    return FiniteFrame(parse_poset(text))


def _parse_direct(lines: list[list[str]]) -> DirectLattice:
    points: list[str] = []
    pairs: list[tuple[str, str]] = []
    top: Optional[str] = None
    bottom: Optional[str] = None
    for parts in lines:
        if parts[0] == "elem" and len(parts) == 2:
            points.append(parts[1])
        elif parts[0] == "le" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        elif parts[0] == "top" and len(parts) == 2:
            top = parts[1]
        elif parts[0] == "bottom" and len(parts) == 2:
            bottom = parts[1]
        else:
            raise FormatError(f"bad lattice line: {' '.join(parts)}")
    for marker in (top, bottom):
        if marker is not None and marker not in points:
            raise FormatError(f"top/bottom names unknown element {marker}")
    try:
        order = FinPoset.from_pairs(points, pairs)
    except PosetError as exc:
        raise FormatError(str(exc)) from exc
    return DirectLattice(order.points, order.up)


def load_frame(path: Union[str, Path]) -> Union[FiniteFrame, DirectLattice]:
    path = Path(path)
    base = path.parent

    def lookup(ref: str) -> str:
        return (base / ref).read_text()

    return parse_frame(path.read_text(), lookup)


def require_downset_frame(obj: Union[FiniteFrame, DirectLattice]) -> FiniteFrame:
    if isinstance(obj, FiniteFrame):
        return obj
    raise FormatError(
        "this operation needs a downset frame; direct lattices only support `check`"
    )


FrameLookup = Callable[[str], Union[FiniteFrame, DirectLattice]]


def parse_map(text: str, frame_lookup: FrameLookup) -> FrameHom:
    """Parse `map <name> : <source> -> <target>` plus total `send` lines."""
    lines = _lines(text)
    if not lines or lines[0][0] != "map":
        raise FormatError("map file must start with a `map` line")
    head = lines[0]
    if len(head) != 6 or head[2] != ":" or head[4] != "->":
        raise FormatError("map header must read `map <name> : <source> -> <target>`")
    source = require_downset_frame(frame_lookup(head[3]))
    target = require_downset_frame(frame_lookup(head[5]))
    table: dict[int, int] = {}
    for parts in lines[1:]:
        if parts[0] != "send" or len(parts) != 3:
            raise FormatError(f"bad map line: {' '.join(parts)}")
        try:
            u = source.parse_element(parts[1])
            v = target.parse_element(parts[2])
        except (FrameError, PosetError) as exc:
            raise FormatError(str(exc)) from exc
        if u in table:
            raise FormatError(f"duplicate send for {parts[1]}")
        table[u] = v
    missing = [u for u in range(source.n) if u not in table]
    if missing:
        names = ", ".join(source.element_name(u) for u in missing)
        raise FormatError(f"map table is not total; missing {names}")
    return FrameHom(source, target, tuple(table[u] for u in range(source.n)))


def load_map(path: Union[str, Path]) -> FrameHom:
    path = Path(path)
    base = path.parent
    return parse_map(path.read_text(), lambda ref: load_frame(base / ref))
