"""The toroidal embedding under construction and its validity tests.

A ``GroundEmbedding`` is an immutable value: dims, a sorted tuple of arcs,
and optional per-vertex action annotations. ``add_path`` returns a new
embedding (or a rejection) and never mutates its argument, so branches of a
search can share nothing and roll back for free.

All pairwise geometric conflicts for a given grid size are precomputed once
into bitmask tables; adding an arc then costs a few integer ANDs. The same
tables back both this module's incremental checks and the enumerator.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

from .geometry import (
    Arc,
    LACE_STEPS,
    LACE_STEP_SET,
    SLOT_NAMES,
    TorusDims,
    arcs_cross,
    direction_slot,
    wrap,
)
from .paths import LacePath


class SlotRecord(NamedTuple):
    """One arc's presence at a vertex: slot index, direction, intrinsic step."""

    slot: int
    incoming: bool
    step: tuple[int, int]


class Rejection(NamedTuple):
    """Why a path or arc could not be added."""

    kind: str              # "duplicate-arc" | "slot-conflict" | "degree" | "crossing" | "self-conflict"
    vertex: tuple[int, int]
    arc: Arc

    def __str__(self) -> str:
        return f"{self.kind} at vertex {self.vertex} adding arc {tuple(self.arc)}"


class MaskTables:
    """Per-dims precomputed arc universe and conflict bitmasks."""

    def __init__(self, dims: TorusDims):
        dims.validate()
        self.dims = dims
        rows, cols = dims
        self.step_index = {s: i for i, s in enumerate(LACE_STEPS)}
        self.arcs: list[Arc] = [
            Arc(r, c, dx, dy)
            for r in range(rows)
            for c in range(cols)
            for (dx, dy) in LACE_STEPS
        ]
        self.arc_id = {a: i for i, a in enumerate(self.arcs)}
        n_arcs = len(self.arcs)

        self.origin_vid = []
        self.head_vid = []
        self.slot_mask = []
        self.self_ok = []
        for a in self.arcs:
            ov = a.row * cols + a.col
            hr, hc = a.head(dims)
            hv = hr * cols + hc
            self.origin_vid.append(ov)
            self.head_vid.append(hv)
            so = direction_slot(a.step, at_head=False)
            sh = direction_slot(a.step, at_head=True)
            self.slot_mask.append((1 << (ov * 8 + so)) | (1 << (hv * 8 + sh)))
            self.self_ok.append(not arcs_cross(a, a, dims))

        self.conflict_mask = [0] * n_arcs
        for i, a in enumerate(self.arcs):
            for j in range(i + 1, n_arcs):
                if arcs_cross(a, self.arcs[j], dims):
                    self.conflict_mask[i] |= 1 << j
                    self.conflict_mask[j] |= 1 << i


@lru_cache(maxsize=None)
def tables_for(dims: TorusDims) -> MaskTables:
    return MaskTables(dims)


@dataclass(frozen=True)
class GroundEmbedding:
    dims: TorusDims
    arcs: tuple[Arc, ...] = ()
    zeta: tuple[tuple[tuple[int, int], str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(Arc(*a) for a in self.arcs)))
        object.__setattr__(self, "zeta", tuple(sorted(self.zeta)))

    def slot_records(self) -> dict[tuple[int, int], list[SlotRecord]]:
        """Per-vertex slot occupancy, derived from the arc set."""
        table: dict[tuple[int, int], list[SlotRecord]] = {}
        for a in self.arcs:
            o = (a.row, a.col)
            h = a.head(self.dims)
            table.setdefault(o, []).append(
                SlotRecord(direction_slot(a.step), False, a.step))
            table.setdefault(h, []).append(
                SlotRecord(direction_slot(a.step, at_head=True), True, a.step))
        for recs in table.values():
            recs.sort()
        return table

    def degree(self, v: tuple[int, int]) -> tuple[int, int]:
        ins = outs = 0
        for a in self.arcs:
            if (a.row, a.col) == v:
                outs += 1
            if a.head(self.dims) == v:
                ins += 1
        return ins, outs

    def non_isolated(self) -> list[tuple[int, int]]:
        seen = set()
        for a in self.arcs:
            seen.add((a.row, a.col))
            seen.add(a.head(self.dims))
        return sorted(seen)

    def zeta_map(self) -> dict[tuple[int, int], str]:
        return dict(self.zeta)


def new_embedding(dims: TorusDims) -> GroundEmbedding:
    dims.validate()
    return GroundEmbedding(dims)


def _state_masks(e: GroundEmbedding, t: MaskTables):
    arcs_mask = 0
    slots_mask = 0
    indeg = [0] * (e.dims.rows * e.dims.cols)
    outdeg = [0] * (e.dims.rows * e.dims.cols)
    for a in e.arcs:
        aid = t.arc_id[a]
        arcs_mask |= 1 << aid
        slots_mask |= t.slot_mask[aid]
        outdeg[t.origin_vid[aid]] += 1
        indeg[t.head_vid[aid]] += 1
    return arcs_mask, slots_mask, indeg, outdeg


def path_arcs(path: LacePath, start_col: int, dims: TorusDims) -> list[Arc]:
    """Arcs a path lays down when attached at the given column."""
    r = path.anchor_row(dims.rows)
    c = start_col
    out = []
    for (dx, dy) in path.steps:
        out.append(Arc(r, c, dx, dy))
        r, c = wrap(r + dy, c + dx, dims)
    return out


def add_path(
    e: GroundEmbedding, path: LacePath, start_col: int
) -> tuple[Optional[GroundEmbedding], Optional[Rejection]]:
    """Add every arc of the path, validating incrementally at both endpoints.

    Returns (new_embedding, None) on success or (None, rejection); the input
    embedding is untouched either way.
    """
    dims = e.dims
    if not 0 <= start_col < dims.cols:
        raise ValueError(f"start_col {start_col} out of range for {dims}")
    if path.height != dims.rows:
        raise ValueError(f"path height {path.height} != rows {dims.rows}")
    t = tables_for(dims)
    arcs_mask, slots_mask, indeg, outdeg = _state_masks(e, t)

    for arc in path_arcs(path, start_col, dims):
        aid = t.arc_id[arc]
        bit = 1 << aid
        vo = (arc.row, arc.col)
        if arcs_mask & bit:
            return None, Rejection("duplicate-arc", vo, arc)
        if not t.self_ok[aid]:
            return None, Rejection("self-conflict", vo, arc)
        if slots_mask & t.slot_mask[aid]:
            v = _slot_conflict_vertex(arc, slots_mask, t, dims)
            return None, Rejection("slot-conflict", v, arc)
        if t.conflict_mask[aid] & arcs_mask:
            return None, Rejection("crossing", vo, arc)
        hv = arc.head(dims)
        if outdeg[t.origin_vid[aid]] + 1 > 2:
            return None, Rejection("degree", vo, arc)
        if indeg[t.head_vid[aid]] + 1 > 2:
            return None, Rejection("degree", hv, arc)
        arcs_mask |= bit
        slots_mask |= t.slot_mask[aid]
        outdeg[t.origin_vid[aid]] += 1
        indeg[t.head_vid[aid]] += 1

    new_arcs = tuple(sorted(set(e.arcs) | set(path_arcs(path, start_col, dims))))
    return GroundEmbedding(dims, new_arcs, e.zeta), None


def _slot_conflict_vertex(arc, slots_mask, t, dims) -> tuple[int, int]:
    aid = t.arc_id[arc]
    o_bit = 1 << (t.origin_vid[aid] * 8 + direction_slot(arc.step))
    if slots_mask & o_bit:
        return (arc.row, arc.col)
    return arc.head(dims)


def valid_vertex(e: GroundEmbedding, v: tuple[int, int]) -> tuple[bool, Optional[str]]:
    """Intermediate solvability at one vertex: degree caps, slot exclusivity,
    and no crossings involving the vertex's arcs."""
    dims = e.dims
    if not (0 <= v[0] < dims.rows and 0 <= v[1] < dims.cols):
        raise ValueError(f"vertex {v} out of range for {dims}")
    recs = e.slot_records().get(v, [])
    ins = sum(1 for r in recs if r.incoming)
    outs = len(recs) - ins
    if ins > 2 or outs > 2:
        return False, f"degree {ins}-in/{outs}-out exceeds 2-in/2-out at {v}"
    slots = [r.slot for r in recs]
    if len(set(slots)) != len(slots):
        dup = next(s for s in slots if slots.count(s) > 1)
        return False, f"slot conflict at {v}: {SLOT_NAMES[dup]} occupied twice"
    mine = [a for a in e.arcs if (a.row, a.col) == v or a.head(dims) == v]
    for a in mine:
        for b in e.arcs:
            if a != b and arcs_cross(a, b, dims):
                return False, f"arc {tuple(a)} crosses {tuple(b)}"
        if arcs_cross(a, a, dims):
            return False, f"arc {tuple(a)} conflicts with its own periodic copies"
    return True, None


def valid_embedding(e: GroundEmbedding) -> tuple[bool, Optional[str]]:
    """Completion test: at least one arc, every used vertex exactly 2-in/2-out,
    and the undirected graph on used vertices connected."""
    if not e.arcs:
        return False, "no arcs"
    dims = e.dims
    degs: dict[tuple[int, int], list[int]] = {}
    adj: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for a in e.arcs:
        o = (a.row, a.col)
        h = a.head(dims)
        degs.setdefault(o, [0, 0])[1] += 1
        degs.setdefault(h, [0, 0])[0] += 1
        adj.setdefault(o, set()).add(h)
        adj.setdefault(h, set()).add(o)
    for v, (ins, outs) in sorted(degs.items()):
        if ins != 2 or outs != 2:
            return False, f"vertex {v} is {ins}-in/{outs}-out, expected 2-in/2-out"
    start = min(degs)
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if len(seen) != len(degs):
        missing = sorted(set(degs) - seen)[0]
        return False, f"disconnected: vertex {missing} unreachable from {start}"
    return True, None


# ---------------------------------------------------------------------------
# Ground file format (version 1)
# ---------------------------------------------------------------------------

ZETA_ALPHABET = frozenset("CTLRp")


class GroundFileError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def serialize(e: GroundEmbedding) -> str:
    """Canonical text form: header, dims, arcs in row-major origin order,
    then zeta annotations."""
    lines = ["ground v1", f"dims {e.dims.rows} {e.dims.cols}"]
    for a in sorted(e.arcs):
        lines.append(f"arc {a.row} {a.col} {a.dx} {a.dy}")
    for (r, c), actions in sorted(e.zeta):
        lines.append(f"zeta {r} {c} {actions}")
    return "\n".join(lines) + "\n"


def deserialize(text: str) -> GroundEmbedding:
    """Parse a ground file.

    Structural faults (bad syntax, steps outside the step set, out-of-range
    coordinates, duplicate arcs) raise GroundFileError with the offending
    line. Property violations - wrong degrees, slot conflicts, crossings,
    disconnection - are representable and admitted so the verifier can report
    on them.
    """
    dims: Optional[TorusDims] = None
    arcs: list[Arc] = []
    zeta: dict[tuple[int, int], str] = {}
    seen_header = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != "ground v1":
                raise GroundFileError(line_no, f"expected 'ground v1' header, got {line!r}")
            seen_header = True
            continue
        fields = line.split()
        if fields[0] == "dims":
            if dims is not None:
                raise GroundFileError(line_no, "duplicate dims line")
            if len(fields) != 3:
                raise GroundFileError(line_no, "dims takes exactly two integers")
            try:
                rows, cols = int(fields[1]), int(fields[2])
            except ValueError:
                raise GroundFileError(line_no, "dims values must be integers") from None
            if rows < 1 or cols < 1:
                raise GroundFileError(line_no, f"dims must be >= 1x1, got {rows}x{cols}")
            dims = TorusDims(rows, cols)
        elif fields[0] == "arc":
            if dims is None:
                raise GroundFileError(line_no, "arc before dims")
            if len(fields) != 5:
                raise GroundFileError(line_no, "arc takes exactly four integers")
            try:
                r, c, dx, dy = (int(f) for f in fields[1:])
            except ValueError:
                raise GroundFileError(line_no, "arc values must be integers") from None
            if not (0 <= r < dims.rows and 0 <= c < dims.cols):
                raise GroundFileError(line_no, f"origin ({r},{c}) out of range for {dims.rows}x{dims.cols}")
            if (dx, dy) not in LACE_STEP_SET:
                raise GroundFileError(line_no, f"step ({dx},{dy}) not in the lace step set")
            arc = Arc(r, c, dx, dy)
            if arc in arcs:
                raise GroundFileError(line_no, f"duplicate arc {tuple(arc)}")
            arcs.append(arc)
        elif fields[0] == "zeta":
            if dims is None:
                raise GroundFileError(line_no, "zeta before dims")
            if len(fields) != 4:
                raise GroundFileError(line_no, "zeta takes row, col and an action string")
            try:
                r, c = int(fields[1]), int(fields[2])
            except ValueError:
                raise GroundFileError(line_no, "zeta coordinates must be integers") from None
            if not (0 <= r < dims.rows and 0 <= c < dims.cols):
                raise GroundFileError(line_no, f"vertex ({r},{c}) out of range")
            actions = fields[3]
            bad = set(actions) - ZETA_ALPHABET
            if not actions or bad:
                raise GroundFileError(
                    line_no, f"zeta actions must be non-empty over C,T,L,R,p; got {actions!r}")
            if (r, c) in zeta:
                raise GroundFileError(line_no, f"duplicate zeta for vertex ({r},{c})")
            zeta[(r, c)] = actions
        else:
            raise GroundFileError(line_no, f"unknown directive {fields[0]!r}")
    if not seen_header:
        raise GroundFileError(1, "empty file; expected 'ground v1' header")
    if dims is None:
        raise GroundFileError(1, "missing dims line")
    return GroundEmbedding(dims, tuple(sorted(arcs)), tuple(sorted(zeta.items())))
