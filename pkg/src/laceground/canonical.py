"""Vertex labels, identifiers, symmetry transforms and canonical forms.

Patterns are considered equivalent under translation, horizontal and vertical
reflection, and 180-degree rotation (the reflections through a horizontal
axis and the rotation reverse every arc so that steps keep pointing
downward). Each vertex gets an 8-entry label - one signed entry per compass
slot, positive for incoming, negative for outgoing, magnitude equal to the
step length - and an embedding's identifier strings the labels together in
row-major order. The canonical identifier is the minimum over the whole
symmetry orbit; exactly one member of each orbit attains it.
"""

import hashlib
from typing import Iterable

from .embedding import GroundEmbedding
from .geometry import Arc, TorusDims, direction_slot, step_length, wrap

TRANSFORMS = ("identity", "h_reflect", "v_reflect", "rot180")

Label = tuple[int, int, int, int, int, int, int, int]
EmbeddingId = tuple


def vertex_label(e: GroundEmbedding, v: tuple[int, int]) -> Label:
    entries = [0] * 8
    for a in e.arcs:
        if (a.row, a.col) == v:
            entries[direction_slot(a.step)] = -step_length(a.step)
        if a.head(e.dims) == v:
            entries[direction_slot(a.step, at_head=True)] = step_length(a.step)
    return tuple(entries)


def label_grid(e: GroundEmbedding) -> list[list[Label]]:
    rows, cols = e.dims
    grid = [[[0] * 8 for _ in range(cols)] for _ in range(rows)]
    for a in e.arcs:
        grid[a.row][a.col][direction_slot(a.step)] = -step_length(a.step)
        hr, hc = a.head(e.dims)
        grid[hr][hc][direction_slot(a.step, at_head=True)] = step_length(a.step)
    return [[tuple(lab) for lab in row] for row in grid]


def identifier(e: GroundEmbedding) -> EmbeddingId:
    """Dims followed by row-major vertex labels; totally ordered as a tuple."""
    grid = label_grid(e)
    return (e.dims.rows, e.dims.cols) + tuple(
        lab for row in grid for lab in row)


def _transform_arc(a: Arc, name: str, dims: TorusDims) -> Arc:
    rows, cols = dims
    if name == "identity":
        return a
    if name == "h_reflect":
        return Arc(a.row, (-a.col) % cols, -a.dx, a.dy)
    if name == "v_reflect":
        r, c = wrap(-(a.row + a.dy), a.col + a.dx, dims)
        return Arc(r, c, -a.dx, a.dy)
    if name == "rot180":
        r, c = wrap(-(a.row + a.dy), -(a.col + a.dx), dims)
        return Arc(r, c, a.dx, a.dy)
    raise ValueError(f"unknown transform {name!r}")


def _transform_vertex(v: tuple[int, int], name: str, dims: TorusDims) -> tuple[int, int]:
    r, c = v
    rows, cols = dims
    if name == "identity":
        return (r, c)
    if name == "h_reflect":
        return (r, (-c) % cols)
    if name == "v_reflect":
        return ((-r) % rows, c)
    if name == "rot180":
        return ((-r) % rows, (-c) % cols)
    raise ValueError(f"unknown transform {name!r}")


def transform(e: GroundEmbedding, name: str) -> GroundEmbedding:
    """Apply a symmetry. Reflecting rows or rotating reverses every arc;
    the stored steps stay within the step set because rows are mirrored."""
    arcs = tuple(sorted(_transform_arc(a, name, e.dims) for a in e.arcs))
    zeta = tuple(sorted(
        (_transform_vertex(v, name, e.dims), actions) for v, actions in e.zeta))
    return GroundEmbedding(e.dims, arcs, zeta)


def translate(e: GroundEmbedding, dr: int, dc: int) -> GroundEmbedding:
    arcs = tuple(sorted(
        Arc(*wrap(a.row + dr, a.col + dc, e.dims), a.dx, a.dy) for a in e.arcs))
    zeta = tuple(sorted(
        (wrap(v[0] + dr, v[1] + dc, e.dims), actions) for v, actions in e.zeta))
    return GroundEmbedding(e.dims, arcs, zeta)


def _orbit_identifiers(e: GroundEmbedding):
    """Yield (identifier, transform name, dr, dc) over the full orbit."""
    rows, cols = e.dims
    for name in TRANSFORMS:
        grid = label_grid(transform(e, name))
        for r0 in range(rows):
            for c0 in range(cols):
                eid = (rows, cols) + tuple(
                    grid[(r0 + r) % rows][(c0 + c) % cols]
                    for r in range(rows) for c in range(cols))
                # moving source vertex (r0, c0) to the origin = translating
                # by (-r0, -c0)
                yield eid, name, (-r0) % rows, (-c0) % cols


def canonical_id(e: GroundEmbedding) -> EmbeddingId:
    """Least identifier over all four transforms and all translations."""
    return min(eid for eid, _, _, _ in _orbit_identifiers(e))


def canonical_representative(e: GroundEmbedding) -> tuple[EmbeddingId, GroundEmbedding]:
    """The canonical identifier together with the orbit member attaining it."""
    best = min(_orbit_identifiers(e))
    eid, name, dr, dc = best
    return eid, translate(transform(e, name), dr, dc)


def is_canonical(e: GroundEmbedding) -> bool:
    return identifier(e) == canonical_id(e)


def identifier_text(eid: EmbeddingId) -> str:
    """Stable one-line rendering used as the deduplication key."""
    rows, cols = eid[0], eid[1]
    labels = ";".join(",".join(str(x) for x in lab) for lab in eid[2:])
    return f"{rows}x{cols}|{labels}"


def solution_name(eid: EmbeddingId) -> str:
    """Content-derived file stem for a canonical solution."""
    digest = hashlib.sha256(identifier_text(eid).encode()).hexdigest()
    return digest[:16]


# ---------------------------------------------------------------------------
# Search pruning support
# ---------------------------------------------------------------------------

# Per-transform slot permutation and sign applied to a vertex label:
# entry i of the transformed label reads from SOURCE_SLOT[t][i] of the
# original, multiplied by LABEL_SIGN[t].
_SOURCE_SLOT = {
    "identity": tuple(range(8)),
    "h_reflect": tuple((8 - i) % 8 for i in range(8)),
    "v_reflect": tuple((4 - i) % 8 for i in range(8)),
    "rot180": tuple((i + 4) % 8 for i in range(8)),
}
_LABEL_SIGN = {"identity": 1, "h_reflect": 1, "v_reflect": -1, "rot180": -1}


def transformed_label(label: Label, name: str) -> Label:
    src = _SOURCE_SLOT[name]
    sign = _LABEL_SIGN[name]
    return tuple(sign * label[src[i]] for i in range(8))


def dominates(witness: Label, witness_decided, base: Label, base_decided) -> bool:
    """True iff the witness label is provably less than the base label in
    every completion of the current partial embedding.

    ``*_decided[i]`` says whether entry i can still change (an empty slot of
    an incomplete vertex may acquire any future arc; filled slots and the
    empty slots of complete vertices are final). Comparison walks entries in
    order and only returns True on a strict, fully decided win.
    """
    for i in range(8):
        if not (witness_decided[i] and base_decided[i]):
            return False
        if witness[i] != base[i]:
            return witness[i] < base[i]
    return False


PRUNE_TRANSFORMS = ("identity", "h_reflect")


def prune_predicate(e: GroundEmbedding) -> bool:
    """Sound branch-keeping test for partial embeddings.

    Returns False only when no completion of ``e`` can contribute a new
    canonical class: a column shift, possibly mirrored, already yields a
    provably smaller leading label than the one at the origin. Only those two
    symmetries are used as witnesses because they map any lace-path
    decomposition to another valid one, so the smaller member is guaranteed
    reachable by the search; undecidable comparisons keep the branch.
    """
    rows, cols = e.dims
    grid = label_grid(e)
    degs = {}
    for a in e.arcs:
        o = (a.row, a.col)
        h = a.head(e.dims)
        degs.setdefault(o, [0, 0])[1] += 1
        degs.setdefault(h, [0, 0])[0] += 1

    def decided_vector(v):
        lab = grid[v[0]][v[1]]
        d = degs.get(v)
        complete = d is not None and d[0] == 2 and d[1] == 2
        return tuple(lab[i] != 0 or complete for i in range(8))

    base = grid[0][0]
    base_dec = decided_vector((0, 0))
    for name in PRUNE_TRANSFORMS:
        src = _SOURCE_SLOT[name]
        for c in range(cols):
            if name == "identity" and c == 0:
                continue
            v = (0, c)
            wit = transformed_label(grid[v[0]][v[1]], name)
            vdec = decided_vector(v)
            wit_dec = tuple(vdec[src[i]] for i in range(8))
            if dominates(wit, wit_dec, base, base_dec):
                return False
    return True
