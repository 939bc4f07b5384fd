"""Backtracking enumeration of ground embeddings.

Column by column, the search adds zero, one or two lace paths (each rooted at
that column), validating every arc incrementally against precomputed conflict
bitmasks. Completed embeddings must be exactly 2-in/2-out on their used
vertices and connected; survivors are reduced to canonical form and collected
into a dictionary keyed by canonical identifier, so duplicates met along
different branches collapse and results are independent of scheduling.

The search tree is partitioned into independent work items by the position of
the first path placed (all earlier columns empty). Items share nothing and
merge commutatively, which makes multi-process runs byte-identical to the
single-process reference run.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .canonical import (
    _LABEL_SIGN,
    _SOURCE_SLOT,
    canonical_representative,
    identifier_text,
)
from .embedding import GroundEmbedding, path_arcs, tables_for
from .geometry import TorusDims, direction_slot, step_length
from .paths import generate_lace_paths
from .validator import check_connected, partition_circuits

_BIG = 1 << 62


@dataclass(frozen=True)
class SearchConfig:
    """Search options. Defaults give the reference semantics: pruning on,
    plain torus connectivity, and solutions whose thread-pair circuits all
    contain at least two arcs (a single-arc circuit is a pair that repeats
    one arc forever, bouncing off itself at its only interaction)."""

    dims: TorusDims
    jobs: int = 1
    pruning: bool = True
    strict_connectivity: bool = False
    allow_single_arc_circuits: bool = False
    node_budget: Optional[int] = None
    out_dir: Optional[str] = None


@dataclass
class SearchResult:
    canonical_solutions: list[tuple[str, GroundEmbedding]]  # sorted by id text
    count: int
    nodes_visited: int
    wall_time: float
    complete: bool


class _Candidate:
    """One deduplicated (path, column) arc set with its combined masks."""

    __slots__ = ("arcs_mask", "slots_mask", "blocked_mask", "deg", "arc_ids",
                 "in_any", "in_two", "out_any", "out_two", "label_updates")

    def __init__(self, arcs_mask, slots_mask, conflict_mask, deg, arc_ids, tables):
        self.arcs_mask = arcs_mask
        self.slots_mask = slots_mask
        # arcs that may not be present: the set itself plus everything it crosses
        self.blocked_mask = arcs_mask | conflict_mask
        self.deg = deg              # tuple of (vid, d_in, d_out)
        self.arc_ids = arc_ids
        self.in_any = self.in_two = self.out_any = self.out_two = 0
        for vid, d_in, d_out in deg:
            bit = 1 << vid
            if d_in:
                self.in_any |= bit
                if d_in == 2:
                    self.in_two |= bit
            if d_out:
                self.out_any |= bit
                if d_out == 2:
                    self.out_two |= bit
        updates = []
        for aid in arc_ids:
            a = tables.arcs[aid]
            length = step_length(a.step)
            updates.append((tables.origin_vid[aid] * 8 + direction_slot(a.step), -length))
            updates.append((tables.head_vid[aid] * 8 + direction_slot(a.step, at_head=True), length))
        self.label_updates = tuple(updates)


class _Engine:
    def __init__(self, dims: TorusDims):
        self.dims = dims
        self.t = tables_for(dims)
        self.n_vertices = dims.rows * dims.cols
        self.columns = [self._column_candidates(c) for c in range(dims.cols)]

    def _column_candidates(self, col: int) -> list[_Candidate]:
        t = self.t
        out = []
        seen: set[frozenset] = set()
        for path in generate_lace_paths(self.dims.rows):
            arcs = path_arcs(path, col, self.dims)
            ids = frozenset(t.arc_id[a] for a in arcs)
            if len(ids) != len(arcs) or ids in seen:
                continue
            if any(not t.self_ok[aid] for aid in ids):
                continue
            slots = 0
            conflict = 0
            deg: dict[int, list[int]] = {}
            ok = True
            for aid in sorted(ids):
                sm = t.slot_mask[aid]
                if slots & sm:
                    ok = False
                    break
                slots |= sm
                conflict |= t.conflict_mask[aid]
                deg.setdefault(t.origin_vid[aid], [0, 0])[1] += 1
                deg.setdefault(t.head_vid[aid], [0, 0])[0] += 1
            if not ok:
                continue
            if any(d[0] > 2 or d[1] > 2 for d in deg.values()):
                continue
            arcs_mask = 0
            for aid in ids:
                arcs_mask |= 1 << aid
            if conflict & arcs_mask:
                continue  # path crosses itself on this torus
            seen.add(ids)
            out.append(_Candidate(
                arcs_mask, slots, conflict,
                tuple((vid, d[0], d[1]) for vid, d in sorted(deg.items())),
                tuple(sorted(ids)), t))
        return out


_ENGINES: dict[TorusDims, _Engine] = {}


def _engine(dims: TorusDims) -> _Engine:
    if dims not in _ENGINES:
        _ENGINES[dims] = _Engine(dims)
    return _ENGINES[dims]


class _State:
    __slots__ = ("arcs_mask", "slots_mask", "indeg", "outdeg", "labels",
                 "in_ge1", "in_ge2", "out_ge1", "out_ge2")

    def __init__(self, n_vertices):
        self.arcs_mask = 0
        self.slots_mask = 0
        self.indeg = [0] * n_vertices
        self.outdeg = [0] * n_vertices
        self.labels = [0] * (n_vertices * 8)
        self.in_ge1 = self.in_ge2 = self.out_ge1 = self.out_ge2 = 0

    def clone(self) -> "_State":
        s = _State.__new__(_State)
        s.arcs_mask = self.arcs_mask
        s.slots_mask = self.slots_mask
        s.indeg = self.indeg[:]
        s.outdeg = self.outdeg[:]
        s.labels = self.labels[:]
        s.in_ge1 = self.in_ge1
        s.in_ge2 = self.in_ge2
        s.out_ge1 = self.out_ge1
        s.out_ge2 = self.out_ge2
        return s


def _feasible(state: _State, cand: _Candidate) -> bool:
    # pure mask arithmetic: no shared arcs or crossings, free slots, and the
    # degree caps hold (a vertex at 2 takes nothing, a vertex at 1 cannot
    # take a double contribution)
    return not (
        state.arcs_mask & cand.blocked_mask
        or state.slots_mask & cand.slots_mask
        or state.in_ge2 & cand.in_any
        or state.in_ge1 & cand.in_two
        or state.out_ge2 & cand.out_any
        or state.out_ge1 & cand.out_two
    )


def _apply(state: _State, cand: _Candidate, eng: _Engine) -> _State:
    s = state.clone()
    s.arcs_mask |= cand.arcs_mask
    s.slots_mask |= cand.slots_mask
    for vid, d_in, d_out in cand.deg:
        bit = 1 << vid
        if d_in:
            ind = s.indeg[vid] = s.indeg[vid] + d_in
            s.in_ge1 |= bit
            if ind >= 2:
                s.in_ge2 |= bit
        if d_out:
            outd = s.outdeg[vid] = s.outdeg[vid] + d_out
            s.out_ge1 |= bit
            if outd >= 2:
                s.out_ge2 |= bit
    labels = s.labels
    for index, value in cand.label_updates:
        labels[index] = value
    return s


_PRUNE_TRANSFORMS = ("identity", "h_reflect")


def _dominated(state: _State, eng: _Engine) -> bool:
    """True when a column shift, possibly mirrored, provably beats the current
    origin label in every completion. Those two symmetries map any lace-path
    decomposition to another valid one, so the smaller-identifier member is
    itself reachable and the branch is redundant; row-reversing symmetries
    are deliberately not used as witnesses."""
    labels = state.labels
    indeg, outdeg = state.indeg, state.outdeg
    cols = eng.dims.cols

    def decided(vid, slot):
        return labels[vid * 8 + slot] != 0 or (indeg[vid] == 2 and outdeg[vid] == 2)

    for name in _PRUNE_TRANSFORMS:
        src = _SOURCE_SLOT[name]
        sign = _LABEL_SIGN[name]
        for c in range(cols):
            if name == "identity" and c == 0:
                continue
            wvid = c  # row-0 vertex (0, c)
            verdict = 0
            for i in range(8):
                s = src[i]
                if not (decided(wvid, s) and decided(0, i)):
                    break
                wv = sign * labels[wvid * 8 + s]
                bv = labels[i]
                if wv != bv:
                    verdict = -1 if wv < bv else 1
                    break
            else:
                verdict = 0
            if verdict == -1:
                return True
    return False


class _Budget(Exception):
    pass


class _ItemRunner:
    def __init__(self, eng: _Engine, config: SearchConfig, budget: Optional[int]):
        self.eng = eng
        self.config = config
        self.budget = budget if budget is not None else _BIG
        self.nodes = 0
        self.found: dict[str, GroundEmbedding] = {}
        self.complete = True

    def run(self, start_col: int, first_index: int):
        eng = self.eng
        state = _State(eng.n_vertices)
        cand = eng.columns[start_col][first_index]
        if not _feasible(state, cand):
            return
        try:
            s1 = self._add(state, cand)
            if s1 is not None:
                self._explore_after_first(s1, start_col, first_index)
        except _Budget:
            self.complete = False

    def _add(self, state: _State, cand: _Candidate) -> Optional[_State]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget()
        s = _apply(state, cand, self.eng)
        if self.config.pruning and _dominated(s, self.eng):
            return None
        return s

    def _explore_after_first(self, state: _State, col: int, first_index: int):
        # one path at this column
        self._descend(state, col + 1)
        # a second path at the same column, later in the fixed path order
        cands = self.eng.columns[col]
        arcs, slots = state.arcs_mask, state.slots_mask
        in1, in2 = state.in_ge1, state.in_ge2
        out1, out2 = state.out_ge1, state.out_ge2
        for j in range(first_index + 1, len(cands)):
            c2 = cands[j]
            if (arcs & c2.blocked_mask or slots & c2.slots_mask
                    or in2 & c2.in_any or in1 & c2.in_two
                    or out2 & c2.out_any or out1 & c2.out_two):
                continue
            s2 = self._add(state, c2)
            if s2 is not None:
                self._descend(s2, col + 1)

    def _descend(self, state: _State, col: int):
        if col == self.eng.dims.cols:
            self._accept(state)
            return
        self._descend(state, col + 1)  # column unused
        cands = self.eng.columns[col]
        arcs, slots = state.arcs_mask, state.slots_mask
        in1, in2 = state.in_ge1, state.in_ge2
        out1, out2 = state.out_ge1, state.out_ge2
        for i, cand in enumerate(cands):
            if (arcs & cand.blocked_mask or slots & cand.slots_mask
                    or in2 & cand.in_any or in1 & cand.in_two
                    or out2 & cand.out_any or out1 & cand.out_two):
                continue
            s1 = self._add(state, cand)
            if s1 is not None:
                self._explore_after_first(s1, col, i)

    def _accept(self, state: _State):
        eng = self.eng
        if state.arcs_mask == 0:
            return
        used = [v for v in range(eng.n_vertices)
                if state.indeg[v] or state.outdeg[v]]
        for v in used:
            if state.indeg[v] != 2 or state.outdeg[v] != 2:
                return
        if not self._connected(state, used):
            return
        e = self._to_embedding(state)
        if not self.config.allow_single_arc_circuits:
            if any(len(c) == 1 for c in partition_circuits(e).circuits):
                return
        if self.config.strict_connectivity:
            if not check_connected(e, strict=True).ok:
                return
        eid, rep = canonical_representative(e)
        self.found.setdefault(identifier_text(eid), rep)

    def _connected(self, state: _State, used: list[int]) -> bool:
        t = self.eng.t
        adj: dict[int, set[int]] = {v: set() for v in used}
        mask = state.arcs_mask
        aid = 0
        while mask:
            if mask & 1:
                o, h = t.origin_vid[aid], t.head_vid[aid]
                adj[o].add(h)
                adj[h].add(o)
            mask >>= 1
            aid += 1
        seen = {used[0]}
        frontier = [used[0]]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(used)

    def _to_embedding(self, state: _State) -> GroundEmbedding:
        t = self.eng.t
        arcs = []
        mask = state.arcs_mask
        aid = 0
        while mask:
            if mask & 1:
                arcs.append(t.arcs[aid])
            mask >>= 1
            aid += 1
        return GroundEmbedding(self.eng.dims, tuple(sorted(arcs)))


def _work_items(eng: _Engine) -> list[tuple[int, int]]:
    """Partition of the tree by the first path placed: (column, cand index).
    Earlier columns are empty in that item; the all-empty embedding is not a
    solution, so the partition covers everything."""
    return [(c, i) for c in range(eng.dims.cols)
            for i in range(len(eng.columns[c]))]


def _run_item(args) -> tuple[dict[str, GroundEmbedding], int, bool]:
    (dims, pruning, strict, allow_1arc, budget, col, idx) = args
    eng = _engine(dims)
    config = SearchConfig(dims, pruning=pruning, strict_connectivity=strict,
                          allow_single_arc_circuits=allow_1arc)
    runner = _ItemRunner(eng, config, budget)
    runner.run(col, idx)
    return runner.found, runner.nodes, runner.complete


def enumerate_grounds(config: SearchConfig) -> SearchResult:
    """Run the full column-indexed search and return canonical solutions."""
    config.dims.validate()
    start = time.monotonic()
    eng = _engine(config.dims)
    items = _work_items(eng)
    budgets: list[Optional[int]] = [None] * len(items)
    if config.node_budget is not None and items:
        per = config.node_budget // len(items)
        extra = config.node_budget % len(items)
        budgets = [per + (1 if k < extra else 0) for k in range(len(items))]

    merged: dict[str, GroundEmbedding] = {}
    nodes = 0
    complete = True
    job_args = [
        (config.dims, config.pruning, config.strict_connectivity,
         config.allow_single_arc_circuits, budgets[k], col, idx)
        for k, (col, idx) in enumerate(items)
    ]
    if config.jobs <= 1:
        results = map(_run_item, job_args)
        for found, n, comp in results:
            merged.update(found)
            nodes += n
            complete = complete and comp
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for found, n, comp in pool.map(_run_item, job_args,
                                           chunksize=max(1, len(job_args) // (config.jobs * 8))):
                merged.update(found)
                nodes += n
                complete = complete and comp

    solutions = sorted(merged.items())
    return SearchResult(
        canonical_solutions=solutions,
        count=len(solutions),
        nodes_visited=nodes,
        wall_time=time.monotonic() - start,
        complete=complete,
    )


@dataclass
class CountCell:
    count: int
    complete: bool


def count_table(max_rows: int, max_cols: int, jobs: int = 1,
                pruning: bool = True, strict: bool = False,
                node_budget: Optional[int] = None) -> list[list[CountCell]]:
    """Counts for every grid up to max_rows x max_cols. Sub-periodic patterns
    arise naturally on larger grids, so the table is accumulative."""
    table = []
    for n in range(1, max_rows + 1):
        row = []
        for m in range(1, max_cols + 1):
            result = enumerate_grounds(SearchConfig(
                TorusDims(n, m), jobs=jobs, pruning=pruning,
                strict_connectivity=strict, node_budget=node_budget))
            row.append(CountCell(result.count, result.complete))
        table.append(row)
    return table
