import random

from laceground.canonical import (
    TRANSFORMS,
    canonical_id,
    canonical_representative,
    identifier,
    identifier_text,
    is_canonical,
    prune_predicate,
    solution_name,
    transform,
    translate,
    vertex_label,
)
from laceground.embedding import GroundEmbedding, add_path, new_embedding
from laceground.geometry import Arc, TorusDims
from laceground.paths import LacePath
from laceground.search import SearchConfig, enumerate_grounds

TORCHON_1x1 = GroundEmbedding(TorusDims(1, 1), (Arc(0, 0, -1, 1), Arc(0, 0, 1, 0)))
MIRROR_1x1 = GroundEmbedding(TorusDims(1, 1), (Arc(0, 0, 1, 1), Arc(0, 0, -1, 0)))


def test_vertex_label_examples():
    assert vertex_label(new_embedding(TorusDims(2, 2)), (1, 1)) == (0,) * 8
    assert vertex_label(TORCHON_1x1, (0, 0)) == (0, 1, -1, 0, 0, -1, 1, 0)
    lone = GroundEmbedding(TorusDims(3, 1), (Arc(1, 0, 0, 2),))
    # head of the double step receives +2 at north
    assert vertex_label(lone, (0, 0))[0] == 2


def test_transform_laws():
    for emb in (TORCHON_1x1, MIRROR_1x1):
        assert transform(emb, "identity") == emb
        for name in ("h_reflect", "v_reflect", "rot180"):
            assert transform(transform(emb, name), name) == emb
        assert transform(transform(emb, "h_reflect"), "v_reflect") == transform(emb, "rot180")


def test_v_reflect_of_torchon_is_mirror():
    assert transform(TORCHON_1x1, "v_reflect") == MIRROR_1x1


def test_translate_wraps():
    e = GroundEmbedding(TorusDims(2, 3), (Arc(0, 1, 1, 1),))
    t = translate(e, 3, 4)
    assert t.arcs == (Arc(1, 2, 1, 1),)


def test_one_by_one_orbit():
    # the two mirror embeddings share a canonical id and exactly one is canonical
    ids = {canonical_id(TORCHON_1x1), canonical_id(MIRROR_1x1)}
    assert len(ids) == 1
    assert is_canonical(TORCHON_1x1) != is_canonical(MIRROR_1x1)
    eid, rep = canonical_representative(TORCHON_1x1)
    assert identifier(rep) == eid
    assert is_canonical(rep)


def test_empty_embedding_is_canonical():
    assert is_canonical(new_embedding(TorusDims(2, 2)))


def test_canonical_invariance_over_solutions():
    rng = random.Random(7)
    result = enumerate_grounds(SearchConfig(TorusDims(2, 2)))
    for _, emb in result.canonical_solutions:
        cid = canonical_id(emb)
        assert identifier(emb) == cid  # stored representatives are canonical
        for name in TRANSFORMS:
            moved = translate(transform(emb, name),
                              rng.randrange(2), rng.randrange(2))
            assert canonical_id(moved) == cid


def test_identifier_text_and_name_stable():
    eid = identifier(TORCHON_1x1)
    text = identifier_text(eid)
    assert text == "1x1|0,1,-1,0,0,-1,1,0"
    assert len(solution_name(eid)) == 16
    assert solution_name(eid) == solution_name(eid)


def test_prune_predicate_keeps_canonical_prefixes():
    # any state reached while building a stored representative must be kept
    result = enumerate_grounds(SearchConfig(TorusDims(2, 1)))
    for _, emb in result.canonical_solutions:
        assert prune_predicate(emb)


def test_prune_predicate_discards_dominated():
    # a lone path at column 1 of an otherwise empty grid is column-shift
    # dominated as soon as the shifted label comparison is decided
    e = new_embedding(TorusDims(1, 2))
    e2, _ = add_path(e, LacePath(((-1, 1), (1, 0)), False), 1)
    moved = translate(e2, 0, 1)
    keep_original = prune_predicate(e2)
    keep_moved = prune_predicate(moved)
    # at least one of the two placements is redundant
    assert not (keep_original and keep_moved) or canonical_id(e2) == canonical_id(moved)


def test_pruning_differential_small_grids():
    """Pruning on and off must produce identical canonical sets."""
    for rows, cols in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]:
        dims = TorusDims(rows, cols)
        on = enumerate_grounds(SearchConfig(dims, pruning=True))
        off = enumerate_grounds(SearchConfig(dims, pruning=False))
        assert [k for k, _ in on.canonical_solutions] == [k for k, _ in off.canonical_solutions]
