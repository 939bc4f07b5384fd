"""Cross-checks between the backtracker and the arc-subset brute force."""

import pytest

from oracle import brute_force_solutions
from laceground.geometry import TorusDims
from laceground.search import SearchConfig, enumerate_grounds
from laceground.validator import check_thread_conservation, full_report

GRIDS = [TorusDims(1, 1), TorusDims(1, 2), TorusDims(2, 1), TorusDims(2, 2)]


@pytest.mark.parametrize("dims", GRIDS, ids=lambda d: f"{d.rows}x{d.cols}")
def test_reference_oracle_matches_backtracker(dims):
    back = enumerate_grounds(SearchConfig(dims))
    oracle = brute_force_solutions(dims, level="reference")
    assert sorted(oracle) == [k for k, _ in back.canonical_solutions]


def test_degree_and_connectivity_alone_overshoot():
    """Arc subsets that are 2-regular and connected but violate thread
    conservation exist even on the unit grid; the path construction can
    never produce them, so completeness must be judged against the full
    property set."""
    oracle_loose = brute_force_solutions(TorusDims(1, 1), level="embedding")
    back = enumerate_grounds(SearchConfig(TorusDims(1, 1)))
    extras = set(oracle_loose) - {k for k, _ in back.canonical_solutions}
    assert extras, "expected drifting configurations to appear"
    for key in extras:
        emb = oracle_loose[key]
        report = full_report(emb)
        assert not report.all_pass(), key


def test_conservation_is_the_separating_property_on_2x1():
    loose = brute_force_solutions(TorusDims(2, 1), level="embedding")
    tight = brute_force_solutions(TorusDims(2, 1), level="properties")
    dropped = set(loose) - set(tight)
    assert dropped
    for key in dropped:
        assert not check_thread_conservation(loose[key]).ok


@pytest.mark.parametrize("dims", GRIDS, ids=lambda d: f"{d.rows}x{d.cols}")
def test_orbit_sizes_account_for_all_raw_solutions(dims):
    """Raw valid embeddings group into orbits whose sizes sum back to the raw
    count, and every orbit member is produced by some transform+translation
    of the stored representative."""
    from laceground.canonical import TRANSFORMS, canonical_id, identifier_text as idt
    from laceground.canonical import transform, translate

    raw: list = []
    classes = brute_force_solutions(dims, level="reference", raw=raw)
    by_class: dict[str, set] = {}
    for emb in raw:
        by_class.setdefault(idt(canonical_id(emb)), set()).add(emb)
    assert sorted(by_class) == sorted(classes)
    assert sum(len(members) for members in by_class.values()) == len(raw)
    for key, members in by_class.items():
        rep = classes[key]
        orbit = set()
        for name in TRANSFORMS:
            moved = transform(rep, name)
            for dr in range(dims.rows):
                for dc in range(dims.cols):
                    orbit.add(translate(moved, dr, dc))
        assert members <= orbit
