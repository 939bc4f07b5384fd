"""Translation of per-vertex action sequences into braid words.

Actions operate on two adjacent thread pairs: pairs i and i+1 hold the four
strands at positions 2i..2i+3. A cross puts the middle strand over its right
neighbour; a twist crosses each pair's strands under. In generator notation a
positive entry (p, +1) is strand p over p+1, negative is under. Every word
assembled from these actions keeps positive generators on odd positions and
negative ones on even positions, which is exactly the alternating-braid
pattern.
"""

from typing import NamedTuple

ACTIONS = frozenset("CTLRp")


class BraidWord(NamedTuple):
    generators: tuple[tuple[int, int], ...]  # (strand position, sign)
    pins: tuple[int, ...]                    # indices into generators where a pin sits

    def __str__(self) -> str:
        return format_braid_word(self)


def to_braid_word(actions: str, pair_index: int = 0) -> BraidWord:
    """Expand an action string for the pair at ``pair_index``.

    C -> sigma_{2i+1}; T -> sigma_{2i}^-1 sigma_{2i+2}^-1; L and R twist only
    the left or right pair; p marks a pin at its place in the word.
    """
    if pair_index < 0:
        raise ValueError("pair index must be >= 0")
    i2 = 2 * pair_index
    gens: list[tuple[int, int]] = []
    pins: list[int] = []
    for ch in actions:
        if ch == "C":
            gens.append((i2 + 1, +1))
        elif ch == "T":
            gens.append((i2, -1))
            gens.append((i2 + 2, -1))
        elif ch == "L":
            gens.append((i2, -1))
        elif ch == "R":
            gens.append((i2 + 2, -1))
        elif ch == "p":
            pins.append(len(gens))
        else:
            raise ValueError(f"unknown action {ch!r}; expected one of C,T,L,R,p")
    return BraidWord(tuple(gens), tuple(pins))


def is_alternating(word: BraidWord) -> bool:
    """Positive generators only on odd strand positions, negative only on even."""
    for pos, sign in word.generators:
        if sign > 0 and pos % 2 == 0:
            return False
        if sign < 0 and pos % 2 == 1:
            return False
    return True


def format_braid_word(word: BraidWord) -> str:
    """Readable rendering, e.g. 's1 s0^-1 s2^-1 [pin]'."""
    parts: list[str] = []
    for k, (pos, sign) in enumerate(word.generators):
        parts.extend(["[pin]"] * word.pins.count(k))
        parts.append(f"s{pos}" if sign > 0 else f"s{pos}^-1")
    parts.extend(["[pin]"] * word.pins.count(len(word.generators)))
    return " ".join(parts) if parts else "(empty)"
