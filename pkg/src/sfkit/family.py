"""Canonical set families over small integer ground sets.

Elements are the integers 1..n with n capped at 128 so that a member
set fits a fixed-width bit mask (bit v-1 stands for element v) and
intersection, disjointness and subset tests are single big-int ops.
Families are deduplicated and stored in the canonical order used for
every tie-break in the toolkit: lexicographic on the sorted element
tuples, empty set first.

The four subfamily selectors pick, for a probe set S:

* ``select_intersecting``            {U : U meets S}
* ``select_by_intersection_size``    {U : |U and S| = j}
* ``select_supersets``               {U : U contains S}
* ``incidence_pairs``                all (v, U) with v in U and S
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    CardinalityExceeded,
    DuplicateSet,
    ElementOutOfRange,
    EmptyFamily,
    IndexOutOfRange,
    InvalidParams,
)

GROUND_CAP = 128


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for v in elements:
        m |= 1 << (v - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class GroundSet:
    """The universal set; elements are 1..size."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise InvalidParams("ground set size must be a positive integer")
        if self.size > GROUND_CAP:
            raise InvalidParams(f"ground set size {self.size} exceeds the cap of {GROUND_CAP}")


@dataclass(frozen=True)
class MemberSet:
    """A set of element ids, stored as a strictly increasing tuple."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(self.elements)
        if any(not isinstance(v, int) or v < 1 for v in elems):
            raise ElementOutOfRange(f"element ids must be positive integers: {elems}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise InvalidParams(f"elements must be strictly increasing: {elems}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, elements: Iterable[int]) -> "MemberSet":
        return cls(tuple(sorted(set(elements))))

    @property
    def mask(self) -> int:
        return mask_of(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def as_member_set(s) -> MemberSet:
    if isinstance(s, MemberSet):
        return s
    return MemberSet.of(s)


class SetFamily:
    """An ordered, deduplicated family of member sets of bounded cardinality.

    Immutable after construction; instances are safe to share across
    threads for reads.  ``masks`` is the canonical tuple of bit masks.
    """

    __slots__ = ("ground", "max_card", "masks", "_packed", "_members")

    def __init__(self, ground: GroundSet, max_card: int, masks: Sequence[int], _sorted: bool = False):
        if not isinstance(max_card, int) or max_card < 1:
            raise InvalidParams("max_card must be a positive integer")
        self.ground = ground
        self.max_card = max_card
        if not _sorted:
            masks = sorted(set(masks), key=elements_of)
        self.masks = tuple(masks)
        self._packed = None
        self._members = None

    def packed(self):
        if self._packed is None:
            self._packed = kernels.pack(self.masks)
        return self._packed

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.ground == other.ground
            and self.max_card == other.max_card
            and self.masks == other.masks
        )

    def __hash__(self):
        return hash((self.ground, self.max_card, self.masks))

    def __repr__(self):
        shown = ", ".join("{" + ",".join(map(str, elements_of(m))) + "}" for m in self.masks[:8])
        tail = ", ..." if len(self.masks) > 8 else ""
        return f"SetFamily(n={self.ground.size}, s={self.max_card}, [{shown}{tail}])"

    def member(self, i: int) -> MemberSet:
        self.check_index(i)
        return MemberSet(elements_of(self.masks[i]))

    @property
    def members(self) -> tuple[MemberSet, ...]:
        if self._members is None:
            self._members = tuple(MemberSet(elements_of(m)) for m in self.masks)
        return self._members

    def decompose(self) -> tuple[int, int, list[list[int]]]:
        """(ground size, max cardinality, element lists); feeds build_family back."""
        return self.ground.size, self.max_card, [list(elements_of(m)) for m in self.masks]

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not (0 <= i < len(self.masks)):
            raise IndexOutOfRange(f"member index {i} not in [0, {len(self.masks)})")

    def subfamily(self, indices: Iterable[int]) -> "SetFamily":
        """Family restricted to the given member indices (canonical order kept)."""
        idx = sorted(set(indices))
        for i in idx:
            self.check_index(i)
        return SetFamily(self.ground, self.max_card, [self.masks[i] for i in idx], _sorted=True)

    def union_mask(self, indices: Iterable[int]) -> int:
        u = 0
        for i in indices:
            self.check_index(i)
            u |= self.masks[i]
        return u

    def probe_mask(self, s) -> int:
        """Validate a probe set against the ground set and return its mask.

        Probe sets may have any cardinality up to n; they are not bound
        by ``max_card``.
        """
        ms = as_member_set(s)
        if ms.elements and ms.elements[-1] > self.ground.size:
            raise ElementOutOfRange(
                f"element {ms.elements[-1]} outside ground set of size {self.ground.size}"
            )
        return ms.mask


@dataclass(frozen=True)
class IncidencePair:
    """One (element, member) incidence produced by ``incidence_pairs``."""

    element: int
    member_index: int


def build_family(ground_size: int, max_card: int, sets: Iterable[Iterable[int]]) -> SetFamily:
    """Canonicalize raw element lists into a SetFamily.

    Input order never matters: members are deduplicated (an exact repeat
    raises DuplicateSet) and sorted into canonical order.
    """
    ground = GroundSet(ground_size)
    seen: dict[int, tuple[int, ...]] = {}
    for raw in sets:
        ms = MemberSet.of(raw)
        if ms.elements and ms.elements[-1] > ground_size:
            raise ElementOutOfRange(
                f"element {ms.elements[-1]} outside ground set of size {ground_size}"
            )
        if len(ms) > max_card:
            raise CardinalityExceeded(
                f"set {ms.elements} has {len(ms)} elements, max_card is {max_card}"
            )
        if ms.mask in seen:
            raise DuplicateSet(f"set {ms.elements} listed twice")
        seen[ms.mask] = ms.elements
    return SetFamily(ground, max_card, list(seen))


def select_intersecting(family: SetFamily, s) -> SetFamily:
    """Members meeting the probe set S in at least one element."""
    smask = family.probe_mask(s)
    keep = [m for m in family.masks if m & smask]
    return SetFamily(family.ground, family.max_card, keep, _sorted=True)


def select_by_intersection_size(family: SetFamily, s, j: int) -> SetFamily:
    """Members meeting the probe set S in exactly j elements."""
    if not isinstance(j, int) or j < 1:
        raise InvalidParams("intersection size j must be a positive integer")
    smask = family.probe_mask(s)
    sizes = kernels.intersection_sizes(family.packed(), smask)
    keep = [m for m, c in zip(family.masks, sizes) if c == j]
    return SetFamily(family.ground, family.max_card, keep, _sorted=True)


def select_supersets(family: SetFamily, s) -> SetFamily:
    """Members containing the probe set S."""
    smask = family.probe_mask(s)
    flags = kernels.superset_flags(family.packed(), smask)
    keep = [m for m, f in zip(family.masks, flags) if f]
    return SetFamily(family.ground, family.max_card, keep, _sorted=True)


def incidence_pairs(family: SetFamily, s) -> list[IncidencePair]:
    """All pairs (v, U) with v in U and S, member-major, elements ascending."""
    smask = family.probe_mask(s)
    pairs = []
    for i, m in enumerate(family.masks):
        for v in elements_of(m & smask):
            pairs.append(IncidencePair(v, i))
    return pairs
