"""Sunflower verification, extraction and augmentation.

A sunflower is a subfamily whose pairwise intersections all equal one
fixed core; a coreless sunflower is a pairwise-disjoint subfamily.  The
extractors are deterministic: every "choose any" step in the underlying
arguments is resolved by canonical order, so identical inputs always
give identical outputs.

``extract_er`` is the classic constructive recursion: take a greedy
maximal pairwise-disjoint subfamily; if it has k sets they are the
petals, otherwise recurse on the link of the most popular element with
the core extended by it.  It is guaranteed to succeed whenever
|F| > (k-1)^s * s! and may also succeed below that size.

``swap_augment`` and ``subset_augment`` turn the improvement arguments
behind the sharper bounds into unconditional search moves: they either
produce a strictly larger pairwise-disjoint subfamily or report that no
move of their shape applies.  No success is promised below the bound
hypotheses; the explicit ``None`` / BudgetExceeded outcomes keep that
honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import kernels
from .errors import (
    BudgetExceeded,
    EmptyFamily,
    IndexOutOfRange,
    InvalidParams,
    NotMaximal,
)
from .family import MemberSet, SetFamily, elements_of

SUBSET_BUDGET_DEFAULT = 10**6


@dataclass(frozen=True)
class Sunflower:
    """Core plus petal indices into a host family."""

    core: MemberSet
    petals: tuple[int, ...]


@dataclass(frozen=True)
class CorelessSunflower:
    """Pairwise-disjoint member indices; ``maximal`` is set only when no
    member of the host family is disjoint from the union."""

    members: tuple[int, ...]
    maximal: bool = False

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class TraceLevel:
    """One recursion level of the extraction: family size seen, greedy
    size found, and the popular element chosen (None at a dead end)."""

    family_size: int
    greedy_size: int
    chosen_element: int | None


@dataclass(frozen=True)
class ExtractionResult:
    sunflower: Sunflower | None
    trace: tuple = ()

    @property
    def outcome(self) -> str:
        return "found" if self.sunflower is not None else "exhausted"

    @property
    def found(self) -> bool:
        return self.sunflower is not None


def _validate_indices(family: SetFamily, members) -> list[int]:
    idx = list(members)
    if not idx:
        raise InvalidParams("member index list must be nonempty")
    for i in idx:
        family.check_index(i)
    if len(set(idx)) != len(idx):
        raise InvalidParams("member indices must be distinct")
    return idx


def common_core(family: SetFamily, members) -> MemberSet:
    """Intersection of the selected member sets."""
    idx = _validate_indices(family, members)
    core = family.masks[idx[0]]
    for i in idx[1:]:
        core &= family.masks[i]
    return MemberSet(elements_of(core))


def check_sunflower(family: SetFamily, members) -> tuple[bool, MemberSet | None]:
    """Whether every pairwise intersection equals the common core.

    A single member is vacuously a sunflower; its core is the set itself.
    """
    idx = _validate_indices(family, members)
    masks = [family.masks[i] for i in idx]
    core = masks[0]
    for m in masks[1:]:
        core &= m
    for a in range(len(masks)):
        for b in range(a + 1, len(masks)):
            if masks[a] & masks[b] != core:
                return False, None
    return True, MemberSet(elements_of(core))


def greedy_coreless(family: SetFamily) -> CorelessSunflower:
    """Greedy maximal pairwise-disjoint subfamily, scanned in canonical order.

    The result satisfies the cover property: every member of the family
    intersects the union of the kept sets.
    """
    if len(family) == 0:
        raise EmptyFamily("greedy_coreless needs a nonempty family")
    kept = kernels.greedy_disjoint(family.packed())
    return CorelessSunflower(tuple(kept), maximal=True)


def is_maximal(family: SetFamily, members) -> bool:
    """No member outside ``members`` is disjoint from their union."""
    idx = _validate_indices(family, members)
    union = family.union_mask(idx)
    return kernels.first_disjoint(family.packed(), union, frozenset(idx)) == -1


def _check_coreless(family: SetFamily, b: CorelessSunflower) -> list[int]:
    idx = _validate_indices(family, b.members)
    for a in range(len(idx)):
        for c in range(a + 1, len(idx)):
            if family.masks[idx[a]] & family.masks[idx[c]]:
                raise InvalidParams("members are not pairwise disjoint")
    return idx


def _require_maximal(family: SetFamily, b: CorelessSunflower) -> list[int]:
    idx = _check_coreless(family, b)
    union = family.union_mask(idx)
    if kernels.first_disjoint(family.packed(), union, frozenset(idx)) != -1:
        raise NotMaximal("a member of the family is disjoint from the union")
    return idx


def maximalize(family: SetFamily, members) -> CorelessSunflower:
    """Extend a pairwise-disjoint index set greedily until maximal."""
    idx = sorted(members)
    chosen = set(idx)
    union = family.union_mask(idx)
    packed = family.packed()
    while True:
        nxt = kernels.first_disjoint(packed, union, chosen)
        if nxt == -1:
            break
        chosen.add(nxt)
        union |= family.masks[nxt]
    return CorelessSunflower(tuple(sorted(chosen)), maximal=True)


def extract_er(family: SetFamily, k: int) -> ExtractionResult:
    """Constructive sunflower extraction by popular-element recursion.

    Ties in the popularity count go to the smallest element id; when
    the greedy disjoint family has more than k sets the first k in
    canonical order become the petals.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    if len(family) == 0:
        return ExtractionResult(None, ())
    if k == 1:
        return ExtractionResult(Sunflower(family.member(0), (0,)), ())

    trace: list[TraceLevel] = []
    current = list(enumerate(family.masks))  # (original index, working mask)
    core_mask = 0
    while True:
        masks = [m for _, m in current]
        packed = kernels.pack(masks)
        kept = kernels.greedy_disjoint(packed)
        if len(kept) >= k:
            petals = tuple(current[i][0] for i in kept[:k])
            core = MemberSet(elements_of(core_mask))
            trace.append(TraceLevel(len(current), len(kept), None))
            result = Sunflower(core, petals)
            ok, _ = check_sunflower(family, petals)
            assert ok, "extractor produced a non-sunflower"
            return ExtractionResult(result, tuple(trace))
        union = 0
        for i in kept:
            union |= masks[i]
        if union == 0:
            trace.append(TraceLevel(len(current), len(kept), None))
            return ExtractionResult(None, tuple(trace))
        counts = kernels.element_counts(packed, family.ground.size)
        best_v, best_c = 0, -1
        for v in elements_of(union):
            if counts[v - 1] > best_c:
                best_v, best_c = v, counts[v - 1]
        trace.append(TraceLevel(len(current), len(kept), best_v))
        bit = 1 << (best_v - 1)
        current = [(orig, m & ~bit) for orig, m in current if m & bit]
        core_mask |= bit


def swap_augment(family: SetFamily, b: CorelessSunflower) -> CorelessSunflower | None:
    """Try to grow a maximal coreless sunflower by one swap.

    Scans for a member B_i and a replacement B_i' that meets B_i in
    exactly one element and misses the rest of the union; if swapping
    them leaves some member of the family disjoint from the new union,
    that member joins and the enlarged subfamily (size r+1) is returned.
    Candidates are scanned in canonical order, so the result is
    deterministic.  Returns None when no swap helps.
    """
    idx = _require_maximal(family, b)
    masks = family.masks
    union = family.union_mask(idx)
    in_b = set(idx)
    n = len(family)
    for i in idx:
        bi = masks[i]
        rest = union & ~bi
        for cand in range(n):
            if cand == i or cand in in_b:
                continue
            m = masks[cand]
            if (m & bi).bit_count() != 1 or m & rest:
                continue
            new_union = rest | m
            for w in range(n):
                if w == cand or w in in_b:
                    continue
                if masks[w] & new_union == 0:
                    members = sorted((in_b - {i}) | {cand, w})
                    grown = CorelessSunflower(tuple(members), maximal=False)
                    _check_coreless(family, grown)
                    return CorelessSunflower(
                        tuple(members), maximal=is_maximal(family, members)
                    )
    return None


def subset_augment(
    family: SetFamily,
    b: CorelessSunflower,
    j: int,
    budget: int = SUBSET_BUDGET_DEFAULT,
    stats: dict | None = None,
) -> CorelessSunflower | None:
    """Try to grow a maximal coreless sunflower by replacing a whole block.

    For each nonempty sub-block B' of at most j members (ascending
    cardinality, canonical order) form H, the members meeting the union
    of B' in exactly j elements while missing the rest of B, and greedily
    look for |B'|+1 pairwise-disjoint sets inside H.  Any such sets are
    disjoint from B - B' by construction, so swapping them in enlarges
    the family by one.  Sub-blocks larger than j need not be examined:
    a member meeting the union in j elements meets at most j blocks.

    Enumeration stops with BudgetExceeded (distinct from None) once
    ``budget`` candidate sub-blocks have been examined without success
    while candidates remain.
    """
    if not isinstance(j, int) or not (1 <= j <= family.max_card):
        raise InvalidParams(f"j must be in [1, {family.max_card}]")
    idx = _require_maximal(family, b)
    masks = family.masks
    union = family.union_mask(idx)
    r = len(idx)
    max_block = min(j, r)
    examined = 0
    total_candidates = sum(comb(r, c) for c in range(1, max_block + 1))
    if stats is not None:
        stats["candidates_in_scope"] = total_candidates
        stats["skipped_oversize"] = (2**r - 1) - total_candidates
    for size in range(1, max_block + 1):
        for combo in combinations(idx, size):
            if examined >= budget:
                raise BudgetExceeded(
                    f"stopped after {examined} candidate sub-blocks (budget {budget})"
                )
            examined += 1
            bp_union = 0
            for i in combo:
                bp_union |= masks[i]
            rest = union & ~bp_union
            kept: list[int] = []
            kept_union = 0
            for u in range(len(family)):
                m = masks[u]
                if (m & bp_union).bit_count() != j or m & rest:
                    continue
                if m & kept_union == 0:
                    kept.append(u)
                    kept_union |= m
                    if len(kept) == size + 1:
                        break
            if len(kept) == size + 1:
                members = sorted((set(idx) - set(combo)) | set(kept))
                grown = CorelessSunflower(tuple(members), maximal=False)
                _check_coreless(family, grown)
                if stats is not None:
                    stats["examined"] = examined
                return CorelessSunflower(
                    tuple(members), maximal=is_maximal(family, members)
                )
    if stats is not None:
        stats["examined"] = examined
    return None


def extract_augmenting(
    family: SetFamily,
    k: int,
    j_max: int,
    budget: int = SUBSET_BUDGET_DEFAULT,
) -> ExtractionResult:
    """Grow coreless sunflowers by repeated swap and block augmentation.

    Starts from the greedy maximal family and alternates swap_augment
    with subset_augment for j = 1..j_max until k pairwise-disjoint
    members exist (returned as a sunflower with empty core) or no move
    applies.  Only empty-core sunflowers can be found this way.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    if not isinstance(j_max, int) or j_max < 1:
        raise InvalidParams("j_max must be a positive integer")
    if len(family) == 0:
        return ExtractionResult(None, ())
    b = greedy_coreless(family)
    steps: list[tuple[str, int]] = [("greedy", len(b))]
    while True:
        if len(b) >= k:
            petals = b.members[:k]
            ok, _ = check_sunflower(family, petals)
            assert ok, "disjoint members failed sunflower verification"
            return ExtractionResult(Sunflower(MemberSet(()), petals), tuple(steps))
        improved = swap_augment(family, b)
        move = "swap"
        if improved is None:
            for j in range(1, min(j_max, family.max_card) + 1):
                improved = subset_augment(family, b, j, budget=budget)
                if improved is not None:
                    move = f"subset-j{j}"
                    break
        if improved is None:
            return ExtractionResult(None, tuple(steps))
        _check_coreless(family, improved)
        b = maximalize(family, improved.members)
        steps.append((move, len(b)))
