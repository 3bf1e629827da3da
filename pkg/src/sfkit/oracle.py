"""Ground-truth brute force at desk scale.

``brute_force_find_sunflower`` settles k-sunflower existence by
exhaustive backtracking (no budget: a ``None`` answer is a proof for
the given family).  ``max_sunflower_free`` runs a branch-and-bound over
all families of bounded-cardinality subsets of a small ground set to
find the largest k-sunflower-free one.  Everything the rest of the
package labels "derived" is ultimately checked against these two.

Branch-and-bound notes: candidates enter in canonical order, so each
family is generated once; the first chosen set may further be
restricted to the prefix sets {1..c} because any family can be
relabeled so its canonically-least member (which has minimum
cardinality) becomes one, which prunes a symmetry factor off the root.
Soundness of the pruning is what the permutation-invariance test
exercises.  Feasibility is checked incrementally and exactly: adding a
set can only create sunflowers that contain it, and those are searched
for directly over the cached pairwise cores.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import kernels
from .engine import Sunflower, check_sunflower
from .errors import CombinatorialBlowup, InvalidParams
from .family import GROUND_CAP, GroundSet, SetFamily, mask_of

BRUTE_FORCE_CAP = 10**8


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 10**9
    max_seconds: float = float("inf")

    def __post_init__(self):
        if self.max_nodes <= 0 or not self.max_seconds > 0:
            raise InvalidParams("budget limits must be positive")


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of one extremal search; ``exhaustive`` is True only when
    the search space was fully explored within budget."""

    k: int
    s: int
    ground_size: int
    allow_empty: bool
    max_size: int
    witness: SetFamily
    exhaustive: bool
    nodes: int


def brute_force_find_sunflower(family: SetFamily, k: int) -> Sunflower | None:
    """Exhaustive k-sunflower search; None means none exists, full stop."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    n = len(family)
    if n == 0:
        return None
    if comb(n, k) > BRUTE_FORCE_CAP:
        raise CombinatorialBlowup(
            f"C({n},{k}) exceeds the {BRUTE_FORCE_CAP} enumeration cap; shrink the instance"
        )
    petals = kernels.find_k_sunflower(family.packed(), k)
    if petals is None:
        return None
    ok, core = check_sunflower(family, petals)
    assert ok, "brute-force search returned a non-sunflower"
    return Sunflower(core, tuple(petals))


def _extends_to_sunflower(pair_cores, new_cores, k: int) -> bool:
    """Would a set with the given cores against the current family close
    a k-sunflower?  ``pair_cores[b][a]`` is the core of members a < b."""
    need = k - 1
    if need == 0:
        return True
    m = len(new_cores)
    if m < need:
        return False
    chosen: list[int] = []

    def rec(start: int, core) -> bool:
        if len(chosen) == need:
            return True
        for j in range(start, m - (need - len(chosen)) + 1):
            if not chosen:
                chosen.append(j)
                if rec(j + 1, new_cores[j]):
                    return True
                chosen.pop()
            elif new_cores[j] == core and all(pair_cores[j][t] == core for t in chosen):
                chosen.append(j)
                if rec(j + 1, core):
                    return True
                chosen.pop()
        return False

    return rec(0, None)


def _pool(s: int, ground_size: int, allow_empty: bool, permutation) -> tuple[list, list]:
    subs: list[tuple[int, ...]] = [()] if allow_empty else []
    for c in range(1, min(s, ground_size) + 1):
        subs.extend(combinations(range(1, ground_size + 1), c))
    subs.sort()
    if permutation is None:
        masks = [mask_of(t) for t in subs]
    else:
        perm = tuple(permutation)
        if sorted(perm) != list(range(1, ground_size + 1)):
            raise InvalidParams("permutation must rearrange 1..ground_size")
        masks = [mask_of(perm[v - 1] for v in t) for t in subs]
    return subs, masks


def max_sunflower_free(
    k: int,
    s: int,
    ground_size: int,
    allow_empty: bool = True,
    budget: OracleBudget | None = None,
    permutation=None,
    symmetry: bool = True,
) -> ExtremalResult:
    """Largest k-sunflower-free family of subsets of [ground_size] with
    cardinality at most s.

    ``permutation`` relabels the candidate pool before the search.  The
    pool itself is closed under relabeling, so only the exploration
    order changes; the resulting max_size must not.  ``symmetry=False``
    disables the first-member orbit restriction, giving a slower but
    restriction-free run to cross-check against.
    """
    if not isinstance(k, int) or k < 2:
        raise InvalidParams("k must be an integer >= 2")
    if not isinstance(s, int) or s < 1:
        raise InvalidParams("s must be a positive integer")
    if not isinstance(ground_size, int) or not (1 <= ground_size <= GROUND_CAP):
        raise InvalidParams(f"ground_size must be in [1, {GROUND_CAP}]")
    budget = budget or OracleBudget()

    subs, masks = _pool(s, ground_size, allow_empty, permutation)
    n_pool = len(masks)
    if symmetry:
        first_allowed = [i for i, t in enumerate(subs) if t == tuple(range(1, len(t) + 1))]
    else:
        first_allowed = list(range(n_pool))

    cur_masks: list[int] = []
    pair_cores: list[list[int]] = []
    chosen: list[int] = []

    def push(c: int) -> None:
        x = masks[c]
        pair_cores.append([x & m for m in cur_masks])
        cur_masks.append(x)
        chosen.append(c)

    def pop() -> None:
        pair_cores.pop()
        cur_masks.pop()
        chosen.pop()

    def creates(c: int) -> bool:
        x = masks[c]
        return _extends_to_sunflower(pair_cores, [x & m for m in cur_masks], k)

    # greedy seed for the incumbent
    for c in range(n_pool):
        if not creates(c):
            push(c)
    best = list(chosen)
    while chosen:
        pop()

    nodes = 0
    truncated = False
    deadline = time.monotonic() + budget.max_seconds

    def dfs(start: int) -> None:
        nonlocal nodes, truncated, best
        if len(chosen) > len(best):
            best = list(chosen)
        candidates = first_allowed if not chosen else range(start, n_pool)
        for c in candidates:
            if len(chosen) + (n_pool - c) <= len(best):
                break
            nodes += 1
            if nodes > budget.max_nodes or (nodes % 4096 == 0 and time.monotonic() > deadline):
                truncated = True
                return
            if not creates(c):
                push(c)
                dfs(c + 1)
                pop()
            if truncated:
                return

    dfs(0)

    witness = SetFamily(GroundSet(ground_size), s, [masks[i] for i in best])
    assert brute_force_find_sunflower(witness, k) is None, "witness failed re-verification"
    return ExtremalResult(
        k=k, s=s, ground_size=ground_size, allow_empty=allow_empty,
        max_size=len(best), witness=witness, exhaustive=not truncated, nodes=nodes,
    )


@dataclass(frozen=True)
class TightnessReport:
    """Oracle maximum joined with the bound values at the same (k, s)."""

    k: int
    s: int
    ground_size: int
    with_empty: ExtremalResult
    without_empty: ExtremalResult
    phi0_exact: int
    phi1_log: float
    phi2_star_log: float
    phi2_user_log: float | None
    epsilon_star: float
    max_over_phi0: float
    max_le_phi0: bool


def verify_tightness(
    k: int,
    s: int,
    ground_size: int,
    epsilon: float | None = None,
    budget: OracleBudget | None = None,
) -> TightnessReport:
    """Run the extremal search both with and without the empty set and
    report the maximum against phi0/phi1/phi2."""
    from . import bounds

    with_empty = max_sunflower_free(k, s, ground_size, True, budget)
    without_empty = max_sunflower_free(k, s, ground_size, False, budget)
    p0 = bounds.phi0(k, s)
    lv1 = bounds.phi1(k, s)
    consts = bounds.derive_constants(k, s)
    eps_star = float(consts.epsilon_star)
    lv2_star = bounds.phi2(k, s, eps_star)
    lv2_user = bounds.phi2(k, s, epsilon) if epsilon is not None else None
    biggest = max(with_empty.max_size, without_empty.max_size)
    return TightnessReport(
        k=k, s=s, ground_size=ground_size,
        with_empty=with_empty, without_empty=without_empty,
        phi0_exact=p0,
        phi1_log=float(lv1.log_value),
        phi2_star_log=float(lv2_star.log_value),
        phi2_user_log=float(lv2_user.log_value) if lv2_user is not None else None,
        epsilon_star=eps_star,
        max_over_phi0=biggest / p0,
        max_le_phi0=biggest <= p0,
    )
