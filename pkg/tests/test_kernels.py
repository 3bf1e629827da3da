from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfkit import _kernels_py

compiled = pytest.importorskip("sfkit._kernels", reason="compiled kernels not built")


masks_strategy = st.lists(st.integers(0, 2**128 - 1), min_size=0, max_size=40)
small_masks = st.lists(st.integers(0, 2**16 - 1), min_size=0, max_size=14)


class TestBackendParity:
    @settings(max_examples=150, deadline=None)
    @given(masks_strategy)
    def test_greedy(self, masks):
        assert _kernels_py.greedy_disjoint(_kernels_py.pack(masks)) == compiled.greedy_disjoint(
            compiled.pack(masks)
        )

    @settings(max_examples=150, deadline=None)
    @given(masks_strategy, st.integers(0, 2**128 - 1), st.sets(st.integers(0, 39)))
    def test_first_disjoint(self, masks, union, skip):
        assert _kernels_py.first_disjoint(
            _kernels_py.pack(masks), union, skip
        ) == compiled.first_disjoint(compiled.pack(masks), union, skip)

    @settings(max_examples=150, deadline=None)
    @given(masks_strategy, st.integers(0, 2**128 - 1))
    def test_intersection_sizes(self, masks, smask):
        assert _kernels_py.intersection_sizes(
            _kernels_py.pack(masks), smask
        ) == compiled.intersection_sizes(compiled.pack(masks), smask)

    @settings(max_examples=150, deadline=None)
    @given(masks_strategy, st.integers(0, 2**128 - 1))
    def test_superset_flags(self, masks, smask):
        assert _kernels_py.superset_flags(
            _kernels_py.pack(masks), smask
        ) == compiled.superset_flags(compiled.pack(masks), smask)

    @settings(max_examples=150, deadline=None)
    @given(masks_strategy)
    def test_element_counts(self, masks):
        assert _kernels_py.element_counts(
            _kernels_py.pack(masks), 128
        ) == compiled.element_counts(compiled.pack(masks), 128)

    @settings(max_examples=200, deadline=None)
    @given(small_masks, st.integers(1, 5))
    def test_find_k_sunflower(self, masks, k):
        masks = sorted(set(masks))
        assert _kernels_py.find_k_sunflower(
            _kernels_py.pack(masks), k
        ) == compiled.find_k_sunflower(compiled.pack(masks), k)


class TestAgainstDefinition:
    @settings(max_examples=200, deadline=None)
    @given(small_masks, st.integers(2, 4))
    def test_find_matches_exhaustive_definition(self, masks, k):
        masks = sorted(set(masks))
        found = _kernels_py.find_k_sunflower(_kernels_py.pack(masks), k)
        exists = False
        for combo in combinations(range(len(masks)), k):
            core = masks[combo[0]]
            for i in combo[1:]:
                core &= masks[i]
            if all(masks[a] & masks[b] == core for a, b in combinations(combo, 2)):
                exists = True
                break
        assert (found is not None) == exists
        if found is not None:
            core = masks[found[0]]
            for i in found[1:]:
                core &= masks[i]
            assert all(masks[a] & masks[b] == core for a, b in combinations(found, 2))

    @settings(max_examples=150, deadline=None)
    @given(masks_strategy)
    def test_greedy_is_maximal_and_disjoint(self, masks):
        kept = _kernels_py.greedy_disjoint(_kernels_py.pack(masks))
        union = 0
        for i in kept:
            assert masks[i] & union == 0
            union |= masks[i]
        for i, m in enumerate(masks):
            if i not in kept:
                assert m & union != 0
