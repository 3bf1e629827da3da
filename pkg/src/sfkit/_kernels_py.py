"""Pure-Python set kernels.

Reference implementation of the hot primitives over bit-mask families.
A member set is one Python int whose bit v-1 stands for element v; the
ground cap of 128 elements keeps every intersection test a single
big-int AND.  The compiled twin in ``_kernels.pyx`` implements the same
functions over split 64-bit words; ``sfkit.kernels`` picks one at
import time.
"""

BACKEND = "python"


def pack(masks):
    return list(masks)


def greedy_disjoint(packed):
    """Indices kept by the greedy pairwise-disjoint scan, in scan order."""
    union = 0
    kept = []
    for i, m in enumerate(packed):
        if m & union == 0:
            kept.append(i)
            union |= m
    return kept


def first_disjoint(packed, union, skip):
    """First index whose mask misses ``union`` and is not in ``skip``, else -1."""
    for i, m in enumerate(packed):
        if m & union == 0 and i not in skip:
            return i
    return -1


def intersection_sizes(packed, smask):
    return [(m & smask).bit_count() for m in packed]


def superset_flags(packed, smask):
    return [(m & smask) == smask for m in packed]


def element_counts(packed, ground_size):
    """How many member sets contain each element, indexed by element-1."""
    counts = [0] * ground_size
    for m in packed:
        while m:
            low = m & -m
            counts[low.bit_length() - 1] += 1
            m ^= low
    return counts


def find_k_sunflower(packed, k):
    """Lexicographically least k-subset with all pairwise intersections equal.

    Exhaustive backtracking grouped by candidate core: once two petals fix
    the core, every later petal must intersect each chosen one in exactly
    that core.  Returns a tuple of indices or None.
    """
    n = len(packed)
    if k == 1:
        return (0,) if n >= 1 else None
    if n < k:
        return None
    prefix = []

    def extend(start, core):
        if len(prefix) == k:
            return True
        need = k - len(prefix)
        for j in range(start, n - need + 1):
            mj = packed[j]
            if len(prefix) == 1:
                prefix.append(j)
                if extend(j + 1, packed[prefix[0]] & mj):
                    return True
                prefix.pop()
            else:
                if all((packed[t] & mj) == core for t in prefix):
                    prefix.append(j)
                    if extend(j + 1, core):
                        return True
                    prefix.pop()
        return False

    for i in range(n - k + 1):
        prefix = [i]
        if extend(i + 1, 0):
            return tuple(prefix)
    return None
