"""Seeded, portable pseudo-random generator.

SplitMix64 (Steele, Lea and Flood, "Fast splittable pseudorandom number
generators", OOPSLA 2014).  The state advances by the odd constant
0x9E3779B97F4A7C15 and the output is the state scrambled by two
xorshift-multiply rounds.  The algorithm fits on one screen, so a
reimplementation in any language reproduces the streams bit for bit;
that is the property reproducer files rely on.

Bounded draws use rejection below the largest multiple of the bound, so
they are also exactly reproducible (no floating point involved).
"""

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; same seed, same stream, any platform."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def sample_distinct(self, n: int, j: int) -> tuple[int, ...]:
        """j distinct integers from [1, n], sorted ascending."""
        if j > n:
            raise ValueError("cannot sample more distinct values than exist")
        picked: set[int] = set()
        while len(picked) < j:
            picked.add(1 + self.randrange(n))
        return tuple(sorted(picked))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
