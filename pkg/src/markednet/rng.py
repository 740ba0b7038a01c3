"""Counter-based SplitMix64 generator.

Output ``k`` of the stream with seed ``s`` is ``mix64(s + (k + 1) * GOLDEN)``
(all arithmetic mod 2**64), where ``mix64`` is the SplitMix64 finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

A uniform double is ``(out >> 11) * 2**-53``. Because every output is a
pure function of ``(seed, k)``, sampling loops can be split across workers
without changing results. Per-sample substreams use ``substream(seed, i)``,
the stream seeded with output ``i`` of the parent stream.
"""

from fractions import Fraction

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
MASK = (1 << 64) - 1


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def splitmix64(seed, k):
    return mix64((seed + (k + 1) * GOLDEN) & MASK)


class SplitMix64:
    def __init__(self, seed):
        self.seed = seed & MASK
        self.counter = 0

    def next_u64(self):
        out = splitmix64(self.seed, self.counter)
        self.counter += 1
        return out

    def random(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def randbelow(self, n):
        """Unbiased integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def randint(self, lo, hi):
        """Integer in ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def bernoulli(self, p):
        return self.random() < p

    def unit_fraction(self, bits=20):
        """Exact rational uniform on the grid ``{0, 1/2**bits, ..., 1}``."""
        return Fraction(self.randbelow((1 << bits) + 1), 1 << bits)

    def rational(self, lo, hi, denominators=(1, 2, 3, 4, 5, 6, 7, 8)):
        """Random rational in ``[lo, hi]`` with a small denominator."""
        q = self.choice(denominators)
        return Fraction(self.randint(lo * q, hi * q), q)


def substream(seed, index):
    return SplitMix64(splitmix64(seed & MASK, index))


def uniform_array(seed, start, count):
    """Outputs ``start .. start+count-1`` of the stream as doubles in [0, 1)."""
    k = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed & MASK) + (k + np.uint64(1)) * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53
