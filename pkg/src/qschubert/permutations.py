"""Permutations of {1..n} in one-line notation.

Composition is right-to-left: ``u.compose(v)(i) == u(v(i))``.  Every product
such as w*w0 elsewhere in the package means ``w.compose(w0)``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _itertools_permutations


class Permutation(tuple):
    """A bijection of {1..n}, stored as its one-line notation."""

    def __new__(cls, values):
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"{vals} is not a permutation of 1..{len(vals)}")
        return super().__new__(cls, vals)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __repr__(self) -> str:
        return "Permutation(" + ",".join(map(str, self)) + ")"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def compose(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise ValueError(f"cannot compose permutations of S_{len(self)} and S_{len(other)}")
        return Permutation(self[v - 1] for v in other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    @property
    def length(self) -> int:
        """Number of inversions."""
        return sum(self.code)

    @property
    def code(self) -> tuple:
        """Lehmer code: entry k counts j > k with w(j) < w(k)."""
        return lehmer_code(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self, start=1))

    def descents(self) -> list[int]:
        return [i for i in range(1, len(self)) if self[i - 1] > self[i]]

    def reduced_word(self) -> list[int]:
        return reduced_word(self)

    def to_json(self) -> list[int]:
        return list(self)


def identity(n: int) -> Permutation:
    return Permutation(range(1, n + 1))


def longest_element(n: int) -> Permutation:
    return Permutation(range(n, 0, -1))


def simple(k: int, n: int) -> Permutation:
    """The transposition s_k = (k, k+1) in S_n."""
    if not 1 <= k < n:
        raise ValueError(f"s_{k} is not a simple reflection of S_{n}")
    vals = list(range(1, n + 1))
    vals[k - 1], vals[k] = vals[k], vals[k - 1]
    return Permutation(vals)


def compose(u: Permutation, v: Permutation) -> Permutation:
    return u.compose(v)


@lru_cache(maxsize=None)
def lehmer_code(w: tuple) -> tuple:
    n = len(w)
    return tuple(sum(1 for j in range(k + 1, n) if w[j] < w[k]) for k in range(n))


@lru_cache(maxsize=None)
def _reduced_word(w: tuple) -> tuple:
    cur = list(w)
    rev = []
    while True:
        for i in range(len(cur) - 1):
            if cur[i] > cur[i + 1]:
                break
        else:
            break
        # leftmost descent at position i+1: w = (w s_{i+1}) s_{i+1}
        cur[i], cur[i + 1] = cur[i + 1], cur[i]
        rev.append(i + 1)
    return tuple(reversed(rev))


def reduced_word(w: Permutation) -> list[int]:
    """Indices [i1, ..., il] with w = s_{i1} s_{i2} ... s_{il} and l = length(w).

    Peels the leftmost descent off the right end until the identity remains.
    """
    return list(_reduced_word(tuple(w)))


def from_word(word, n: int) -> Permutation:
    w = identity(n)
    for i in word:
        w = w.compose(simple(i, n))
    return w


def from_code(code) -> Permutation:
    """Inverse of the Lehmer code."""
    n = len(code)
    avail = list(range(1, n + 1))
    out = []
    for c in code:
        if not 0 <= c < len(avail):
            raise ValueError(f"{tuple(code)} is not a Lehmer code")
        out.append(avail.pop(c))
    return Permutation(out)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple:
    """S_n sorted by (length, one-line notation)."""
    perms = [Permutation(p) for p in _itertools_permutations(range(1, n + 1))]
    return tuple(sorted(perms, key=lambda w: (w.length, tuple(w))))


def parse_permutation(text: str) -> Permutation:
    """Parse ``"2,1,3"``, ``"[2,1,3]"`` or ``"213"`` (single digits)."""
    s = text.strip().strip("[]()")
    if "," in s:
        vals = [int(p) for p in s.split(",") if p.strip()]
    elif " " in s:
        vals = [int(p) for p in s.split()]
    else:
        vals = [int(ch) for ch in s]
    if not vals:
        raise ValueError("empty permutation")
    return Permutation(vals)
