"""Circular words over the alphabet {0, ..., k-1} and their circular factor complexity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Letters = tuple[int, ...]

# Above this many slots, window codes are hashed instead of marked in a bytearray.
_DIRECT_INDEX_LIMIT = 1 << 16


def ilog(x: int, k: int) -> int:
    """Return floor(log_k x) for integers x >= 1, k >= 2, without floating point."""
    if k < 2:
        raise ValueError(f"base must be >= 2, got {k}")
    if x < 1:
        raise ValueError(f"argument must be >= 1, got {x}")
    r, power = 0, k
    while power <= x:
        r += 1
        power *= k
    return r


@dataclass(frozen=True)
class CircularWord:
    """A word of length N over {0, ..., k-1}, read with wrap-around.

    Equality is plain sequence equality; use :func:`canonical_rotation` to compare
    words up to cyclic shift.
    """

    letters: Letters
    k: int = 2

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.k}")
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("a circular word must have length >= 1")
        for a in letters:
            if not 0 <= a < self.k:
                raise ValueError(f"letter {a} outside alphabet of size {self.k}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_string(cls, text: str, k: int | None = None) -> CircularWord:
        return parse_word(text, k)

    @classmethod
    def from_packed(cls, bits: int, length: int) -> CircularWord:
        """Binary word whose first letter is the most significant of ``length`` bits."""
        if not 1 <= length <= 64:
            raise ValueError("packed words must have length 1..64")
        return cls(tuple((bits >> (length - 1 - i)) & 1 for i in range(length)), 2)

    def packed(self) -> int:
        if self.k != 2 or len(self) > 64:
            raise ValueError("packed form only exists for binary words of length <= 64")
        value = 0
        for a in self.letters:
            value = (value << 1) | a
        return value

    @property
    def N(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self) -> str:
        return format_word(self.letters, self.k)

    def rotate(self, j: int) -> CircularWord:
        j %= len(self.letters)
        return CircularWord(self.letters[j:] + self.letters[:j], self.k)


def format_word(letters: Sequence[int], k: int) -> str:
    if k <= 10:
        return "".join(str(a) for a in letters)
    return ",".join(str(a) for a in letters)


def parse_word(text: str, k: int | None = None) -> CircularWord:
    """Parse a digit string (k <= 10) or a comma-separated list of letters.

    When ``k`` is omitted it is inferred as one more than the largest letter,
    but never less than 2.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty word")
    try:
        if "," in text:
            letters = tuple(int(part) for part in text.split(","))
        else:
            if k is not None and k > 10:
                raise ValueError(f"words over {k} letters must be comma-separated")
            letters = tuple(int(ch) for ch in text)
    except ValueError as exc:
        raise ValueError(f"malformed word {text!r}: {exc}") from None
    if any(a < 0 for a in letters):
        raise ValueError(f"malformed word {text!r}: negative letter")
    if k is None:
        k = max(2, max(letters) + 1)
    return CircularWord(letters, k)


def rotations(w: CircularWord) -> list[CircularWord]:
    return [w.rotate(j) for j in range(len(w))]


def conjugates(w: CircularWord) -> set[CircularWord]:
    """The set C(w) of all cyclic shifts of ``w``."""
    return set(rotations(w))


def least_rotation_index(s: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    doubled = list(s) + list(s)
    fail = [-1] * len(doubled)
    best = 0
    for j in range(1, len(doubled)):
        c = doubled[j]
        i = fail[j - best - 1]
        while i != -1 and c != doubled[best + i + 1]:
            if c < doubled[best + i + 1]:
                best = j - i - 1
            i = fail[i]
        if c != doubled[best + i + 1]:
            if c < doubled[best]:
                best = j
            fail[j - best] = -1
        else:
            fail[j - best] = i + 1
    return best


def canonical_rotation(w: CircularWord) -> CircularWord:
    """Lexicographically least rotation of ``w``."""
    return w.rotate(least_rotation_index(w.letters))


def _window_codes(letters: Sequence[int], k: int, i: int) -> Iterable[int]:
    """Base-k values of the N circular windows of length i."""
    n = len(letters)
    modulus = k**i
    code = 0
    for a in letters[: i - 1] if i else ():
        code = code * k + a
    for start in range(n):
        if i == 0:
            yield 0
            continue
        code = (code * k + letters[(start + i - 1) % n]) % modulus
        yield code


def _count_distinct(letters: Sequence[int], k: int, i: int) -> int:
    slots = k**i
    if slots <= _DIRECT_INDEX_LIMIT:
        marks = bytearray(slots)
        count = 0
        for code in _window_codes(letters, k, i):
            if not marks[code]:
                marks[code] = 1
                count += 1
        return count
    return len(set(_window_codes(letters, k, i)))


def _check_length(w: CircularWord, i: int) -> None:
    if not 0 <= i <= len(w):
        raise ValueError(f"factor length {i} outside 0..{len(w)}")


def circular_factors(w: CircularWord, i: int) -> set[Letters]:
    """All distinct length-``i`` factors of ``w`` read circularly."""
    _check_length(w, i)
    doubled = w.letters + w.letters
    return {doubled[j : j + i] for j in range(len(w))}


def gamma(w: CircularWord, i: int) -> int:
    """Number of distinct circular factors of length ``i``."""
    _check_length(w, i)
    return _count_distinct(w.letters, w.k, i)


@dataclass(frozen=True)
class GammaProfile:
    values: tuple[int, ...]
    k: int

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def upper_bounds(self) -> tuple[int, ...]:
        return tuple(min(self.k**i, self.N) for i in range(self.N + 1))

    def is_maximal(self) -> bool:
        return self.values == self.upper_bounds()

    def missing(self) -> list[int]:
        """Lengths i at which the profile falls short of min(k^i, N)."""
        return [i for i, (g, b) in enumerate(zip(self.values, self.upper_bounds())) if g < b]


def gamma_profile(w: CircularWord) -> GammaProfile:
    return GammaProfile(tuple(gamma(w, i) for i in range(len(w) + 1)), w.k)


def is_generalized_de_bruijn(w: CircularWord, cross_check: bool = False) -> bool:
    """True iff gamma_i(w) = min(k^i, N) for every i.

    Only lengths r and r+1 are inspected, r = floor(log_k N); that pair decides
    the full profile. ``cross_check`` recomputes the whole profile and raises
    ``AssertionError`` if the two answers differ.
    """
    n, k = len(w), w.k
    r = ilog(n, k)
    verdict = _count_distinct(w.letters, k, r) == k**r and _count_distinct(w.letters, k, r + 1) == n
    if cross_check:
        full = gamma_profile(w).is_maximal()
        if full != verdict:
            raise AssertionError(f"two-length check disagrees with full profile on {w}")
    return verdict


def is_generalized_de_bruijn_by_definition(w: CircularWord) -> bool:
    return gamma_profile(w).is_maximal()


def factor_sum(w: CircularWord) -> int:
    return sum(gamma_profile(w).values)


def expected_factor_sum(N: int, k: int) -> int:
    """Total circular factor count of any generalized de Bruijn word of length N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    r = ilog(N, k)
    return (k ** (r + 1) - 1) // (k - 1) + N * (N - r)


def relabel(w: CircularWord, permutation: Sequence[int]) -> CircularWord:
    return CircularWord(tuple(permutation[a] for a in w.letters), w.k)
