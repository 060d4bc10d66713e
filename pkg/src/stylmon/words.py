"""Words over a ranked ordered alphabet {1 < 2 < ... < n}, plus brute-force oracles.

The oracles here (band-restricted decreasing subsequences, k-spectra) are
deliberately naive; the faster machinery elsewhere is checked against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

#: Exhaustive oracles refuse words longer than this unless told otherwise.
MAX_ORACLE_LENGTH = 12


class OversizedInputError(ValueError):
    """An exhaustive routine was asked to work on an input above its guard."""


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"alphabet rank must be >= 1, got {self.rank}")

    def __contains__(self, letter: object) -> bool:
        return isinstance(letter, int) and 1 <= letter <= self.rank

    def complement(self, letter: int) -> int:
        """The order-reversing image n + 1 - x of a letter."""
        return self.rank + 1 - letter

    def letters(self) -> range:
        return range(1, self.rank + 1)


@dataclass(frozen=True)
class Word:
    """An immutable word over ``alphabet``. Behaves like a tuple of ints."""

    letters: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} outside 1..{self.alphabet.rank}")

    @classmethod
    def of(cls, letters: Iterable[int], rank: int) -> Word:
        return cls(tuple(letters), Alphabet(rank))

    @classmethod
    def parse(cls, text: str, rank: int) -> Word:
        return cls(parse_letters(text), Alphabet(rank))

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.alphabet)
        return self.letters[index]

    def __add__(self, other: Word) -> Word:
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.alphabet)

    def prefix(self, i: int) -> Word:
        """w_{<=i}: the first ``i`` letters."""
        return Word(self.letters[:i], self.alphabet)

    def __str__(self) -> str:
        return format_letters(self.letters, self.rank)


def parse_letters(text: str) -> tuple[int, ...]:
    """Digit string ("4213"), comma list ("10,2,3"), or "" / "e" for the empty word."""
    text = text.strip()
    if text in ("", "e", "ε"):
        return ()
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    if not text.isdigit():
        raise ValueError(f"not a word: {text!r}")
    return tuple(int(c) for c in text)


def format_letters(letters: Sequence[int], rank: int | None = None) -> str:
    if not letters:
        return "e"
    if (rank if rank is not None else max(letters)) <= 9:
        return "".join(map(str, letters))
    return ",".join(map(str, letters))


def support(w: Iterable[int]) -> frozenset[int]:
    return frozenset(w)


def is_subsequence(u: Iterable[int], w: Iterable[int]) -> bool:
    it = iter(w)
    # `in` on an iterator consumes it up to the match: greedy left-to-right.
    return all(a in it for a in u)


def complement_reverse(w: Word) -> Word:
    """Anti-automorphism induced by x -> n + 1 - x: reverse, then complement letterwise."""
    n = w.rank
    return Word(tuple(n + 1 - a for a in reversed(w.letters)), w.alphabet)


def longest_decreasing_in_band(w: Iterable[int], lo: int, hi: int) -> int | None:
    """Longest strictly decreasing subsequence using only letters in [lo, hi].

    Returns None (not 0) when no letter of ``w`` lies in the band.
    """
    if lo > hi:
        raise ValueError(f"empty band: lo={lo} > hi={hi}")
    # best[a - lo]: longest run seen so far that ends in letter a
    best = [0] * (hi - lo + 1)
    seen = False
    for a in w:
        if lo <= a <= hi:
            seen = True
            i = a - lo
            longer = max(best[i + 1:], default=0) + 1
            if longer > best[i]:
                best[i] = longer
    return max(best) if seen else None


def k_spectrum(
    w: Sequence[int], k: int, max_length: int = MAX_ORACLE_LENGTH
) -> frozenset[tuple[int, ...]]:
    """All distinct subsequences of ``w`` of length 0..k, by enumerating index sets."""
    letters = tuple(w)
    if len(letters) > max_length:
        raise OversizedInputError(
            f"k_spectrum is exhaustive; |w| = {len(letters)} exceeds {max_length}"
        )
    out = {()}
    for m in range(1, min(k, len(letters)) + 1):
        for idx in combinations(range(len(letters)), m):
            out.add(tuple(letters[i] for i in idx))
    return frozenset(out)


def sorted_spectrum(spectrum: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Canonical (shortlex) listing of a spectrum, for stable display and comparison."""
    return sorted(spectrum, key=lambda u: (len(u), u))


def all_words(alphabet_size: int, max_length: int, min_length: int = 0) -> Iterator[tuple[int, ...]]:
    """Every word over {1..alphabet_size} with length in [min_length, max_length], shortlex."""
    for m in range(min_length, max_length + 1):
        yield from product(range(1, alphabet_size + 1), repeat=m)
