"""The stylic monoid styl_n: N-tableaux, right N-insertion and finite enumeration."""

from __future__ import annotations

import bisect
import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .words import Alphabet, OversizedInputError, Word, complement_reverse, support

#: Enumeration is refused above this rank (|styl_n| grows like a Bell number).
MAX_ENUMERATION_RANK = 6


def _max_rank_default() -> int:
    env = os.environ.get("STYLIC_MAX_RANK")
    return int(env) if env else MAX_ENUMERATION_RANK


def _letters(w: Word | Sequence[int]) -> tuple[int, ...]:
    return w.letters if isinstance(w, Word) else tuple(w)


@dataclass(frozen=True)
class NTableau:
    """Rows are sorted letter tuples indexed bottom-up: ``rows[0]`` is row 1."""

    rows: tuple[tuple[int, ...], ...]
    alphabet: Alphabet

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for k, row in enumerate(rows):
            if not row:
                raise ValueError(f"row {k + 1} is empty")
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError(f"row {k + 1} is not strictly increasing: {row}")
            if any(a not in self.alphabet for a in row):
                raise ValueError(f"row {k + 1} has letters outside 1..{self.rank}")
            if k and not set(row) <= set(rows[k - 1]):
                raise ValueError(f"row {k + 1} is not contained in row {k}")

    @classmethod
    def empty(cls, rank: int) -> NTableau:
        return cls((), Alphabet(rank))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], rank: int) -> NTableau:
        return cls(tuple(tuple(sorted(r)) for r in rows), Alphabet(rank))

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def __len__(self) -> int:
        return len(self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        if not self.rows:
            return "(empty)"
        sep = "" if self.rank <= 9 else " "
        return "\n".join(sep.join(map(str, r)) for r in reversed(self.rows))


@dataclass(frozen=True)
class YoungTableau:
    """Semistandard tableau, rows weakly increasing, stored bottom-up."""

    rows: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in reversed(self.rows)) or "(empty)"


def bump(row: Sequence[int], a: int) -> int | None:
    """a^uparrow over ``row``: the smallest letter of a sorted row strictly greater than ``a``."""
    i = bisect.bisect_right(row, a)
    return row[i] if i < len(row) else None


def _insert_rows(rows: list[tuple[int, ...]], a: int) -> None:
    k = 0
    while True:
        if k == len(rows):
            rows.append((a,))
            return
        row = rows[k]
        i = bisect.bisect_left(row, a)
        present = i < len(row) and row[i] == a
        if not present:
            rows[k] = row[:i] + (a,) + row[i:]
        b_index = i + 1 if present else i
        if b_index == len(row):
            return
        # bumped letter stays in this row and moves up
        a = row[b_index]
        k += 1


def insert_letter(t: NTableau, a: int) -> NTableau:
    if a not in t.alphabet:
        raise ValueError(f"letter {a!r} outside 1..{t.rank}")
    rows = list(t.rows)
    _insert_rows(rows, a)
    return NTableau(tuple(rows), t.alphabet)


def tableau_rows(letters: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Rows of N(w) as bare tuples; skips the validation done by NTableau."""
    rows: list[tuple[int, ...]] = []
    for a in letters:
        _insert_rows(rows, a)
    return tuple(rows)


def n_tableau(w: Word | Sequence[int], rank: int | None = None) -> NTableau:
    """N(w), by right N-insertion of the letters of ``w`` from left to right."""
    letters = _letters(w)
    if rank is None:
        rank = w.rank if isinstance(w, Word) else max(letters, default=1)
    return NTableau(tableau_rows(letters), Alphabet(rank))


def insert_word(t: NTableau, w: Iterable[int]) -> NTableau:
    rows = list(t.rows)
    for a in w:
        _insert_rows(rows, a)
    return NTableau(tuple(rows), t.alphabet)


def delta(w: Word | Sequence[int]) -> Word | tuple[int, ...]:
    """delta(wa) = delta(w) . a^uparrow_{supp(w)}; the letter is dropped when nothing is bigger."""
    out = []
    seen: list[int] = []
    for a in _letters(w):
        b = bump(seen, a)
        if b is not None:
            out.append(b)
        i = bisect.bisect_left(seen, a)
        if i == len(seen) or seen[i] != a:
            seen.insert(i, a)
    if isinstance(w, Word):
        return Word(tuple(out), w.alphabet)
    return tuple(out)


def delta_power(w: Word | Sequence[int], k: int):
    for _ in range(k):
        w = delta(w)
    return w


def up_arrow(w: Word | Sequence[int], k: int, i: int) -> int | None:
    """The letter bumped into row k + 1 when the i-th letter (1-based) of ``w`` is inserted.

    None stands for the empty word: nothing gets that far.
    """
    letters = _letters(w)
    if not 1 <= i <= len(letters):
        raise IndexError(f"position {i} outside 1..{len(letters)}")
    if k < 1:
        raise ValueError("k must be >= 1")
    prefix = letters[:i]
    a: int | None = letters[i - 1]
    for level in range(1, k + 1):
        if a is None:
            return None
        a = bump(sorted(support(delta_power(prefix, level - 1))), a)
    return a


def stylic_equal(u: Word | Sequence[int], v: Word | Sequence[int]) -> bool:
    return tableau_rows(_letters(u)) == tableau_rows(_letters(v))


def canonical_word(t: NTableau) -> Word:
    """Rows read top to bottom, each left to right. N of the result is ``t`` again."""
    return Word(tuple(a for row in reversed(t.rows) for a in row), t.alphabet)


def multiply(s: NTableau, t: NTableau) -> NTableau:
    if s.alphabet != t.alphabet:
        raise ValueError("tableaux over different alphabets")
    return insert_word(s, canonical_word(t))


def absorbing(n: int) -> NTableau:
    """The zero of styl_n: row i holds {i, ..., n}."""
    return NTableau(tuple(tuple(range(i, n + 1)) for i in range(1, n + 1)), Alphabet(n))


def schensted(w: Word | Sequence[int]) -> YoungTableau:
    """P-symbol by classic row insertion (bumped letter leaves its row)."""
    rows: list[list[int]] = []
    for a in _letters(w):
        for row in rows:
            i = bisect.bisect_right(row, a)
            if i == len(row):
                row.append(a)
                break
            row[i], a = a, row[i]
        else:
            rows.append([a])
    return YoungTableau(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class MonoidTable:
    """A finite monoid given by its elements and Cayley table, with an involution."""

    rank: int
    elements: tuple[NTableau, ...]
    product: tuple[tuple[int, ...], ...]
    involution: tuple[int, ...]
    identity_index: int
    zero_index: int | None

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, t: NTableau) -> int:
        return self._lookup[t.rows]

    @cached_property
    def _lookup(self) -> dict[tuple[tuple[int, ...], ...], int]:
        return {e.rows: i for i, e in enumerate(self.elements)}

    def mul(self, i: int, j: int) -> int:
        return self.product[i][j]

    def element_of(self, w: Iterable[int]) -> int:
        return self.index(n_tableau(tuple(w), self.rank))


def enumerate_monoid(n: int, max_rank: int | None = None) -> MonoidTable:
    """Close {[e], [1], ..., [n]} under right multiplication by letters (BFS order)."""
    limit = _max_rank_default() if max_rank is None else max_rank
    if n > limit:
        raise OversizedInputError(f"rank {n} above enumeration guard {limit}")
    alphabet = Alphabet(n)
    start = NTableau.empty(n)
    index = {start.rows: 0}
    elements = [start]
    # action[i][a - 1]: index of element i times letter a
    action: list[list[int]] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        row = []
        for a in alphabet.letters():
            t = insert_letter(elements[i], a)
            j = index.get(t.rows)
            if j is None:
                j = index[t.rows] = len(elements)
                elements.append(t)
                queue.append(j)
            row.append(j)
        action.append(row)

    canon = [canonical_word(t).letters for t in elements]
    product = []
    for i in range(len(elements)):
        row = []
        for word in canon:
            j = i
            for a in word:
                j = action[j][a - 1]
            row.append(j)
        product.append(tuple(row))

    involution = tuple(
        index[n_tableau(complement_reverse(canonical_word(t))).rows] for t in elements
    )
    zero = index.get(absorbing(n).rows)
    return MonoidTable(n, tuple(elements), tuple(product), involution, 0, zero)


def is_j_trivial(m: MonoidTable) -> bool:
    """True iff distinct elements generate distinct two-sided ideals MxM."""
    size = len(m)
    seen = set()
    for x in range(size):
        left = {m.product[a][x] for a in range(size)}
        ideal = frozenset(m.product[y][b] for y in left for b in range(size))
        if ideal in seen:
            return False
        seen.add(ideal)
    return True


def is_associative(m: MonoidTable, triples: Iterable[tuple[int, int, int]] | None = None) -> bool:
    p = m.product
    if triples is None:
        size = range(len(m))
        triples = ((a, b, c) for a in size for b in size for c in size)
    return all(p[p[a][b]][c] == p[a][p[b][c]] for a, b, c in triples)
