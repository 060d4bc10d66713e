"""Max-plus style semirings, unitriangular matrices and the faithful image of styl_n.

Entries are Python ints; ``None`` is the tropical bottom (-inf). There is no
floating point anywhere, so matrix equality is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .stylic import NTableau
from .words import Alphabet, Word

TropValue = Optional[int]
BOTTOM: TropValue = None

KINDS = ("tropical", "nat_max", "truncated", "boolean")


@dataclass(frozen=True)
class SemiringKind:
    tag: str
    bound: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in KINDS:
            raise ValueError(f"unknown semiring {self.tag!r}")
        if self.tag == "truncated" and (self.bound is None or self.bound < 1):
            raise ValueError("truncated semiring needs a bound n >= 1")

    @property
    def zero(self) -> TropValue:
        return 0 if self.tag == "boolean" else BOTTOM

    @property
    def one(self) -> int:
        return 1 if self.tag == "boolean" else 0

    def add(self, x: TropValue, y: TropValue) -> TropValue:
        if x is None:
            return y
        if y is None:
            return x
        return x if x >= y else y

    def mul(self, x: TropValue, y: TropValue) -> TropValue:
        if self.tag == "boolean":
            return min(x, y)
        if x is None or y is None:
            return None
        if self.tag == "truncated":
            return min(x + y, self.bound)
        return x + y

    def __str__(self) -> str:
        return f"truncated({self.bound})" if self.tag == "truncated" else self.tag


TROPICAL = SemiringKind("tropical")
NAT_MAX = SemiringKind("nat_max")
BOOLEAN = SemiringKind("boolean")


def truncated(n: int) -> SemiringKind:
    return SemiringKind("truncated", n)


@dataclass(frozen=True)
class TropMatrix:
    entries: tuple[tuple[TropValue, ...], ...]
    kind: SemiringKind = TROPICAL

    def __post_init__(self) -> None:
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(len(r) != len(entries) for r in entries):
            raise ValueError("matrix must be square")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> TropValue:
        """1-based (i, j) access, matching the usual matrix convention."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __matmul__(self, other: TropMatrix) -> TropMatrix:
        return mat_mul(self, other)

    def is_unitriangular(self) -> bool:
        one, zero = self.kind.one, self.kind.zero
        return all(
            x == (one if i == j else zero) if i >= j else True
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def to_json(self) -> list[list[TropValue]]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        cells = [["-inf" if x is None else str(x) for x in r] for r in self.entries]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def identity(d: int, kind: SemiringKind = TROPICAL) -> TropMatrix:
    return TropMatrix(
        tuple(tuple(kind.one if i == j else kind.zero for j in range(d)) for i in range(d)),
        kind,
    )


def mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.kind != b.kind:
        raise ValueError(f"semiring mismatch: {a.kind} vs {b.kind}")
    kind = a.kind
    cols = list(zip(*b.entries))
    out = []
    for row in a.entries:
        new_row = []
        for col in cols:
            acc = kind.zero
            for x, y in zip(row, col):
                acc = kind.add(acc, kind.mul(x, y))
            new_row.append(acc)
        out.append(tuple(new_row))
    return TropMatrix(tuple(out), kind)


def rho_letter(x: int, n: int) -> TropMatrix:
    """(n+1)x(n+1) image of a letter: 0 on the diagonal, 1 where i <= n+1-x < j."""
    if not 1 <= x <= n:
        raise ValueError(f"letter {x} outside 1..{n}")
    xbar = n + 1 - x
    d = n + 1
    return TropMatrix(
        tuple(
            tuple(0 if i == j else (1 if i <= xbar < j else None) for j in range(1, d + 1))
            for i in range(1, d + 1)
        )
    )


def rho(w: Word | Sequence[int], n: int | None = None) -> TropMatrix:
    """Image of a word: the product of its letter matrices (identity for the empty word)."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    if n is None:
        if not isinstance(w, Word):
            raise TypeError("rank n is required for a bare letter sequence")
        n = w.rank
    d = n + 1
    m: list[list[TropValue]] = [[0 if i == j else None for j in range(d)] for i in range(d)]
    for x in letters:
        if not 1 <= x <= n:
            raise ValueError(f"letter {x} outside 1..{n}")
        # right-multiplying by the letter matrix only touches columns past xbar (0-based: >= c)
        c = n + 1 - x
        for row in m:
            best = None
            for v in row[:c]:
                if v is not None and (best is None or v > best):
                    best = v
            if best is None:
                continue
            best += 1
            for j in range(c, d):
                if row[j] is None or row[j] < best:
                    row[j] = best
    return TropMatrix(tuple(tuple(r) for r in m))


def truncate(x: TropMatrix, n: int) -> TropMatrix:
    """Entrywise min(x, n): the map into upper unitriangular matrices over [n]_max."""
    if x.dim != n + 1:
        raise ValueError(f"expected dimension {n + 1}, got {x.dim}")
    return TropMatrix(
        tuple(tuple(None if v is None else min(v, n) for v in r) for r in x.entries),
        truncated(n),
    )


def to_boolean(x: TropMatrix) -> TropMatrix:
    """Support pattern: bottom -> 0, finite -> 1. A semiring morphism from the tropical kinds."""
    return TropMatrix(
        tuple(tuple(0 if v is None else 1 for v in r) for r in x.entries), BOOLEAN
    )


def skew_transpose(x: TropMatrix) -> TropMatrix:
    """Reflection in the anti-diagonal: (x*)_{i,j} = x_{d+1-j, d+1-i}."""
    d = x.dim
    e = x.entries
    return TropMatrix(
        tuple(tuple(e[d - 1 - j][d - 1 - i] for j in range(d)) for i in range(d)), x.kind
    )


def decode_tableau(x: TropMatrix, n: int) -> NTableau:
    """Recover N(w) from rho(w).

    Letter a sits in row k iff some column j > abar has x[abar, j] = k and
    x[abar + 1, j] = k - 1, with abar = n + 1 - a. Only meaningful when ``x``
    really is an image of rho; other matrices give an unspecified result.
    """
    if x.dim != n + 1:
        raise ValueError(f"expected dimension {n + 1}, got {x.dim}")
    rows: list[list[int]] = [[] for _ in range(n)]
    for a in range(1, n + 1):
        abar = n + 1 - a
        upper, lower = x.entries[abar - 1], x.entries[abar]
        for k in range(1, n + 1):
            if any(
                upper[j - 1] == k and lower[j - 1] == k - 1 for j in range(abar + 1, n + 2)
            ):
                rows[k - 1].append(a)
    return NTableau(tuple(tuple(r) for r in rows if r), Alphabet(n))


def random_unitriangular(rng, d: int, bound: int, bottom_weight: float = 0.25) -> TropMatrix:
    """Unitriangular tropical matrix with integer entries in [-bound, bound] or bottom."""
    rows = []
    for i in range(d):
        row: list[TropValue] = []
        for j in range(d):
            if j < i:
                row.append(None)
            elif j == i:
                row.append(0)
            elif rng.random() < bottom_weight:
                row.append(None)
            else:
                row.append(rng.randint(-bound, bound))
        rows.append(tuple(row))
    return TropMatrix(tuple(rows))


def product(mats: Iterable[TropMatrix], d: int, kind: SemiringKind = TROPICAL) -> TropMatrix:
    out = identity(d, kind)
    for m in mats:
        out = mat_mul(out, m)
    return out
