"""Identity checking for styl_n via Simon's congruence, with brute-force oracles.

Two words are k-equivalent when they have the same subsequences of length at
most k. An identity u = v holds in styl_n exactly when u and v are
n-equivalent, so checking reduces to comparing states of subsequence automata.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Hashable, NamedTuple, Sequence

import numpy as np

from .stylic import MonoidTable, NTableau, canonical_word, n_tableau
from .tropical import TropMatrix, identity as identity_matrix, mat_mul, random_unitriangular, skew_transpose
from .words import Word

#: brute_force_check refuses identities needing more assignments than this.
BRUTE_FORCE_BUDGET = 10**6
SEARCH_BUDGET = 10**5
SEARCH_ENTRY_BOUND = 3
SEARCH_SEED = 0

# Below this combined length the pure-Python refinement beats numpy's per-call overhead.
_NUMPY_THRESHOLD = 256


class IdentityParseError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    pass


class Var(NamedTuple):
    name: str
    star: bool = False

    def __str__(self) -> str:
        return self.name + ("*" if self.star else "")

    def starred(self) -> Var:
        return Var(self.name, not self.star)


VarWord = tuple[Var, ...]


def format_varword(w: Sequence[Var]) -> str:
    # indexed names like y1 are spaced out for readability; both forms parse back
    sep = " " if any(len(s.name) > 1 for s in w) else ""
    return sep.join(map(str, w)) or "1"


def var_word(text: str) -> tuple[Var, ...]:
    """Parse one side of an identity, e.g. ``"x y1 y1* x*"`` or ``"(xy)^3"``."""
    return _Parser(text).parse_side_only()


@dataclass(frozen=True)
class Identity:
    lhs: tuple[Var, ...]
    rhs: tuple[Var, ...]
    involution: bool = False

    @classmethod
    def parse(cls, text: str, involution: bool | None = None) -> Identity:
        lhs, rhs = _Parser(text).parse_identity()
        starred = any(s.star for s in lhs + rhs)
        return cls(lhs, rhs, starred if involution is None else involution or starred)

    @classmethod
    def of(cls, lhs: str, rhs: str, involution: bool | None = None) -> Identity:
        return cls.parse(f"{lhs} = {rhs}", involution)

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def variables(self) -> list[str]:
        return sorted({s.name for s in self.lhs + self.rhs})

    def __str__(self) -> str:
        return f"{format_varword(self.lhs)} = {format_varword(self.rhs)}"


_TOKEN = re.compile(r"\s*(?:([a-z][0-9]*)|(\d+)|(.))")


class _Parser:
    """side := item* ; item := atom ('*' | '^' INT)* ; atom := VAR | '(' side ')' | '1'."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            var, num, sym = m.groups()
            if var:
                self.tokens.append(("var", var))
            elif num:
                self.tokens.append(("num", num))
            elif sym and not sym.isspace():
                self.tokens.append(("sym", "=" if sym == "≈" else sym))
        self.pos = 0

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        tok = self._peek()
        if tok is None:
            raise IdentityParseError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def parse_identity(self) -> tuple[tuple[Var, ...], tuple[Var, ...]]:
        lhs = self._nonempty_side()
        if self._take() != ("sym", "="):
            raise IdentityParseError(f"expected '=' in {self.text!r}")
        rhs = self._nonempty_side()
        if self._peek() is not None:
            raise IdentityParseError(f"trailing input {self._peek()[1]!r} in {self.text!r}")
        return lhs, rhs

    def parse_side_only(self) -> tuple[Var, ...]:
        side = self._side()
        if self._peek() is not None:
            raise IdentityParseError(f"unexpected {self._peek()[1]!r} in {self.text!r}")
        return side

    def _nonempty_side(self) -> tuple[Var, ...]:
        # the empty word must be written "1" so a missing side is caught
        start = self.pos
        side = self._side()
        if self.pos == start:
            raise IdentityParseError(f"empty side in {self.text!r} (write 1 for the empty word)")
        return side

    def _side(self) -> tuple[Var, ...]:
        out: list[Var] = []
        while True:
            tok = self._peek()
            if tok is None or tok in (("sym", "="), ("sym", ")")):
                return tuple(out)
            out.extend(self._item())

    def _item(self) -> tuple[Var, ...]:
        kind, value = self._take()
        if kind == "var":
            atom: tuple[Var, ...] = (Var(value),)
        elif (kind, value) == ("num", "1"):
            atom = ()
        elif (kind, value) == ("sym", "("):
            atom = self._side()
            if self._take() != ("sym", ")"):
                raise IdentityParseError(f"unbalanced parenthesis in {self.text!r}")
        else:
            raise IdentityParseError(f"unexpected {value!r} in {self.text!r}")
        while (tok := self._peek()) in (("sym", "*"), ("sym", "^")):
            self.pos += 1
            if tok[1] == "*":
                atom = tuple(s.starred() for s in reversed(atom))
            else:
                kind, value = self._take()
                if kind != "num":
                    raise IdentityParseError(f"expected exponent after '^' in {self.text!r}")
                atom = atom * int(value)
        return atom


# --- Simon congruence -------------------------------------------------------


def _symbols(w: Any) -> tuple:
    return w.letters if isinstance(w, Word) else tuple(w)


class _Refinement:
    """Joint subsequence automata of two words with k-equivalence classes per level.

    State i of a word means "matched up to position i"; reading a letter jumps
    to its next occurrence. ``levels[l][s]`` is the class of state s under
    l-equivalence of the remaining suffixes. States of u are 0..|u|, states of
    v follow at an offset, and -1 marks a missing transition.
    """

    def __init__(self, u: Sequence[Hashable], v: Sequence[Hashable], k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        u, v = _symbols(u), _symbols(v)
        self.alphabet = sorted(set(u) | set(v))
        code = {a: i for i, a in enumerate(self.alphabet)}
        self.u = [code[a] for a in u]
        self.v = [code[a] for a in v]
        self.start_u, self.start_v = 0, len(u) + 1
        self.k = k
        if len(u) + len(v) >= _NUMPY_THRESHOLD:
            self._refine_numpy()
        else:
            self._refine_python()

    def _refine_python(self) -> None:
        sigma = len(self.alphabet)
        table: list[tuple[int, ...]] = []
        for word, offset in ((self.u, self.start_u), (self.v, self.start_v)):
            cur = [-1] * sigma
            rows = []
            for i in range(len(word), -1, -1):
                rows.append(tuple(cur))
                if i:
                    cur[word[i - 1]] = offset + i
            table.extend(reversed(rows))
        self.next = table
        cls = [0] * len(table)
        self.levels = [cls]
        for _ in range(self.k):
            ids: dict[tuple[int, ...], int] = {}
            new = [
                ids.setdefault(tuple(cls[t] if t >= 0 else -1 for t in row), len(ids))
                for row in table
            ]
            stable = len(ids) == len(set(cls))
            self.levels.append(new)
            cls = new
            if stable:
                break

    def _refine_numpy(self) -> None:
        sigma = len(self.alphabet)
        blocks = []
        for word, offset in ((self.u, self.start_u), (self.v, self.start_v)):
            arr = np.asarray(word, dtype=np.int64)
            states = np.arange(len(word) + 1)
            block = np.full((len(word) + 1, sigma), -1, dtype=np.int64)
            for a in range(sigma):
                pos = np.flatnonzero(arr == a) + 1
                idx = np.searchsorted(pos, states, side="right")
                ok = idx < len(pos)
                block[ok, a] = pos[idx[ok]] + offset
            blocks.append(block)
        table = np.vstack(blocks)
        self.next = table
        size = len(table)
        cls = np.zeros(size, dtype=np.int64)
        count = 1
        self.levels = [cls]
        for _ in range(self.k):
            # missing transition (-1) lands on the appended 0; real classes shift to >= 1
            shifted = np.append(cls + 1, 0)
            ids = np.zeros(size, dtype=np.int64)
            for a in range(sigma):
                keyed = ids * (size + 2) + shifted[table[:, a]]
                _, ids = np.unique(keyed, return_inverse=True)
                ids = ids.ravel()
            new_count = int(ids.max()) + 1 if size else 0
            self.levels.append(ids)
            cls = ids
            if new_count == count:
                break
            count = new_count

    def level(self, m: int):
        return self.levels[min(m, len(self.levels) - 1)]

    def equivalent(self, m: int | None = None) -> bool:
        cls = self.level(self.k if m is None else m)
        return cls[self.start_u] == cls[self.start_v]

    def first_split(self) -> int | None:
        """Smallest m <= k at which the two start states separate."""
        for m in range(1, self.k + 1):
            if not self.equivalent(m):
                return m
        return None

    def witness(self) -> tuple[tuple, str] | None:
        """Shortlex-least word lying in exactly one k-spectrum, and which side has it."""
        m = self.first_split()
        if m is None:
            return None
        s, t = self.start_u, self.start_v
        out = []
        for depth in range(m, 0, -1):
            below = self.level(depth - 1)
            for a in range(len(self.alphabet)):
                ns, nt = int(self.next[s][a]), int(self.next[t][a])
                if (ns < 0) != (nt < 0):
                    out.append(self.alphabet[a])
                    return tuple(out), "lhs" if ns >= 0 else "rhs"
                if ns >= 0 and below[ns] != below[nt]:
                    out.append(self.alphabet[a])
                    s, t = ns, nt
                    break
            else:  # pragma: no cover - classes differ, so some letter must split them
                raise AssertionError("refinement inconsistent")
        raise AssertionError("refinement inconsistent")  # pragma: no cover


def simon_equivalent(u: Sequence[Hashable], v: Sequence[Hashable], k: int) -> bool:
    """True iff u and v have the same subsequences of length <= k."""
    return _Refinement(u, v, k).equivalent()


def distinguishing_word(
    u: Sequence[Hashable], v: Sequence[Hashable], k: int
) -> tuple[tuple, str] | None:
    """Shortest (then smallest) word of length <= k that is a subsequence of exactly one side.

    Returns ``(word, side)`` with side "lhs" or "rhs", or None when u ~k v.
    """
    return _Refinement(u, v, k).witness()


# --- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness_kind: str | None = None
    witness: dict | None = None

    def __post_init__(self) -> None:
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def to_json(self) -> dict:
        return {"holds": self.holds, "witness_kind": self.witness_kind, "witness": self.witness}


def check_identity_styl(identity: Identity, n: int) -> Verdict:
    """Decide whether ``identity`` holds in styl_n (it does iff both sides are n-equivalent)."""
    if identity.involution:
        raise ValueError("involution identities have no Simon criterion; use brute_force_check")
    found = distinguishing_word(identity.lhs, identity.rhs, n)
    if found is None:
        return Verdict(True)
    word, side = found
    return Verdict(False, "word", {"word": format_varword(word), "side": side})


@dataclass(frozen=True)
class WitnessEvaluation:
    """A falsifying evaluation into styl_n built from a distinguishing word."""

    identity: Identity
    rank: int
    word: tuple[Var, ...]
    side: str
    values: dict[str, Word]
    target: int  # letter k, which must reach row k on one side only
    lhs_tableau: NTableau
    rhs_tableau: NTableau

    def to_json(self) -> dict:
        return {
            "identity": str(self.identity),
            "rank": self.rank,
            "word": format_varword(self.word),
            "side": self.side,
            "evaluation": {x: str(w) for x, w in sorted(self.values.items())},
            "target_letter": self.target,
            "target_row": self.target,
            "lhs_tableau": self.lhs_tableau.to_json(),
            "rhs_tableau": self.rhs_tableau.to_json(),
        }


def witness_evaluation(identity: Identity, n: int) -> WitnessEvaluation:
    """Turn a distinguishing word d of length k into an evaluation over {1..k}.

    With a_i = d_{k+1-i}, each variable x is sent to the increasing word of the
    indices i with a_i = x. The side containing d then maps to a word with the
    decreasing subsequence k...1, so its N-tableau has k in row k; the other
    side's does not.
    """
    if identity.involution:
        raise ValueError("witness construction only applies to plain identities")
    found = distinguishing_word(identity.lhs, identity.rhs, n)
    if found is None:
        raise ValueError(f"{identity} holds in styl_{n}; there is no witness")
    word, side = found
    k = len(word)
    values = {}
    for x in identity.variables():
        values[x] = Word.of([i for i in range(1, k + 1) if word[k - i].name == x], n)
    lhs = Word.of([a for s in identity.lhs for a in values[s.name]], n)
    rhs = Word.of([a for s in identity.rhs for a in values[s.name]], n)
    return WitnessEvaluation(
        identity, n, word, side, values, k, n_tableau(lhs), n_tableau(rhs)
    )


# --- brute-force evaluation -------------------------------------------------


def evaluate(
    side: Sequence[Var],
    values: dict[str, Any],
    mul: Callable[[Any, Any], Any],
    one: Any,
    star: Callable[[Any], Any] | None = None,
) -> Any:
    """Image of a side under an evaluation in any monoid (with involution ``star``)."""
    acc = one
    for s in side:
        x = values[s.name]
        if s.star:
            if star is None:
                raise ValueError(f"{s} needs an involution")
            x = star(x)
        acc = mul(acc, x)
    return acc


def brute_force_check(
    identity: Identity, table: MonoidTable, budget: int = BRUTE_FORCE_BUDGET
) -> Verdict:
    """Try every assignment of table elements to the variables, in lexicographic order."""
    names = identity.variables()
    size = len(table)
    if size ** len(names) > budget:
        raise BudgetExceededError(
            f"{size}^{len(names)} assignments exceed the budget of {budget}"
        )
    prod, inv = table.product, table.involution
    slot = {x: i for i, x in enumerate(names)}
    # starred occurrences read the involution of the assigned element
    lhs = [(slot[s.name], s.star) for s in identity.lhs]
    rhs = [(slot[s.name], s.star) for s in identity.rhs]
    unit = table.identity_index

    def run(side, values):
        acc = unit
        for i, starred in side:
            acc = prod[acc][inv[values[i]] if starred else values[i]]
        return acc

    for values in product(range(size), repeat=len(names)):
        left, right = run(lhs, values), run(rhs, values)
        if left != right:
            element = lambda i: str(canonical_word(table.elements[i]))  # noqa: E731
            return Verdict(
                False,
                "evaluation",
                {
                    "evaluation": {x: element(values[slot[x]]) for x in names},
                    "lhs": element(left),
                    "rhs": element(right),
                },
            )
    return Verdict(True)


# --- known identities -------------------------------------------------------

# The second J_3 identity reads "xyzx^2tz = xyxzx^2tx" in some sources; that
# version is not even in J_2 (tx is a subsequence of one side only).
_BASES = {
    1: ["xx = x", "xy = yx"],
    2: ["xyxzx = xyzx", "(xy)^2 = (yx)^2"],
    3: [
        "xyx^2zx = xyxzx",
        "xyzx^2tz = xyxzx^2tz",
        "zyx^2ztx = zyx^2zxtx",
        "(xy)^3 = (yx)^3",
    ],
}


def basis(k: int) -> list[Identity]:
    """Finite identity bases of J_1, J_2, J_3. Higher levels have none."""
    if k not in _BASES:
        raise ValueError(f"J_{k} has no finite basis to list (only k = 1, 2, 3)")
    return [Identity.parse(t) for t in _BASES[k]]


def debruijn_sequence(order: int, alphabet_size: int = 2) -> tuple[int, ...]:
    """Non-cyclic de Bruijn word: every length-``order`` word occurs exactly once as a factor.

    Built from the Lyndon-word (FKM) cyclic sequence, unrolled by order - 1 letters.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a = [0] * (alphabet_size * order)
    seq: list[int] = []

    def db(t: int, p: int) -> None:
        if t > order:
            if order % p == 0:
                seq.extend(a[1 : p + 1])
            return
        a[t] = a[t - p]
        db(t + 1, p)
        for j in range(a[t - p] + 1, alphabet_size):
            a[t] = j
            db(t + 1, t)

    db(1, 1)
    return tuple(seq + seq[: order - 1])


def debruijn_identity(k: int) -> Identity:
    """w xy w = w yx w, with w the order-(k-1) binary de Bruijn word under 0 -> xy, 1 -> yx."""
    if not 2 <= k <= 5:
        raise ValueError("debruijn_identity supports 2 <= k <= 5")
    x, y = Var("x"), Var("y")
    w = tuple(s for b in debruijn_sequence(k - 1) for s in ((x, y) if b == 0 else (y, x)))
    return Identity(w + (x, y) + w, w + (y, x) + w)


def family_identity(kind: str, param: int) -> Identity:
    """Parametrised identity families.

    A: x y1 y1* ... yk yk* x* z z* = z z* x y1 y1* ... yk yk* x*
    B: x1..xk x1*..xk* x1..xk = xk*..x1* xk..x1 xk*..x1*
    C: x* x^(n-1) = x* x^n
    R: (xy)^(n+1) = (xy)^n yx
    """
    if param < 1:
        raise ValueError("parameter must be >= 1")
    kind = kind.upper()
    if kind == "A":
        ys = " ".join(f"y{i} y{i}*" for i in range(1, param + 1))
        return Identity.parse(f"x {ys} x* z z* = z z* x {ys} x*")
    if kind == "B":
        xs = [f"x{i}" for i in range(1, param + 1)]
        plain, star = " ".join(xs), " ".join(x + "*" for x in xs)
        rplain, rstar = " ".join(reversed(xs)), " ".join(x + "*" for x in reversed(xs))
        return Identity.parse(f"{plain} {star} {plain} = {rstar} {rplain} {rstar}")
    if kind == "C":
        return Identity.parse(f"x* x^{param - 1} = x* x^{param}")
    if kind == "R":
        return Identity.parse(f"(xy)^{param + 1} = (xy)^{param} yx")
    raise ValueError(f"unknown identity family {kind!r}")


ADJAN = Identity.parse("xyyx xy xyyx = xyyx yx xyyx")


# --- tropical counterexample search -----------------------------------------


@dataclass(frozen=True)
class SearchResult:
    found: bool
    samples: int
    seed: int
    entry_bound: int
    budget: int
    assignment: dict[str, TropMatrix] = field(default_factory=dict)
    lhs: TropMatrix | None = None
    rhs: TropMatrix | None = None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "samples": self.samples,
            "seed": self.seed,
            "entry_bound": self.entry_bound,
            "budget": self.budget,
            "assignment": {x: m.to_json() for x, m in sorted(self.assignment.items())},
            "lhs": self.lhs.to_json() if self.lhs else None,
            "rhs": self.rhs.to_json() if self.rhs else None,
        }


def tropical_counterexample_search(
    identity: Identity,
    n: int,
    entry_bound: int = SEARCH_ENTRY_BOUND,
    budget: int = SEARCH_BUDGET,
    seed: int = SEARCH_SEED,
) -> SearchResult:
    """Random search for an assignment of (n+1)x(n+1) unitriangular tropical matrices
    on which the two sides differ; stars act by skew transposition."""
    base = dict(seed=seed, entry_bound=entry_bound, budget=budget)
    if identity.is_trivial():
        return SearchResult(False, 0, **base)
    rng = random.Random(seed)
    names = identity.variables()
    d = n + 1
    one = identity_matrix(d)
    for sample in range(1, budget + 1):
        values = {x: random_unitriangular(rng, d, entry_bound) for x in names}
        left = evaluate(identity.lhs, values, mat_mul, one, skew_transpose)
        right = evaluate(identity.rhs, values, mat_mul, one, skew_transpose)
        if left != right:
            return SearchResult(True, sample, assignment=values, lhs=left, rhs=right, **base)
    return SearchResult(False, budget, **base)
