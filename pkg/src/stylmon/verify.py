"""Seeded property suites cross-checking the fast paths against brute-force oracles.

Each suite returns a :class:`SuiteResult`; ``mismatches`` should always be 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .congruence import Identity, Var, brute_force_check, check_identity_styl, simon_equivalent
from .stylic import enumerate_monoid, schensted, stylic_equal, tableau_rows
from .tropical import decode_tableau, rho
from .words import all_words, k_spectrum, longest_decreasing_in_band


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    mismatches: int = 0
    examples: list = field(default_factory=list)

    def record(self, ok: bool, example=None) -> None:
        self.checked += 1
        if not ok:
            self.mismatches += 1
            if len(self.examples) < 5:
                self.examples.append(example)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "mismatches": self.mismatches,
            "examples": [repr(e) for e in self.examples],
        }


def random_word(rng: random.Random, n: int, max_length: int, min_length: int = 0) -> tuple[int, ...]:
    return tuple(rng.randint(1, n) for _ in range(rng.randint(min_length, max_length)))


def relation_instances(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Defining relations of styl_n: aa = a and both Knuth families."""
    out = [((a, a), (a,)) for a in range(1, n + 1)]
    letters = range(1, n + 1)
    for a in letters:
        for b in letters:
            for c in letters:
                if a <= b < c:
                    out.append(((a, c, b), (c, a, b)))
                if a < b <= c:
                    out.append(((b, a, c), (b, c, a)))
    return out


def _rewrites(w: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Words one defining relation away from ``w`` (either direction)."""
    out = []
    for i, a in enumerate(w):
        out.append(w[:i] + (a,) + w[i:])
        if i + 1 < len(w) and w[i + 1] == a:
            out.append(w[:i] + w[i + 1:])
        if i + 2 < len(w):
            x, y, z = w[i:i + 3]
            # acb <-> cab (a <= b < c) swaps the first two; bac <-> bca swaps the last two
            if x <= z < y or y <= z < x:
                out.append(w[:i] + (y, x, z) + w[i + 3:])
            if y < x <= z or z < x <= y:
                out.append(w[:i] + (x, z, y) + w[i + 3:])
    return out


def stylic_rewrite(rng: random.Random, w: tuple[int, ...], steps: int) -> tuple[int, ...]:
    """A random walk along defining relations; the result is stylic-equal to ``w``."""
    for _ in range(steps):
        options = _rewrites(w)
        if not options:
            break
        w = rng.choice(options)
    return w


def faithfulness(n: int, samples: int, seed: int = 0, max_length: int = 10) -> SuiteResult:
    """rho(u) = rho(v) iff N(u) = N(v), and decode(rho(w)) = N(w), on seeded pairs.

    Half the pairs are related by a walk along the defining relations so both
    directions of the equivalence are exercised.
    """
    rng = random.Random(seed)
    result = SuiteResult(f"faithfulness(n={n})")
    for _ in range(samples):
        u = random_word(rng, n, max_length)
        if rng.random() < 0.5:
            v = stylic_rewrite(rng, u, rng.randint(1, 6))
        else:
            v = random_word(rng, n, max_length)
        ru, rv = rho(u, n), rho(v, n)
        nu, nv = tableau_rows(u), tableau_rows(v)
        result.record((ru == rv) == (nu == nv), (u, v))
        result.record(decode_tableau(ru, n).rows == nu, u)
        result.record(decode_tableau(rv, n).rows == nv, v)
    return result


def faithfulness_exhaustive(n: int, max_length: int) -> SuiteResult:
    """Partition of all short words by rho equals the partition by N."""
    result = SuiteResult(f"faithfulness-exhaustive(n={n}, |w|<={max_length})")
    by_rho: dict = {}
    by_tab: dict = {}
    for w in all_words(n, max_length):
        r, t = rho(w, n), tableau_rows(w)
        result.record(by_rho.setdefault(r, t) == t, w)
        result.record(by_tab.setdefault(t, r) == r, w)
        result.record(decode_tableau(r, n).rows == t, w)
    return result


def band_oracle(samples: int, seed: int = 0, max_rank: int = 6, max_length: int = 20) -> SuiteResult:
    """Every entry of rho(w) is a band-restricted longest decreasing subsequence,
    and finite neighbours differ by at most one in the right direction."""
    rng = random.Random(seed)
    result = SuiteResult("band-oracle")
    for _ in range(samples):
        n = rng.randint(1, max_rank)
        w = random_word(rng, n, max_length)
        m = rho(w, n)
        d = n + 1
        ok = True
        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                # rows i..j cover letters from (n+1-j)+1 up to n+1-i
                ok &= m[i, j] == longest_decreasing_in_band(w, d - j + 1, d - i)
        for i in range(1, d + 1):
            for j in range(i, d + 1):
                here = m[i, j]
                if here is None:
                    continue
                if i + 1 <= j and m[i + 1, j] is not None:
                    ok &= m[i + 1, j] <= here <= m[i + 1, j] + 1
                if j + 1 <= d and m[i, j + 1] is not None:
                    ok &= here <= m[i, j + 1] <= here + 1
        result.record(ok, (n, w))
    return result


def relations(n: int, contexts: int, seed: int = 0, max_context: int = 6) -> SuiteResult:
    """Both sides of every defining relation, in random contexts, share rho, N and
    (for the Knuth ones) the Schensted tableau."""
    rng = random.Random(seed)
    result = SuiteResult(f"relations(n={n})")
    for lhs, rhs in relation_instances(n):
        for _ in range(contexts):
            p = random_word(rng, n, max_context)
            s = random_word(rng, n, max_context)
            u, v = p + lhs + s, p + rhs + s
            ok = rho(u, n) == rho(v, n) and stylic_equal(u, v)
            if len(lhs) == len(rhs):
                ok = ok and schensted(u) == schensted(v)
            result.record(ok, (u, v))
    return result


def plactic_refines_stylic(n: int, max_length: int) -> SuiteResult:
    result = SuiteResult(f"plactic-refines-stylic(n={n})")
    classes: dict = {}
    for w in all_words(n, max_length):
        classes.setdefault(schensted(w), []).append(w)
    for members in classes.values():
        first = tableau_rows(members[0])
        for w in members[1:]:
            result.record(tableau_rows(w) == first, (members[0], w))
    return result


def checker_oracle(
    words: list[tuple], ks: range, pairs: list[tuple[int, int]] | None = None
) -> SuiteResult:
    """simon_equivalent against brute-force spectrum equality."""
    result = SuiteResult("checker-oracle")
    spectra = {k: [k_spectrum(w, k) for w in words] for k in ks}
    if pairs is None:
        pairs = [(i, j) for i in range(len(words)) for j in range(len(words))]
    for i, j in pairs:
        for k in ks:
            expected = spectra[k][i] == spectra[k][j]
            result.record(simon_equivalent(words[i], words[j], k) == expected, (words[i], words[j], k))
    return result


def random_identity(rng: random.Random, max_length: int = 6) -> Identity:
    """Two-variable identity; half the time the right side is a perturbed copy of the left."""
    x, y = Var("x"), Var("y")

    def side() -> tuple:
        return tuple(rng.choice((x, y)) for _ in range(rng.randint(0, max_length)))

    lhs = side()
    if rng.random() < 0.5 or not lhs:
        return Identity(lhs, side())
    rhs = list(lhs)
    for _ in range(rng.randint(1, 2)):
        i = rng.randrange(len(rhs))
        move = rng.random()
        if move < 0.4 and len(rhs) > 1:
            j = min(i + 1, len(rhs) - 1)
            rhs[i], rhs[j] = rhs[j], rhs[i]
        elif move < 0.7 and len(rhs) < max_length:
            rhs.insert(i, rhs[i])
        elif len(rhs) > 1:
            del rhs[i]
    return Identity(lhs, tuple(rhs))


def identity_crosscheck(n: int, samples: int, seed: int = 0) -> SuiteResult:
    """Simon-based verdicts against exhaustive evaluation in the enumerated styl_n."""
    rng = random.Random(seed)
    table = enumerate_monoid(n)
    result = SuiteResult(f"identity-crosscheck(n={n})")
    for _ in range(samples):
        ident = random_identity(rng)
        fast = check_identity_styl(ident, n).holds
        slow = brute_force_check(ident, table).holds
        result.record(fast == slow, str(ident))
    return result


def run_all(n: int, seed: int = 0, samples: int = 1000) -> list[SuiteResult]:
    """The suite behind ``stylmon verify``: everything that is cheap at rank ``n``."""
    suites: list[Callable[[], SuiteResult]] = [
        lambda: faithfulness(n, samples, seed),
        lambda: band_oracle(samples, seed, max_rank=n),
        lambda: relations(n, max(1, samples // 50), seed),
    ]
    if n <= 4:
        suites.append(lambda: faithfulness_exhaustive(n, 6 if n <= 3 else 5))
    if n <= 4:
        suites.append(lambda: identity_crosscheck(n, max(1, samples // 10), seed))
    rng = random.Random(seed)
    words = [random_word(rng, min(n, 3), 7) for _ in range(min(samples, 60))]
    suites.append(lambda: checker_oracle(words, range(1, min(n, 4) + 1)))
    return [suite() for suite in suites]
