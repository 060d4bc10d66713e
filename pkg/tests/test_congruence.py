import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from stylmon import congruence
from stylmon.congruence import (
    ADJAN,
    BudgetExceededError,
    Identity,
    IdentityParseError,
    Var,
    basis,
    brute_force_check,
    check_identity_styl,
    debruijn_identity,
    debruijn_sequence,
    distinguishing_word,
    family_identity,
    format_varword,
    simon_equivalent,
    tropical_counterexample_search,
    var_word,
    witness_evaluation,
)
from stylmon.stylic import enumerate_monoid
from stylmon.verify import checker_oracle
from stylmon.words import all_words, is_subsequence, k_spectrum

X, Y = Var("x"), Var("y")


def vw(text):
    return var_word(text)


def spectra_equal(u, v, k):
    return k_spectrum(u, k, max_length=64) == k_spectrum(v, k, max_length=64)


# --- parsing ----------------------------------------------------------------


def test_parse_plain():
    ident = Identity.parse("xxyx = xyxx")
    assert ident.lhs == (X, X, Y, X) and ident.rhs == (X, Y, X, X)
    assert not ident.involution
    assert ident.variables() == ["x", "y"]
    assert str(ident) == "xxyx = xyxx"


def test_parse_powers_parentheses_and_unit():
    assert Identity.parse("(xy)^2 = (yx)^2").lhs == vw("xyxy")
    assert Identity.parse("x^2 = x").lhs == (X, X)
    assert Identity.parse("xy ≈ yx").rhs == (Y, X)
    assert Identity.parse("x^0 = 1").lhs == () == Identity.parse("x^0 = 1").rhs
    assert format_varword(()) == "1"
    assert vw("x1 y12 x1") == (Var("x1"), Var("y12"), Var("x1"))


def test_parse_stars():
    ident = Identity.parse("x* x = x* x^2")
    assert ident.involution
    assert ident.lhs == (Var("x", True), X)
    # a starred group reverses and toggles
    assert vw("(xy*)*") == (Y, Var("x", True))
    assert str(family_identity("C", 2)) == "x*x = x*xx"


@pytest.mark.parametrize("text", ["xy", "x = ", "= x", "x = y = z", "x = (y", "x = y)", "X = x", "x = y^", "x = y#"])
def test_parse_errors(text):
    with pytest.raises(IdentityParseError):
        Identity.parse(text)


def test_trivial():
    assert Identity.parse("xy = xy").is_trivial()
    assert not Identity.parse("xy = yx").is_trivial()


# --- Simon congruence -------------------------------------------------------


def test_simon_examples():
    assert not simon_equivalent(vw("xxyx"), vw("xyxx"), 3)
    assert simon_equivalent(vw("xxyx"), vw("xyxx"), 2)
    assert simon_equivalent(vw("xyzzy"), vw("xyzzy"), 5)
    assert not simon_equivalent(ADJAN.lhs, ADJAN.rhs, 6)
    assert simon_equivalent(ADJAN.lhs, ADJAN.rhs, 5)
    assert simon_equivalent((), (), 3)
    assert not simon_equivalent((), (1,), 1)
    with pytest.raises(ValueError):
        simon_equivalent((1,), (1,), 0)


def test_distinguishing_word_examples():
    assert distinguishing_word(vw("xxyx"), vw("xyxx"), 3) == (vw("xxy"), "lhs")
    assert distinguishing_word(vw("xyx"), vw("yxx"), 2) == (vw("xy"), "lhs")
    assert distinguishing_word(vw("xyxx"), vw("xxyx"), 3) == (vw("xxy"), "rhs")
    assert distinguishing_word(vw("xyx"), vw("xyx"), 3) is None


def test_adjan_distinguishing_word():
    word, side = distinguishing_word(ADJAN.lhs, ADJAN.rhs, 6)
    assert len(word) == 6 and side == "lhs"
    assert is_subsequence(word, ADJAN.lhs) and not is_subsequence(word, ADJAN.rhs)
    # the classical witness is also valid, just not the smallest one
    classic = vw("xxxyyy")
    assert is_subsequence(classic, ADJAN.lhs) and not is_subsequence(classic, ADJAN.rhs)
    assert word <= classic


def test_checker_exhaustive_two_letters():
    words = list(all_words(2, 5))
    assert checker_oracle(words, range(1, 5)).passed


def test_checker_exhaustive_three_letters_short():
    words = list(all_words(3, 4))
    assert checker_oracle(words, range(1, 5)).passed


def _spectrum_witness(u, v, k):
    su, sv = k_spectrum(u, k, 64), k_spectrum(v, k, 64)
    diff = su ^ sv
    if not diff:
        return None
    best = min(diff, key=lambda w: (len(w), w))
    return best, ("lhs" if best in su else "rhs")


@given(
    st.lists(st.integers(1, 3), max_size=9),
    st.lists(st.integers(1, 3), max_size=9),
    st.integers(1, 4),
)
def test_distinguishing_word_is_shortest_then_smallest(u, v, k):
    assert distinguishing_word(u, v, k) == _spectrum_witness(u, v, k)


@settings(max_examples=60)
@given(
    st.lists(st.integers(1, 3), max_size=8),
    st.lists(st.integers(1, 3), max_size=8),
    st.lists(st.integers(1, 3), max_size=5),
    st.lists(st.integers(1, 3), max_size=5),
    st.integers(1, 4),
)
def test_congruence_and_downward_refinement(u, v, p, s, k):
    if simon_equivalent(u, v, k):
        assert simon_equivalent(p + u + s, p + v + s, k)
        assert simon_equivalent(u, v, max(1, k - 1))
        assert set(u) == set(v)


def test_numpy_backend_agrees(monkeypatch):
    rng = random.Random(7)
    pairs = []
    for _ in range(300):
        u = [rng.randint(1, 3) for _ in range(rng.randint(0, 9))]
        v = list(u)
        if v and rng.random() < 0.7:
            i = rng.randrange(len(v))
            v.insert(i, rng.randint(1, 3))
        pairs.append((u, v, rng.randint(1, 4)))
    expected = [(simon_equivalent(u, v, k), distinguishing_word(u, v, k)) for u, v, k in pairs]
    monkeypatch.setattr(congruence, "_NUMPY_THRESHOLD", 0)
    got = [(simon_equivalent(u, v, k), distinguishing_word(u, v, k)) for u, v, k in pairs]
    assert got == expected
    for (u, v, k), (eq, _) in zip(pairs, got):
        assert eq == spectra_equal(u, v, k)


def test_long_words_numpy_path():
    rng = random.Random(11)
    u = [rng.randint(1, 4) for _ in range(3000)]
    v = u[:1500] + [u[1500]] + u[1500:]
    # a duplicated letter next to itself changes no subsequence up to length 2 here
    assert simon_equivalent(u, v, 2)
    w = [1] * 400 + [2] * 400
    z = [2] * 400 + [1] * 400
    assert distinguishing_word(w, z, 3) == ((1, 2), "lhs")


def test_linearithmic_scale():
    rng = random.Random(0)
    u = [rng.randrange(10) for _ in range(100_000)]
    v = [rng.randrange(10) for _ in range(100_000)]
    start = time.perf_counter()
    simon_equivalent(u, v, 6)
    assert time.perf_counter() - start < 5


# --- identity checking ------------------------------------------------------


def test_check_identity_examples():
    assert check_identity_styl(Identity.parse("(xy)^2 = (yx)^2"), 2).holds
    assert check_identity_styl(Identity.parse("xyxzx = xyzx"), 2).holds
    v = check_identity_styl(Identity.parse("xxyx = xyxx"), 3)
    assert not v.holds and v.witness == {"word": "xxy", "side": "lhs"}
    assert v.to_json() == {"holds": False, "witness_kind": "word", "witness": {"word": "xxy", "side": "lhs"}}
    assert check_identity_styl(ADJAN, 4).holds and check_identity_styl(ADJAN, 5).holds
    assert not check_identity_styl(ADJAN, 6).holds
    with pytest.raises(ValueError):
        check_identity_styl(family_identity("C", 2), 2)


def test_verdict_requires_witness():
    with pytest.raises(ValueError):
        congruence.Verdict(False)


def test_witness_evaluation_examples():
    wit = witness_evaluation(Identity.parse("xxyx = xyxx"), 3)
    assert {x: str(w) for x, w in wit.values.items()} == {"x": "23", "y": "1"}
    assert wit.side == "lhs" and wit.target == 3
    assert 3 in wit.lhs_tableau.rows[2]
    assert len(wit.rhs_tableau.rows) < 3 or 3 not in wit.rhs_tableau.rows[2]

    wit = witness_evaluation(Identity.parse("xyx = yxx"), 2)
    assert {x: str(w) for x, w in wit.values.items()} == {"x": "2", "y": "1"}
    assert 2 in wit.lhs_tableau.rows[1]
    assert len(wit.rhs_tableau.rows) < 2

    with pytest.raises(ValueError):
        witness_evaluation(Identity.parse("xyx = xyx"), 2)


def _row_has(t, k):
    return len(t.rows) >= k and k in t.rows[k - 1]


def test_witness_evaluation_property():
    rng = random.Random(5)
    from stylmon.verify import random_identity

    seen = 0
    for _ in range(400):
        ident = random_identity(rng)
        for n in (1, 2, 3, 4):
            if check_identity_styl(ident, n).holds:
                continue
            wit = witness_evaluation(ident, n)
            k = wit.target
            on, off = (wit.lhs_tableau, wit.rhs_tableau) if wit.side == "lhs" else (wit.rhs_tableau, wit.lhs_tableau)
            assert _row_has(on, k) and not _row_has(off, k)
            seen += 1
    assert seen > 100


def test_brute_force_examples():
    t1 = enumerate_monoid(1)
    for ident in basis(1):
        assert brute_force_check(ident, t1).holds
    t2 = enumerate_monoid(2)
    assert brute_force_check(family_identity("C", 2), t2).holds
    v = brute_force_check(Identity.parse("xyx = yxx"), t2)
    assert not v.holds and v.witness_kind == "evaluation"
    ev = v.witness["evaluation"]
    assert set(ev) == {"x", "y"} and v.witness["lhs"] != v.witness["rhs"]


def test_brute_force_budget():
    with pytest.raises(BudgetExceededError):
        brute_force_check(Identity.parse("xyzt = tzyx"), enumerate_monoid(3), budget=1000)


def test_brute_force_agrees_with_simon():
    rng = random.Random(9)
    from stylmon.verify import random_identity

    for n in (1, 2):
        table = enumerate_monoid(n)
        for _ in range(100):
            ident = random_identity(rng)
            assert brute_force_check(ident, table).holds == check_identity_styl(ident, n).holds


# --- known identities -------------------------------------------------------


def test_basis_counts_and_validity():
    assert [len(basis(k)) for k in (1, 2, 3)] == [2, 2, 4]
    for k in (1, 2, 3):
        for ident in basis(k):
            assert check_identity_styl(ident, k).holds, ident
    with pytest.raises(ValueError):
        basis(4)


def test_basis_identities_hold_by_evaluation():
    for k in (1, 2):
        table = enumerate_monoid(k)
        for ident in basis(k):
            assert brute_force_check(ident, table).holds


def test_debruijn_sequence():
    assert debruijn_sequence(1) == (0, 1)
    assert debruijn_sequence(2) == (0, 0, 1, 1, 0)
    for order in range(1, 6):
        seq = debruijn_sequence(order)
        assert len(seq) == 2**order + order - 1
        factors = [seq[i:i + order] for i in range(len(seq) - order + 1)]
        assert len(set(factors)) == len(factors) == 2**order


def test_debruijn_identity(golden):
    assert debruijn_identity(2) == ADJAN
    for k in (2, 3, 4):
        assert str(debruijn_identity(k)) == golden["debruijn_identity"][str(k)]
    assert not check_identity_styl(debruijn_identity(2), 6).holds
    with pytest.raises(ValueError):
        debruijn_identity(6)


def test_families():
    assert str(family_identity("A", 1)) == "x y1 y1* x* z z* = z z* x y1 y1* x*"
    assert family_identity("B", 1) == Identity.parse("x1 x1* x1 = x1* x1 x1*")
    assert str(family_identity("B", 2)) == "x1 x2 x1* x2* x1 x2 = x2* x1* x2 x1 x2* x1*"
    assert family_identity("R", 1) == Identity.parse("(xy)^2 = xyyx")
    with pytest.raises(ValueError):
        family_identity("Q", 1)
    with pytest.raises(ValueError):
        family_identity("A", 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_r_family(n):
    ident = family_identity("R", n)
    v = check_identity_styl(ident, n + 2)
    assert not v.holds
    assert v.witness == {"word": format_varword((X,) * (n + 1) + (Y,)), "side": "lhs"}
    assert check_identity_styl(ident, n + 1).holds


def test_isoterm():
    target = vw("xyx")
    members = [w for w in all_words(2, 5) if simon_equivalent(w, (1, 2, 1), 3)]
    assert members == [(1, 2, 1)]
    assert simon_equivalent(target, target, 3)


def test_involution_families_small():
    t2 = enumerate_monoid(2)
    for k in (1, 2):
        assert brute_force_check(family_identity("A", k), t2).holds


def test_search(golden):
    g = golden["tropical_witness_star_power_n2"]
    res = tropical_counterexample_search(family_identity("C", 2), 2)
    assert res.found and res.samples == g["samples"] and res.seed == 0 and res.entry_bound == 3
    assert res.assignment["x"].to_json() == g["x"]
    assert res.lhs.to_json() == g["lhs"] and res.rhs.to_json() == g["rhs"]
    assert res.lhs != res.rhs
    trivial = tropical_counterexample_search(Identity.parse("x = x"), 3)
    assert not trivial.found and trivial.samples == 0
    # no claim either way here; the report must be deterministic
    a = tropical_counterexample_search(Identity.parse("(xy)^2 = (yx)^2"), 1, budget=2000)
    b = tropical_counterexample_search(Identity.parse("(xy)^2 = (yx)^2"), 1, budget=2000)
    assert a == b
