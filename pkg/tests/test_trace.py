import random

import pytest

from raag.alphabet import Letter, build_alphabet
from raag.errors import ContractError
from raag.trace import (
    Trace,
    canonicalize,
    conjugate_oracle,
    core_explicit,
    core_with_conjugator,
    cyclic_reduce_oracle,
    factor_occurrences_oracle,
    inf_diff,
    is_cyclically_irreducible,
    is_irreducible,
    left_quotient,
    levi_decompositions,
    nf_R,
    prefix_of,
    prefixes,
    rewrite_normal_forms,
    split_independent_suffix,
    sup,
    sup_many,
)

from helpers import CORE_EX_CORE, CORE_EX_D, CORE_EX_NF, CORE_EX_X, EXAMPLE, LEFT, PATTERN, RIGHT, random_alphabet, random_word, tr

AB_DEP = build_alphabet(["a", "b"])
AB_IND = build_alphabet(["a", "b"], [("a", "b")])
U = "a e a d b a c d d"
V = "e a a b d c a e b"


def _is_lex_least(t):
    w = t.word
    alpha = t.alphabet
    for i in range(len(w) - 1):
        if alpha.is_independent(w[i], w[i + 1]) and alpha.rank(w[i + 1]) < alpha.rank(w[i]):
            return False
    return True


def test_canonicalize():
    assert canonicalize(EXAMPLE, U) == canonicalize(EXAMPLE, "e a a d b a c d d")
    t = tr(AB_DEP, "a b")
    assert str(t) == "a b" and t.min() == {Letter("a")} and t.max() == {Letter("b")}
    assert len(canonicalize(EXAMPLE, "")) == 0 and str(canonicalize(EXAMPLE, "")) == "1"


def test_canonical_words_are_lex_least():
    rng = random.Random(1)
    for _ in range(300):
        alpha = random_alphabet(rng)
        t = Trace(alpha, random_word(rng, alpha, rng.randint(0, 12)))
        assert _is_lex_least(t)


def test_prefix_of():
    assert prefix_of(tr(EXAMPLE, "a e a d b a c"), tr(EXAMPLE, U))
    assert prefix_of(tr(EXAMPLE, U), tr(EXAMPLE, U))
    assert not prefix_of(tr(AB_DEP, "b"), tr(AB_DEP, "a b"))


def test_inf_diff_example():
    u, v = tr(EXAMPLE, U), tr(EXAMPLE, V)
    p, du, dv = inf_diff(u, v)
    assert (p, du, dv) == (tr(EXAMPLE, "a e a d b a c"), tr(EXAMPLE, "d d"), tr(EXAMPLE, "e b"))
    one = Trace(EXAMPLE, [])
    assert inf_diff(u, u) == (u, one, one)
    assert inf_diff(u, one) == (one, u, one)


def test_sup_examples():
    u, v = tr(EXAMPLE, U), tr(EXAMPLE, V)
    assert sup(u, v) == tr(EXAMPLE, "a e a d b a c d d e b")
    assert sup(tr(AB_DEP, "a b"), tr(AB_DEP, "b a")) is None
    assert sup(u, Trace(EXAMPLE, [])) == u


def test_lattice_laws():
    rng = random.Random(2)
    for _ in range(200):
        alpha = random_alphabet(rng, 4)
        u = Trace(alpha, random_word(rng, alpha, rng.randint(0, 7), signed=False))
        v = Trace(alpha, random_word(rng, alpha, rng.randint(0, 7), signed=False))
        p, du, dv = inf_diff(u, v)
        assert p * du == u and p * dv == v
        assert prefix_of(p, u) and prefix_of(p, v)
        # p is the greatest common prefix
        common = [x for x, _ in prefixes(u) if prefix_of(x, v)]
        assert all(prefix_of(x, p) for x in common)
        s = sup(u, v)
        uppers = [x for x, _ in prefixes(u * v) if prefix_of(u, x) and prefix_of(v, x)]
        uppers += [x for x, _ in prefixes(v * u) if prefix_of(u, x) and prefix_of(v, x)]
        if s is None:
            assert not alpha.words_independent(du.word, dv.word)
        else:
            assert prefix_of(u, s) and prefix_of(v, s)
            assert all(prefix_of(s, x) for x in uppers)


def test_nf_r_example():
    assert nf_R(tr(EXAMPLE, CORE_EX_X)) == tr(EXAMPLE, CORE_EX_NF)
    assert len(nf_R(tr(EXAMPLE, "a a^-1"))) == 0


def test_nf_r_matches_rewriting():
    rng = random.Random(4)
    for _ in range(400):
        alpha = random_alphabet(rng)
        u = Trace(alpha, random_word(rng, alpha, rng.randint(0, 12)))
        forms = rewrite_normal_forms(u)
        assert forms == {nf_R(u)}
        assert nf_R(nf_R(u)) == nf_R(u)


def test_group_equality_via_nf():
    rng = random.Random(6)
    for _ in range(200):
        alpha = random_alphabet(rng)
        u = random_word(rng, alpha, rng.randint(0, 8))
        # insert x x^-1 somewhere: same group element
        x = rng.choice(alpha.signed_letters())
        k = rng.randint(0, len(u))
        v = u[:k] + [x, x.inverse()] + u[k:]
        assert nf_R(Trace(alpha, u)) == nf_R(Trace(alpha, v))
        # changing one letter changes the element
        if u:
            j = rng.randrange(len(u))
            y = rng.choice([z for z in alpha.signed_letters() if z != u[j]])
            v2 = u[:j] + [y] + u[j + 1:]
            assert nf_R(Trace(alpha, u)) != nf_R(Trace(alpha, v2))


def test_irreducibility():
    assert is_cyclically_irreducible(tr(EXAMPLE, CORE_EX_CORE))
    nf = tr(EXAMPLE, CORE_EX_NF)
    assert is_irreducible(nf) and not is_cyclically_irreducible(nf)
    assert not is_irreducible(tr(EXAMPLE, "a a^-1"))


def test_core_examples():
    x = tr(EXAMPLE, CORE_EX_X)
    core, d = core_with_conjugator(x)
    assert core == tr(EXAMPLE, CORE_EX_CORE) and d == tr(EXAMPLE, CORE_EX_D)
    y = tr(EXAMPLE, CORE_EX_CORE)
    assert core_explicit(y) == y
    core, d = core_with_conjugator(tr(AB_DEP, "a b a^-1"))
    assert core == tr(AB_DEP, "b") and d == tr(AB_DEP, "a")


def test_core_properties():
    rng = random.Random(8)
    for _ in range(300):
        alpha = random_alphabet(rng)
        u = Trace(alpha, random_word(rng, alpha, rng.randint(0, 12)))
        core, d = core_with_conjugator(u)
        assert is_cyclically_irreducible(core)
        assert nf_R(d * core * d.inverse()) == nf_R(u)
        assert core == cyclic_reduce_oracle(u) or conjugate_oracle(core, cyclic_reduce_oracle(u))


def test_no_prefix_and_inverse_prefix():
    rng = random.Random(9)
    for _ in range(150):
        alpha = random_alphabet(rng, 4)
        t = nf_R(Trace(alpha, random_word(rng, alpha, rng.randint(0, 9))))
        for p, _ in prefixes(t):
            if len(p):
                assert not prefix_of(p.inverse(), t)


def test_factor_occurrences_example():
    occ = factor_occurrences_oracle(tr(EXAMPLE, PATTERN), tr(EXAMPLE, LEFT + " " + RIGHT), EXAMPLE.sort("abcd"), limit=64)
    assert sorted(str(p) for p in occ) == ["(1,1,2,1)", "(2,2,4,1)", "(3,3,6,1)", "(4,4,8,1)"]


def test_factor_occurrences_small():
    t = tr(AB_DEP, "a b a b")
    occ = factor_occurrences_oracle(tr(AB_DEP, "a b"), t)
    assert sorted(p.counts for p in occ) == [(0, 0), (1, 1)]
    assert len(factor_occurrences_oracle(Trace(AB_DEP, []), t)) == 5
    assert factor_occurrences_oracle(tr(EXAMPLE, "e"), tr(EXAMPLE, "a b")) == set()
    with pytest.raises(ContractError):
        factor_occurrences_oracle(tr(AB_DEP, "a"), tr(AB_DEP, "a " * 17))


def test_conjugate_oracle():
    assert conjugate_oracle(tr(AB_DEP, "a b"), tr(AB_DEP, "b a"))
    assert not conjugate_oracle(tr(AB_DEP, "a"), tr(AB_DEP, "b"))
    u = tr(EXAMPLE, CORE_EX_X)
    assert conjugate_oracle(u, u)


def test_levi():
    a, b = tr(AB_IND, "a"), tr(AB_IND, "b")
    one = Trace(AB_IND, [])
    assert (one, a, b, one) in levi_decompositions(a, b, b, a)
    u1, u2 = tr(EXAMPLE, "a e a d"), tr(EXAMPLE, "b a c d d")
    e = Trace(EXAMPLE, [])
    assert (u1, e, e, u2) in levi_decompositions(u1, u2, u1, u2)
    v1 = tr(EXAMPLE, "e a a")
    v2 = left_quotient(v1, u1 * u2)
    quads = levi_decompositions(u1, u2, v1, v2)
    assert quads
    for x, y1, y2, z in quads:
        assert x * y1 == u1 and y2 * z == u2 and x * y2 == v1 and y1 * z == v2
        assert EXAMPLE.words_independent(y1.word, y2.word)
    with pytest.raises(ContractError):
        levi_decompositions(a, a, b, b)


def test_split_independent_suffix():
    a = Letter("a")
    assert split_independent_suffix(tr(EXAMPLE, "b c"), a) == (tr(EXAMPLE, "b"), tr(EXAMPLE, "c"))
    t = tr(EXAMPLE, "c d e")
    assert split_independent_suffix(t, a) == (Trace(EXAMPLE, []), t)
    t = tr(EXAMPLE, "a b a")
    assert split_independent_suffix(t, a) == (t, Trace(EXAMPLE, []))


def test_split_independent_suffix_maximal():
    rng = random.Random(10)
    for _ in range(200):
        alpha = random_alphabet(rng, 4)
        t = Trace(alpha, random_word(rng, alpha, rng.randint(0, 8)))
        a = rng.choice(alpha.positive_letters())
        u1, u2 = split_independent_suffix(t, a)
        assert u1 * u2 == t
        assert all(alpha.is_independent(x, a) for x in u2.word)
        best = max(len(v) for u, v in prefixes(t) if all(alpha.is_independent(x, a) for x in v.word))
        assert len(u2) == best


def test_sup_many():
    b = tr(EXAMPLE, "b")
    assert sup_many([b, Trace(EXAMPLE, []), b]) == b
