import random

import pytest

from raag import slp as S
from raag.alphabet import build_alphabet
from raag.ctrace import CompressedTrace, ccore, ccore_with_conjugator, cinf, csup, csup_many, is_trivial, r_reduce, trace_equal
from raag.errors import ContractError, ResourceError
from raag.slp import WordBackend
from raag.trace import Trace, core_explicit, inf_diff, is_cyclically_irreducible, nf_R, sup

from helpers import CORE_EX_CORE, CORE_EX_NF, CORE_EX_X, EXAMPLE, random_alphabet, random_slp, random_word, tr

AB_DEP = build_alphabet(["a", "b"])
AB_IND = build_alphabet(["a", "b"], [("a", "b")])


def ct(alpha, text):
    return CompressedTrace.from_word(alpha, text)


def test_r_reduce_examples():
    assert r_reduce(ct(EXAMPLE, CORE_EX_X)).explicit() == tr(EXAMPLE, CORE_EX_NF)
    assert len(r_reduce(ct(EXAMPLE, "a a^-1"))) == 0
    x = ct(EXAMPLE, CORE_EX_NF)
    assert trace_equal(r_reduce(x), x)


def test_word_problem():
    assert is_trivial(ct(EXAMPLE, "a b b^-1 a^-1"))
    assert is_trivial(ct(AB_IND, "a b a^-1 b^-1"))
    assert not is_trivial(ct(AB_DEP, "a b a^-1 b^-1"))


def test_cinf_examples():
    u, v = ct(EXAMPLE, "a e a d b a c d d"), ct(EXAMPLE, "e a a b d c a e b")
    p, d0, d1 = cinf(u, v)
    assert (p.explicit(), d0.explicit(), d1.explicit()) == (tr(EXAMPLE, "a e a d b a c"), tr(EXAMPLE, "d d"), tr(EXAMPLE, "e b"))
    p, d0, d1 = cinf(u, u)
    assert trace_equal(p, u) and len(d0) == len(d1) == 0
    e = ct(EXAMPLE, "")
    p, d0, d1 = cinf(u, e)
    assert len(p) == 0 and trace_equal(d0, u) and len(d1) == 0


def test_csup_examples():
    u, v = ct(EXAMPLE, "a e a d b a c d d"), ct(EXAMPLE, "e a a b d c a e b")
    assert csup(u, v).explicit() == tr(EXAMPLE, "a e a d b a c d d e b")
    assert csup(ct(AB_DEP, "a b"), ct(AB_DEP, "b a")) is None
    b, e = ct(EXAMPLE, "b"), ct(EXAMPLE, "")
    assert csup_many([b, e, b]).explicit() == tr(EXAMPLE, "b")


def test_csup_many_cap():
    xs = [ct(AB_DEP, "a")] * 3
    with pytest.raises(ContractError):
        csup_many(xs)
    assert csup_many(xs, r=3).explicit() == tr(AB_DEP, "a")


def test_ccore_examples():
    c, d = ccore_with_conjugator(ct(EXAMPLE, CORE_EX_X))
    assert c.explicit() == tr(EXAMPLE, CORE_EX_CORE)
    y = ct(EXAMPLE, CORE_EX_CORE)
    assert trace_equal(ccore(y), y)


def test_ccore_of_conjugate():
    rng = random.Random(12)
    for _ in range(100):
        alpha = random_alphabet(rng)
        u = Trace(alpha, random_word(rng, alpha, rng.randint(0, 8)))
        g = random_word(rng, alpha, rng.randint(0, 5))
        cu = CompressedTrace.from_word(alpha, u.word)
        cg = CompressedTrace.from_word(alpha, g)
        c = ccore(cg * cu * cg.inverse()).explicit()
        assert is_cyclically_irreducible(c)
        assert c.parikh() == core_explicit(u).parikh()


def test_random_agreement():
    rng = random.Random(13)
    for _ in range(300):
        alpha = random_alphabet(rng)
        uw = random_word(rng, alpha, rng.randint(0, 12))
        vw = random_word(rng, alpha, rng.randint(0, 12))
        u, v = Trace(alpha, uw), Trace(alpha, vw)
        cu, cv = CompressedTrace(random_slp(rng, uw), alpha), CompressedTrace(random_slp(rng, vw), alpha)
        assert r_reduce(cu).explicit() == nf_R(u)
        assert tuple(x.explicit() for x in cinf(cu, cv)) == inf_diff(u, v)
        s = csup(cu, cv)
        assert (s.explicit() if s is not None else None) == sup(u, v)
        c, d = ccore_with_conjugator(cu)
        assert c.explicit() == core_explicit(u)
        assert nf_R(d.explicit() * c.explicit() * d.explicit().inverse()) == nf_R(u)


def test_guard_is_propagated():
    big = CompressedTrace(S.power(S.from_word("a b"), 1 << 12), AB_DEP)
    with pytest.raises(ResourceError):
        r_reduce(big, WordBackend(guard=1000))
