import random

import pytest

from raag.progression import ArithProgression, ParikhPoint, amalgamate


def P(support, init, delta, steps):
    return ArithProgression.make(list(support), init, delta, steps)


def brute(p, q):
    support = p.support + tuple(x for x in q.support if x not in p.support)
    out = set()
    for u in p:
        for v in q:
            du, dv = u.as_dict(), v.as_dict()
            if all(du[x] == dv[x] for x in du if x in dv):
                m = {**du, **dv}
                out.add(tuple(m[x] for x in support))
    return out


def test_worked_amalgamations():
    pab = P("ab", (2, 2), (1, 1), 3)
    pbc = P("bc", (1, 2), (1, 2), 4)
    pcd = P("cd", (2, 1), (1, 0), 7)
    pabc = amalgamate(pab, pbc)
    assert str(pabc) == "((2,2,4),(1,1,2),3)"
    assert str(amalgamate(pabc, pcd)) == "((2,2,4,1),(1,1,2,0),2)"


def test_parity_mismatch_is_empty():
    assert amalgamate(P("a", (0,), (2,), 5), P("a", (1,), (2,), 5)) is None


def test_no_shared_letter():
    with pytest.raises(ValueError):
        amalgamate(P("a", (0,), (1,), 2), P("b", (0,), (1,), 2))


def test_grid_case_rejected():
    with pytest.raises(ValueError):
        amalgamate(P("ab", (1, 0), (0, 1), 2), P("ac", (1, 0), (0, 1), 2))


def test_normalization():
    p = P("ab", (1, 2), (3, 4), 0)
    assert p.delta.counts == (0, 0)
    q = P("ab", (1, 2), (0, 0), 5)
    assert q.steps == 0
    with pytest.raises(ValueError):
        P("a", (3,), (-2,), 2)
    assert P("ab", (1, 1), (1, 2), 3).trimmed() == P("ab", (2, 3), (1, 2), 1)
    assert P("ab", (1, 1), (1, 2), 1).trimmed() is None


def test_membership_and_points():
    p = P("ab", (2, 2), (1, 1), 3)
    assert [str(x) for x in p] == ["(2,2)", "(3,3)", "(4,4)", "(5,5)"]
    assert ParikhPoint.of({"a": 4, "b": 4}, "ab") in p
    assert ParikhPoint.of({"a": 4, "b": 5}, "ab") not in p
    assert ParikhPoint.of({"a": 6, "b": 6}, "ab") not in p


def test_amalgamate_matches_brute_force():
    rng = random.Random(7)
    for _ in range(3000):
        sp = rng.choice(["ab", "a", "abc", "b"])
        sq = rng.choice(["bc", "b", "ab", "bcd"])
        if not set(sp) & set(sq):
            continue
        p = P(sp, [rng.randint(0, 6) for _ in sp], [rng.randint(0, 3) for _ in sp], rng.randint(0, 6))
        q = P(sq, [rng.randint(0, 6) for _ in sq], [rng.randint(0, 3) for _ in sq], rng.randint(0, 6))
        expect = brute(p, q)
        try:
            r = amalgamate(p, q)
        except ValueError:
            # only the genuinely two-dimensional case may refuse
            assert len(expect) > len(p) and len(expect) > len(q)
            continue
        got = set() if r is None else {x.counts for x in r}
        assert got == expect, (p, q, r)
