"""Explicit traces over an independence alphabet.

A :class:`Trace` stores the lexicographically least word of its class, so
trace equality is plain tuple equality.  The algorithms walk a dependence
graph whose edges go from each position to the nearest earlier position of
every dependent letter; that graph has the same reachability as the full
dependence graph but only ``O(n |Sigma|)`` edges.

The ``*_oracle`` helpers enumerate prefixes exhaustively and are meant for
test-sized inputs only.
"""
from __future__ import annotations

import heapq
from collections import deque
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .alphabet import IndependenceAlphabet, Letter, format_word, inverse_word, parse_word
from .errors import ContractError
from .progression import ParikhPoint

ORACLE_LIMIT = 16


class _Graph:
    """Consumable dependence graph of a word: pop minimal letters one by one."""

    def __init__(self, alpha: IndependenceAlphabet, word: Sequence[Letter]):
        self.word = word
        n = len(word)
        self.indeg = [0] * n
        self.succ: list = [[] for _ in range(n)]
        self.queues: dict = {}
        last: dict = {}
        for j, x in enumerate(word):
            preds = set()
            for base in alpha.dependent_of(x):
                i = last.get(base)
                if i is not None:
                    preds.add(i)
            for i in preds:
                self.succ[i].append(j)
            self.indeg[j] = len(preds)
            last[x.base] = j
            self.queues.setdefault(x, deque()).append(j)
        self.remaining = n

    def is_min(self, x: Letter) -> bool:
        q = self.queues.get(x)
        return bool(q) and self.indeg[q[0]] == 0

    def minimal(self) -> list:
        return [x for x, q in self.queues.items() if q and self.indeg[q[0]] == 0]

    def pop(self, x: Letter) -> list:
        """Remove the minimal occurrence of ``x``; return letters that became minimal."""
        j = self.queues[x].popleft()
        self.remaining -= 1
        freed = []
        for k in self.succ[j]:
            self.indeg[k] -= 1
            if self.indeg[k] == 0:
                freed.append(self.word[k])
        if self.queues[x] and self.indeg[self.queues[x][0]] == 0:
            freed.append(x)
        return freed

    def rest(self) -> list:
        alive = set()
        for q in self.queues.values():
            alive.update(q)
        return [self.word[j] for j in sorted(alive)]


def _lex_least(alpha: IndependenceAlphabet, word: Sequence[Letter]) -> tuple:
    g = _Graph(alpha, word)
    heap = [(alpha.rank(x), x) for x in g.minimal()]
    heapq.heapify(heap)
    out = []
    while heap:
        _, x = heapq.heappop(heap)
        if not g.is_min(x):
            continue
        out.append(x)
        for y in g.pop(x):
            heapq.heappush(heap, (alpha.rank(y), y))
    return tuple(out)


class Trace:
    """An element of the trace monoid, kept in canonical (lex-least) form."""

    __slots__ = ("alphabet", "word")

    def __init__(self, alphabet: IndependenceAlphabet, word: Iterable[Letter], _canonical: bool = False):
        self.alphabet = alphabet
        word = tuple(word)
        if not _canonical:
            for x in word:
                alphabet.base_of(x)
            word = _lex_least(alphabet, word)
        self.word = word

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return self.word == other.word and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return hash(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_word(self.word) or "1"

    def __repr__(self) -> str:
        return f"Trace({str(self)!r})"

    def __mul__(self, other: "Trace") -> "Trace":
        return Trace(self.alphabet, self.word + other.word)

    def inverse(self) -> "Trace":
        return Trace(self.alphabet, inverse_word(self.word))

    def alph(self) -> set:
        return set(self.word)

    def parikh(self) -> dict:
        out: dict = {}
        for x in self.word:
            out[x] = out.get(x, 0) + 1
        return out

    def min(self) -> set:
        return set(_Graph(self.alphabet, self.word).minimal())

    def max(self) -> set:
        rev = Trace(self.alphabet, tuple(reversed(self.word)), _canonical=True)
        return rev.min()


def canonicalize(alpha: IndependenceAlphabet, w) -> Trace:
    word = parse_word(w) if isinstance(w, str) else w
    return Trace(alpha, word)


def _as_trace(alpha: IndependenceAlphabet, t) -> Trace:
    return t if isinstance(t, Trace) else canonicalize(alpha, t)


def inf_diff(u: Trace, v: Trace) -> tuple[Trace, Trace, Trace]:
    """``(u ⊓ v, u ∖ v, v ∖ u)`` by repeatedly removing common minimal letters."""
    alpha = u.alphabet
    gu, gv = _Graph(alpha, u.word), _Graph(alpha, v.word)
    common = deque(x for x in gu.minimal() if gv.is_min(x))
    prefix = []
    while common:
        x = common.popleft()
        if not (gu.is_min(x) and gv.is_min(x)):
            continue
        prefix.append(x)
        for y in set(gu.pop(x) + gv.pop(x)):
            if gu.is_min(y) and gv.is_min(y):
                common.append(y)
    return Trace(alpha, prefix), Trace(alpha, gu.rest()), Trace(alpha, gv.rest())


def inf(u: Trace, v: Trace) -> Trace:
    return inf_diff(u, v)[0]


def prefix_of(u: Trace, w: Trace) -> bool:
    return len(inf_diff(u, w)[1]) == 0


def left_quotient(u: Trace, w: Trace) -> Optional[Trace]:
    """The trace ``v`` with ``u v = w``, or ``None`` if ``u`` is no prefix."""
    p, du, dw = inf_diff(u, w)
    return dw if len(du) == 0 else None


def sup(u: Trace, v: Trace) -> Optional[Trace]:
    p, du, dv = inf_diff(u, v)
    if not u.alphabet.words_independent(du.word, dv.word):
        return None
    return Trace(u.alphabet, p.word + du.word + dv.word)


def sup_many(traces: Sequence[Trace]) -> Optional[Trace]:
    """Left fold of :func:`sup`; the supremum of nothing is the empty trace."""
    if not traces:
        raise ContractError("sup_many needs at least one trace")
    acc = traces[0]
    for t in traces[1:]:
        acc = sup(acc, t)
        if acc is None:
            return None
    return acc


def _free_reduce_indices(alpha: IndependenceAlphabet, word: Sequence[Letter]) -> list:
    # one pile per base letter; a pile holds (sign, position) for the letter
    # itself and a blocker (0, -1) for each dependent letter seen since
    piles: dict = {tok: [] for tok in alpha.letters}
    alive = [True] * len(word)
    for j, x in enumerate(word):
        pile = piles[x.base]
        if pile and pile[-1][0] == -x.sign:
            _, i = pile.pop()
            alive[i] = alive[j] = False
            for base in alpha.dependent_of(x):
                if base != x.base:
                    piles[base].pop()
        else:
            pile.append((x.sign, j))
            for base in alpha.dependent_of(x):
                if base != x.base:
                    piles[base].append((0, -1))
    return [j for j in range(len(word)) if alive[j]]


def nf_R(u: Trace) -> Trace:
    """Normal form modulo ``a a^-1 -> 1`` (a word-problem solver for graph groups)."""
    keep = _free_reduce_indices(u.alphabet, u.word)
    return Trace(u.alphabet, [u.word[j] for j in keep])


def is_irreducible(u: Trace) -> bool:
    return len(_free_reduce_indices(u.alphabet, u.word)) == len(u.word)


def is_cyclically_irreducible(u: Trace) -> bool:
    return is_irreducible(u) and not (u.min() & u.inverse().min())


def core_with_conjugator(u: Trace) -> tuple[Trace, Trace]:
    """``(core, d)`` with ``NF_R(u) = d core d^-1``."""
    x = nf_R(u)
    d = inf(x, x.inverse())
    core = nf_R(Trace(u.alphabet, inverse_word(d.word) + list(x.word) + list(d.word)))
    return core, d


def core_explicit(u: Trace) -> Trace:
    return core_with_conjugator(u)[0]


def split_independent_suffix(t: Trace, a: Letter) -> tuple[Trace, Trace]:
    """The unique ``t = u1 u2`` with ``u2 I a`` and ``|u2|`` maximal."""
    alpha = t.alphabet
    free = alpha.independent_of(a)
    blocked: set = set()
    tail = [False] * len(t.word)
    for j in range(len(t.word) - 1, -1, -1):
        x = t.word[j]
        if x.base in free and x.base not in blocked:
            tail[j] = True
        else:
            blocked |= alpha.dependent_of(x)
    u1 = [x for x, f in zip(t.word, tail) if not f]
    u2 = [x for x, f in zip(t.word, tail) if f]
    return Trace(alpha, u1), Trace(alpha, u2)


# -- exhaustive oracles -------------------------------------------------------


def _guard(*traces: Trace, limit: int = ORACLE_LIMIT) -> None:
    for t in traces:
        if len(t) > limit:
            raise ContractError(f"oracle limited to traces of length {limit}, got {len(t)}")


def prefixes(t: Trace) -> Iterator[tuple[Trace, Trace]]:
    """All factorizations ``t = u v`` as pairs ``(u, v)``."""
    alpha = t.alphabet
    seen = {()}
    stack = [((), t.word)]
    while stack:
        u, v = stack.pop()
        yield Trace(alpha, u, _canonical=True), Trace(alpha, v, _canonical=True)
        rest = Trace(alpha, v, _canonical=True)
        for x in rest.min():
            nu = Trace(alpha, u + (x,)).word
            if nu in seen:
                continue
            seen.add(nu)
            stack.append((nu, left_quotient(Trace(alpha, (x,), True), rest).word))


def factor_occurrences_oracle(p: Trace, t: Trace, support: Optional[Sequence] = None, limit: int = ORACLE_LIMIT) -> set:
    """Parikh vectors of every prefix ``u`` of ``t`` with ``u p`` a prefix of ``t``."""
    _guard(t, limit=limit)
    alpha = t.alphabet
    if support is None:
        support = alpha.sort(set(t.word) | set(p.word))
    out = set()
    for u, v in prefixes(t):
        if prefix_of(p, v):
            out.add(ParikhPoint.of(u.parikh(), support))
    return out


def is_factor_oracle(p: Trace, t: Trace) -> bool:
    _guard(t, limit=4 * ORACLE_LIMIT)
    for _, v in prefixes(t):
        if prefix_of(p, v):
            return True
    return False


def transpositions(t: Trace) -> set:
    return {Trace(t.alphabet, v.word + u.word) for u, v in prefixes(t)}


def cyclic_reduce_oracle(u: Trace) -> Trace:
    """Strip ``x ... x^-1`` with ``x`` minimal and ``x^-1`` maximal until none is left."""
    w = nf_R(u)
    while True:
        mx = w.max()
        x = next((x for x in w.min() if x.inverse() in mx and len(w) > 1), None)
        if x is None:
            return w
        w = left_quotient(Trace(w.alphabet, (x,)), w)
        w = left_quotient(Trace(w.alphabet, (x,)), w.inverse()).inverse()


def conjugate_oracle(u: Trace, v: Trace) -> bool:
    """Conjugacy in the graph group via the transposition closure of the
    cyclically reduced forms (stripped letter by letter, not via infima)."""
    cu, cv = cyclic_reduce_oracle(u), cyclic_reduce_oracle(v)
    _guard(cu, cv)
    if cu.parikh() != cv.parikh():
        return False
    seen = {cu}
    queue = deque([cu])
    while queue:
        w = queue.popleft()
        if w == cv:
            return True
        for z in transpositions(w):
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return False


def levi_decompositions(u1: Trace, u2: Trace, v1: Trace, v2: Trace) -> set:
    """Every ``(x, y1, y2, z)`` with ``u1 = x y1``, ``u2 = y2 z``, ``v1 = x y2``, ``v2 = y1 z``, ``y1 I y2``."""
    if u1 * u2 != v1 * v2:
        raise ContractError("levi_decompositions needs u1 u2 = v1 v2")
    _guard(u1, v1)
    alpha = u1.alphabet
    out = set()
    for x, y1 in prefixes(u1):
        y2 = left_quotient(x, v1)
        if y2 is None or not alpha.words_independent(y1.word, y2.word):
            continue
        z = left_quotient(y2, u2)
        if z is not None and y1 * z == v2:
            out.add((x, y1, y2, z))
    return out


def rewrite_normal_forms(u: Trace) -> set:
    """All irreducible traces reachable by cancelling ``[a a^-1]`` factors in any order."""
    _guard(u, limit=2 * ORACLE_LIMIT)
    alpha = u.alphabet
    results = set()
    seen = {u.word}
    stack = [u.word]
    while stack:
        w = stack.pop()
        reducible = False
        for i, j in _cancellable_pairs(alpha, w):
            reducible = True
            nw = Trace(alpha, w[:i] + w[i + 1:j] + w[j + 1:]).word
            if nw not in seen:
                seen.add(nw)
                stack.append(nw)
        if not reducible:
            results.add(Trace(alpha, w, _canonical=True))
    return results


def _cancellable_pairs(alpha: IndependenceAlphabet, w: Sequence[Letter]):
    for i, x in enumerate(w):
        for j in range(i + 1, len(w)):
            y = w[j]
            if y == x.inverse():
                yield i, j
            if alpha.is_dependent(x, y):
                break


def trace_words(alpha: IndependenceAlphabet, letters: Sequence[Letter], n: int) -> Iterator[tuple]:
    """All words of length ``n`` over ``letters`` (test helper)."""
    return product(letters, repeat=n)
