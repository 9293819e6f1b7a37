"""Is one compressed trace a factor of another?

Occurrences are Parikh vectors of the prefix in front of the pattern.  An
occurrence straddles the cut of exactly one nonterminal ``X -> Y Z`` of the
text.  Projected onto a dependent pair of letters, the traces become words
and the straddling occurrences of a word form one arithmetic progression.
Full occurrences at a cut are either *single* (some pair projection is the
first or last element of its progression, recovered one by one with
:func:`extend_single`) or *periodic* (interior everywhere, obtained by
amalgamating the pair progressions in :func:`periodic_at_cut`).
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

from . import slp as _slp
from .alphabet import IndependenceAlphabet, Letter, connected_components, dependence_order, is_connected_subset
from .ctrace import CompressedTrace
from .errors import ContractError
from .progression import ArithProgression, ParikhPoint, amalgamate
from .slp import REFERENCE, Slp, WordBackend, cut_occurrences, prefix_parikh, rank_before_select


class MatchInstance:
    """Text and pattern restricted to one dependence component of the text.

    Projections onto letter subsets keep the nonterminal correspondence
    ``X -> X^Γ`` so cuts can be compared across projections.
    """

    def __init__(self, text: Slp, pattern: Slp, alphabet: IndependenceAlphabet,
                 letters: Optional[list] = None, b: WordBackend = REFERENCE):
        self.text = text
        self.pattern = pattern
        self.alphabet = alphabet
        self.backend = b
        if letters is None:
            letters = alphabet.sort(_slp.parikh(text))
        self.letters = list(letters)
        self.pattern_letters = alphabet.sort(_slp.parikh(pattern))
        self.pattern_counts = _slp.parikh(pattern)
        self._proj: dict = {}
        self._pair: dict = {}
        self._pattern_proj: dict = {}
        self.check_assumption()

    def check_assumption(self) -> None:
        alpha, pl = self.alphabet, set(self.pattern_letters)
        if not is_connected_subset(alpha, self.letters):
            raise ContractError("text letters of a match instance must be connected")
        if not pl <= set(self.letters):
            raise ContractError("pattern letters must occur in the text")
        if not is_connected_subset(alpha, pl):
            raise ContractError("pattern alphabet is not connected")
        for x, y in combinations(self.letters, 2):
            if alpha.is_dependent(x, y) and x not in pl and y not in pl:
                raise ContractError(f"dependent pair ({x},{y}) avoids the pattern alphabet")

    def key(self, letters) -> tuple:
        return tuple(sorted(set(letters), key=self.alphabet.rank))

    def projection(self, letters):
        k = self.key(letters)
        if k not in self._proj:
            self._proj[k] = _slp.project_with_map(self.text, k)
        return self._proj[k]

    def pattern_projection(self, letters) -> Slp:
        k = self.key(letters)
        if k not in self._pattern_proj:
            self._pattern_proj[k] = _slp.project_slp(self.pattern, k)
        return self._pattern_proj[k]

    def binary_nonterminals(self) -> list:
        return [i for i in range(self.text.size) if self.text.term[i] is None]

    def support(self) -> tuple:
        return tuple(self.letters)

    def pair_progression(self, x: int, a: Letter, b: Letter) -> Optional[ArithProgression]:
        """Occurrences of the pattern projected to {a,b} at the cut of X^{a,b}."""
        k = (x,) + self.key((a, b))
        if k not in self._pair:
            proj, ids = self.projection((a, b))
            y, z = self.text.left[x], self.text.right[x]
            pat = self.pattern_projection((a, b))
            self._pair[k] = cut_occurrences(proj, ids[y], ids[z], pat, self.backend, support=self.key((a, b)))
        return self._pair[k]


def _resolve(inst: MatchInstance, x) -> int:
    i = inst.text.index_of(x) if isinstance(x, str) else x
    if inst.text.term[i] is not None:
        raise ContractError(f"nonterminal {inst.text.names[i]} is not binary")
    return i


def pair_cut_progression(inst: MatchInstance, x, a, b) -> Optional[ArithProgression]:
    alpha = inst.alphabet
    a, b = alpha.letter(a), alpha.letter(b)
    if alpha.is_independent(a, b):
        raise ContractError(f"({a},{b}) is not a dependent pair")
    prog = inst.pair_progression(_resolve(inst, x), a, b)
    return prog.reorder((a, b)) if prog is not None and a != b else prog


def _pair_occurs(inst: MatchInstance, x: int, e: Letter, d: Letter, oe: int, od: int) -> bool:
    """Is (oe, od) an occurrence of the {e,d}-projected pattern in the projected val(X)?"""
    proj, ids = inst.projection((e, d))
    root = ids[x]
    total = proj.lengths[root] if root is not None else 0
    pat = inst.pattern_projection((e, d))
    o = oe + od
    if o + len(pat) > total:
        return False
    before = prefix_parikh(proj, o, root) if root is not None else {}
    if before.get(e, 0) != oe or before.get(d, 0) != od:
        return False
    if len(pat) == 0:
        return True
    sub = _slp.substring_slp(proj.node(root), o + 1, o + len(pat))
    return inst.backend.equal(sub, pat)


def extend_single(inst: MatchInstance, x, seedpair, seed: ParikhPoint) -> Optional[ParikhPoint]:
    """Extend a pair occurrence at the cut of X to a full occurrence, if one exists."""
    alpha = inst.alphabet
    x = _resolve(inst, x)
    a, b = (alpha.letter(c) for c in seedpair)
    pl = inst.pattern_letters
    order = dependence_order(alpha, pl, seed=(a, b), letters=inst.letters)
    counts = {a: seed[a], b: seed[b]}
    text_counts = inst.text.parikh_of(x)
    for i in range(2, len(order)):
        d = order[i]
        delta = order[:i]
        c = next(c for c in delta if c in pl and alpha.is_dependent(c, d))
        k = rank_before_select(inst.pattern, c, 1, d)
        r = rank_before_select(inst.text, c, counts[c] + 1, d, root=x)
        if r is None or r - k < 0:
            return None
        od = r - k
        if od + inst.pattern_counts.get(d, 0) > text_counts.get(d, 0):
            return None
        for e in delta:
            if alpha.is_dependent(e, d) and not _pair_occurs(inst, x, e, d, counts[e], od):
                return None
        counts[d] = od
    return ParikhPoint.of(counts, inst.support())


def single_occurrences(inst: MatchInstance, x) -> set:
    """Occurrences at the cut of X whose projection onto some dependent pair
    inside the pattern alphabet is an end of that pair's progression."""
    alpha = inst.alphabet
    x = _resolve(inst, x)
    out = set()
    for a, b in combinations(inst.pattern_letters, 2):
        if alpha.is_independent(a, b):
            continue
        prog = inst.pair_progression(x, a, b)
        if prog is None:
            continue
        for seed in {prog.first, prog.last}:
            occ = extend_single(inst, x, (a, b), seed)
            if occ is not None:
                out.add(occ)
    return out


def periodic_at_cut(inst: MatchInstance, x, trim: bool = True) -> Optional[ArithProgression]:
    """Occurrences at the cut of X lying strictly inside every pair progression.

    With ``trim=False`` the pair progressions are amalgamated whole, which
    yields every occurrence whose pair projections all straddle the cut.
    """
    alpha = inst.alphabet
    x = _resolve(inst, x)
    pl = set(inst.pattern_letters)
    order = dependence_order(alpha, inst.pattern_letters, letters=inst.letters)
    first = order[0]
    acc = inst.pair_progression(x, first, first)
    if acc is None:
        return None
    for i in range(1, len(order)):
        a = order[i]
        for b in order[:i]:
            if alpha.is_independent(a, b):
                continue
            q = inst.pair_progression(x, a, b)
            if q is not None and trim and a in pl and b in pl:
                q = q.trimmed()
            if q is None:
                return None
            acc = amalgamate(acc, q)
            if acc is None:
                return None
    return acc.reorder(inst.support())


def occurrences_at_cut(inst: MatchInstance, x) -> tuple[set, Optional[ArithProgression]]:
    return single_occurrences(inst, x), periodic_at_cut(inst, x)


def _as_slp(t) -> Slp:
    return t.slp if isinstance(t, CompressedTrace) else t


def match_components(pattern, text, alphabet: IndependenceAlphabet):
    """Split text letters into dependence components and check the matcher's precondition.

    Returns ``None`` when a pattern letter is missing from the text (no match
    possible), else a list of (component letters, projected text, projected pattern).
    """
    text_slp, pat_slp = _as_slp(text), _as_slp(pattern)
    tl = set(_slp.parikh(text_slp))
    pl = set(_slp.parikh(pat_slp))
    if not pl <= tl:
        return None
    out = []
    for comp in connected_components(alphabet, tl):
        cp = [c for c in comp if c in pl]
        if not cp:
            continue
        if not is_connected_subset(alphabet, cp):
            raise ContractError(f"pattern letters {' '.join(map(str, cp))} are not connected within their text component")
        for u, v in combinations(comp, 2):
            if alphabet.is_dependent(u, v) and u not in pl and v not in pl:
                raise ContractError(f"dependent pair ({u},{v}) avoids the pattern alphabet")
        out.append((comp, _slp.project_slp(text_slp, comp), _slp.project_slp(pat_slp, comp)))
    return out


def _component_is_factor(inst: MatchInstance) -> bool:
    pat = inst.pattern
    if len(pat) == 0:
        return True
    if len(pat) == 1:
        return True  # the letter occurs in the text by construction
    for x in inst.binary_nonterminals():
        if single_occurrences(inst, x):
            return True
        if periodic_at_cut(inst, x) is not None:
            return True
    return False


def is_factor(pattern, text, alphabet: IndependenceAlphabet, b: WordBackend = REFERENCE) -> bool:
    """Is [val(pattern)] a factor of [val(text)] in the trace monoid?"""
    n = len(_as_slp(pattern))
    if n == 0:
        return True
    if n == 1:
        # a single letter is a factor iff it occurs; no precondition needed
        return set(_slp.parikh(_as_slp(pattern))) <= set(_slp.parikh(_as_slp(text)))
    comps = match_components(pattern, text, alphabet)
    if comps is None:
        return False
    for comp, t, p in comps:
        if not _component_is_factor(MatchInstance(t, p, alphabet, comp, b)):
            return False
    return True


def find_occurrences(pattern, text, alphabet: IndependenceAlphabet, b: WordBackend = REFERENCE) -> list:
    """Per component and binary nonterminal: (name, singles, periodic progression).

    A reporting helper; components without occurrences report nothing.
    """
    comps = match_components(pattern, text, alphabet)
    if comps is None:
        return []
    report = []
    for comp, t, p in comps:
        if len(p) < 2:
            continue
        inst = MatchInstance(t, p, alphabet, comp, b)
        for x in inst.binary_nonterminals():
            singles, periodic = occurrences_at_cut(inst, x)
            if singles or periodic is not None:
                report.append((comp, t.names[x], sorted(singles, key=lambda q: q.counts), periodic))
    return report
