"""Straight-line programs in Chomsky normal form.

Nonterminals are numbered in topological order (children before parents);
rule ``i`` is either a terminal :class:`Letter` or a pair ``(left, right)``.
The designated empty program has no rules and ``start is None``.

Everything that only needs lengths and letter counts (indexing, slicing,
powers, projection, rank/select) works directly on the grammar.  Questions
that need to compare long stretches of derived text (equality, occurrences)
go through a :class:`WordBackend`.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .alphabet import TOKEN_RE, Letter, format_word, parse_word
from .errors import ContractError, ResourceError, ValidationError
from .progression import ArithProgression

DEFAULT_GUARD = 1 << 20


class _Builder:
    """Hash-consing rule store used to assemble new programs."""

    def __init__(self):
        self.left: list = []
        self.right: list = []
        self.term: list = []
        self.memo: dict = {}
        self.length: list = []

    def terminal(self, x: Letter) -> int:
        key = ("t", x)
        if key not in self.memo:
            self.memo[key] = len(self.term)
            self.left.append(-1)
            self.right.append(-1)
            self.term.append(x)
            self.length.append(1)
        return self.memo[key]

    def pair(self, a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        key = (a, b)
        if key not in self.memo:
            self.memo[key] = len(self.term)
            self.left.append(a)
            self.right.append(b)
            self.term.append(None)
            self.length.append(self.length[a] + self.length[b])
        return self.memo[key]

    def balanced(self, ids: Sequence[Optional[int]]) -> Optional[int]:
        ids = [i for i in ids if i is not None]
        if not ids:
            return None
        while len(ids) > 1:
            nxt = [self.pair(ids[k], ids[k + 1]) for k in range(0, len(ids) - 1, 2)]
            if len(ids) % 2:
                nxt.append(ids[-1])
            ids = nxt
        return ids[0]

    def word(self, word: Sequence[Letter]) -> Optional[int]:
        return self.balanced([self.terminal(x) for x in word])

    def absorb(self, s: "Slp") -> list:
        """Copy the rules of ``s``; returns the id map old -> new."""
        ids: list = []
        for i in range(len(s.term)):
            t = s.term[i]
            ids.append(self.terminal(t) if t is not None else self.pair(ids[s.left[i]], ids[s.right[i]]))
        return ids

    def finish(self, start: Optional[int], names: Optional[Mapping[int, str]] = None) -> "Slp":
        if start is None:
            return Slp.empty()
        # keep the rules reachable from start, renumbered in topological order
        seen = set()
        order = []
        stack = [(start, False)]
        while stack:
            i, done = stack.pop()
            if done:
                order.append(i)
                continue
            if i in seen:
                continue
            seen.add(i)
            stack.append((i, True))
            if self.term[i] is None:
                stack.append((self.right[i], False))
                stack.append((self.left[i], False))
        new = {old: k for k, old in enumerate(order)}
        left = [new[self.left[i]] if self.term[i] is None else -1 for i in order]
        right = [new[self.right[i]] if self.term[i] is None else -1 for i in order]
        term = [self.term[i] for i in order]
        out_names = None
        if names:
            out_names = [names.get(i, f"_N{k}") for k, i in enumerate(order)]
            # a name may label several ids after merging; keep them unique
            if len(set(out_names)) != len(out_names):
                seen_names: set = set()
                for k, nm in enumerate(out_names):
                    if nm in seen_names:
                        out_names[k] = f"_N{k}"
                    seen_names.add(out_names[k])
        return Slp(left, right, term, new[start], out_names)


class Slp:
    """An immutable straight-line program in Chomsky normal form."""

    __slots__ = ("left", "right", "term", "start", "names", "lengths", "_parikh", "_depth")

    def __init__(self, left, right, term, start, names=None):
        self.left = tuple(left)
        self.right = tuple(right)
        self.term = tuple(term)
        self.start = start
        n = len(self.term)
        if names is None:
            names = [f"_N{i}" for i in range(n)]
        self.names = tuple(names)
        lengths = []
        for i in range(n):
            if self.term[i] is not None:
                lengths.append(1)
            else:
                l, r = self.left[i], self.right[i]
                if not (0 <= l < i and 0 <= r < i):
                    raise ValidationError("rules must be topologically ordered")
                lengths.append(lengths[l] + lengths[r])
        self.lengths = tuple(lengths)
        self._parikh = None
        self._depth = None

    # -- construction ------------------------------------------------------

    @classmethod
    def empty(cls) -> "Slp":
        return cls((), (), (), None)

    @classmethod
    def from_productions(cls, productions: Mapping[str, Sequence], start: str) -> "Slp":
        """Normalize an arbitrary straight-line grammar to Chomsky normal form.

        ``productions`` maps a nonterminal name to its right-hand side: a
        sequence of nonterminal names and :class:`Letter` terminals (possibly
        empty).  Epsilon rules, unit chains and unreachable rules disappear.
        """
        if start not in productions:
            raise ValidationError(f"start symbol {start!r} has no production")
        state: dict = {}
        b = _Builder()
        names: dict = {}

        def visit(root):
            stack = [(root, False)]
            while stack:
                nt, expanded = stack.pop()
                if state.get(nt) == "done":
                    continue
                if expanded:
                    parts = []
                    for sym in productions[nt]:
                        parts.append(b.terminal(sym) if isinstance(sym, Letter) else done[sym])
                    done[nt] = b.balanced(parts)
                    if done[nt] is not None:
                        names.setdefault(done[nt], nt)
                    state[nt] = "done"
                    continue
                if state.get(nt) == "open":
                    raise ValidationError(f"cyclic production through {nt!r}")
                state[nt] = "open"
                stack.append((nt, True))
                for sym in productions[nt]:
                    if isinstance(sym, Letter):
                        continue
                    if sym not in productions:
                        raise ValidationError(f"undefined nonterminal {sym!r}")
                    if state.get(sym) == "open":
                        raise ValidationError(f"cyclic production through {sym!r}")
                    if state.get(sym) is None:
                        stack.append((sym, False))

        done: dict = {}
        visit(start)
        return b.finish(done[start], names)

    def builder(self) -> tuple[_Builder, list]:
        b = _Builder()
        return b, b.absorb(self)

    # -- basic metadata ----------------------------------------------------

    def __len__(self) -> int:
        return 0 if self.start is None else self.lengths[self.start]

    @property
    def size(self) -> int:
        return len(self.term)

    def is_empty(self) -> bool:
        return self.start is None

    def is_binary(self, i: int) -> bool:
        return self.term[i] is None

    def parikh_of(self, i: int) -> dict:
        if self._parikh is None:
            table: list = []
            for k in range(len(self.term)):
                t = self.term[k]
                if t is not None:
                    table.append({t: 1})
                else:
                    c = dict(table[self.left[k]])
                    for x, m in table[self.right[k]].items():
                        c[x] = c.get(x, 0) + m
                    table.append(c)
            self._parikh = table
        return self._parikh[i]

    def depth(self) -> int:
        if self._depth is None:
            d: list = []
            for k in range(len(self.term)):
                d.append(0 if self.term[k] is not None else 1 + max(d[self.left[k]], d[self.right[k]]))
            self._depth = d[self.start] if self.start is not None else 0
        return self._depth

    def alph(self) -> set:
        return set(parikh(self))

    def node(self, i: int) -> "Slp":
        """The program deriving val(X) for nonterminal ``i``."""
        b, ids = self.builder()
        return b.finish(ids[i], dict(enumerate(self.names)))

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"no nonterminal named {name!r}") from None

    def expand_node(self, i: Optional[int], limit: Optional[int] = None) -> list:
        if i is None:
            return []
        if limit is not None and self.lengths[i] > limit:
            raise ResourceError(f"word of length {self.lengths[i]} exceeds guard {limit}")
        out = []
        stack = [i]
        while stack:
            k = stack.pop()
            t = self.term[k]
            if t is not None:
                out.append(t)
            else:
                stack.append(self.right[k])
                stack.append(self.left[k])
        return out

    def expand(self, limit: Optional[int] = None) -> list:
        return self.expand_node(self.start, limit)

    def __repr__(self) -> str:
        return f"<Slp size={self.size} length={len(self)}>"

    def to_text(self, name: str = "S") -> str:
        """Serialize as an ``slp NAME { ... }`` block."""
        if self.start is None:
            return f"slp {name} {{ {name}_e -> ; start {name}_e }}"
        # lowercase names could be read back as letters
        nm = [f"N_{x}" if TOKEN_RE.match(x) else x for x in self.names]
        if len(set(nm)) != len(nm):
            nm = [f"N{i}" for i in range(len(nm))]
        lines = [f"slp {name} {{"]
        for i in range(len(self.term)):
            t = self.term[i]
            rhs = str(t) if t is not None else f"{nm[self.left[i]]} {nm[self.right[i]]}"
            lines.append(f"  {nm[i]} -> {rhs} ;")
        lines.append(f"  start {nm[self.start]}")
        lines.append("}")
        return "\n".join(lines)


# -- constructors and algebra ---------------------------------------------


def from_word(w: Union[str, Iterable[Letter]]) -> Slp:
    word = parse_word(w)
    b = _Builder()
    return b.finish(b.word(word))


def length(s: Slp) -> int:
    return len(s)


def parikh(s: Slp) -> dict:
    if s.start is None:
        return {}
    return dict(s.parikh_of(s.start))


def letter_at(s: Slp, i: int) -> Letter:
    """val(s)[i], 1-based."""
    if not 1 <= i <= len(s):
        raise IndexError(f"index {i} out of range 1..{len(s)}")
    k, pos = s.start, i - 1
    while s.term[k] is None:
        ll = s.lengths[s.left[k]]
        if pos < ll:
            k = s.left[k]
        else:
            k, pos = s.right[k], pos - ll
    return s.term[k]


def _slice_into(b: _Builder, s: Slp, ids: list, root: int, lo: int, hi: int) -> Optional[int]:
    """Builder id deriving val(root)[lo:hi] (0-based, half open)."""
    if lo >= hi:
        return None
    # descend while the window sits inside one child
    k = root
    while True:
        if lo == 0 and hi == s.lengths[k]:
            return ids[k]
        ll = s.lengths[s.left[k]]
        if hi <= ll:
            k = s.left[k]
        elif lo >= ll:
            k, lo, hi = s.right[k], lo - ll, hi - ll
        else:
            break
    # split node: a suffix of the left child and a prefix of the right child
    head = hi - ll
    suffix_parts = []
    node, cut = s.left[k], lo
    while cut > 0:
        l1 = s.lengths[s.left[node]]
        if cut >= l1:
            node, cut = s.right[node], cut - l1
        else:
            suffix_parts.append(ids[s.right[node]])
            node = s.left[node]
    suffix = ids[node]
    for part in reversed(suffix_parts):
        suffix = b.pair(suffix, part)
    prefix_parts = []
    node, cut = s.right[k], head
    while cut < s.lengths[node]:
        ll2 = s.lengths[s.left[node]]
        if cut <= ll2:
            node = s.left[node]
        else:
            prefix_parts.append(ids[s.left[node]])
            node, cut = s.right[node], cut - ll2
    prefix = ids[node]
    for part in reversed(prefix_parts):
        prefix = b.pair(part, prefix)
    return b.pair(suffix, prefix)


def substring_slp(s: Slp, i: int, j: int) -> Slp:
    """Program for val(s)[i:j] (1-based, inclusive); empty when i = j + 1."""
    if not (1 <= i <= j + 1 and j <= len(s)):
        raise IndexError(f"bad range [{i}:{j}] for length {len(s)}")
    if i > j:
        return Slp.empty()
    b, ids = s.builder()
    return b.finish(_slice_into(b, s, ids, s.start, i - 1, j))


def concat(*parts: Slp) -> Slp:
    b = _Builder()
    roots = []
    for s in parts:
        if s.start is not None:
            roots.append(b.absorb(s)[s.start])
    return b.finish(b.balanced(roots))


def power(x: Slp, k: int) -> Slp:
    """val(x)^k by repeated squaring."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    if k == 0 or x.start is None:
        return Slp.empty()
    b, ids = x.builder()
    acc, sq = None, ids[x.start]
    while k:
        if k & 1:
            acc = b.pair(acc, sq)
        k >>= 1
        if k:
            sq = b.pair(sq, sq)
    return b.finish(acc)


def inverse_slp(s: Slp) -> Slp:
    """Swap children and invert terminals: val becomes val(s)^-1."""
    term = [t.inverse() if t is not None else None for t in s.term]
    return Slp(s.right, s.left, term, s.start, s.names)


def project_with_map(s: Slp, gamma: Iterable) -> tuple[Slp, list]:
    """Projection onto ``gamma`` plus the map from old nonterminals to new ones.

    ``gamma`` may hold letters or base tokens; a base token keeps both signs.
    A map entry is ``None`` where the projected nonterminal derives epsilon.
    The returned program is not compacted, so every mapped id is valid.
    """
    keep = set(gamma)
    b = _Builder()
    ids: list = []
    for i in range(len(s.term)):
        t = s.term[i]
        if t is not None:
            ids.append(b.terminal(t) if (t in keep or t.base in keep) else None)
        else:
            ids.append(b.pair(ids[s.left[i]], ids[s.right[i]]))
    root = ids[s.start] if s.start is not None else None
    if root is None:
        return Slp.empty(), ids
    # a projected rule inherits the name of the first rule mapped onto it
    names = [None] * len(b.term)
    for i, k in enumerate(ids):
        if k is not None and names[k] is None:
            names[k] = s.names[i]
    names = [nm if nm is not None else f"_N{k}" for k, nm in enumerate(names)]
    return Slp(b.left, b.right, b.term, root, names), ids


def project_slp(s: Slp, gamma: Iterable) -> Slp:
    proj, _ = project_with_map(s, gamma)
    if proj.start is None:
        return proj
    b, ids = proj.builder()
    return b.finish(ids[proj.start], {ids[k]: nm for k, nm in reversed(list(enumerate(proj.names)))})


# -- compressed-native queries --------------------------------------------


def prefix_parikh(s: Slp, n: int, root: Optional[int] = None) -> dict:
    """Letter counts of the first ``n`` letters of val(root)."""
    k = s.start if root is None else root
    out: dict = {}
    if k is None or n <= 0:
        return out
    if n > s.lengths[k]:
        raise IndexError("prefix longer than the word")
    while n > 0:
        if n == s.lengths[k]:
            for x, m in s.parikh_of(k).items():
                out[x] = out.get(x, 0) + m
            break
        ll = s.lengths[s.left[k]]
        if n <= ll:
            k = s.left[k]
        else:
            for x, m in s.parikh_of(s.left[k]).items():
                out[x] = out.get(x, 0) + m
            k, n = s.right[k], n - ll
    return out


def rank_before_select(t: Slp, select: Letter, m: int, count: Letter, root: Optional[int] = None) -> Optional[int]:
    """Number of ``count`` letters before the m-th ``select`` in val(t)."""
    k = t.start if root is None else root
    if k is None or m < 1 or t.parikh_of(k).get(select, 0) < m:
        return None
    seen = 0
    while t.term[k] is None:
        left = t.parikh_of(t.left[k])
        have = left.get(select, 0)
        if m <= have:
            k = t.left[k]
        else:
            seen += left.get(count, 0)
            m -= have
            k = t.right[k]
    return seen


# -- backend ----------------------------------------------------------------


_MOD = (1 << 61) - 1


@dataclass(frozen=True)
class WordBackend:
    """How questions about long derived words are answered.

    ``reference`` materializes words up to ``guard`` letters and raises
    :class:`ResourceError` beyond that; it never answers wrongly.
    ``compressed`` decides equality on polynomial fingerprints computed on
    the grammar (exact when they differ, confirmed by expansion when within
    the guard, Monte Carlo otherwise).  Occurrence progressions and trace
    operations use the reference routines in both modes.
    """

    mode: str = "reference"
    guard: int = DEFAULT_GUARD
    seed: int = 0x5EED

    def __post_init__(self):
        if self.mode not in ("reference", "compressed"):
            raise ValueError(f"unknown backend mode {self.mode!r}")

    def expand(self, s: Slp) -> list:
        return s.expand(self.guard)

    def expand_node(self, s: Slp, i: Optional[int]) -> list:
        return s.expand_node(i, self.guard)

    def check(self, n: int) -> None:
        if n > self.guard:
            raise ResourceError(f"word of length {n} exceeds guard {self.guard}")

    def _fingerprint(self, s: Slp, root: Optional[int] = None) -> int:
        k = s.start if root is None else root
        if k is None:
            return 0
        rng = random.Random(self.seed)
        base = rng.randrange(2, _MOD - 1)
        codes: dict = {}
        hv: list = []
        for i in range(k + 1):
            t = s.term[i]
            if t is not None:
                if t not in codes:
                    codes[t] = random.Random(f"{self.seed}:{t}").randrange(1, _MOD)
                hv.append(codes[t])
            else:
                r = s.right[i]
                hv.append((hv[s.left[i]] * pow(base, s.lengths[r], _MOD) + hv[r]) % _MOD)
        return hv[k]

    def equal(self, x: Slp, y: Slp) -> bool:
        if len(x) != len(y):
            return False
        if parikh(x) != parikh(y):
            return False
        if self.mode == "compressed":
            if self._fingerprint(x) != self._fingerprint(y):
                return False
            if len(x) > self.guard:
                return True
        return self.expand(x) == self.expand(y)


REFERENCE = WordBackend()


def equal_words(x: Slp, y: Slp, b: WordBackend = REFERENCE) -> bool:
    return b.equal(x, y)


def _find_all(text: Sequence, pat: Sequence) -> list:
    """All start offsets of ``pat`` in ``text`` (Knuth-Morris-Pratt)."""
    m = len(pat)
    if m == 0:
        return list(range(len(text) + 1))
    fail = [0] * m
    k = 0
    for i in range(1, m):
        while k and pat[i] != pat[k]:
            k = fail[k - 1]
        if pat[i] == pat[k]:
            k += 1
        fail[i] = k
    out = []
    k = 0
    for i, c in enumerate(text):
        while k and c != pat[k]:
            k = fail[k - 1]
        if c == pat[k]:
            k += 1
        if k == m:
            out.append(i - m + 1)
            k = fail[k - 1]
    return out


def cut_occurrences(
    t: Slp,
    y: Optional[int],
    z: Optional[int],
    p: Slp,
    b: WordBackend = REFERENCE,
    support: Optional[Sequence[Letter]] = None,
) -> Optional[ArithProgression]:
    """Occurrences of val(p) in val(y)val(z) straddling the boundary.

    ``y`` and ``z`` are nonterminals of ``t`` (``None`` derives epsilon).
    Positions are reported as Parikh points of the prefix in front of the
    occurrence, over ``support`` (default: letters of val(p) and the window).
    """
    m = len(p)
    ly = t.lengths[y] if y is not None else 0
    lz = t.lengths[z] if z is not None else 0
    if m == 0 or ly == 0 or lz == 0 or m < 2:
        return None
    b.check(3 * m)
    pat = b.expand(p)
    wl = min(m - 1, ly)
    wr = min(m - 1, lz)
    left = _tail(t, y, wl)
    right = _head(t, z, wr)
    window = left + right
    offsets = [o for o in _find_all(window, pat) if o < wl and o + m > wl]
    if not offsets:
        return None
    base_counts = t.parikh_of(y)
    if support is None:
        support = sorted(set(pat) | set(window), key=lambda x: (x.base, -x.sign))
    support = tuple(support)

    def point(o):
        # letters of val(y) minus the part of the window between o and the cut
        c = dict(base_counts)
        for x in left[o:]:
            c[x] -= 1
        return [c.get(x, 0) for x in support]

    first = point(offsets[0])
    if len(offsets) == 1:
        return ArithProgression.make(support, first, [0] * len(support), 0)
    second = point(offsets[1])
    step = offsets[1] - offsets[0]
    if any(b2 - a2 != step for a2, b2 in zip(offsets, offsets[1:])):
        raise AssertionError("occurrences at a word cut must be equally spaced")
    return ArithProgression.make(support, first, [v - u for u, v in zip(first, second)], len(offsets) - 1)


def _tail(t: Slp, i: Optional[int], n: int) -> list:
    if i is None or n == 0:
        return []
    sub = _sub_node(t, i, t.lengths[i] - n, t.lengths[i])
    return sub.expand()


def _head(t: Slp, i: Optional[int], n: int) -> list:
    if i is None or n == 0:
        return []
    return _sub_node(t, i, 0, n).expand()


def _sub_node(t: Slp, i: int, lo: int, hi: int) -> Slp:
    b, ids = t.builder()
    return b.finish(_slice_into(b, t, ids, i, lo, hi))


def occurrences_at_cut_word(
    t: Slp, x: Union[int, str], p: Slp, b: WordBackend = REFERENCE, support: Optional[Sequence[Letter]] = None
) -> Optional[ArithProgression]:
    """Occurrences of val(p) straddling the cut of binary nonterminal ``x``."""
    if isinstance(x, str):
        x = t.index_of(x)
    if t.term[x] is not None:
        raise ContractError(f"nonterminal {t.names[x]} is not binary")
    return cut_occurrences(t, t.left[x], t.right[x], p, b, support)


def occurrence_test_word(t: Slp, p: Slp, o: int, b: WordBackend = REFERENCE) -> bool:
    """Does val(p) occur in val(t) after the first ``o`` letters?"""
    if o < 0 or o + len(p) > len(t):
        raise IndexError(f"offset {o} with pattern length {len(p)} exceeds text length {len(t)}")
    return b.equal(substring_slp(t, o + 1, o + len(p)), p)


def word_counts(word: Iterable[Letter]) -> dict:
    return dict(Counter(word))


def slp_text(s: Slp) -> str:
    return format_word(s.expand())
