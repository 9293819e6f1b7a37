"""Independence alphabets and signed letters.

An independence alphabet is a loop-free graph on a finite set of letter
tokens; its edges are the commuting pairs.  Everything here also works on
the doubled alphabet: a signed letter ``a^-1`` is independent of ``b^e``
exactly when ``a`` and ``b`` are.
"""
from __future__ import annotations

import re
from collections import deque
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .errors import ValidationError

TOKEN_RE = re.compile(r"^[a-z0-9_]+$")


class Letter(NamedTuple):
    base: str
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.base, -self.sign)

    def __str__(self) -> str:
        return self.base if self.sign > 0 else self.base + "^-1"

    def __repr__(self) -> str:
        return f"Letter({str(self)!r})"


LetterLike = Union[Letter, str]


def parse_letter(text: str) -> Letter:
    """Parse ``a`` or ``a^-1``."""
    text = text.strip()
    sign = 1
    if text.endswith("^-1"):
        text, sign = text[:-3], -1
    elif text.endswith("^1"):
        text = text[:-2]
    if not TOKEN_RE.match(text):
        raise ValidationError(f"bad letter token {text!r}")
    return Letter(text, sign)


def parse_word(text: Union[str, Iterable[str]]) -> list[Letter]:
    """Parse a whitespace separated word such as ``"a b^-1 c"``."""
    parts = text.split() if isinstance(text, str) else list(text)
    return [p if isinstance(p, Letter) else parse_letter(p) for p in parts]


def inverse_word(word: Sequence[Letter]) -> list[Letter]:
    return [x.inverse() for x in reversed(word)]


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(str(x) for x in word)


class IndependenceAlphabet:
    """Letters in declaration order together with the commuting pairs.

    The declaration order is the canonical total order; on signed letters it
    extends to ``a < a^-1 < b < b^-1 < ...``.
    """

    def __init__(self, letters: Sequence[str], independent_pairs: Iterable[Sequence[str]] = ()):
        letters = tuple(letters)
        for tok in letters:
            if not isinstance(tok, str) or not TOKEN_RE.match(tok):
                raise ValidationError(f"bad letter token {tok!r}")
        if len(set(letters)) != len(letters):
            raise ValidationError("letter tokens must be distinct")
        self.letters = letters
        self._index = {tok: i for i, tok in enumerate(letters)}
        pairs = set()
        for pair in independent_pairs:
            a, b = tuple(pair)
            for tok in (a, b):
                if tok not in self._index:
                    raise ValidationError(f"unknown letter {tok!r} in independence pair")
            if a == b:
                raise ValidationError(f"independence must be irreflexive, got ({a},{a})")
            pairs.add(frozenset((a, b)))
        self.independent_pairs = frozenset(pairs)
        self._indep = {tok: frozenset() for tok in letters}
        for pair in pairs:
            a, b = tuple(pair)
            self._indep[a] |= {b}
            self._indep[b] |= {a}
        self._dep = {tok: frozenset(t for t in letters if t not in self._indep[tok]) for tok in letters}

    def __repr__(self) -> str:
        pairs = sorted(tuple(sorted(p, key=self._index.get)) for p in self.independent_pairs)
        return f"IndependenceAlphabet({list(self.letters)!r}, {pairs!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndependenceAlphabet):
            return NotImplemented
        return self.letters == other.letters and self.independent_pairs == other.independent_pairs

    def __hash__(self) -> int:
        return hash((self.letters, self.independent_pairs))

    def __contains__(self, x) -> bool:
        base = x.base if isinstance(x, Letter) else x
        return base in self._index

    # -- letters -----------------------------------------------------------

    def base_of(self, x: LetterLike) -> str:
        base = x.base if isinstance(x, Letter) else x
        if base not in self._index:
            raise ValidationError(f"unknown letter {base!r}")
        return base

    def letter(self, x: LetterLike) -> Letter:
        """Coerce a token or letter to a validated :class:`Letter`."""
        if isinstance(x, Letter):
            self.base_of(x)
            return x
        y = parse_letter(x)
        self.base_of(y)
        return y

    def rank(self, x: Letter) -> int:
        return 2 * self._index[x.base] + (x.sign < 0)

    def sort(self, letters: Iterable[LetterLike]) -> list[Letter]:
        return sorted((self.letter(x) for x in letters), key=self.rank)

    def signed_letters(self) -> list[Letter]:
        out = []
        for tok in self.letters:
            out += [Letter(tok, 1), Letter(tok, -1)]
        return out

    def positive_letters(self) -> list[Letter]:
        return [Letter(tok, 1) for tok in self.letters]

    # -- relations ---------------------------------------------------------

    def is_independent(self, x: LetterLike, y: LetterLike) -> bool:
        return self.base_of(y) in self._indep[self.base_of(x)]

    def is_dependent(self, x: LetterLike, y: LetterLike) -> bool:
        return not self.is_independent(x, y)

    def independent_of(self, x: LetterLike) -> frozenset:
        """Base tokens commuting with ``x``."""
        return self._indep[self.base_of(x)]

    def dependent_of(self, x: LetterLike) -> frozenset:
        """Base tokens not commuting with ``x`` (always includes ``x`` itself)."""
        return self._dep[self.base_of(x)]

    def dependent_pairs(self, diagonal: bool = True) -> set:
        out = {frozenset((a, b)) for a, b in combinations(self.letters, 2) if b in self._dep[a]}
        if diagonal:
            out |= {frozenset((a,)) for a in self.letters}
        return out

    def words_independent(self, u: Iterable[Letter], v: Iterable[Letter]) -> bool:
        """``u I v``: every letter of ``u`` commutes with every letter of ``v``."""
        bu = {x.base for x in u}
        bv = {x.base for x in v}
        return all(b in self._indep[a] for a in bu for b in bv)

    def restrict(self, tokens: Iterable[str]) -> "IndependenceAlphabet":
        keep = set(tokens)
        letters = [t for t in self.letters if t in keep]
        pairs = [tuple(p) for p in self.independent_pairs if p <= keep]
        return IndependenceAlphabet(letters, pairs)


def build_alphabet(letters: Sequence[str], independent_pairs: Iterable[Sequence[str]] = ()) -> IndependenceAlphabet:
    return IndependenceAlphabet(letters, independent_pairs)


def is_independent(alpha: IndependenceAlphabet, x: LetterLike, y: LetterLike) -> bool:
    return alpha.is_independent(x, y)


def _neighbours(alpha: IndependenceAlphabet, x: Letter, pool: Sequence[Letter]) -> list[Letter]:
    return [y for y in pool if y != x and alpha.is_dependent(x, y)]


def _as_letters(alpha: IndependenceAlphabet, gamma: Iterable[LetterLike]) -> list[Letter]:
    out = []
    for x in gamma:
        y = alpha.letter(x)
        if y not in out:
            out.append(y)
    return sorted(out, key=alpha.rank)


def connected_components(alpha: IndependenceAlphabet, gamma: Iterable[LetterLike]) -> list[list[Letter]]:
    """Components of the dependence graph induced on ``gamma``, canonical order."""
    pool = _as_letters(alpha, gamma)
    seen: set = set()
    comps = []
    for start in pool:
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in _neighbours(alpha, x, pool):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(sorted(comp, key=alpha.rank))
    return comps


def is_connected_subset(alpha: IndependenceAlphabet, gamma: Iterable[LetterLike]) -> bool:
    return len(connected_components(alpha, gamma)) <= 1


def dependence_order(
    alpha: IndependenceAlphabet,
    priority: Iterable[LetterLike],
    seed: Optional[Sequence[LetterLike]] = None,
    letters: Optional[Iterable[LetterLike]] = None,
) -> list[Letter]:
    """Enumerate ``letters`` so each one depends on some earlier one.

    Letters of ``priority`` come first, starting with the ``seed`` pair when
    given.  Breadth-first in canonical order, hence deterministic.  By default
    ``letters`` is the whole (unsigned) alphabet.
    """
    pool = _as_letters(alpha, alpha.letters if letters is None else letters)
    prio = _as_letters(alpha, priority)
    for x in prio:
        if x not in pool:
            raise ValidationError(f"priority letter {x} is not among the enumerated letters")

    order: list[Letter] = []
    if seed is not None:
        s = [alpha.letter(x) for x in seed]
        if any(x not in prio for x in s) or alpha.is_independent(s[0], s[-1]):
            raise ValidationError(f"seed {format_word(s)} must be a dependent pair inside the priority set")
        for x in s:
            if x not in order:
                order.append(x)
    elif prio:
        order.append(prio[0])

    def grow(within: list[Letter]) -> None:
        queue = deque(order)
        while queue:
            x = queue.popleft()
            for y in _neighbours(alpha, x, within):
                if y not in order:
                    order.append(y)
                    queue.append(y)

    grow(prio)
    missing = [x for x in prio if x not in order]
    if missing:
        raise ValidationError(f"priority set is not connected: {format_word(missing)} unreachable from {format_word(order)}")
    if not order and pool:
        order.append(pool[0])
    grow(pool)
    missing = [x for x in pool if x not in order]
    if missing:
        raise ValidationError(f"letters are not connected: component {format_word(missing)} unreachable")
    return order
