"""Conjugacy questions on compressed elements of a graph group.

* :func:`cone_decompose` recognises double a-cones ``v a v^-1``,
* :func:`rsccp_solve` finds one ``s`` with ``s a s^-1 = A_a`` for every letter,
* :func:`ccp_decide` decides whether two compressed elements are conjugate,
* :func:`out_word_problem` decides whether a word over automorphisms is inner.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from . import slp as _slp
from .alphabet import IndependenceAlphabet, Letter, format_word, inverse_word, parse_word
from .ctrace import CompressedTrace, ccore, csup_many, is_trivial, r_reduce, trace_equal
from .errors import ContractError, ValidationError
from .slp import REFERENCE, Slp, WordBackend, _Builder
from .tracematch import is_factor


@dataclass(frozen=True)
class ConeDecomposition:
    """The double a-cone ``v a v^-1``."""

    v: CompressedTrace
    a: Letter

    def value(self) -> CompressedTrace:
        mid = CompressedTrace(_slp.from_word([self.a]), self.v.alphabet)
        return self.v * mid * self.v.inverse()


def _compress(x, alphabet: Optional[IndependenceAlphabet]) -> CompressedTrace:
    if isinstance(x, CompressedTrace):
        return x
    if alphabet is None:
        raise ContractError("an alphabet is needed to interpret a bare SLP")
    if isinstance(x, Slp):
        return CompressedTrace(x, alphabet)
    return CompressedTrace.from_word(alphabet, x)


def cone_decompose(w: CompressedTrace, a, b: WordBackend = REFERENCE) -> Optional[ConeDecomposition]:
    """``v`` with ``w = v a v^-1`` for an R-irreducible ``w``, or ``None``.

    In a double a-cone every letter of ``v`` lies below the central ``a`` and
    every letter of ``v^-1`` above it, so any linearisation has ``a`` in the
    middle.  The halves are compared as traces, not as words.
    """
    a = w.alphabet.letter(a)
    n = len(w)
    if n % 2 == 0:
        return None
    h = n // 2
    if _slp.letter_at(w.slp, h + 1) != a:
        return None
    left = CompressedTrace(_slp.substring_slp(w.slp, 1, h), w.alphabet)
    right = CompressedTrace(_slp.substring_slp(w.slp, h + 2, n), w.alphabet)
    if not trace_equal(left, right.inverse(), b):
        return None
    return ConeDecomposition(left, a)


def rsccp_solve(instance: Mapping, b: WordBackend = REFERENCE, alphabet: Optional[IndependenceAlphabet] = None) -> Optional[Slp]:
    """An SLP for ``s`` with ``s a s^-1 = A_a`` in the group for all letters ``a``.

    ``instance`` maps each base letter to an SLP (or compressed trace) ``A_a``.
    Returns ``None`` when no such ``s`` exists.
    """
    items = {k: _compress(v, alphabet) for k, v in instance.items()}
    if not items:
        raise ContractError("empty rsccp instance")
    alpha = alphabet or next(iter(items.values())).alphabet
    missing = [x for x in alpha.letters if x not in {alpha.base_of(k) for k in items}]
    if missing:
        raise ContractError(f"rsccp instance lacks images for {' '.join(missing)}")
    cones = []
    for k, t in items.items():
        a = Letter(alpha.base_of(k))
        cone = cone_decompose(r_reduce(t, b), a, b)
        if cone is None:
            return None
        cones.append((a, t, cone.v))
    s = csup_many([v for _, _, v in cones], b, r=len(cones))
    if s is None:
        return None
    # the supremum is only a candidate; check every letter
    for a, t, _ in cones:
        mid = CompressedTrace(_slp.from_word([a]), alpha)
        if not is_trivial(s * mid * s.inverse() * t.inverse(), b):
            return None
    return r_reduce(s, b).slp


def ccp_decide(x, y, b: WordBackend = REFERENCE, alphabet: Optional[IndependenceAlphabet] = None) -> bool:
    """Are the group elements denoted by ``x`` and ``y`` conjugate?"""
    x, y = _compress(x, alphabet), _compress(y, alphabet)
    c, d = ccore(x, b), ccore(y, b)
    if c.parikh() != d.parikh():
        return False
    if len(c) == 0:
        return True
    k = 2 * len(c.alphabet.letters)
    big = CompressedTrace(_slp.power(d.slp, k), d.alphabet)
    return is_factor(c, big, c.alphabet, b)


@dataclass
class GeneratorTable:
    """Named endomorphisms of the free group, each given on base letters.

    Unlisted letters map to themselves; images of inverse letters are the
    inverse words.
    """

    alphabet: IndependenceAlphabet
    generators: dict = field(default_factory=dict)

    def add(self, name: str, images: Mapping) -> None:
        table = {}
        for k, w in images.items():
            base = self.alphabet.base_of(k)
            if Letter(base) != self.alphabet.letter(k):
                raise ValidationError(f"generator {name}: images are given for positive letters, got {k}")
            word = parse_word(w) if isinstance(w, str) else list(w)
            for x in word:
                self.alphabet.base_of(x)
            table[base] = word
        self.generators[name] = table

    def image(self, name: str, base: str) -> list:
        if name not in self.generators:
            raise ValidationError(f"unknown generator {name!r}")
        return self.generators[name].get(base, [Letter(base)])

    def describe(self, name: str) -> str:
        return "; ".join(f"{a} => {format_word(self.image(name, a))}" for a in self.alphabet.letters)


def apply_generators(table: GeneratorTable, word: Sequence[str]) -> dict:
    """SLPs for ``(psi_1 ... psi_n)(a)`` with ``(psi_1 ... psi_n)(x) = psi_1(...psi_n(x))``.

    Level ``i`` holds ``W_{i,a} = (psi_1 ... psi_i)(a)`` and its inverse, both
    assembled from level ``i-1`` by substituting into the image of ``psi_i``.
    """
    if isinstance(word, str):
        word = word.split()
    for name in word:
        if name not in table.generators:
            raise ValidationError(f"unknown generator {name!r}")
    letters = table.alphabet.letters
    bld = _Builder()
    fwd = {a: bld.terminal(Letter(a)) for a in letters}
    inv = {a: bld.terminal(Letter(a, -1)) for a in letters}
    for name in word:
        nf, ni = {}, {}
        for a in letters:
            img = table.image(name, a)
            nf[a] = bld.balanced([fwd[x.base] if x.sign > 0 else inv[x.base] for x in img])
            ni[a] = bld.balanced([fwd[x.base] if x.sign > 0 else inv[x.base] for x in inverse_word(img)])
        fwd, inv = nf, ni
    return {a: bld.finish(fwd[a]) for a in letters}


def out_word_problem(table: GeneratorTable, word: Sequence[str], b: WordBackend = REFERENCE) -> bool:
    """Is the composed automorphism inner?"""
    images = apply_generators(table, word)
    return rsccp_solve(images, b, table.alphabet) is not None


def inner_generator(alphabet: IndependenceAlphabet, g) -> dict:
    """Images ``x => g x g^-1`` of the inner automorphism by ``g``, as words."""
    g = parse_word(g) if isinstance(g, str) else list(g)
    return {a: g + [Letter(a)] + inverse_word(g) for a in alphabet.letters}
