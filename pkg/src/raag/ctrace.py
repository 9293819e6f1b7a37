"""Traces given by straight-line programs.

The operations here (reduction, infimum, supremum, core) have compressed
polynomial-time constructions in the literature; the implementations below
answer the same questions by expanding through the :class:`WordBackend`
guard and calling :mod:`raag.trace`, then recompressing the result.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import slp as _slp
from .alphabet import IndependenceAlphabet, parse_word
from .errors import ContractError
from .slp import REFERENCE, Slp, WordBackend
from .trace import Trace, inf_diff, nf_R


@dataclass(frozen=True)
class CompressedTrace:
    slp: Slp
    alphabet: IndependenceAlphabet

    @classmethod
    def from_word(cls, alphabet: IndependenceAlphabet, w) -> "CompressedTrace":
        word = parse_word(w) if isinstance(w, str) else list(w)
        for x in word:
            alphabet.base_of(x)
        return cls(_slp.from_word(word), alphabet)

    def __len__(self) -> int:
        return len(self.slp)

    def explicit(self, b: WordBackend = REFERENCE) -> Trace:
        return Trace(self.alphabet, b.expand(self.slp))

    def inverse(self) -> "CompressedTrace":
        return CompressedTrace(_slp.inverse_slp(self.slp), self.alphabet)

    def __mul__(self, other: "CompressedTrace") -> "CompressedTrace":
        return CompressedTrace(_slp.concat(self.slp, other.slp), self.alphabet)

    def parikh(self) -> dict:
        return _slp.parikh(self.slp)

    def __repr__(self) -> str:
        return f"<CompressedTrace length={len(self.slp)} size={self.slp.size}>"


def _pack(t: Trace, alpha: IndependenceAlphabet) -> CompressedTrace:
    return CompressedTrace(_slp.from_word(t.word), alpha)


def trace_equal(x: CompressedTrace, y: CompressedTrace, b: WordBackend = REFERENCE) -> bool:
    if len(x) != len(y) or x.parikh() != y.parikh():
        return False
    if b.equal(x.slp, y.slp):
        return True
    return x.explicit(b) == y.explicit(b)


def r_reduce(t: CompressedTrace, b: WordBackend = REFERENCE) -> CompressedTrace:
    return _pack(nf_R(t.explicit(b)), t.alphabet)


def is_trivial(t: CompressedTrace, b: WordBackend = REFERENCE) -> bool:
    return len(r_reduce(t, b)) == 0


def cinf(x: CompressedTrace, y: CompressedTrace, b: WordBackend = REFERENCE):
    """SLPs for ``(x ⊓ y, x ∖ y, y ∖ x)``."""
    p, d0, d1 = inf_diff(x.explicit(b), y.explicit(b))
    return _pack(p, x.alphabet), _pack(d0, x.alphabet), _pack(d1, x.alphabet)


def csup(x: CompressedTrace, y: CompressedTrace, b: WordBackend = REFERENCE) -> Optional[CompressedTrace]:
    p, d0, d1 = cinf(x, y, b)
    if not x.alphabet.words_independent(_slp.parikh(d0.slp), _slp.parikh(d1.slp)):
        return None
    return CompressedTrace(_slp.concat(p.slp, d0.slp, d1.slp), x.alphabet)


def csup_many(xs: Sequence[CompressedTrace], b: WordBackend = REFERENCE, r: Optional[int] = None) -> Optional[CompressedTrace]:
    """Iterated supremum of at most ``r`` traces (``r`` defaults to the alphabet size)."""
    if not xs:
        raise ContractError("csup_many needs at least one trace")
    cap = len(xs[0].alphabet.letters) if r is None else r
    if len(xs) > cap:
        raise ContractError(f"csup_many folds at most {cap} traces, got {len(xs)}")
    acc = xs[0]
    for x in xs[1:]:
        # acc ⊔ x = acc (x ∖ acc)
        _, d0, d1 = cinf(acc, x, b)
        if not acc.alphabet.words_independent(_slp.parikh(d0.slp), _slp.parikh(d1.slp)):
            return None
        acc = CompressedTrace(_slp.concat(acc.slp, d1.slp), acc.alphabet)
    return acc


def ccore_with_conjugator(t: CompressedTrace, b: WordBackend = REFERENCE) -> tuple[CompressedTrace, CompressedTrace]:
    """``(core, d)`` where ``d = NF_R(t) ⊓ NF_R(t)^-1``."""
    x = r_reduce(t, b)
    d, _, _ = cinf(x, x.inverse(), b)
    core = r_reduce(CompressedTrace(_slp.concat(_slp.inverse_slp(d.slp), x.slp, d.slp), t.alphabet), b)
    return core, d


def ccore(t: CompressedTrace, b: WordBackend = REFERENCE) -> CompressedTrace:
    return ccore_with_conjugator(t, b)[0]
