"""Shared fixtures and random instance generators for the tests."""
import random
from itertools import combinations

from raag import slp as S
from raag.alphabet import IndependenceAlphabet, Letter, build_alphabet, parse_word
from raag.trace import Trace

EXAMPLE = build_alphabet("a b c d e".split(), [("a", "c"), ("a", "d"), ("a", "e"), ("b", "d"), ("d", "e")])

# the worked matching example: the cut of X sits between LEFT and RIGHT
LEFT = "a c b c a d c b c a c b c a c b c a c b c a c b"
RIGHT = "c a c b c a c b c a c b c a c b d c"
PATTERN = " ".join(["a c b c"] * 5)

CORE_EX_X = "c^-1 d^-1 a^-1 b a^-1 c a b d c^-1 d^-1 a^-1 b^-1 d c a"
CORE_EX_NF = "c^-1 d^-1 a^-1 b c b d c^-1 a^-1 b^-1 c a"
CORE_EX_D = "c^-1 a^-1 b"
CORE_EX_CORE = "d^-1 c b d c^-1 a^-1"


def w(text):
    return parse_word(text)


def tr(alpha, text):
    return Trace(alpha, parse_word(text))


def example_text():
    return S.concat(S.from_word(LEFT), S.from_word(RIGHT))


def random_alphabet(rng: random.Random, max_letters: int = 5, min_letters: int = 1) -> IndependenceAlphabet:
    n = rng.randint(min_letters, max_letters)
    letters = [chr(ord("a") + i) for i in range(n)]
    p = rng.random()
    pairs = [pr for pr in combinations(letters, 2) if rng.random() < p]
    return IndependenceAlphabet(letters, pairs)


def random_word(rng: random.Random, alpha: IndependenceAlphabet, n: int, signed: bool = True, letters=None) -> list:
    pool = letters if letters is not None else (alpha.signed_letters() if signed else alpha.positive_letters())
    return [rng.choice(pool) for _ in range(n)]


def random_slp(rng: random.Random, word) -> S.Slp:
    """An SLP for ``word`` with a random (unbalanced) shape."""
    if not word:
        return S.Slp.empty()
    b = S._Builder()
    ids = [b.terminal(x) for x in word]
    while len(ids) > 1:
        k = rng.randrange(len(ids) - 1)
        ids[k:k + 2] = [b.pair(ids[k], ids[k + 1])]
    return b.finish(ids[0])


def random_shaped_slp(rng: random.Random, alpha, n: int, signed: bool = True) -> S.Slp:
    """A random word of length ``n`` grown with repeated blocks so the grammar shares rules."""
    pool = alpha.signed_letters() if signed else alpha.positive_letters()
    if n == 0:
        return S.Slp.empty()
    parts = []
    total = 0
    while total < n:
        k = min(n - total, rng.randint(1, 4))
        blk = [rng.choice(pool) for _ in range(k)]
        reps = rng.randint(1, 3)
        for _ in range(reps):
            if total + k > n:
                break
            parts.append(S.from_word(blk))
            total += k
    return S.concat(*parts) if len(parts) > 1 else parts[0]


def letters(text):
    return [Letter(x) for x in text.split()]
