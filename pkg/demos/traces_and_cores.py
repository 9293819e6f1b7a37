"""
Traces, normal forms and cores
==============================

Words over an alphabet where some letters commute, first written out and
then kept as straight-line programs.
"""

# %%
# Five letters; a commutes with c, d and e, and b commutes with d.
from raag import CompressedTrace, Trace, build_alphabet, inf_diff, nf_R, parse_word, sup
from raag import ResourceError, ccore, core_explicit, is_trivial, power, r_reduce

alpha = build_alphabet("a b c d e".split(), [("a", "c"), ("a", "d"), ("a", "e"), ("b", "d"), ("d", "e")])

u = Trace(alpha, parse_word("a e a d b a c d d"))
v = Trace(alpha, parse_word("e a a b d c a e b"))
print("u =", u)
print("v =", v)

# %%
# The infimum is the longest common prefix; the two leftovers commute, so a
# supremum exists too.
p, du, dv = inf_diff(u, v)
print("inf =", p, " u\\inf =", du, " v\\inf =", dv)
print("sup =", sup(u, v))

# %%
# Group elements: cancel a a^-1 pairs even when they are far apart in the
# word but only separated by commuting letters.
x = Trace(alpha, parse_word("c^-1 d^-1 a^-1 b a^-1 c a b d c^-1 d^-1 a^-1 b^-1 d c a"))
print("x    =", x)
print("nf x =", nf_R(x))
print("core =", core_explicit(x))

# %%
# Compressed words.  Length and letter counts of (a b a^-1 b^-1)^(2^40) come
# straight from the grammar.
ab = build_alphabet(["a", "b"], [("a", "b")])
unit = CompressedTrace.from_word(ab, "a b a^-1 b^-1").slp
huge = CompressedTrace(power(unit, 1 << 40), ab)
print("length", len(huge), "grammar size", huge.slp.size, "counts", {str(k): n for k, n in huge.parikh().items()})

# %%
# Reduction goes through a word backend with a size guard.  A modest power
# is fine; the huge one is refused instead of exhausting memory.
print("trivial:", is_trivial(CompressedTrace(power(unit, 1 << 12), ab)))
try:
    is_trivial(huge)
except ResourceError as e:
    print("refused:", e)

# %%
# The compressed core agrees with the explicit one.
cx = CompressedTrace.from_word(alpha, x.word)
print("compressed nf   =", r_reduce(cx).explicit())
print("compressed core =", ccore(cx).explicit())
