"""
Pattern matching on compressed traces
=====================================

Is one trace a factor of another?  Occurrences are counted by the Parikh
vector of the prefix in front of them.
"""

# %%
from raag import CompressedTrace, MatchInstance, build_alphabet, is_factor, pair_cut_progression, periodic_at_cut
from raag import amalgamate, concat, from_word
from raag.tracematch import single_occurrences

alpha = build_alphabet("a b c d e".split(), [("a", "c"), ("a", "d"), ("a", "e"), ("b", "d"), ("d", "e")])

# The text is X -> L R; every occurrence we look at straddles the cut.
left = from_word("a c b c a d c b c a c b c a c b c a c b c a c b")
right = from_word("c a c b c a c b c a c b c a c b d c")
text = concat(left, right)
pattern = from_word(" ".join(["a c b c"] * 5))

# %%
# Projected on a dependent pair the traces become ordinary words, and the
# occurrences at the cut form one arithmetic progression.
inst = MatchInstance(text, pattern, alpha, alpha.sort("abcd"))
x = text.start
pab = pair_cut_progression(inst, x, "a", "b")
pbc = pair_cut_progression(inst, x, "b", "c")
pcd = pair_cut_progression(inst, x, "c", "d")
print("(a,b):", pab, " (b,c):", pbc, " (c,d):", pcd)

# %%
# Joining progressions on their shared letters.
pabc = amalgamate(pab, pbc)
print("(a,b,c):", pabc)
print("(a,b,c,d):", amalgamate(pabc, pcd))

# %%
# Occurrences that sit at an end of some pair progression are found one by
# one; the rest form a single progression.
print("single:", sorted(str(p) for p in single_occurrences(inst, x)))
print("periodic:", periodic_at_cut(inst, x))

# %%
# The yes/no question.  Six periods still fit; nine do not.
t = CompressedTrace(text, alpha)
for k in (5, 6, 9):
    p = CompressedTrace.from_word(alpha, " ".join(["a c b c"] * k))
    print(f"(acbc)^{k} factor:", is_factor(p, t, alpha))
