"""
Conjugacy and outer automorphisms
=================================

Deciding conjugacy of compressed elements, solving one conjugator for all
letters at once, and asking whether a product of automorphisms is inner.
"""

# %%
from raag import CompressedTrace, GeneratorTable, build_alphabet, ccp_decide, cone_decompose
from raag import from_word, inner_generator, out_word_problem, rsccp_solve

alpha = build_alphabet("a b c d e".split(), [("a", "c"), ("a", "d"), ("a", "e"), ("b", "d"), ("d", "e")])
x = CompressedTrace.from_word(alpha, "c^-1 d^-1 a^-1 b a^-1 c a b d c^-1 d^-1 a^-1 b^-1 d c a")
g = CompressedTrace.from_word(alpha, "a b")
print("x ~ (ab) x (ab)^-1:", ccp_decide(x, g * x * g.inverse()))
print("a b ~ b a:", ccp_decide(CompressedTrace.from_word(alpha, "a b"), CompressedTrace.from_word(alpha, "b a")))
print("a ~ b:", ccp_decide(CompressedTrace.from_word(alpha, "a"), CompressedTrace.from_word(alpha, "b")))

# %%
# A double a-cone v a v^-1 is recognised by its middle letter.
cone = cone_decompose(CompressedTrace.from_word(alpha, "b a b^-1"), "a")
print("cone of b a b^-1:", cone.v.explicit())

# %%
# One s with s a s^-1 = A_a for every letter.
images = {a: from_word(f"b {a} b^-1") for a in alpha.letters}
print("s =", " ".join(map(str, rsccp_solve(images, alphabet=alpha).expand())))
images["e"] = from_word("c e c^-1")
print("spoiled instance:", rsccp_solve(images, alphabet=alpha))

# %%
# Words over automorphisms of the free group on a, b.  Composition is
# outermost first: "tau conj" maps x to tau(conj(x)).
free = build_alphabet(["a", "b"])
table = GeneratorTable(free)
table.add("tau", {"a": "a b"})
table.add("conj", inner_generator(free, "a"))
words = {"identity": [], "conj": ["conj"], "tau": ["tau"], "tau^50": ["tau"] * 50, "conj tau conj": ["conj", "tau", "conj"]}
for label, word in words.items():
    print(label, "->", "inner" if out_word_problem(table, word) else "not inner")
