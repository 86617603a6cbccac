"""
Rewriting words into PBW normal form
====================================

Words in e(nu), x<k>, t<a> are rewritten into sums of x^a t_w e(nu).
"""
from qhsuper.cyclotomic import engine
from qhsuper.foundations import preset
from qhsuper.qhsalg import graded_dim_total, relation_failures

# rank one with an odd vertex: the x's anticommute and t1 is odd
alg = engine(preset("A1odd"))
for word in ["t1 x2 e(1,1)", "x2 x1 e(1,1)", "t1 t1 e(1,1)", "t1 t2 t1 e(1,1,1)"]:
    elem = alg.normal_form(word, len(word.split()[-1].split(",")))
    print(f"{word:20s} -> {alg.format(elem)}")

# every defining relation rewrites to zero, for each preset and up to three strands
for name in ["A1", "A1odd", "A2", "B2odd"]:
    bad = sum(len(relation_failures(engine(preset(name)), n)) for n in (1, 2, 3))
    print(f"{name:6s} relation failures up to n=3: {bad}")

# graded dimension of R(2 alpha): q-degree and parity of each PBW monomial, truncated at degree 4
print("R(2a) in A1odd:", graded_dim_total(alg, (2,), 4))
