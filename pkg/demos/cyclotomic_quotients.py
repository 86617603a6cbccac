"""
Finite-dimensional cyclotomic quotients
=======================================

Kill a^Lambda(x_1) and the algebra becomes finite; its dimension follows the weight
space of the highest-weight module, and it vanishes far enough along an i-string.
"""
from qhsuper.cyclotomic import build_cyclotomic, integrability_report
from qhsuper.foundations import preset
from qhsuper.oracle import compare_graded_dims

A2 = preset("A2")
for beta in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]:
    R = build_cyclotomic(A2, None, (1, 1), beta)
    print(f"A2 L=(1,1) beta={beta}: dim {R.dim:3d}  graded {R.graded_dims()}")

# the odd rank-one case has odd basis vectors
R = build_cyclotomic(preset("A1odd"), None, (2,), (1,))
print("A1odd L=2 beta=1 character:", R.character())

# an independent count by brute force over words, on a shared window
rep = compare_graded_dims(A2, None, (1, 1), (1, 1))
print("brute force agrees:", rep["pass"], "on window", rep["window"])

# zero from the bound on, checked two steps past it
rep = integrability_report(A2, None, (1, 1), (1, 0), 2)
print("integrability:", rep["m"], rep["vanishing"])
