"""
Simple modules and crystal operators
====================================

Simples of R^Lambda(beta) are found by splitting the head of the regular module,
then normalized to be self-dual. Induction and restriction move between them.
"""
from qhsuper.cyclotomic import build_cyclotomic
from qhsuper.foundations import preset
from qhsuper.repcat import (crystal_data, dual_module, identify, is_isomorphic, parity_twist,
                            simple_modules)

A2 = preset("A2")
R = build_cyclotomic(A2, None, (1, 1), (1, 1))
records = simple_modules(R)
print(f"zero weight of the adjoint: {len(records)} simples")
for k, rec in enumerate(records):
    L = rec.module
    print(f"  L{k}: dims {L.graded_dims()} self-dual {is_isomorphic(dual_module(L), L) is not None}"
          f" parity-stable {is_isomorphic(parity_twist(L), L) is not None}")
    for i in A2.labels:
        data = crystal_data(L, i)
        f = data["f_tilde"]
        print(f"    i={i}: eps={data['eps']}  f~ has dim {f.dim}")

# e~ undoes f~ on the natural representation's crystal
for beta in [(0, 0), (1, 0)]:
    (rec,) = simple_modules(build_cyclotomic(A2, None, (1, 0), beta))
    up = crystal_data(rec.module, 1)["f_tilde"]
    if up.dim:
        back = crystal_data(up, 1)["e_tilde"]
        print(f"beta={beta}: e~ f~ L = L up to shift: {identify(back, [rec])}")
