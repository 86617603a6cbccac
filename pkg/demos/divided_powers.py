"""
Nil-Hecke pieces and divided powers
===================================

R(n alpha_i) splits into [n]! copies of one projective; the idempotent
comes from the longest crossing times a top-degree monomial.
"""
from qhsuper.cyclotomic import engine
from qhsuper.foundations import preset, super_quantum_factorial
from qhsuper.qhsalg import divided_power_character_direct, graded_dim_total, nil_braid_data

for name in ["A1", "A1odd"]:
    datum = preset(name)
    alg = engine(datum)
    print(f"-- {name}")
    for n in (1, 2, 3):
        data = nil_braid_data(alg, 1, n, 12)
        fac = super_quantum_factorial(datum, n, 1)
        # the factorial starts in negative degree, so the projective is needed a little higher
        proj = divided_power_character_direct(alg, 1, n, 12 - fac.min_degree())
        whole = graded_dim_total(alg, (n,), 12)
        print(f"n={n} braid={data['braid_ok']} idempotent={data['idempotent_ok']}"
              f" factorial={fac}  ch R = [n]! ch P: {whole == (fac * proj).truncate(12)}")
