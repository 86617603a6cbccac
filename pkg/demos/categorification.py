"""
Grothendieck-group checks
=========================

E_i F_j and F_j E_i differ by a scalar on each weight space; simples give a
strong perfect basis; and their count equals the weight multiplicity.
"""
from qhsuper.foundations import preset
from qhsuper.groth import compare_with_oracle, verify_sl2_commutation, verify_strong_perfect

A1 = preset("A1")
A2 = preset("A2")

for beta in [(0,), (1,), (2,)]:
    rep = verify_sl2_commutation(A1, None, (2,), beta, 1)
    print(f"A1 L=2 beta={beta} h={rep['instance']['h']:2d} commutator holds: {rep['pass']}")

rep = verify_sl2_commutation(A2, None, (1, 1), (1, 0), 1, 2)
print("A2 i != j commute:", rep["pass"])

rep = verify_strong_perfect(A2, None, (1, 1), (1, 1), 1)
print("strong perfect on the adjoint zero weight:", rep["pass"],
      [row["coefficient"] for row in rep["simples"]])

rep = compare_with_oracle(A2, None, (1, 1), 2)
for row in rep["table"]:
    print(f"  beta={row['beta']}: simples {row['simples']}  multiplicity {row['weight_multiplicity']}")
