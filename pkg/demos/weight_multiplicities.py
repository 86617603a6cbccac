"""
Weight multiplicities from Freudenthal's recursion
==================================================

The oracle every headcount is compared against.
"""
from qhsuper.foundations import preset
from qhsuper.oracle import multiplicity_table

for name, lam in [("A2", (1, 1)), ("B2odd", (1, 1))]:
    table = multiplicity_table(preset(name), lam, 8)
    nonzero = {b: m for b, m in sorted(table.items()) if m}
    print(f"{name} L={lam}: total {sum(nonzero.values())}")
    for beta, m in nonzero.items():
        print(f"  Lambda - {beta}: {m}")
