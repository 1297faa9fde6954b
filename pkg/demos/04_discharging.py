"""Exact-rational discharging: charges, transfer rules, and the audit.

Vertices start at degree-4, faces at length-4; the total is exactly -8 on
any connected plane graph, and the four transfer rules preserve it.  The
audit reports which elements end negative and which catalog configuration
certifies the graph as reducible territory.
"""

from collections import Counter
from fractions import Fraction

from linarb import apply_rules, audit, initial_charges, m_value
from linarb.instances import dodecahedron, icosahedron

print("Transfer table samples (sender degree in the middle):")
for b, a, c in [(5, 9, 6), (5, 8, 7), (4, 7, 9), (6, 6, 6), (3, 5, 9), (2, 4, 9)]:
    print(f"  m({b},{a},{c}) = {m_value(b, a, c)}")

ico = icosahedron()
led0 = initial_charges(ico)
print(f"\nIcosahedron: initial total {led0.total()}")
led = apply_rules(ico)
print(f"  after rules: total {led.total()}, "
      f"vertex charges {set(led.vertex_charge.values())}, "
      f"face charges {set(led.face_charge.values())}")
print("  transfers by rule:", dict(Counter(t.rule for t in led.transfers)))

report = audit(ico)
print(f"  audit: {len(report.negatives)} negative elements, "
      f"configuration found: {report.configurations}")
print("  (a negative element must coexist with a catalog configuration)")

dod = dodecahedron()
led = apply_rules(dod)
assert led.total() == Fraction(-8)
print(f"\nDodecahedron: faces end at {set(led.face_charge.values())}, "
      f"vertices at {set(led.vertex_charge.values())}, total {led.total()}")
