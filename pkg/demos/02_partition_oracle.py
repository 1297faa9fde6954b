"""The brute-force partition oracle and the coloring validator.

Color 0 is a matching, higher colors are linear forests.  The oracle solves
small instances exhaustively; the validator explains exactly what breaks.
"""

from linarb import PartitionSpec, brute_force_partition, validate
from linarb.instances import complete_graph, subdivided_k4

k4 = complete_graph(4)
spec = PartitionSpec(forests=4, matchings=1)
coloring = brute_force_partition(k4, spec)
print("K4 into four linear forests and a matching:")
for e, color in sorted(coloring.items()):
    kind = "matching" if color == 0 else f"forest {color}"
    print(f"  edge {e} -> {kind}")
print("validator says:", validate(k4, coloring, spec) or "valid")

bad = {e: 1 for e in k4.edges}
print("\nAll of K4 in one forest color:")
for violation in validate(k4, bad, spec):
    print(" ", violation)

print("\nK4 with one edge subdivided, one forest plus one matching:")
result = brute_force_partition(subdivided_k4(), PartitionSpec(1, 1))
print("  oracle result:", result)
print("  (such a partition would 3-edge-color a graph of chromatic index 4)")
