"""Standard-proof reducibility: enumerate outer classes, recolor the inside.

A configuration is a pattern graph with degree caps and an anchor edge.  The
checker enumerates every class of outer colorings (per-vertex multisets plus
outer monochromatic paths) and asks whether each realizable class lets the
pattern's edges, anchor included, be recolored consistently.
"""

from linarb import ColoringClass, Configuration, build_graph, check_reducible
from linarb.coloring import counts_of
from linarb.configurations import catalog, catalog_family
from linarb.reducer import find_consistent_inner

print("Catalog, in the priority order the partitioner uses:")
print(" ", ", ".join(c.name for c in catalog()))

conf = catalog_family("C1(5,5)")[0]
report = check_reducible(conf)
print(f"\n{conf.name}: {report.verdict}")
print(f"  classes examined {report.classes_total}, feasible {report.classes_feasible},"
      f" {report.seconds:.2f}s")

edge92 = Configuration("edge-9-2", build_graph(2, [(0, 1)]), (9, 2), (0, 1))
report = check_reducible(edge92)
print(f"\nedge with caps (9,2): {report.verdict}")
print("  witness class:", report.witness.to_json())
print("  every forest color is saturated at one end and the matching at the other,")
print("  so no color remains for the anchor.")

report = check_reducible(catalog_family("C3")[0])
print(f"\nC3 (a vertex with two 2-neighbours): {report.verdict} by this proof shape;")
print("  the partitioner handles it with a vertex surgery instead.")

cclass = ColoringClass.make({0: counts_of([1, 1, 2, 2]), 1: counts_of([3, 3, 4, 4])})
inner = find_consistent_inner(catalog_family("C1(5,5)")[0], cclass, include_anchor=True)
print("\nOne inner search by hand: outer {1,1,2,2} vs {3,3,4,4} forces the")
print(f"  matching color on the anchor: {inner}")
