"""Constructive partition of a 50-vertex random planar graph.

The partitioner finds a catalog configuration, shrinks the graph (usually by
deleting the anchor's image, occasionally by the two-vertex surgery), colors
the smaller graph recursively, and extends the coloring back out.
"""

import time
from collections import Counter

from linarb import PartitionSpec, partition, validate
from linarb.instances import random_plane_graph

g = random_plane_graph(50, seed=7).graph
print(f"Random planar host: {g.n} vertices, {len(g.edges)} edges, "
      f"max degree {g.max_degree}")

trace = []
t0 = time.perf_counter()
coloring = partition(g, trace=trace)
elapsed = time.perf_counter() - t0

print(f"Partitioned in {elapsed:.2f}s over {len(trace)} reduction steps.")
print("Configurations used:", dict(Counter(t["configuration"] for t in trace)))
sizes = Counter(coloring.values())
print("Color class sizes:", {c: sizes[c] for c in sorted(sizes)})
print("Validator:", validate(g, coloring, PartitionSpec(4, 1)) or "valid")
