"""Plane graphs from rotation systems: faces, segments, neighbour types.

A plane graph is a graph plus a cyclic neighbour order per vertex.  Faces
are traced from that order alone, segments are consecutive triples on facial
walks, and neighbour classification counts the triangles through an edge.
"""

from linarb import (
    build_graph,
    classify_neighbour,
    encode_graph6,
    parse_graph6,
    trace_faces,
    vertex_segments,
)
from linarb.instances import k4_plane, wheel_plane

pg = k4_plane()
print("K4 with a planar rotation system:")
for v, order in enumerate(pg.rotation):
    print(f"  around vertex {v}: {order}")

faces = trace_faces(pg)
print(f"\n{len(faces)} faces traced: {faces}")
n, m = pg.graph.n, len(pg.graph.edges)
print(f"Euler check: {n} - {m} + {len(faces)} = {n - m + len(faces)}")

print("\nSegments at the hub of the 5-wheel (one per incident face):")
for seg in vertex_segments(wheel_plane(5), 0):
    print(f"  ({seg.x}, {seg.y}, {seg.z})  face {seg.face}  length {seg.length}")

g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (1, 3)])
print("\nNeighbour types by triangle count through the edge:")
for u, v in [(1, 2), (0, 1), (3, 4)]:
    print(f"  edge ({u},{v}): {classify_neighbour(g, u, v)}")

text = encode_graph6(pg.graph)
print(f"\ngraph6 round trip: {text!r} -> {sorted(parse_graph6(text).edges)}")
