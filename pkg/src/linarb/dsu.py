"""Union-find with rollback, used for incremental monochromatic-cycle checks."""

from __future__ import annotations


class RollbackDSU:
    """Disjoint sets over 0..n-1 with union by size and an undo trail.

    No path compression, so every union is undone by popping one trail entry.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.trail: list[int] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of x and y; False when they were already joined."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.trail.append(ry)
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            ry = self.trail.pop()
            self.size[self.parent[ry]] -= self.size[ry]
            self.parent[ry] = ry
