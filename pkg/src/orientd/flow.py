"""Dinic maximum flow with an iterative blocking-flow phase.

Arcs out of a node are scanned in insertion order, so callers that add
arcs by ascending vertex id get deterministic augmenting paths.
"""

from __future__ import annotations

from collections import deque

INF = float("inf")


class FlowNetwork:
    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        # parallel arrays indexed by arc id; arc ^ 1 is the reverse arc
        self.to: list[int] = []
        self.cap: list = []

    def add_node(self) -> int:
        self.head.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, capacity) -> int:
        """Add arc u->v; returns its id (flow on it is ``flow_on(id)``)."""
        arc = len(self.to)
        self.to.append(v)
        self.cap.append(capacity)
        self.head[u].append(arc)
        self.to.append(u)
        self.cap.append(0)
        self.head[v].append(arc + 1)
        return arc

    def flow_on(self, arc: int):
        return self.cap[arc ^ 1]

    def residual(self, arc: int):
        return self.cap[arc]

    def _bfs(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.head[u]:
                v = self.to[arc]
                if self.cap[arc] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _blocking(self, s: int, t: int, level: list[int], limit):
        to, cap, head = self.to, self.cap, self.head
        it = [0] * self.n
        total = 0
        while total < limit:
            # walk a single augmenting path in the level graph
            path: list[int] = []
            u = s
            while u != t:
                arcs = head[u]
                advanced = False
                while it[u] < len(arcs):
                    arc = arcs[it[u]]
                    v = to[arc]
                    if cap[arc] > 0 and level[v] == level[u] + 1:
                        path.append(arc)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        return total
                    level[u] = -1  # dead end
                    arc = path.pop()
                    u = to[arc ^ 1]
                    it[u] += 1
            push = limit - total
            for arc in path:
                if cap[arc] < push:
                    push = cap[arc]
            for arc in path:
                cap[arc] -= push
                cap[arc ^ 1] += push
            total += push
        return total

    def max_flow(self, s: int, t: int, limit=INF):
        """Augment from s to t until no path remains or ``limit`` is reached."""
        if s == t:
            return 0
        total = 0
        while total < limit:
            level = self._bfs(s, t)
            if level is None:
                break
            pushed = self._blocking(s, t, level, limit - total)
            if not pushed:
                break
            total += pushed
        return total

    def reachable(self, s: int) -> set[int]:
        """Nodes reachable from ``s`` in the residual network."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.head[u]:
                v = self.to[arc]
                if self.cap[arc] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen
