"""Branch-and-bound maximum clique on bitset graphs.

Vertices are 0..n-1, neighbourhoods are Python ints used as bitsets. The
bound is the greedy colouring bound (each colour class is an independent set,
so a clique takes at most one vertex per class).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

__all__ = ["CliqueSearch", "CliqueResult", "iter_bits"]


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class CliqueResult:
    clique: list[int]
    complete: bool  # search space exhausted, so no larger clique exists
    capped: bool  # stopped because a clique of size cap was found
    nodes: int


class _Stop(Exception):
    pass


class CliqueSearch:
    """Maximum clique with greedy-colouring pruning.

    ``adj(v)`` must return the neighbourhood bitset of v (without v itself).
    ``target`` restricts the search to cliques of size >= target, which turns
    the optimisation into a (much cheaper) existence question. ``bound``, if
    given, maps a candidate bitset to an upper bound on the clique size it
    can contain and prunes alongside the colouring bound.
    """

    def __init__(self, n: int, adj: Callable[[int], int], cap: int | None = None,
                 target: int | None = None, node_limit: int | None = None,
                 bound: Callable[[int], int] | None = None):
        self.n = n
        self.adj = adj
        self.cap = cap
        self.target = target
        self.node_limit = node_limit
        self.bound = bound
        self.nodes = 0
        self.best: list[int] = []
        self.best_size = (target - 1) if target else 0

    def _colour(self, p: int) -> list[tuple[int, int]]:
        adj = self.adj
        order = []
        colour = 0
        while p:
            colour += 1
            q = p
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~(adj(v) | low)
                p ^= low
                order.append((v, colour))
        return order

    def _expand(self, r: list[int], p: int):
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise _Stop
        if self.bound is not None and len(r) + self.bound(p) <= self.best_size:
            return
        order = self._colour(p)
        for v, c in reversed(order):
            if len(r) + c <= self.best_size:
                return
            r.append(v)
            np_ = p & self.adj(v)
            if np_:
                self._expand(r, np_)
            elif len(r) > self.best_size:
                self.best = list(r)
                self.best_size = len(r)
                if self.cap and self.best_size >= self.cap:
                    raise _Stop
            r.pop()
            p &= ~(1 << v)

    def run(self, root: int | None = None, fixed: list[int] | None = None) -> CliqueResult:
        """Search inside ``root`` (default all vertices) extending ``fixed``."""
        if root is None:
            root = (1 << self.n) - 1
        r = list(fixed or [])
        if r and len(r) > self.best_size:
            self.best, self.best_size = list(r), len(r)
        complete = True
        try:
            if root:
                self._expand(r, root)
        except _Stop:
            complete = False
        capped = bool(self.cap and len(self.best) >= self.cap)
        return CliqueResult(sorted(self.best), complete and not capped, capped, self.nodes)
