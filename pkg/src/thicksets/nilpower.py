"""Power subgroups of the integer Heisenberg group.

A finitely generated subgroup H is put in polycyclic form by Euclid steps on
its generators (each step replaces a generator by a product of generators,
so the subgroup is unchanged):

    E1 = (p, q, z1) with p > 0 the gcd of the x-coordinates,
    E2 = (0, r, z2) with r > 0 the gcd of the remaining y-coordinates,
    H meets the centre in dZ, d = gcd(central z's, p r),

where p r enters because [E1, E2] = (0, 0, p r). Every element of H is
E1^s E2^t (0, 0, d)^u, so membership is two divisions and a congruence.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable

from .groups import FGAbelian, Heisenberg, HeisenbergElement, Integers, ball

__all__ = [
    "InternalInconsistency",
    "HeisSubgroup",
    "subgroup_from_generators",
    "power_subgroup",
    "subgroup_membership",
    "bfs_closure",
    "cross_check",
    "GenerationProfile",
    "steps_to_generate",
    "malcev_root",
    "MalcevReport",
    "malcev_containment",
    "self_divisibility_counterexample",
    "abelian_power_index",
    "box",
]

H3 = Heisenberg()
E = HeisenbergElement
ONE = E(0, 0, 0)


class InternalInconsistency(AssertionError):
    """Structural and BFS descriptions of a subgroup disagree."""


@dataclass(frozen=True)
class HeisSubgroup:
    e1: HeisenbergElement | None  # (p, q, z1), p > 0
    e2: HeisenbergElement | None  # (0, r, z2), r > 0
    d: int  # H meets the centre in dZ (0: trivially)
    label: str = ""

    @property
    def hermite(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Rows of the Hermite form of the image in Z^2."""
        p, q = (self.e1.x, self.e1.y) if self.e1 else (0, 0)
        r = self.e2.y if self.e2 else 0
        if self.e1 and self.e2:
            q %= r
        return ((p, q), (0, r))

    @property
    def index(self) -> int | None:
        """[G : H], None when infinite."""
        if not self.e1 or not self.e2 or not self.d:
            return None
        return self.e1.x * self.e2.y * self.d

    def contains(self, g: HeisenbergElement) -> bool:
        x, y, z = g.x, g.y, g.z
        rem = g
        if self.e1:
            if x % self.e1.x:
                return False
            rem = (self.e1 ** (-(x // self.e1.x))) * rem
        elif x:
            return False
        if self.e2:
            if rem.y % self.e2.y:
                return False
            rem = (self.e2 ** (-(rem.y // self.e2.y))) * rem
        elif rem.y:
            return False
        return rem.z % self.d == 0 if self.d else rem.z == 0

    __contains__ = contains

    def generators(self) -> list[HeisenbergElement]:
        out = [g for g in (self.e1, self.e2) if g]
        if self.d:
            out.append(E(0, 0, self.d))
        return out


def _euclid(gens: list[HeisenbergElement], coord: str) -> tuple[HeisenbergElement | None, list]:
    """Reduce ``coord`` of the generators to one positive gcd element;
    return it and the rest (which have ``coord`` = 0)."""
    active = [g for g in gens if getattr(g, coord)]
    rest = [g for g in gens if not getattr(g, coord)]
    while len(active) > 1:
        active.sort(key=lambda g: abs(getattr(g, coord)))
        a = active[0]
        out = [a]
        for b in active[1:]:
            k = getattr(b, coord) // getattr(a, coord)
            b = (a ** (-k)) * b
            (out if getattr(b, coord) else rest).append(b)
        active = out
    if not active:
        return None, rest
    a = active[0]
    if getattr(a, coord) < 0:
        a = a.inverse()
    return a, rest


def subgroup_from_generators(gens: Iterable[HeisenbergElement], label: str = "") -> HeisSubgroup:
    gens = [g for g in gens if g != ONE]
    e1, rest = _euclid(gens, "x")
    e2, central = _euclid(rest, "y")
    zs = [g.z for g in central]
    if e1 and e2:
        zs.append(e1.x * e2.y)
    d = reduce(math.gcd, zs, 0)
    if e2 and d:
        e2 = E(0, e2.y, e2.z % d)
    if e1 and e2:
        # normalise E1 by E2 and the centre so the form is canonical
        k = e1.y // e2.y
        e1 = (e2 ** (-k)) * e1
        if d:
            e1 = E(e1.x, e1.y, e1.z % d)
    elif e1 and d:
        e1 = E(e1.x, e1.y, e1.z % d)
    return HeisSubgroup(e1, e2, d, label)


@lru_cache(maxsize=64)
def power_subgroup(n: int, check: bool = True) -> HeisSubgroup:
    """<g^n : g in G>, from the n-th powers of the radius-2 ball.

    Modulo (n,0,0), (0,n,0), (0,0,n) a power (x,y,z)^n leaves the central
    part x y (C(n,2) - n^2), and (1,1,0) realises x y = 1, so the radius-2
    ball already generates. With ``check`` the result is compared with a
    BFS closure (hard failure on disagreement).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    powers = {g ** n for g in ball(H3, H3.generators(), 2)}
    H = subgroup_from_generators(sorted(powers), label=f"<g^{n}>")
    if check:
        cross_check(H, n, radius=min(3, 2 + n))
    return H


def subgroup_membership(H: HeisSubgroup, e: HeisenbergElement) -> bool:
    return H.contains(e)


def box(radius: int, zradius: int | None = None) -> Iterable[HeisenbergElement]:
    zr = radius if zradius is None else zradius
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            for z in range(-zr, zr + 1):
                yield E(x, y, z)


def _in_box(g: HeisenbergElement, bxy: int, bz: int) -> bool:
    return abs(g.x) <= bxy and abs(g.y) <= bxy and abs(g.z) <= bz


def bfs_closure(gens: Iterable[HeisenbergElement], bxy: int, bz: int) -> set:
    """All elements reachable from the identity by multiplying by the
    generators and their inverses without leaving the box."""
    steps = set()
    for g in gens:
        for h in (g, g.inverse()):
            if _in_box(h, bxy, bz) and h != ONE:
                steps.add(h)
    steps = sorted(steps)
    seen = {ONE}
    queue = deque([ONE])
    while queue:
        a = queue.popleft()
        for s in steps:
            c = a * s
            if c not in seen and _in_box(c, bxy, bz):
                seen.add(c)
                queue.append(c)
    return seen


def cross_check(H: HeisSubgroup, n: int, radius: int = 3) -> None:
    """BFS closure of the n-th powers of ball(gens, 3) in an enlarged box
    must agree with ``H`` on the box of the given radius."""
    gens = {g ** n for g in ball(H3, H3.generators(), 3)}
    bxy = radius + 2 * n
    bz = 2 * (radius + 2 * n) ** 2
    closed = bfs_closure(gens, bxy, bz)
    for g in box(radius):
        if H.contains(g) != (g in closed):
            raise InternalInconsistency(f"{g} structural={H.contains(g)} bfs={g in closed} for n={n}")


@dataclass
class GenerationProfile:
    n: int
    radius: int
    layers: list  # layers[k] = box elements of H first reached with k factors
    factors: dict = field(repr=False, default_factory=dict)  # element -> minimal factor count
    unresolved: list = field(default_factory=list)
    step_cap: int = 0

    @property
    def N(self) -> int | None:
        """Maximum factor count over the box, None if some element is unresolved."""
        return None if self.unresolved else len(self.layers) - 1

    def histogram_rows(self):
        for k, c in enumerate(self.layers):
            yield {"factors": k, "count": c}


def steps_to_generate(n: int, radius: int, step_cap: int = 8) -> GenerationProfile:
    """Minimal number of n-th-power factors for each element of
    power_subgroup(n) in the coordinate box, by layered BFS. Powers are taken
    from ball(gens, radius + 2); intermediate products stay in an enlarged
    box."""
    if n < 1 or radius < 0:
        raise ValueError("need n >= 1 and radius >= 0")
    H = power_subgroup(n, check=False)
    bxy = radius + 2 * n
    bz = 2 * bxy * bxy
    powers = {g ** n for g in ball(H3, H3.generators(), radius + 2)}
    steps = sorted({h for g in powers for h in (g, g.inverse()) if _in_box(h, bxy, bz) and h != ONE})
    targets = {g for g in box(radius) if H.contains(g)}
    factors = {ONE: 0}
    frontier = [ONE]
    k = 0
    while frontier and k < step_cap and not targets <= factors.keys():
        k += 1
        nxt = []
        for a in frontier:
            for s in steps:
                c = a * s
                if c not in factors and _in_box(c, bxy, bz):
                    factors[c] = k
                    nxt.append(c)
        frontier = nxt
    reached = {g: factors[g] for g in targets if g in factors}
    depth = max(reached.values(), default=0)
    layers = [0] * (depth + 1)
    for v in reached.values():
        layers[v] += 1
    return GenerationProfile(n, radius, layers, reached, sorted(targets - reached.keys()), step_cap)


def malcev_root(e: HeisenbergElement, n: int) -> HeisenbergElement | None:
    """The unique x with x^n = e, or None: (x,y,z)^n = (nx, ny, nz + C(n,2) x y)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if e.x % n or e.y % n:
        return None
    x, y = e.x // n, e.y // n
    rest = e.z - (n * (n - 1) // 2) * x * y
    if rest % n:
        return None
    return E(x, y, rest // n)


@dataclass
class MalcevReport:
    n: int
    radius: int
    checked: int
    exceptions: list


def malcev_containment(n: int, radius: int = 5) -> MalcevReport:
    """Every element of <g^(n^2)> in the box has an n-th root in G."""
    if n < 2:
        raise ValueError("n must be >= 2")
    H = power_subgroup(n * n, check=False)
    checked, bad = 0, []
    for g in box(radius):
        if H.contains(g):
            checked += 1
            root = malcev_root(g, n)
            if root is None or root ** n != g:
                bad.append(g)
    return MalcevReport(n, radius, checked, bad)


def self_divisibility_counterexample() -> dict:
    """(4,0,0) lies in <g^4> but its only square root (2,0,0) does not, so
    <g^4> is not closed under square roots inside itself."""
    H = power_subgroup(4, check=False)
    e = E(4, 0, 0)
    root = malcev_root(e, 2)
    return {"element": e, "in_subgroup": H.contains(e), "root": root,
            "root_in_subgroup": root is not None and H.contains(root)}


def abelian_power_index(spec, n: int) -> int:
    """[G : nG] = n^r * prod gcd(n, c_i) for G = Z^r + sum Z/c_i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(spec, Integers):
        return n
    if isinstance(spec, FGAbelian):
        return n ** spec.rank * math.prod(math.gcd(n, c) for c in spec.moduli)
    rank, moduli = spec
    return n ** rank * math.prod(math.gcd(n, c) for c in moduli)
