"""Thickness and genericity of symmetric subsets of groups.

A set P is n-thick when among any n group elements g_1..g_n some quotient
g_i^-1 g_j (i < j) lies in P; an *independent set* is a family whose
quotients all avoid P, so P is n-thick exactly when no independent family of
size n exists. Repetitions are allowed in the definition, hence a set missing
the identity is never thick.

Searches over finite universes only refute thickness globally; a window
confirmation is window-relative unless a symbolic argument upgrades it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from ._clique import CliqueSearch, iter_bits
from .groups import FiniteGroup, Group, Integers

__all__ = [
    "SymmetricSet",
    "IndependentWitness",
    "ThicknessResult",
    "GenericityCertificate",
    "NotGeneric",
    "PreconditionError",
    "LemmaViolation",
    "Lemma23Result",
    "RamseyResult",
    "IntersectionReport",
    "max_independent_set",
    "min_thickness",
    "min_genericity",
    "lemma23_subgroup",
    "product_set",
    "ramsey_bound",
    "exact_small_ramsey",
    "check_thick_intersection",
    "is_independent",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 64


class PreconditionError(ValueError):
    pass


class NotGeneric(ValueError):
    pass


class LemmaViolation(AssertionError):
    """A verified statement failed; this means a bug, not a counterexample."""


class SymmetricSet:
    """A subset of ``group`` given by a membership predicate.

    ``window`` optionally enumerates the set when it is finite. Use
    :meth:`symmetrize` or :meth:`finite` to get symmetry by construction; the
    plain constructor trusts the caller (see :meth:`asymmetry`).
    """

    def __init__(self, group: Group, member: Callable[[Any], bool], window: Iterable | None = None,
                 tag: str | None = None, symbolic: Any = None):
        self.group = group
        self._member = member
        self.window = list(window) if window is not None else None
        self.tag = tag
        self.symbolic = symbolic

    def contains(self, x) -> bool:
        return bool(self._member(x))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    @classmethod
    def symmetrize(cls, group: Group, member: Callable[[Any], bool], tag: str | None = None) -> SymmetricSet:
        return cls(group, lambda x: member(x) or member(group.inv(x)), tag=tag)

    @classmethod
    def finite(cls, group: Group, elements: Iterable, symmetrize: bool = True, tag: str = "finite") -> SymmetricSet:
        elems = set(elements)
        if symmetrize:
            elems |= {group.inv(e) for e in elems}
        return cls(group, elems.__contains__, window=group.sorted(elems), tag=tag)

    @classmethod
    def whole(cls, group: Group) -> SymmetricSet:
        return cls(group, lambda x: True, tag="whole")

    def intersect(self, other: SymmetricSet) -> SymmetricSet:
        win = None
        if self.window is not None:
            win = [x for x in self.window if other.contains(x)]
        elif other.window is not None:
            win = [x for x in other.window if self.contains(x)]
        return SymmetricSet(self.group, lambda x: self.contains(x) and other.contains(x), window=win,
                            tag=f"({self.tag} & {other.tag})")

    __and__ = intersect

    def asymmetry(self, universe: Iterable) -> list:
        """Elements x of ``universe`` with x in P but x^-1 not in P."""
        return [x for x in universe if self.contains(x) != self.contains(self.group.inv(x))]

    def elements_in(self, universe: Iterable) -> list:
        return [x for x in universe if self.contains(x)]

    def __repr__(self):
        return f"SymmetricSet({self.tag or 'predicate'} in {self.group!r})"


@dataclass
class IndependentWitness:
    """Points whose pairwise quotients all avoid P."""

    points: list
    checked_pairs: int
    complete: bool = True  # the search proved no larger independent set in the universe
    capped: bool = False  # search stopped at the cap; only "size >= cap" is known

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass
class ThicknessResult:
    """Minimal thickness on a universe.

    ``n`` is the least n such that P is n-thick on the universe, i.e. the
    largest independent family plus one. ``n is None`` means not thick:
    either the identity is missing or the cap was reached.
    """

    n: int | None
    witness: IndependentWitness
    exact: bool
    reason: str = ""

    @property
    def thick(self) -> bool:
        return self.n is not None


@dataclass
class GenericityCertificate:
    translates: list
    side: str
    count: int
    lower_bound: int
    exact: bool

    def covers(self, P: SymmetricSet, universe: Iterable) -> bool:
        g = P.group
        for x in universe:
            if self.side == "right":
                if not any(P.contains(g.op(x, g.inv(s))) for s in self.translates):
                    return False
            elif not any(P.contains(g.op(g.inv(s), x)) for s in self.translates):
                return False
        return True


# -- independent sets -------------------------------------------------------------


def is_independent(P: SymmetricSet, points: Sequence) -> bool:
    g = P.group
    return all(not P.contains(g.left_quotient(a, b)) for a, b in itertools.combinations(points, 2))


def _interval_graph(P: SymmetricSet, universe: range):
    """Compatibility bitsets for a contiguous window of Z.

    Compatibility of u < v depends only on v - u, so one pass over the
    differences replaces the quadratic pair scan.
    """
    lo, width = universe.start, len(universe) - 1
    nm = 0
    rnm = 0
    for d in range(1, width + 1):
        if not P.contains(d):
            nm |= 1 << d
            rnm |= 1 << (width - d)
    full = (1 << (width + 1)) - 1

    def adj(v: int) -> int:
        return ((nm << v) | (rnm >> (width - v))) & full

    if width <= 8000:
        # about width^2 / 8 bytes; worth it since the search calls adj constantly
        return [adj(v) for v in range(width + 1)].__getitem__, width + 1, lo
    return adj, width + 1, lo


def _generic_graph(P: SymmetricSet, elements: list):
    g = P.group
    n = len(elements)
    adj = [0] * n
    for i in range(n):
        a = elements[i]
        for j in range(i + 1, n):
            if not P.contains(g.left_quotient(a, elements[j])):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj.__getitem__, n


def _is_interval(P: SymmetricSet, universe) -> bool:
    return isinstance(P.group, Integers) and isinstance(universe, range) and universe.step == 1


def max_independent_set(P: SymmetricSet, universe: Iterable, cap: int = DEFAULT_CAP,
                        target: int | None = None, node_limit: int | None = None,
                        bound=None) -> IndependentWitness:
    """Largest family of distinct universe points with pairwise quotients outside P.

    Deterministic given the canonical element order. With ``target`` only
    families of size >= target are sought (an empty witness then proves none
    exists). Windows of Z given as ``range`` use translation invariance: some
    optimal family starts at the left end of the window. ``bound`` is an
    optional pruning bound on bitsets of universe positions.
    """
    if cap < 1:
        raise PreconditionError("cap must be >= 1")
    if _is_interval(P, universe):
        if len(universe) == 0:
            return IndependentWitness([], 0)
        adj, n, lo = _interval_graph(P, universe)
        search = CliqueSearch(n, adj, cap=cap, target=target, node_limit=node_limit, bound=bound)
        res = search.run(root=adj(0), fixed=[0])
        pts = [lo + v for v in res.clique]
        pairs = n - 1
    else:
        elements = P.group.sorted(set(universe))
        if not elements:
            return IndependentWitness([], 0)
        adj, n = _generic_graph(P, elements)
        search = CliqueSearch(n, adj, cap=cap, target=target, node_limit=node_limit, bound=bound)
        res = search.run()
        pts = [elements[v] for v in res.clique]
        pairs = n * (n - 1) // 2
    if target and pts and len(pts) < target:
        pts = []
    return IndependentWitness(pts, pairs, complete=res.complete, capped=res.capped)


def min_thickness(P: SymmetricSet, universe: Iterable, cap: int = DEFAULT_CAP) -> ThicknessResult:
    """1 + size of a maximum independent family on ``universe``."""
    g = P.group
    if not P.contains(g.identity):
        # a constant sequence g, g, ... has all quotients equal to the identity
        w = IndependentWitness([g.identity] * cap, 0, complete=False, capped=True)
        return ThicknessResult(None, w, exact=True, reason="identity not in P")
    w = max_independent_set(P, universe, cap=cap)
    if w.capped:
        return ThicknessResult(None, w, exact=False, reason=f"independent family of size {cap} found (cap)")
    return ThicknessResult(w.size + 1, w, exact=w.complete)


# -- genericity -----------------------------------------------------------------


def _finite_elements(P: SymmetricSet, G: FiniteGroup) -> list[int]:
    if P.window is not None:
        return sorted(x for x in P.window if G.is_element(x))
    return [x for x in G.elements() if P.contains(x)]


def _generated(G: FiniteGroup, elems: list[int]) -> list[int]:
    """Elements of the subgroup generated by elems (closure under products)."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = {int(v) for v in np.unique(G.table[np.ix_(frontier, elems)])} - seen
        seen |= nxt
        frontier = sorted(nxt)
    return sorted(seen)


def _min_cover(universe_size: int, sets: list[int], labels: list, forced: int | None = None
               ) -> tuple[list, int]:
    """Smallest subfamily of bitsets covering 0..universe_size-1 (iterative deepening).

    ``forced`` is the index of a set that may be assumed in some optimal cover
    (for group translates any cover can be shifted to contain P itself).
    """
    full = (1 << universe_size) - 1
    uniq: dict[int, Any] = {}
    for s, lab in zip(sets, labels):
        uniq.setdefault(s, lab)
    # drop sets contained in another set
    cand = sorted(uniq.items(), key=lambda kv: (-kv[0].bit_count(), labels.index(kv[1])))
    kept = []
    for s, lab in cand:
        if not any(s | t == t for t, _ in kept):
            kept.append((s, lab))
    biggest = max((s for s, _ in kept), default=0, key=int.bit_count).bit_count()
    if biggest == 0:
        raise NotGeneric("P is empty")
    lower = -(-universe_size // biggest)
    covering = [[i for i, (s, _) in enumerate(kept) if s >> e & 1] for e in range(universe_size)]
    cov_mask = [sum(1 << i for i in c) for c in covering]
    by_rarity = sorted(range(universe_size), key=lambda e: len(covering[e]))

    def packing(missing: int) -> int:
        # uncovered elements no single set covers together each need their own set
        used, k = 0, 0
        for e in by_rarity:
            if missing >> e & 1 and not cov_mask[e] & used:
                used |= cov_mask[e]
                k += 1
        return k
    failed: dict[int, int] = {}  # covered -> largest depth known to fail

    def search(covered: int, depth: int, chosen: list):
        if covered == full:
            return list(chosen)
        if depth == 0 or failed.get(covered, -1) >= depth:
            return None
        missing = full & ~covered
        if (missing.bit_count() > depth * max((s & missing).bit_count() for s, _ in kept)
                or packing(missing) > depth):
            failed[covered] = depth
            return None
        # branch on the uncovered element with the fewest covering sets
        e = min((e for e in range(universe_size) if missing >> e & 1), key=lambda e: len(covering[e]))
        for i in sorted(covering[e], key=lambda i: -(kept[i][0] & missing).bit_count()):
            s, lab = kept[i]
            chosen.append(lab)
            found = search(covered | s, depth - 1, chosen)
            if found is not None:
                return found
            chosen.pop()
        failed[covered] = depth
        return None

    start, first = 0, []
    if forced is not None:
        start, first = sets[forced], [labels[forced]]
    for k in range(max(lower, len(first)), len(kept) + len(first) + 1):
        found = search(start, k - len(first), list(first))
        if found is not None:
            return found, lower
    raise NotGeneric("no cover exists")


def min_genericity(P: SymmetricSet, universe: FiniteGroup | Iterable, side: str = "right",
                   shifts: Iterable | None = None) -> GenericityCertificate:
    """Fewest translates of P covering the universe.

    Exact set cover on a finite group. On a window of Z it is the greedy count
    of shifts (drawn from ``shifts``, default the window) with a counting
    lower bound; coverage of a window says nothing about the rest of Z.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    if isinstance(universe, FiniteGroup):
        G = universe
        elems = _finite_elements(P, G)
        if not elems:
            raise NotGeneric("P is empty")
        t = G.table
        # translates of P stay inside cosets of <P>, so cover <P> once and
        # copy the cover to every coset
        H = _generated(G, elems)
        pos = {h: i for i, h in enumerate(H)}
        sets, labels = [], []
        for s in H:
            img = t[elems, s] if side == "right" else t[s, elems]
            b = 0
            for v in np.unique(img):
                b |= 1 << pos[int(v)]
            sets.append(b)
            labels.append(s)
        inner, lower = _min_cover(len(H), sets, labels, forced=labels.index(G.identity))
        reps, seen = [], set()
        for c in G.elements():
            if c not in seen:
                reps.append(c)
                seen.update(int(v) for v in (t[H, c] if side == "right" else t[c, H]))
        chosen = [int(t[h, c]) if side == "right" else int(t[c, h]) for c in reps for h in inner]
        lower *= len(reps)
        return GenericityCertificate(sorted(chosen), side, len(chosen), lower, exact=True)

    pts = list(universe)
    group = P.group
    index = {x: i for i, x in enumerate(pts)}
    cands = list(shifts) if shifts is not None else pts
    sets = []
    for s in cands:
        b = 0
        for x in pts:
            q = group.op(x, group.inv(s)) if side == "right" else group.op(group.inv(s), x)
            if P.contains(q):
                b |= 1 << index[x]
        sets.append(b)
    full = (1 << len(pts)) - 1
    biggest = max((b.bit_count() for b in sets), default=0)
    if biggest == 0:
        raise NotGeneric("P has no members on the window")
    covered, chosen = 0, []
    while covered != full:
        best = max(range(len(sets)), key=lambda i: ((sets[i] & ~covered).bit_count(), -i))
        if not sets[best] & ~covered:
            raise NotGeneric("shifts cannot cover the window")
        chosen.append(cands[best])
        covered |= sets[best]
    lower = -(-len(pts) // biggest)
    return GenericityCertificate(chosen, side, len(chosen), lower, exact=lower == len(chosen))


# -- product sets and the subgroup construction ---------------------------------


def product_set(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> list[int]:
    A = np.fromiter(A, dtype=np.int64)
    B = np.fromiter(B, dtype=np.int64)
    if A.size == 0 or B.size == 0:
        return []
    return [int(v) for v in np.unique(G.table[np.ix_(A, B)])]


@dataclass
class Lemma23Result:
    subgroup: list[int]
    index: int
    exponent: int
    genericity: GenericityCertificate
    powers: list[int] = field(default_factory=list)  # |P^k| for k = 1..exponent


def lemma23_subgroup(P: SymmetricSet, m: int, G: FiniteGroup,
                     genericity: GenericityCertificate | None = None) -> Lemma23Result:
    """P^(3m-2) for a symmetric, identity-containing, right m-generic P.

    Verifies closure under products and inverses and that the index is at most m.
    A right genericity certificate, if given, is re-checked instead of
    recomputing the least cover.
    """
    if m < 1:
        raise PreconditionError("m must be >= 1")
    elems = _finite_elements(P, G)
    if G.identity not in elems:
        raise PreconditionError("identity not in P")
    es = set(elems)
    bad = [x for x in elems if G.inv(x) not in es]
    if bad:
        raise PreconditionError(f"P is not symmetric: inverse of {G.label(bad[0])} missing")
    if genericity is not None:
        covered = set(product_set(G, elems, genericity.translates))
        if genericity.side != "right" or len(covered) != G.order:
            raise PreconditionError("certificate translates do not cover G")
        cert = genericity
    else:
        cert = min_genericity(P, G, side="right")
    if cert.count > m:
        raise PreconditionError(f"P is not right {m}-generic (needs {cert.count} translates)")
    exponent = 3 * m - 2
    power = elems
    sizes = [len(power)]
    for _ in range(exponent - 1):
        power = product_set(G, power, elems)
        sizes.append(len(power))
    H = set(power)
    if set(product_set(G, power, power)) != H:
        raise LemmaViolation(f"P^{exponent} is not closed under products")
    if any(G.inv(x) not in H for x in H):
        raise LemmaViolation(f"P^{exponent} is not closed under inverses")
    if G.order % len(H):
        raise LemmaViolation("subgroup order does not divide group order")
    index = G.order // len(H)
    if index > m:
        raise LemmaViolation(f"index {index} exceeds m = {m}")
    return Lemma23Result(sorted(H), index, exponent, cert, sizes)


# -- Ramsey numbers -------------------------------------------------------------


def ramsey_bound(n: int, m: int) -> int:
    """Binomial upper bound C(n+m-2, n-1) for R(n, m)."""
    if n < 2 or m < 2:
        raise PreconditionError("n, m must be >= 2")
    return math.comb(n + m - 2, n - 1)


@dataclass
class RamseyResult:
    value: int
    witness_coloring: dict  # red edges of a good colouring of K_{value-1}
    colorings_checked: int
    method: str


def _good_extensions(k: int, n: int, m: int, red: list[int]):
    """Red neighbourhoods for a new vertex k keeping no red K_n and no blue K_m.

    ``red[i]`` is the red-neighbour bitset of vertex i < k.
    """
    full = (1 << k) - 1
    blue = [full & ~red[i] & ~(1 << i) for i in range(k)]
    for mask in _clique_free_subsets(k, red, n - 1):
        if not _has_clique(full & ~mask, blue, m - 1):
            yield mask


def _clique_free_subsets(k: int, adj: list[int], size: int):
    """All subsets of 0..k-1 containing no clique of ``size`` vertices."""
    if size <= 0:
        return

    def rec(v: int, chosen: int):
        if v == k:
            yield chosen
            return
        yield from rec(v + 1, chosen)
        if not _has_clique(chosen & adj[v], adj, size - 1):
            yield from rec(v + 1, chosen | (1 << v))

    yield from rec(0, 0)


def _has_clique(vertices: int, adj: list[int], size: int) -> bool:
    if size <= 0:
        return True
    if vertices.bit_count() < size:
        return False
    for v in iter_bits(vertices):
        rest = vertices & adj[v] & ~((1 << (v + 1)) - 1)
        if _has_clique(rest, adj, size - 1):
            return True
    return False


def _brute_force_good(N: int, n: int, m: int) -> tuple[dict | None, int]:
    """Enumerate all 2-colourings of K_N; return a good one (or None) and the count."""
    edges = list(itertools.combinations(range(N), 2))
    eidx = {e: i for i, e in enumerate(edges)}
    red_sets = [sum(1 << eidx[e] for e in itertools.combinations(s, 2)) for s in itertools.combinations(range(N), n)]
    blue_sets = [sum(1 << eidx[e] for e in itertools.combinations(s, 2)) for s in itertools.combinations(range(N), m)]
    full = (1 << len(edges)) - 1
    checked = 0
    for c in range(1 << len(edges)):
        checked += 1
        blue = full & ~c
        if any(c & s == s for s in red_sets):
            continue
        if any(blue & s == s for s in blue_sets):
            continue
        return {"vertices": N, "red": [list(e) for e in edges if c >> eidx[e] & 1]}, checked
    return None, checked


def _extension_search(N: int, n: int, m: int) -> tuple[dict | None, int]:
    """Vertex-by-vertex search for a good colouring of K_N (exhaustive when none)."""
    count = 0

    def rec(k: int, red: list[int]):
        nonlocal count
        if k == N:
            return red
        for mask in _good_extensions(k, n, m, red):
            count += 1
            new = [r | ((mask >> i & 1) << k) for i, r in enumerate(red)] + [mask]
            found = rec(k + 1, new)
            if found is not None:
                return found
        return None

    red = rec(0, [])
    if red is None:
        return None, count
    edges = [[i, j] for i in range(N) for j in range(i + 1, N) if red[i] >> j & 1]
    return {"vertices": N, "red": edges}, count


def exact_small_ramsey(n: int, m: int) -> RamseyResult:
    """R(n, m) by search: a good colouring of K_{R-1} and exhaustion of K_R.

    Supported for max(n, m) <= 4 and n + m <= 7. Complete graphs with at most
    15 edges are enumerated colouring by colouring.
    """
    if n < 2 or m < 2:
        raise PreconditionError("n, m must be >= 2")
    if max(n, m) > 4 or n + m > 7:
        raise PreconditionError(f"exact R({n},{m}) is outside the supported range")
    if n > m:
        # swapping the colours swaps the roles of n and m
        r = exact_small_ramsey(m, n)
        N = r.witness_coloring["vertices"]
        red = {tuple(e) for e in r.witness_coloring["red"]}
        flipped = [[i, j] for i in range(N) for j in range(i + 1, N) if (i, j) not in red]
        return RamseyResult(r.value, {"vertices": N, "red": flipped}, r.colorings_checked, r.method)
    witness: dict = {"vertices": 1, "red": []}
    total = 0
    N = 2
    while True:
        if N * (N - 1) // 2 <= 15:
            good, checked = _brute_force_good(N, n, m)
            method = "exhaustive"
        else:
            good, checked = _extension_search(N, n, m)
            method = "extension"
        total += checked
        if good is None:
            return RamseyResult(N, witness, total, method)
        witness = good
        N += 1


# -- intersections -------------------------------------------------------------


@dataclass
class IntersectionReport:
    n: int
    m: int
    bound: int
    passed: bool
    offending: IndependentWitness | None
    exact_min_thickness: int | None = None


def check_thick_intersection(P: SymmetricSet, n: int, Q: SymmetricSet, m: int, universe,
                             exact: bool = False, cap: int = DEFAULT_CAP) -> IntersectionReport:
    """Check that P & Q has no independent family of size C(n+m-2, n-1)."""
    bound = ramsey_bound(n, m)
    both = P & Q
    w = max_independent_set(both, universe, cap=max(cap, bound), target=bound)
    passed = not w.points and w.complete
    exact_n = None
    if exact:
        exact_n = min_thickness(both, universe, cap=cap).n
    return IntersectionReport(n, m, bound, passed, None if passed else w, exact_n)
