"""Coverings of Z by Bohr-set translates whose difference sets contain no
nontrivial subgroup, and the pigeonhole finder for {x, 2x, ..., Kx} in P - P.

Covering by translates of Q = X(t) is a statement about the circle:
Q + a = {x : g(x) in (g(a) - t, g(a) + t)}, so the translates cover Z exactly
when the open arcs around the centres g(a_i) cover R/Z (g has dense image).
Centres are exact surds, so the arc check is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .groups import FiniteGroup
from .rotation import (BohrSet, IdentityReport, IntervalRotation, Unresolved, WitnessTable, _IntRotation,
                       _RotationTable, max_subgroup_witnesses, surd_rotation, verify_product)
from .surd import Surd, parse_surd
from .thickset import PreconditionError

__all__ = [
    "CoveringError",
    "ArcCoverCertificate",
    "Covering",
    "build_covering",
    "arc_cover_check",
    "difference_set",
    "DifferenceReport",
    "power_parameter",
    "verify_power",
    "NoSubgroupCertificate",
    "certify_no_subgroup",
    "PowerCoverCertificate",
    "certify_power_covers",
    "PigeonholeResult",
    "pigeonhole_difference",
    "QOmegaReport",
    "qomega_covering",
]

HALF = Fraction(1, 2)


class CoveringError(RuntimeError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def _frac01(v: Surd) -> Surd:
    return v - v.floor()


def _hom_for(alpha) -> _IntRotation:
    if isinstance(alpha, _IntRotation):
        return alpha
    if isinstance(alpha, int):
        return surd_rotation(alpha)
    if isinstance(alpha, str):
        alpha = parse_surd(alpha)
    if isinstance(alpha, Surd):
        if alpha.is_rational:
            raise PreconditionError("rotation number must be irrational")
        return _IntRotation(alpha, kind="surd", label=f"n*{alpha}")
    raise TypeError(f"cannot build a rotation from {alpha!r}")


# -- arc cover ------------------------------------------------------------------


@dataclass
class ArcCoverCertificate:
    alpha: str
    t: Fraction
    translates: list  # sorted by centre
    centres: list  # exact g(a_i) in [0, 1), as strings
    covered: bool
    first_gap: int | None = None  # index i whose gap to i+1 is >= 2t

    def endpoints(self) -> list:
        out = []
        for c in self.centres:
            v = parse_surd(c) if "sqrt" in c else Surd.rational(Fraction(c))
            out.append((str(v - self.t), str(v + self.t)))
        return out

    def payload(self) -> dict:
        return {"alpha": self.alpha, "t": str(self.t), "translates": list(self.translates),
                "centres": list(self.centres), "endpoints": [list(e) for e in self.endpoints()],
                "covered": self.covered}

    @classmethod
    def from_payload(cls, p: dict) -> ArcCoverCertificate:
        return arc_cover_check(p["alpha"], Fraction(p["t"]), p["translates"])

    def revalidate(self) -> bool:
        again = arc_cover_check(self.alpha, self.t, self.translates)
        return again.covered == self.covered and again.centres == self.centres


def arc_cover_check(alpha, t: Fraction, translates: Iterable[int]) -> ArcCoverCertificate:
    """Do the open arcs (g(a) - t, g(a) + t) cover the circle?

    Sorted centres c_0 < ... < c_k-1 in [0, 1) cover iff every successive gap
    and the wraparound gap c_0 + 1 - c_k-1 is strictly below 2t.
    """
    h = _hom_for(alpha)
    t = Fraction(t)
    pairs = sorted(((_frac01(h.raw(a)), a) for a in set(translates)), key=lambda p: (p[0].approx(), p[1]))
    # float order can only be wrong for nearly equal centres; fix exactly
    pairs = _exact_sort(pairs)
    width = 2 * t
    covered, first_gap = bool(pairs), None
    for i, (c, _) in enumerate(pairs):
        nxt = pairs[(i + 1) % len(pairs)][0] + (1 if i + 1 == len(pairs) else 0)
        if not nxt - c < width:
            covered, first_gap = False, i
            break
    return ArcCoverCertificate(str(h.beta), t, [a for _, a in pairs], [str(c) for c, _ in pairs],
                               covered, first_gap)


def _exact_sort(pairs: list) -> list:
    out = list(pairs)
    for i in range(1, len(out)):  # insertion pass, near-sorted input
        j = i
        while j > 0 and (out[j][0] < out[j - 1][0] or (out[j][0] == out[j - 1][0] and out[j][1] < out[j - 1][1])):
            out[j], out[j - 1] = out[j - 1], out[j]
            j -= 1
    return out


@dataclass
class Covering:
    n: int
    variant: int
    hom: _IntRotation
    t: Fraction  # Q = X(t)
    translates: list
    certificate: ArcCoverCertificate
    search_bound: int = 0

    @property
    def Q(self) -> BohrSet:
        return BohrSet(self.hom, self.t)

    @property
    def size(self) -> int:
        return len(self.translates)

    def member_index(self, x: int) -> int | None:
        """Some i with x in Q + a_i."""
        for i, a in enumerate(self.translates):
            if self.hom.member(x - a, self.t):
                return i
        return None


def _variant_params(n: int, variant: int) -> tuple[Fraction, int]:
    if n < 1:
        raise PreconditionError("n >= 1 required")
    if variant == 1:
        return Fraction(1, 6 * n), 3 * n + 1
    if variant == 2:
        return Fraction(2, 8 * n + 1), 2 * n + 1
    raise PreconditionError(f"variant must be 1 or 2, got {variant}")


def _symmetric_order(K: int) -> np.ndarray:
    """0, 1, -1, 2, -2, ..., K, -K."""
    ks = np.empty(2 * K + 1, dtype=np.int64)
    ks[0] = 0
    ks[1::2] = np.arange(1, K + 1)
    ks[2::2] = -np.arange(1, K + 1)
    return ks


def build_covering(n: int, variant: int = 1, alpha=2, start: int = 64, budget: int = 10**7) -> Covering:
    """Translates of Q = X(t) covering Z with 3n+1 (variant 1) or 2n+1
    (variant 2) arcs.

    For target i/k the translate is the smallest |a| whose centre lies within
    a safe fraction of the per-gap slack 2t - 1/k; the search bound doubles
    until every target is met and the exact arc check passes.
    """
    t, k = _variant_params(n, variant)
    h = _hom_for(alpha)
    slack = float(2 * t - Fraction(1, k))
    tol = 0.45 * slack
    beta = h.beta.approx()
    K = start
    best = None
    while K <= budget:
        ks = _symmetric_order(K)
        fr = np.mod(ks * beta, 1.0)
        chosen = []
        for i in range(k):
            target = i / k
            dist = np.abs(fr - target)
            dist = np.minimum(dist, 1 - dist)
            hit = np.flatnonzero(dist < tol)
            if not len(hit):
                break
            chosen.append(int(ks[hit[0]]))
        if len(chosen) == k:
            cert = arc_cover_check(h, t, chosen)
            if cert.covered:
                return Covering(n, variant, h, t, list(chosen), cert, K)
            best = cert
        K *= 2
    raise CoveringError(f"no certified cover with |a| <= {budget}", partial=best)


# -- difference set and powers ---------------------------------------------------


@dataclass
class DifferenceReport:
    P: BohrSet
    product: IdentityReport
    zero_in_P: bool

    @property
    def ok(self) -> bool:
        return self.zero_in_P and not self.product.mismatches and not self.product.inconclusive


def difference_set(c: Covering, window: range | None = None, witness_bound: int = 10**5,
                   sample_pairs: int = 500) -> DifferenceReport:
    """A_i - A_i = Q - Q = Q + Q = X(2t); the window cross-check decomposes
    every member of X(2t) as a sum of two elements of Q and spot-checks the
    other inclusion."""
    P = BohrSet(c.hom, 2 * c.t)
    window = window if window is not None else range(-500, 501)
    rep = verify_product(c.hom, c.t, c.t, window, witness_bound=witness_bound, sample_pairs=sample_pairs)
    return DifferenceReport(P, rep, P.contains(0))


def power_parameter(c: Covering) -> Fraction:
    """P^n = X(n 2t): 1/3 for variant 1, 4n/(8n+1) for variant 2."""
    return c.n * 2 * c.t


def verify_power(c: Covering, window: range | None = None, witness_bound: int = 10**5) -> list[IdentityReport]:
    """P^j = X(j s) for j = 2..n, one product identity per step."""
    s = 2 * c.t
    window = window if window is not None else range(-300, 301)
    return [verify_product(c.hom, (j - 1) * s, s, window, witness_bound=witness_bound, sample_pairs=200)
            for j in range(2, c.n + 1)]


# -- certificates ---------------------------------------------------------------


@dataclass
class NoSubgroupCertificate:
    alpha: str
    t: Fraction
    M: int
    K: int
    table: WitnessTable
    note: str = "g(m) = m*alpha is irrational for m != 0, so ker(g) = 0"

    @property
    def complete(self) -> bool:
        return self.table.complete and not self.table.kernel

    def payload(self) -> dict:
        return {"alpha": self.alpha, "t": str(self.t), "M": self.M, "K": self.K,
                "witnesses": {str(m): k for m, k in sorted(self.table.entries.items())},
                "unresolved": list(self.table.unresolved), "note": self.note}

    @staticmethod
    def revalidate_payload(p: dict) -> bool:
        h = _hom_for(p["alpha"])
        t = Fraction(p["t"])
        w = {int(m): k for m, k in p["witnesses"].items()}
        if p["unresolved"] or set(w) != set(range(1, p["M"] + 1)):
            return False
        return all(1 <= k <= p["K"] and not h.member(k * m, t) for m, k in w.items())


def certify_no_subgroup(P: BohrSet, M: int = 100, K: int = 10**5) -> NoSubgroupCertificate:
    """For every 1 <= m <= M some k_m m lies outside P, so mZ is not in P."""
    table = max_subgroup_witnesses(P, M, K)
    h = P.hom
    return NoSubgroupCertificate(str(h.beta), P.t, M, K, table)


@dataclass
class PowerCoverCertificate:
    alpha: str
    s: Fraction
    k: int
    split: tuple  # (j1, j2) with j1 s, j2 s <= 1/2 and (j1 + j2) s > 1/2
    samples: list = field(default_factory=list)  # (x, y): y in X(j1 s), x - y in X(j2 s)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        j1, j2 = self.split
        return (j1 + j2 <= self.k and (j1 + j2) * self.s > HALF and max(j1, j2) * self.s <= HALF
                and not self.failures)

    def payload(self) -> dict:
        return {"alpha": self.alpha, "s": str(self.s), "k": self.k, "split": list(self.split),
                "argument": "arcs (-a, a) and (g(x) - b, g(x) + b) meet when a + b > 1/2; Im(g) is dense",
                "samples": [list(p) for p in self.samples]}

    @staticmethod
    def revalidate_payload(p: dict) -> bool:
        h = _hom_for(p["alpha"])
        s = Fraction(p["s"])
        j1, j2 = p["split"]
        if not (j1 + j2 <= p["k"] and (j1 + j2) * s > HALF and max(j1, j2) * s <= HALF):
            return False
        return all(h.member(y, j1 * s) and h.member(x - y, j2 * s) for x, y in p["samples"])


def certify_power_covers(P: BohrSet, k: int, samples: int = 100, window: int = 10**4, seed: int = 0,
                         witness_bound: int = 10**5) -> PowerCoverCertificate:
    """P^k = G for P = X(s) once k s > 1/2.

    Take the least k' <= k with k' s > 1/2 and split it as j1 + j2 with both
    j s <= 1/2, so P^j = X(j s). Two arcs of half-widths a = j1 s and
    b = j2 s with a + b > 1/2 always meet, so every x is y + (x - y) with
    y in X(a), x - y in X(b). Seeded window samples are decomposed
    explicitly.
    """
    s = P.t
    if k * s <= HALF:
        raise PreconditionError(f"k s = {k * s} <= 1/2; use the product identity instead")
    kk = next(j for j in range(1, k + 1) if j * s > HALF)
    j1, j2 = (kk + 1) // 2, kk // 2
    if j2 == 0:
        raise PreconditionError("s > 1/2 is outside the Bohr-set range")
    h = P.hom
    a, b = j1 * s, j2 * s
    cert = PowerCoverCertificate(str(h.beta), s, k, (j1, j2))
    rng = random.Random(seed)
    table = _RotationTable(h, witness_bound)
    for _ in range(samples):
        x = rng.randint(-window, window)
        y = _split_point(h, x, a, b, table)
        if y is None:
            cert.failures.append(x)
        else:
            cert.samples.append((x, y))
    return cert


def _split_point(h, x: int, a: Fraction, b: Fraction, table) -> int | None:
    gx = h.value(x).approx()
    fa, fb = float(a), float(b)
    for shift in (0.0, -1.0, 1.0):
        lo, hi = max(-fa, gx + shift - fb), min(fa, gx + shift + fb)
        if lo >= hi:
            continue
        for y in table.candidates(lo, hi):
            if h.member(y, a) and h.member(x - y, b):
                return y
    return None


# -- pigeonhole -----------------------------------------------------------------


@dataclass
class PigeonholeResult:
    found: bool
    x: object = None
    pair: tuple | None = None
    K: int = 0
    buckets: int = 0
    elements: int = 0
    largest_bucket: int = 0
    verified: bool = False
    reason: str = ""


def _predicate(P) -> Callable:
    if callable(P) and not hasattr(P, "contains"):
        return P
    if hasattr(P, "contains"):
        return P.contains
    s = set(P)
    return s.__contains__


def pigeonhole_difference(P, S: Sequence, universe, K: int) -> PigeonholeResult:
    """Find x != 0 with kx in P - P for k = 1..K.

    The signature of g lists, for each k, the first s in S with k g - s in P.
    Two elements g, h with the same signature give k(h - g) =
    (k h - s) - (k g - s) in P - P. ``universe`` is an abelian FiniteGroup or
    a range of integers; on a finite desk instance a collision may not exist
    and the result then carries the bucket statistics.
    """
    if K < 1:
        raise PreconditionError("K >= 1 required")
    inP = _predicate(P)
    S = sorted(set(S))
    if isinstance(universe, FiniteGroup):
        if not universe.is_abelian():
            raise PreconditionError("universe must be abelian")
        elems = universe.elements()
        add, neg = universe.op, universe.inv

        def mul(k, g):
            out = universe.identity
            for _ in range(k):
                out = add(out, g)
            return out
        zero = universe.identity
    else:
        elems = list(universe)
        add, neg, zero = (lambda u, v: u + v), (lambda u: -u), 0

        def mul(k, g):
            return k * g

    for g in elems:
        if not any(inP(add(g, neg(s))) for s in S):
            raise PreconditionError(f"universe is not P + S: {g} uncovered")

    buckets: dict[tuple, object] = {}
    res = PigeonholeResult(False, K=K, elements=len(elems))
    for g in elems:
        sig = []
        for k in range(1, K + 1):
            kg = mul(k, g)
            sig.append(next((i for i, s in enumerate(S) if inP(add(kg, neg(s)))), None))
        if None in sig:
            continue
        sig = tuple(sig)
        if sig in buckets:
            first = buckets[sig]
            x = add(g, neg(first))
            res.found, res.x, res.pair = True, x, (first, g)
            res.verified = all(_in_difference(mul(k, g), mul(k, first), S[sig[k - 1]], add, neg, inP)
                               for k in range(1, K + 1))
            res.buckets = len(buckets)
            res.reason = "collision"
            return res
        buckets[sig] = g
    res.buckets = len(buckets)
    res.largest_bucket = 1 if buckets else 0
    res.reason = "no two elements share a signature"
    return res


def _in_difference(kh, kg, s, add, neg, inP) -> bool:
    # k x = (k h - s) - (k g - s) with both terms in P
    return inP(add(kh, neg(s))) and inP(add(kg, neg(s)))


# -- Q^omega --------------------------------------------------------------------


@dataclass
class QOmegaReport:
    n: int
    variant: int
    primes: tuple
    samples: int
    covered: int
    unresolved: list
    uncovered: list
    kernel_note: str = ("no nonzero rational combination of square roots of distinct primes is rational "
                        "(stored algebraic fact)")

    @property
    def ok(self) -> bool:
        return not self.uncovered and not self.unresolved


def qomega_covering(n: int, variant: int = 1, primes: Sequence[int] = (2, 3, 5), samples: int = 200,
                    seed: int = 0, max_den: int = 12, max_num: int = 50) -> QOmegaReport:
    """The Z covering transported to finite-support Q^omega via e_i -> sqrt(p_i).

    Translates are a_i e_1, whose centres a_i sqrt(p_1) are those of the Z
    covering for alpha = sqrt(p_1); coverage is checked on seeded sampled
    elements only.
    """
    c = build_covering(n, variant, alpha=primes[0])
    rot = IntervalRotation(primes)
    rng = random.Random(seed)
    rep = QOmegaReport(n, variant, tuple(primes), samples, 0, [], [])
    for _ in range(samples):
        x = tuple(Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in primes)
        hit = False
        try:
            for a in c.translates:
                shifted = (x[0] - a,) + x[1:]
                if rot.member(shifted, c.t):
                    hit = True
                    break
        except Unresolved:
            rep.unresolved.append(x)
            continue
        if hit:
            rep.covered += 1
        else:
            rep.uncovered.append(x)
    return rep
