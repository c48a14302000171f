"""Bohr sets X(t) = g^-1(-t, t) for homomorphisms g into R/Z.

Values of g are kept exact: a quadratic surd (a + b*sqrt d)/c for rotations
by sqrt d and their rational scalings, a plain rational for torsion images.
Only the Q^omega rotation by square roots of several primes needs interval
arithmetic; it answers membership three-valued and escalates to
:class:`Unresolved` at the precision budget.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .groups import FGAbelian, Group, Integers, RationalSpace, TorsionSum, ball
from .surd import Surd, floor_surd, sign_surd
from .thickset import PreconditionError, SymmetricSet, ThicknessResult, min_thickness

__all__ = [
    "Unresolved",
    "Tri",
    "CircleHom",
    "IntervalRotation",
    "BohrSet",
    "surd_rotation",
    "rational_images",
    "scaled_rational",
    "bohr_member",
    "dist_lt",
    "IdentityReport",
    "verify_bohr_identity",
    "verify_product",
    "verify_divide",
    "verify_derived",
    "WitnessTable",
    "max_subgroup_witnesses",
    "BohrThickness",
    "thickness_of_bohr",
    "TorsionSpec",
    "build_dense_hom",
    "DensityWitness",
    "density_witness",
    "check_hom_law",
    "bohr_sweep_rows",
]


class Unresolved(RuntimeError):
    """A decision could not be made within the configured bounds."""


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def _frac(t) -> Fraction:
    if isinstance(t, Surd):
        return t.rational_value()
    return Fraction(t)


def dist_lt(A: int, B: int, d: int, C: int, t: Fraction) -> bool:
    """Is the circle distance from (A + B sqrt d)/C to 0 strictly below t?

    Only the two integers around the value can be within t <= 1/2, so the
    test is |q(A - Cm) + qB sqrt d| < pC for m = floor and floor + 1, each a
    pair of integer sign tests.
    """
    p, q = t.numerator, t.denominator
    m0 = floor_surd(A, B, d, C)
    for m in (m0, m0 + 1):
        u = q * (A - C * m)
        v = q * B
        if sign_surd(p * C - u, -v, d) > 0 and sign_surd(p * C + u, v, d) > 0:
            return True
    return False


# -- homomorphisms ------------------------------------------------------------


def _coords(domain: Group, x) -> Sequence[int]:
    if isinstance(domain, Integers):
        return (x,)
    if isinstance(domain, FGAbelian):
        return x.free + x.torsion
    if isinstance(domain, TorsionSum):
        return x
    raise TypeError(f"no coordinates for {domain!r}")


class CircleHom:
    """g: domain -> R/Z given by exact images of the standard generators.

    ``kind`` is "surd" (integers rotated by a multiple of sqrt d),
    "rational" (images in Q/Z) or "scaled" (sqrt d times rationals).
    ``image`` maps a generator index to its image as a :class:`Surd`; for
    torsion sums it is evaluated lazily and the relation c_i g(e_i) = 0 is
    checked on first use.
    """

    def __init__(self, domain: Group, image: Callable[[int], Surd], kind: str, d: int = 2,
                 ngens: int | None = None, label: str = ""):
        self.domain = domain
        self.kind = kind
        self.d = d
        self.label = label
        self._raw_image = image
        self._cache: dict[int, Surd] = {}
        self.ngens = ngens
        if ngens is not None:
            for i in range(ngens):
                self.image(i)

    def image(self, i: int) -> Surd:
        if i not in self._cache:
            v = self._raw_image(i)
            v = v if isinstance(v, Surd) else Surd.rational(Fraction(v), self.d)
            order = self._order(i)
            if order:
                w = v * order
                if not (w.is_rational and w.rational_value().denominator == 1):
                    raise PreconditionError(
                        f"generator {i} has order {order} but {order} * g(e_{i}) = {w} is not 0 mod 1")
            self._cache[i] = v
        return self._cache[i]

    def _order(self, i: int) -> int:
        if isinstance(self.domain, Integers):
            return 0
        if isinstance(self.domain, FGAbelian):
            return self.domain.generator_orders()[i]
        return self.domain.modulus(i)

    def raw(self, x) -> Surd:
        """An exact real representative of g(x), not reduced mod 1."""
        total = Surd(0, 0, self.d)
        for i, c in enumerate(_coords(self.domain, x)):
            if c:
                total = total + self.image(i) * c
        return total

    def value(self, x) -> Surd:
        """g(x) reduced to the fundamental domain [-1/2, 1/2)."""
        return self.raw(x).centered_mod1()

    def distance(self, x) -> Surd:
        """Circle distance from g(x) to 0, in [0, 1/2]."""
        return abs(self.value(x))

    def in_kernel(self, x) -> bool:
        r = self.raw(x)
        return r.is_rational and r.rational_value().denominator == 1

    def member(self, x, t: Fraction) -> bool:
        r = self.raw(x)
        return dist_lt(r.a, r.b, r.d, r.c, t)

    def __repr__(self):
        return f"CircleHom({self.kind}, {self.label or self.domain!r})"


def surd_rotation(d: int = 2, scale: Fraction | int = 1) -> CircleHom:
    """n -> n * scale * sqrt(d) mod 1 on the integers."""
    img = Surd(0, 1, d) * Fraction(scale)
    if img.is_rational:
        raise PreconditionError("a surd rotation needs a nonzero irrational image")
    return _IntRotation(img, kind="surd", label=f"n*{img}")


def rational_images(domain: Group, images: Sequence, d: int = 2) -> CircleHom:
    """Generator images in Q/Z (given as Fractions or 'p/q' strings)."""
    vals = [Surd.rational(Fraction(v), d) for v in images]
    if isinstance(domain, Integers):
        if len(vals) != 1:
            raise PreconditionError("Z has one generator")
        return _IntRotation(vals[0], kind="rational", label=f"n*{vals[0]}")
    return CircleHom(domain, lambda i: vals[i], "rational", d, ngens=len(vals))


def scaled_rational(domain: Group, rationals: Sequence, d: int = 2) -> CircleHom:
    """Generator images sqrt(d) * r_i."""
    vals = [Surd(0, 1, d) * Fraction(r) for r in rationals]
    if isinstance(domain, Integers):
        if len(vals) != 1:
            raise PreconditionError("Z has one generator")
        return _IntRotation(vals[0], kind="scaled", label=f"n*{vals[0]}")
    return CircleHom(domain, lambda i: vals[i], "scaled", d, ngens=len(vals))


class _IntRotation(CircleHom):
    """Fast path for Z: g(n) = n * beta with beta = (a + b sqrt d)/c."""

    def __init__(self, beta: Surd, kind: str, label: str):
        super().__init__(Integers(), lambda i: beta, kind, beta.d, ngens=1, label=label)
        self.beta = beta

    def raw(self, x) -> Surd:
        return Surd(x * self.beta.a, x * self.beta.b, self.beta.d, self.beta.c)

    def member(self, x, t: Fraction) -> bool:
        b = self.beta
        return dist_lt(x * b.a, x * b.b, b.d, b.c, t)


class IntervalRotation:
    """Q^k -> R/Z, e_i -> sqrt(p_i) for distinct primes, via rational intervals.

    Stands in for finite-support elements of Q^omega. No nonzero rational
    combination of square roots of distinct primes is rational, so the kernel
    is trivial; that is a stored algebraic fact, not something checked here.
    """

    kind = "interval"

    def __init__(self, primes: Sequence[int] = (2, 3, 5), start_bits: int = 32, max_bits: int = 512):
        self.primes = tuple(primes)
        self.domain = RationalSpace(len(self.primes))
        self.start_bits = start_bits
        self.max_bits = max_bits

    def interval(self, x, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        scale = 1 << bits
        for c, p in zip(x, self.primes):
            if not c:
                continue
            r = math.isqrt(p << (2 * bits))
            a, b = Fraction(r, scale), Fraction(r + 1, scale)
            if c > 0:
                lo, hi = lo + c * a, hi + c * b
            else:
                lo, hi = lo + c * b, hi + c * a
        return lo, hi

    def tri_member(self, x, t: Fraction, bits: int) -> Tri:
        lo, hi = self.interval(x, bits)
        k = math.floor(lo + Fraction(1, 2))
        if k - t < lo and hi < k + t:
            return Tri.YES
        k = math.floor(lo)
        if k + t <= lo and hi <= k + 1 - t:
            return Tri.NO
        return Tri.UNKNOWN

    def member(self, x, t: Fraction) -> bool:
        bits = self.start_bits
        while bits <= self.max_bits:
            r = self.tri_member(x, t, bits)
            if r is not Tri.UNKNOWN:
                return r is Tri.YES
            bits *= 2
        raise Unresolved(f"membership of {x} in X({t}) undecided at {self.max_bits} bits")

    def __repr__(self):
        return "IntervalRotation(" + ", ".join(f"sqrt{p}" for p in self.primes) + ")"


# -- Bohr sets ----------------------------------------------------------------


class BohrSet(SymmetricSet):
    """X(t) = {x : |g(x)| < t}, open interval, symmetric by construction."""

    def __init__(self, hom, t):
        t = _frac(t)
        if not 0 < t <= Fraction(1, 2):
            raise PreconditionError(f"t = {t} outside (0, 1/2]")
        self.hom = hom
        self.t = t
        super().__init__(hom.domain, lambda x: hom.member(x, t), tag=f"X({t})", symbolic=("bohr", str(t)))

    def with_t(self, t) -> BohrSet:
        return BohrSet(self.hom, t)


def bohr_member(X: BohrSet, x) -> bool:
    return X.hom.member(x, X.t)


# -- Lemma identities ---------------------------------------------------------


@dataclass
class IdentityReport:
    kind: str
    params: dict
    checked: int = 0
    mismatches: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def conclusive(self) -> bool:
        return not self.mismatches and not self.inconclusive


def _require_int_rotation(h) -> _IntRotation:
    if not isinstance(h, _IntRotation):
        raise PreconditionError("identity checks run on rotations of Z")
    return h


def verify_product(h, t1, t2, window: range, witness_bound: int = 10**6, sample_pairs: int = 2000,
                   seed: int = 0) -> IdentityReport:
    """X(t1) + X(t2) = X(t1 + t2) on ``window``.

    The inclusion X(t1) + X(t2) in X(t1 + t2) is the triangle inequality and
    is spot-checked on seeded pairs. For the reverse, every window member x of
    X(t1 + t2) needs y with |y| <= witness_bound, y in X(t1), x - y in X(t2).
    Candidates come from a float sort of the y values and are then confirmed
    exactly; a member with no confirmed y is reported inconclusive.
    """
    h = _require_int_rotation(h)
    t1, t2 = _frac(t1), _frac(t2)
    if t1 <= 0 or t2 <= 0 or t1 + t2 > Fraction(1, 2):
        raise PreconditionError("need t1, t2 > 0 and t1 + t2 <= 1/2")
    rep = IdentityReport("product", {"t1": str(t1), "t2": str(t2), "window": [window.start, window.stop - 1],
                                     "witness_bound": witness_bound})
    s = t1 + t2
    rng = random.Random(seed)
    a_mem = [x for x in window if h.member(x, t1)]
    b_mem = [x for x in window if h.member(x, t2)]
    for _ in range(sample_pairs if a_mem and b_mem else 0):
        x, y = rng.choice(a_mem), rng.choice(b_mem)
        rep.checked += 1
        if not h.member(x + y, s):
            rep.mismatches.append({"direction": "subset", "x": x, "y": y})

    table = _RotationTable(h, witness_bound)
    for x in window:
        if not h.member(x, s):
            continue
        rep.checked += 1
        gx = h.value(x).approx()
        lo, hi = max(-float(t1), gx - float(t2)), min(float(t1), gx + float(t2))
        for y in table.candidates(lo, hi):
            if h.member(y, t1) and h.member(x - y, t2):
                break
        else:
            rep.inconclusive.append(x)
    rep.detail["members_checked"] = rep.checked
    return rep


class _RotationTable:
    """Integers |y| <= bound sorted by the float value of g(y).

    Only proposes candidates; every use re-checks them exactly.
    """

    def __init__(self, h: _IntRotation, bound: int):
        ys = np.arange(-bound, bound + 1, dtype=np.int64)
        vals = ys * h.beta.approx()
        vals = vals - np.floor(vals + 0.5)
        order = np.argsort(vals, kind="stable")
        self.vals, self.ys = vals[order], ys[order]

    def candidates(self, lo: float, hi: float, limit: int = 16):
        """Up to 2*limit values y with g(y) in (lo, hi), nearest the middle first."""
        i = int(np.searchsorted(self.vals, lo, "right"))
        j = int(np.searchsorted(self.vals, hi, "left"))
        if i >= j:
            return []
        mid = int(np.searchsorted(self.vals, (lo + hi) / 2))
        near = sorted(range(max(i, mid - limit), min(j, mid + limit)), key=lambda k: abs(k - mid))
        return [int(self.ys[k]) for k in near]


def verify_divide(h, t, m: int, window: Iterable) -> IdentityReport:
    """X(t/m) = X(t) intersected with {x : m x in X(t)}, pointwise."""
    t = _frac(t)
    if m < 1 or not 0 < t <= Fraction(1, m + 1):
        raise PreconditionError(f"need 0 < t <= 1/(m+1), got t = {t}, m = {m}")
    rep = IdentityReport("divide", {"t": str(t), "m": m})
    for x in window:
        rep.checked += 1
        left = h.member(x, t / m)
        right = h.member(x, t) and h.member(m * x, t)
        if left != right:
            rep.mismatches.append({"x": x, "direct": left, "chain": right})
    return rep


def _chain_member(h, t: Fraction, b: int):
    """Membership in X(t/b!) using only the X(t) oracle.

    X(s/j) = X(s) intersected with j^-1 X(s), applied for j = 2..b, so
    x is in X(t/b!) iff every product of a sub-multiset of {2..b} times x
    lands in X(t) in the right nested pattern.
    """
    def member(x, j=b):
        if j <= 1:
            return h.member(x, t)
        return member(x, j - 1) and member(j * x, j - 1)
    return member


def _decompose(x: int, k: int, h: _IntRotation, base, table: _RotationTable):
    """Split x into k summands each accepted by ``base``, aiming every
    summand at g(x)/k; returns the summands or None."""
    if k == 1:
        return [x] if base(x) else None
    target = h.value(x).approx() / k
    width = 1e-3
    for y in table.candidates(target - width, target + width, limit=4):
        if base(y):
            rest = _decompose(x - y, k - 1, h, base, table)
            if rest is not None:
                return [y] + rest
    return None


def verify_derived(h, t, q, window: range, margin: int = 2000, witness_bound: int = 10**6) -> IdentityReport:
    """X(q t) rebuilt from the X(t) oracle, compared with direct membership.

    With q = a/b: divide down to X(t/b!) by the halving chain, then take the
    k-fold sumset with k = a (b-1)!, since k t / b! = q t. The sumset is
    computed on the box |y| <= max|window| + margin, so it can only miss
    members, never add false ones. Members it misses (those within about
    1/box of the boundary) get an explicit k-term decomposition with
    summands up to witness_bound, each summand confirmed by the chain
    oracle; only failures of that search are reported inconclusive.
    """
    h = _require_int_rotation(h)
    t, q = _frac(t), _frac(q)
    if q <= 0 or q > 1 / (2 * t):
        raise PreconditionError(f"need 0 < q <= 1/(2t), got q = {q}")
    a, b = q.numerator, q.denominator
    for j in range(2, b + 1):
        if t / math.factorial(j - 1) > Fraction(1, j + 1):
            raise PreconditionError(f"halving step {j} needs t/{j - 1}! <= 1/{j + 1}")
    k = a * math.factorial(b - 1)
    base = _chain_member(h, t, b)
    W = max(abs(window.start), abs(window.stop - 1))
    R = W + margin
    S = [y for y in range(-R, R + 1) if base(y)]
    acc = 1 << R  # the sumset of zero copies is {0}, offset R
    offset = R
    for _ in range(k):
        nxt = 0
        for y in S:
            nxt |= acc << (y + R)
        acc, offset = nxt, offset + R
    rep = IdentityReport("derived", {"t": str(t), "q": str(q), "k": k, "b_factorial": math.factorial(b),
                                     "box": R})
    table = None
    for x in window:
        rep.checked += 1
        chain = bool((acc >> (x + offset)) & 1)
        direct = h.member(x, q * t)
        if direct and not chain:
            table = table or _RotationTable(h, witness_bound)
            parts = _decompose(x, k, h, base, table)
            if parts is None:
                rep.inconclusive.append(x)
                continue
            rep.detail.setdefault("far_decompositions", {})[x] = parts
            chain = True
        if chain != direct:
            rep.mismatches.append({"x": x, "direct": direct, "chain": chain})
    return rep


def verify_bohr_identity(kind: str, params: dict, window: range, witness_bound: int = 10**6) -> IdentityReport:
    """Dispatch on kind in {"product", "divide", "derived"}.

    params carries "alpha" (a Surd or nonsquare int d, default sqrt 2) and
    the lemma parameters t1/t2, t/m or t/q.
    """
    alpha = params.get("alpha", 2)
    h = surd_rotation(alpha) if isinstance(alpha, int) else _IntRotation(alpha, "surd", f"n*{alpha}")
    kind = kind.lower()
    if kind == "product":
        return verify_product(h, params["t1"], params["t2"], window, witness_bound,
                              params.get("sample_pairs", 2000), params.get("seed", 0))
    if kind == "divide":
        return verify_divide(h, params["t"], params["m"], window)
    if kind in ("derived", "derivedpredicate"):
        return verify_derived(h, params["t"], params["q"], window, params.get("margin", 2000), witness_bound)
    raise PreconditionError(f"unknown identity kind {kind!r}")


# -- subgroups and thickness ----------------------------------------------------


@dataclass
class WitnessTable:
    t: Fraction
    entries: dict  # m -> k with k*m not in X(t)
    kernel: list  # m with g(m) = 0, skipped
    unresolved: list  # m with no witness up to K
    K: int

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def verify(self, hom) -> bool:
        return all(not hom.member(k * m, self.t) for m, k in self.entries.items())


def max_subgroup_witnesses(X: BohrSet, M: int, K: int) -> WitnessTable:
    """For 1 <= m <= M with g(m) != 0, the least k <= K with k m outside X."""
    h = X.hom
    if not isinstance(h.domain, Integers):
        raise PreconditionError("witness tables are over Z")
    if X.t >= Fraction(1, 2):
        raise PreconditionError("t must be below 1/2")
    table = WitnessTable(X.t, {}, [], [], K)
    for m in range(1, M + 1):
        if h.in_kernel(m):
            table.kernel.append(m)
            continue
        for k in range(1, K + 1):
            if not h.member(k * m, X.t):
                table.entries[m] = k
                break
        else:
            table.unresolved.append(m)
    return table


@dataclass
class BohrThickness:
    t: Fraction
    analytic: int  # floor(1/t) + 1
    paper_constant: int  # floor(1/(2t)) + 1 as stated in the source lemma
    circle_config: list  # floor(1/t) points pairwise at distance >= t
    irrational_exact: int  # ceil(1/t): exact when Im(g) is dense with no nonzero rational point
    empirical: ThicknessResult | None = None

    @property
    def paper_constant_refuted(self) -> bool:
        """True when the window exhibits an independent set too large for the
        stated constant."""
        e = self.empirical
        return bool(e and e.witness.size >= self.paper_constant)

    @property
    def pigeonhole_ok(self) -> bool:
        # analytic points on a unit circle: two are within 1/analytic < t
        return Fraction(1, self.analytic) < self.t


def thickness_of_bohr(t, hom=None, window: int | None = None, cap: int = 64) -> BohrThickness:
    t = _frac(t)
    if not 0 < t <= Fraction(1, 2):
        raise PreconditionError("t must lie in (0, 1/2]")
    n = math.floor(1 / t)
    # k points pairwise >= t apart need k t <= 1, with equality only for exact
    # spacing 1/k, which a rotation by an irrational never realizes
    res = BohrThickness(t, n + 1, math.floor(1 / (2 * t)) + 1, [Fraction(i, n) for i in range(n)],
                        math.ceil(1 / t))
    if hom is not None and window:
        res.empirical = min_thickness(BohrSet(hom, t), range(-window, window + 1), cap=cap)
    return res


# -- dense homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class TorsionSpec:
    """The direct sum of Z/c_i. ``moduli`` is a prefix; with ``extend`` the
    sequence continues by c_i = i * prod(c_j, j < i) + 1, the least value
    meeting the growth condition. ``periodic`` repeats the prefix forever,
    which has bounded exponent."""

    moduli: tuple
    extend: bool = True
    periodic: bool = False

    def modulus(self, i: int) -> int:
        if i < len(self.moduli):
            return self.moduli[i]
        if self.periodic:
            return self.moduli[i % len(self.moduli)]
        return _extended(self.moduli, i)


def _extended(prefix: tuple, i: int) -> int:
    c = list(prefix)
    prod = math.prod(c)
    while len(c) <= i:
        nxt = len(c) * prod + 1
        c.append(nxt)
        prod *= nxt
    return c[i]


def _growth_violation(moduli: Sequence[int]) -> int | None:
    prod = 1
    for i, c in enumerate(moduli):
        if c <= i * prod:
            return i
        prod *= c
    return None


def build_dense_hom(spec) -> CircleHom:
    """A homomorphism with dense image, or PreconditionError if none exists."""
    if isinstance(spec, Integers):
        return surd_rotation(2)
    if isinstance(spec, FGAbelian):
        if spec.rank < 1:
            raise PreconditionError("finite group: bounded exponent, no dense homomorphism")
        sqrt2 = Surd(0, 1, 2)
        zero = Surd(0, 0, 2)
        return CircleHom(spec, lambda i: sqrt2 if i == 0 else zero, "scaled", 2,
                         ngens=spec.rank + len(spec.moduli), label="sqrt2 * first free coordinate")
    if isinstance(spec, TorsionSpec):
        if spec.periodic or not spec.extend:
            raise PreconditionError("bounded exponent torsion: no homomorphism takes values in (0, 1/k)")
        bad = _growth_violation(spec.moduli)
        if bad is not None:
            prod = math.prod(spec.moduli[:bad])
            raise PreconditionError(
                f"growth condition fails at index {bad}: {spec.moduli[bad]} <= {bad}*{prod} = {bad * prod}")
        dom = TorsionSum(spec.modulus)
        h = CircleHom(dom, lambda i: Surd.rational(Fraction(1, spec.modulus(i))), "rational", 2,
                      label=f"e_i -> 1/c_i, c = {spec.moduli}...")
        h.spec = spec
        return h
    raise PreconditionError(f"unsupported group spec {spec!r}")


@dataclass
class DensityWitness:
    eps: Fraction
    element: Any
    value: Surd | None
    bound: int

    @property
    def found(self) -> bool:
        return self.element is not None


def density_witness(h: CircleHom, eps, bound: int = 10**5) -> DensityWitness:
    """An x with 0 < |g(x)| < eps, searched in order of increasing size."""
    eps = _frac(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    dom = h.domain

    def good(x):
        v = h.value(x)
        return v.sign() != 0 and abs(v) < eps

    if isinstance(dom, TorsionSum):
        for i in range(bound):
            x = dom.basis(i)
            if good(x):
                return DensityWitness(eps, x, h.value(x), bound)
        return DensityWitness(eps, None, None, bound)
    if isinstance(dom, Integers):
        for n in range(1, bound + 1):
            if good(n):
                return DensityWitness(eps, n, h.value(n), bound)
        return DensityWitness(eps, None, None, bound)
    for r in range(1, bound + 1):
        for x in ball(dom, dom.generators(), r):
            if good(x):
                return DensityWitness(eps, x, h.value(x), bound)
    return DensityWitness(eps, None, None, bound)


def _random_element(dom, rng: random.Random):
    if isinstance(dom, Integers):
        return rng.randint(-10**6, 10**6)
    if isinstance(dom, FGAbelian):
        return dom.element([rng.randint(-10**6, 10**6) for _ in range(dom.rank)],
                           [rng.randrange(c) for c in dom.moduli])
    if isinstance(dom, TorsionSum):
        n = rng.randint(0, 6)
        return dom.element([rng.randrange(dom.modulus(i)) for i in range(n)])
    raise TypeError(f"cannot sample {dom!r}")


def check_hom_law(h: CircleHom, pairs: int = 10**4, seed: int = 0) -> list:
    """Pairs (x, y) with g(x + y) != g(x) + g(y) mod 1; empty when lawful."""
    rng = random.Random(seed)
    dom = h.domain
    bad = []
    for _ in range(pairs):
        x, y = _random_element(dom, rng), _random_element(dom, rng)
        diff = h.raw(dom.op(x, y)) - h.raw(x) - h.raw(y)
        if not (diff.is_rational and diff.rational_value().denominator == 1):
            bad.append((x, y))
    return bad


def bohr_sweep_rows(X: BohrSet, ns: Iterable[int]):
    """Rows (n, g(n) in [-1/2, 1/2), distance, member, approx distance)."""
    for n in ns:
        v = X.hom.value(n)
        dist = abs(v)
        yield {"n": n, "value": str(v), "distance": str(dist), "member": bohr_member(X, n),
               "distance_approx": f"{dist.approx():.6f}"}
