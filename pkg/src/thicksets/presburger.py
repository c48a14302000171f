"""One-dimensional Presburger sets: finite unions of (a + bZ) cut to intervals.

Concrete syntax::

    set      := term ('|' term)*
    term     := ap ('&' interval)?
    ap       := INT | INT '+' INT 'Z' | INT 'Z' | 'Z' | '-' '(' ap ')'
    interval := ('(' | '[') bound ',' bound (')' | ']')
    bound    := INT | '-inf' | 'inf'

plus ``{}`` for the empty set. Intervals are stored half-open, [lo, hi)
with None for an infinite end, and printed with open brackets.

Every set is eventually periodic on both sides. The decision procedures
below rest on two compression facts, both proved by shifting a block of
points by a multiple of the period L (which preserves all far differences'
residues):

* an independent family can be assumed to have consecutive gaps <= T + L;
* a translate cover can be assumed to have consecutive shifts <= 2T + L.

Here T bounds every finite endpoint, so membership of |x| > T depends only
on x mod L and the sign of x.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Sequence

from .groups import Integers
from .thickset import DEFAULT_CAP, PreconditionError, SymmetricSet, max_independent_set

__all__ = [
    "ParseError",
    "Term",
    "PresburgerSet",
    "EventualData",
    "ThicknessVerdict",
    "GenericVerdict",
    "LatticeResult",
    "MultiLatticeResult",
    "parse",
    "normalize",
    "eventual_data",
    "symmetrize",
    "sumset",
    "scale_set",
    "decide_thick",
    "decide_generic",
    "lattice_in_double",
    "multidim_lattice",
    "covers",
]

Z = Integers()


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        caret = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"{message} at position {pos}{caret}")


@dataclass(frozen=True)
class Term:
    """(a + bZ) intersected with [lo, hi); b = 0 is the singleton {a}."""

    a: int
    b: int
    lo: int | None = None
    hi: int | None = None
    span: tuple[int, int] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.b < 0:
            raise ValueError("modulus must be non-negative")
        if self.b > 0 and not 0 <= self.a < self.b:
            object.__setattr__(self, "a", self.a % self.b)
        if self.lo is not None and self.hi is not None and self.lo >= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    def contains(self, x: int) -> bool:
        if self.lo is not None and x < self.lo:
            return False
        if self.hi is not None and x >= self.hi:
            return False
        if self.b == 0:
            return x == self.a
        return (x - self.a) % self.b == 0

    def negate(self) -> Term:
        lo = None if self.hi is None else 1 - self.hi
        hi = None if self.lo is None else 1 - self.lo
        return Term(-self.a if self.b == 0 else (-self.a) % self.b, self.b, lo, hi)

    def scale(self, n: int) -> Term:
        lo = None if self.lo is None else n * self.lo
        hi = None if self.hi is None else n * (self.hi - 1) + 1
        return Term(n * self.a, n * self.b, lo, hi)

    def bounds(self) -> list[int]:
        out = [v for v in (self.lo, self.hi) if v is not None]
        if self.b == 0:
            out.append(self.a)
        return out

    def __str__(self):
        if self.b == 0:
            ap = str(self.a)
        elif self.b == 1:
            ap = "Z"
        elif self.a == 0:
            ap = f"{self.b}Z"
        else:
            ap = f"{self.a}+{self.b}Z"
        if self.lo is None and self.hi is None:
            return ap
        lo = "-inf" if self.lo is None else str(self.lo - 1)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{ap} & ({lo}, {hi})"


@dataclass(frozen=True)
class PresburgerSet:
    terms: tuple[Term, ...]
    source: str | None = field(default=None, compare=False, hash=False)

    def contains(self, x: int) -> bool:
        return any(t.contains(x) for t in self.terms)

    __contains__ = contains

    def negate(self) -> PresburgerSet:
        return PresburgerSet(tuple(t.negate() for t in self.terms))

    def union(self, other: PresburgerSet) -> PresburgerSet:
        return PresburgerSet(self.terms + other.terms)

    __or__ = union

    def period(self) -> int:
        return reduce(math.lcm, (t.b for t in self.terms if t.b), 1)

    def threshold(self) -> int:
        """T = max finite bound magnitude + L."""
        return max((abs(v) for t in self.terms for v in t.bounds()), default=0) + self.period()

    def as_symmetric_set(self) -> SymmetricSet:
        return SymmetricSet(Z, self.contains, tag=str(self), symbolic=("presburger", str(self)))

    def __str__(self):
        return " | ".join(str(t) for t in self.terms) if self.terms else "{}"


# -- parser ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<inf>inf)|(?P<sym>[-+|&()\[\],Z{}]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise ParseError(f"expected {want}, got {got}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> PresburgerSet:
        if self.peek()[1] == "{":
            self.take("{")
            self.take("}")
            self.take(kind="eof")
            return PresburgerSet((), self.text)
        terms = [self.term()]
        while self.peek()[1] == "|":
            self.take("|")
            terms.append(self.term())
        self.take(kind="eof")
        return PresburgerSet(tuple(terms), self.text)

    def integer(self) -> int:
        sign = 1
        if self.peek()[1] == "-":
            self.take("-")
            sign = -1
        return sign * int(self.take(kind="int")[1])

    def term(self) -> Term:
        start = self.peek()[2]
        a, b = self.ap()
        lo = hi = None
        if self.peek()[1] == "&":
            self.take("&")
            lo, hi = self.interval()
        end = self.toks[self.i - 1][2] + len(self.toks[self.i - 1][1])
        try:
            return Term(a, b, lo, hi, span=(start, end))
        except ValueError as e:
            raise ParseError(str(e), start, self.text) from None

    def ap(self) -> tuple[int, int]:
        tok = self.peek()
        if tok[1] == "-" and self.peek(1)[1] == "(":
            self.take("-")
            self.take("(")
            a, b = self.ap()
            self.take(")")
            return (-a, b) if b == 0 else ((-a) % b, b)
        if tok[1] == "Z":
            self.take("Z")
            return 0, 1
        pos = tok[2]
        n = self.integer()
        if self.peek()[1] == "Z":
            self.take("Z")
            if n == 0:
                raise ParseError("modulus 0 written as '0Z'; use a bare integer", pos, self.text)
            return 0, abs(n)
        if self.peek()[1] == "+" and self.peek(1)[0] == "int":
            self.take("+")
            mpos = self.peek()[2]
            b = int(self.take(kind="int")[1])
            self.take("Z")
            if b == 0:
                raise ParseError("modulus 0 written as '0Z'; use a bare integer", mpos, self.text)
            return n % b, b
        return n, 0

    def bound(self) -> int | None | str:
        tok = self.peek()
        if tok[1] == "-" and self.peek(1)[0] == "inf":
            self.take("-")
            self.take(kind="inf")
            return "-inf"
        if tok[0] == "inf":
            self.take(kind="inf")
            return "inf"
        return self.integer()

    def interval(self) -> tuple[int | None, int | None]:
        tok = self.peek()
        if tok[1] not in ("(", "["):
            raise ParseError("expected '(' or '['", tok[2], self.text)
        self.take(tok[1])
        left_open = tok[1] == "("
        lpos = self.peek()[2]
        c = self.bound()
        self.take(",")
        rpos = self.peek()[2]
        d = self.bound()
        tok = self.peek()
        if tok[1] not in (")", "]"):
            raise ParseError("expected ')' or ']'", tok[2], self.text)
        self.take(tok[1])
        right_open = tok[1] == ")"
        if c == "inf":
            raise ParseError("lower bound cannot be +inf", lpos, self.text)
        if d == "-inf":
            raise ParseError("upper bound cannot be -inf", rpos, self.text)
        lo = None if c == "-inf" else (c + 1 if left_open else c)
        hi = None if d == "inf" else (d if right_open else d + 1)
        return lo, hi


def parse(text: str | PresburgerSet) -> PresburgerSet:
    if isinstance(text, PresburgerSet):
        return text
    return _Parser(text).parse()


# -- eventual structure and canonical form -----------------------------------------


@dataclass(frozen=True)
class EventualData:
    T: int
    L: int
    Rplus: frozenset
    Rminus: frozenset

    def tail_member(self, x: int) -> bool:
        if x > self.T:
            return x % self.L in self.Rplus
        if x < -self.T:
            return x % self.L in self.Rminus
        raise ValueError(f"{x} is inside the threshold {self.T}")


def eventual_data(P) -> EventualData:
    P = parse(P)
    L, T = P.period(), P.threshold()
    rplus = frozenset(x % L for x in range(T + 1, T + L + 1) if P.contains(x))
    rminus = frozenset(x % L for x in range(-T - L, -T) if P.contains(x))
    return EventualData(T, L, rplus, rminus)


def compile_member(P) -> Callable[[int], bool]:
    """Table-driven membership: a lookup over [-T-L, T+L] and residue tests
    beyond. Normalized sets can carry thousands of runs; this keeps the
    decision searches independent of that."""
    P = parse(P)
    data = eventual_data(P)
    T, L = data.T, data.L
    table = bytes(P.contains(x) for x in range(-T - L, T + L + 1))
    off = T + L
    rp, rm = data.Rplus, data.Rminus

    def member(x: int) -> bool:
        if -off <= x <= off:
            return bool(table[x + off])
        return (x % L) in (rp if x > 0 else rm)

    return member


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _build(member: Callable[[int], bool], L: int, W: int) -> PresburgerSet:
    """Canonical set equal to ``member``, which must be L-periodic on each
    side beyond |x| > W - L.

    The canonical form uses the least period p dividing L and writes each
    residue class mod p as its maximal runs of consecutive class members.
    """
    right = [member(x) for x in range(W - L + 1, W + 1)]
    left = [member(x) for x in range(-W, -W + L)]
    p = next(d for d in _divisors(L)
             if all(right[i] == right[i + d] for i in range(L - d))
             and all(left[i] == left[i + d] for i in range(L - d)))
    terms = []
    for r in range(p):
        xs = range(-W + ((r + W) % p), W + 1, p)
        inf_right = member(xs[-1]) if len(xs) else False
        inf_left = member(xs[0]) if len(xs) else False
        run_start = None
        prev = None
        for x in xs:
            if member(x):
                if run_start is None:
                    run_start = x
                prev = x
            elif run_start is not None:
                terms.append(_run_term(r, p, run_start, prev, inf_left and run_start == xs[0], False))
                run_start = None
        if run_start is not None:
            terms.append(_run_term(r, p, run_start, prev, inf_left and run_start == xs[0], inf_right))
    terms.sort(key=lambda t: (t.b == 0, t.a if t.b else 0, -math.inf if t.lo is None else t.lo,
                              t.a if t.b == 0 else 0))
    return PresburgerSet(tuple(terms))


def _run_term(r: int, p: int, first: int, last: int, open_left: bool, open_right: bool) -> Term:
    if first == last and not open_left and not open_right:
        return Term(first, 0)
    lo = None if open_left else first
    hi = None if open_right else last + 1
    return Term(r, p, lo, hi)


def normalize(P) -> PresburgerSet:
    """Semantic canonical form: equal sets normalize to identical terms."""
    P = parse(P)
    L, T = P.period(), P.threshold()
    return _build(P.contains, L, T + L)


def symmetrize(P) -> PresburgerSet:
    P = parse(P)
    return normalize(P | P.negate())


def is_symmetric(P) -> bool:
    P = parse(P)
    return normalize(P) == normalize(P.negate())


def sumset(P, Q=None) -> PresburgerSet:
    """P + Q, exactly.

    x is in P + Q iff x mod L lies in R+(P) + R-(Q) or R-(P) + R+(Q) (one
    summand far right, the other far left), or some decomposition has its P
    part within T + L of 0 or its Q part within T + L of 0 (shift pairs on
    the same far side together by L until one of them is near).
    """
    P = parse(P)
    Q = P if Q is None else parse(Q)
    L = math.lcm(P.period(), Q.period())
    T = max(P.threshold(), Q.threshold()) + L
    eP, eQ = eventual_data(P), eventual_data(Q)
    mixed = set()
    for r in range(L):
        for s in range(L):
            if ((r % eP.L in eP.Rplus and s % eQ.L in eQ.Rminus)
                    or (r % eP.L in eP.Rminus and s % eQ.L in eQ.Rplus)):
                mixed.add((r + s) % L)
    nearP = [y for y in range(-T, T + 1) if P.contains(y)]
    nearQ = [y for y in range(-T, T + 1) if Q.contains(y)]

    def member(x: int) -> bool:
        if x % L in mixed:
            return True
        return any(Q.contains(x - y) for y in nearP) or any(P.contains(x - y) for y in nearQ)

    # beyond 2T + L every decomposition is mixed or has a near part whose
    # partner is far, so membership is L-periodic there
    return _build(member, L, 2 * T + 2 * L)


def scale_set(P, n: int) -> PresburgerSet:
    """{n x : x in P}, termwise."""
    if n < 1:
        raise PreconditionError("scale factor must be >= 1")
    P = parse(P)
    return PresburgerSet(tuple(t.scale(n) for t in P.terms))


# -- thickness ----------------------------------------------------------------------


@dataclass
class ThicknessVerdict:
    thick: bool
    n: int | None  # minimal thickness when exact
    n_range: tuple[int, int] | None  # (lower, upper) when the search was cut off
    witness: list  # a maximum independent family (thick) or a prefix of the infinite family
    spacing: int | None  # s for the family {0, s, 2s, ...} when not thick
    data: EventualData
    was_symmetric: bool
    reason: str = ""
    symmetric_form: PresburgerSet | None = None

    @property
    def exact(self) -> bool:
        return self.n is not None or not self.thick


def _lattice_modulus(data: EventualData) -> int:
    """Least b dividing L with every residue = 0 mod b in Rplus."""
    return next(b for b in _divisors(data.L) if all(r in data.Rplus for r in range(0, data.L, b)))


def _family_spacing(member: Callable[[int], bool], data: EventualData) -> int:
    """Least multiple s of L whose nonzero multiples all avoid S; multiples
    past T avoid S because residue 0 is outside R+ (and R- = -R+)."""
    j = 1
    while True:
        s = j * data.L
        if all(not member(k * s) for k in range(1, data.T // s + 2)):
            return s
        j += 1


def _family_bound(member: Callable[[int], bool], data: EventualData, cap: int,
                  node_limit) -> tuple[int, int, int]:
    """Upper bound b * omega_b on independent families, minimised over b.

    For b with every residue = 0 mod b in R+, two members of a family in the
    same class mod b differ by at most T, and their differences b*D avoid S.
    So each class holds at most omega_b points, the largest family for
    {D : b D in S} inside [0, T // b].
    """
    best = None
    for b in _divisors(data.L):
        if not all(r in data.Rplus for r in range(0, data.L, b)):
            continue
        Pb = SymmetricSet(Z, lambda d, b=b: member(b * d))
        w = max_independent_set(Pb, range(0, data.T // b + 1), cap=cap, node_limit=node_limit)
        if not w.complete:
            continue
        cand = (b * w.size, b, w.size)
        if best is None or cand < best:
            best = cand
    if best is None:
        b = _lattice_modulus(data)
        return b * (data.T // b + 1), b, data.T // b + 1
    return best


def _class_pruner(b: int, omega: int):
    """Clique bound on window bitsets [0, width]: omega per occupied class mod b."""
    masks: dict[int, list[int]] = {}

    def bound(p: int) -> int:
        width = p.bit_length()
        key = max(64, 1 << (width - 1).bit_length()) if width else 64
        if key not in masks:
            masks[key] = [sum(1 << i for i in range(c, key, b)) for c in range(b)]
        return omega * sum(1 for m in masks[key] if p & m)

    return bound


def decide_thick(P, cap: int = DEFAULT_CAP, max_window: int = 10**4,
                 node_limit: int | None = 20_000) -> ThicknessVerdict:
    """Exact thickness of the symmetrization of P.

    Thick iff 0 is in P and 0 is in R+. The minimal n comes from the target
    search: if the best family so far has k points, a (k+1)-point family
    exists iff one exists in [0, k (T + L)] (gap compression), so each round
    either grows k or proves it maximal.
    """
    P = parse(P)
    raw = P | P.negate()
    S = normalize(raw)
    was_sym = normalize(P) == S
    data = eventual_data(raw)
    T, L = data.T, data.L
    member = compile_member(raw)

    def verdict(**kw):
        return ThicknessVerdict(data=data, was_symmetric=was_sym, symmetric_form=S, **kw)

    if 0 not in data.Rplus:
        s = _family_spacing(member, data)
        return verdict(thick=False, n=None, n_range=None, witness=[k * s for k in range(cap)], spacing=s,
                       reason=f"nonzero multiples of {s} avoid P (residue 0 outside R+ beyond {T})")
    if not member(0):
        return verdict(thick=False, n=None, n_range=None, witness=[0, 0], spacing=0,
                       reason="0 not in P: a repeated point has quotient 0")
    upper_family, bound_b, omega = _family_bound(member, data, cap, node_limit)
    upper = upper_family + 1
    pruner = _class_pruner(bound_b, omega)
    Ps = SymmetricSet(Z, member, tag=str(S))
    w = max_independent_set(Ps, range(0, min(2 * (T + L), max_window) + 1), cap=cap, node_limit=node_limit,
                            bound=pruner)
    best = w.points
    if len(best) >= upper_family:
        return verdict(thick=True, n=len(best) + 1, n_range=None, witness=best, spacing=None,
                       reason=f"family meets the class bound {upper_family} (modulus {bound_b})")
    # any lower bound k works below: a (k+1)-family compresses into [0, k (T + L)]
    while True:
        k = len(best)
        width = k * (T + L)
        if width > max_window:
            return verdict(thick=True, n=None, n_range=(k + 1, upper), witness=best, spacing=None,
                           reason=f"sufficient window {width} exceeds max_window {max_window}")
        w = max_independent_set(Ps, range(0, width + 1), cap=cap, target=k + 1, node_limit=node_limit,
                                bound=pruner)
        if w.points:
            best = w.points
            if len(best) >= upper_family:
                return verdict(thick=True, n=len(best) + 1, n_range=None, witness=best, spacing=None,
                               reason=f"family meets the class bound {upper_family} (modulus {bound_b})")
            continue
        if not w.complete:
            return verdict(thick=True, n=None, n_range=(k + 1, upper), witness=best, spacing=None,
                           reason="node limit in the target search")
        return verdict(thick=True, n=k + 1, n_range=None, witness=best, spacing=None,
                       reason=f"no {k + 1}-point family in [0, {width}]")


# -- genericity ---------------------------------------------------------------------


def covers(P, shifts: Sequence[int]) -> bool:
    """Do the translates P + s cover Z? Exact: one full period past each
    periodic tail is checked explicitly."""
    P = parse(P)
    if not shifts:
        return False
    data = eventual_data(P)
    member = compile_member(P)
    lo, hi = min(shifts) - data.T - data.L, max(shifts) + data.T + data.L
    return all(any(member(x - s) for s in shifts) for x in range(lo, hi + 1))


@dataclass
class GenericVerdict:
    generic: bool
    m: int | None
    shifts: list
    m_range: tuple[int, int | None] | None
    data: EventualData
    reason: str = ""


class _SearchLimit(Exception):
    pass


def _greedy_cover(member: Callable[[int], bool], data: EventualData, limit: int) -> list[int] | None:
    """Greedy translate cover on a window wide enough to hold both periodic
    tails of every chosen shift; verified afterwards by :func:`covers`."""
    T, L = data.T, data.L
    G = 2 * T + L
    lo, hi = -G - T - L, G + T + L
    width = hi - lo + 1
    base = 0
    for j in range(width + 2 * G):
        if member(lo - G + j):
            base |= 1 << j
    full = (1 << width) - 1
    covered, chosen = 0, []
    while covered != full and len(chosen) < limit:
        best = max(range(-G, G + 1), key=lambda s: (((base >> (G - s)) & full & ~covered).bit_count(), -abs(s)))
        gain = (base >> (G - best)) & full & ~covered
        if not gain:
            return None
        covered |= gain
        chosen.append(best)
    return chosen if covered == full else None


def decide_generic(P, max_m: int = 12, node_limit: int = 100_000, thick_witness: Sequence[int] | None = None
                   ) -> GenericVerdict:
    """Least number of translates of the symmetrization covering Z.

    Lower bound: the tails need the residue translates R+ + s_i to cover
    Z/L, so m >= ceil(L / |R+|). Upper bound: a verified cover, either the
    translates by a maximum independent family (pass ``thick_witness``) or a
    greedy cover. Between the two, an exact search: shifts in
    [0, (m-1)(2T+L)] with the first at 0, branching on the leftmost
    uncovered point so every candidate must cover it. ``node_limit`` caps
    the number of candidate shifts tried; past it the verdict is a range.
    """
    P = parse(P)
    raw = P | P.negate()
    data = eventual_data(raw)
    T, L = data.T, data.L
    if not data.Rplus or not data.Rminus:
        return GenericVerdict(False, None, [], None, data, "R+ or R- empty: a tail escapes every finite union")
    member = compile_member(raw)
    g = reduce(math.gcd, (x for x in range(-T - L, T + L + 1) if member(x)), 0)
    if g > 1:
        # every translate meets one class mod g, so the classes are covered
        # independently by translates of S/g = {x : g x in S}
        inner = _build(lambda x: member(g * x), L // g, (T + 2 * L) // g + L // g)
        sub = decide_generic(inner, max_m=max(1, max_m // g), node_limit=node_limit)
        shifts = sorted(g * s + i for s in sub.shifts for i in range(g))
        rng = (sub.m_range[0] * g, sub.m_range[1] * g if sub.m_range[1] else None) if sub.m_range else None
        return GenericVerdict(True, sub.m * g if sub.m else None, shifts, rng, data,
                              f"all of P lies in {g}Z; {g} x ({sub.reason})")
    lower = max(-(-L // len(data.Rplus)), -(-L // len(data.Rminus)), 1)
    best = None
    for cand in (list(thick_witness) if thick_witness else None, _greedy_cover(member, data, 4 * L + 64)):
        if cand and covers(raw, cand) and (best is None or len(cand) < len(best)):
            best = sorted(cand)
    upper = len(best) if best else None
    gap = 2 * T + L
    nodes = 0
    top = min(max_m, upper - 1) if upper else max_m
    for m in range(lower, top + 1):
        span = (m - 1) * gap
        lo, hi = -T - L, span + T + L
        width = hi - lo + 1
        full = (1 << width) - 1
        # bit j of base is member(lo - span + j); P + s restricted to [lo, hi] is base >> (span - s)
        base = 0
        for j in range(width + span):
            if member(lo - span + j):
                base |= 1 << j

        def search(covered: int, chosen: list, left: int):
            nonlocal nodes
            if covered == full:
                return list(chosen)
            if left == 0:
                return None
            free = ~covered & full
            x = lo + (free & -free).bit_length() - 1
            for s in range(0, span + 1):
                if not member(x - s):
                    continue
                nodes += 1
                if nodes > node_limit:
                    raise _SearchLimit
                if left == 1:
                    # last shift: it must cover everything still free
                    if free & ~(base >> (span - s)) == 0:
                        return chosen + [s]
                    continue
                chosen.append(s)
                res = search(covered | ((base >> (span - s)) & full), chosen, left - 1)
                if res is not None:
                    return res
                chosen.pop()
            return None

        try:
            found = search((base >> span) & full, [0], m - 1)
        except _SearchLimit:
            return GenericVerdict(True, None, best or [], (m, upper), data,
                                  f"node limit {node_limit} reached at m = {m}")
        if found is not None:
            if not covers(raw, found):
                raise AssertionError(f"cover {found} failed the independent check")
            return GenericVerdict(True, m, sorted(found), None, data, f"exact cover search, span {span}")
    if upper is not None and top == upper - 1:
        return GenericVerdict(True, upper, best, None, data,
                              f"no cover with fewer than {upper} translates; verified cover of size {upper}")
    return GenericVerdict(True, None, best or [], (top + 1, upper), data, f"no cover with <= {top} translates")


# -- lattices in P + P ---------------------------------------------------------------


@dataclass
class LatticeResult:
    b: int
    window: tuple[int, int]
    verified: bool
    failures: list


def lattice_in_double(P) -> LatticeResult:
    """b with bZ contained in P + P, checked on [-10 b (T+1), 10 b (T+1)].

    P contains bZ beyond T on both sides, so b k = (b k + y) + (-y) with
    y a multiple of b past |b k| + T.
    """
    P = parse(P)
    raw = P | P.negate()
    data = eventual_data(raw)
    member = compile_member(raw)
    if not member(0) or 0 not in data.Rplus:
        raise PreconditionError("lattice_in_double needs a thick set")
    b = _lattice_modulus(data)
    R = 10 * b * (data.T + 1)
    failures = []
    for x in range(-(R // b) * b, R + 1, b):
        y = b * ((abs(x) + data.T) // b + 1)
        if not (member(x + y) and member(-y)):
            failures.append(x)
    return LatticeResult(b, (-R, R), not failures, failures)


@dataclass
class MultiLatticeResult:
    n: int
    per_axis: list
    exponent: int  # 2m summands for an m-dimensional lattice
    verified: bool
    failures: list


def multidim_lattice(axes: Sequence, radius: int = 2) -> MultiLatticeResult:
    """n = lcm of the per-axis b_i, with n Z^m inside the 2m-fold sum of the
    axis restrictions checked on the box |k_i| <= radius (in units of n)."""
    sets = [parse(a) | parse(a).negate() for a in axes]
    members = [compile_member(S) for S in sets]
    bs = []
    for i, (S, member) in enumerate(zip(sets, members), 1):
        data = eventual_data(S)
        if not member(0) or 0 not in data.Rplus:
            raise PreconditionError(f"axis {i} not thick")
        bs.append(lattice_in_double(S).b)
    n = reduce(math.lcm, bs, 1)
    m = len(sets)
    failures = []
    datas = [eventual_data(S) for S in sets]
    for ks in _box(m, radius):
        for i, (k, member, d) in enumerate(zip(ks, members, datas)):
            x = n * k
            y = bs[i] * ((abs(x) + d.T) // bs[i] + 1)
            if not (member(x + y) and member(-y)):
                failures.append(ks)
                break
    return MultiLatticeResult(n, bs, 2 * m, not failures, failures)


def _box(m: int, r: int) -> Iterable[tuple]:
    if m == 0:
        yield ()
        return
    for rest in _box(m - 1, r):
        for k in range(-r, r + 1):
            yield rest + (k,)
