"""Exact element arithmetic for the groups the rest of the package computes in.

Groups are small objects exposing ``op``, ``inv``, ``identity`` and ``key``;
elements are plain hashable values (ints, tuples or frozen dataclasses), so
they can live in sets and bitset indices without wrapping.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

__all__ = [
    "GroupError",
    "GroupMismatchError",
    "Group",
    "Integers",
    "FGAbelian",
    "FGAbelianElement",
    "TorsionSum",
    "RationalSpace",
    "Heisenberg",
    "HeisenbergElement",
    "FiniteGroup",
    "cyclic",
    "dihedral",
    "symmetric",
    "GroupHom",
    "ball",
    "commutator",
    "element_arithmetic",
]


class GroupError(ValueError):
    pass


class GroupMismatchError(GroupError, TypeError):
    """Operand does not belong to the group it was used with."""


class Group(ABC):
    """Abstract group with elements as hashable values."""

    abelian = False

    @property
    @abstractmethod
    def identity(self) -> Hashable: ...

    @abstractmethod
    def is_element(self, a: Any) -> bool: ...

    @abstractmethod
    def _op(self, a, b): ...

    @abstractmethod
    def _inv(self, a): ...

    def key(self, a):
        """Sort key giving the canonical total order on elements."""
        return a

    def check(self, *elements):
        for a in elements:
            if not self.is_element(a):
                raise GroupMismatchError(f"{a!r} is not an element of {self}")

    def op(self, a, b):
        self.check(a, b)
        return self._op(a, b)

    def inv(self, a):
        self.check(a)
        return self._inv(a)

    def power(self, a, k: int):
        self.check(a)
        if k < 0:
            a, k = self._inv(a), -k
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self._op(result, base)
            base = self._op(base, base)
            k >>= 1
        return result

    def commutator(self, a, b):
        """Return a^-1 b^-1 a b."""
        self.check(a, b)
        return self._op(self._op(self._inv(a), self._inv(b)), self._op(a, b))

    def left_quotient(self, a, b):
        """Return a^-1 b, the quotient tested in the thickness condition."""
        return self._op(self._inv(a), b)

    def sorted(self, elements: Iterable) -> list:
        return sorted(elements, key=self.key)


# -- Abelian groups -----------------------------------------------------------


class Integers(Group):
    """The additive group of integers, elements are Python ints."""

    abelian = True
    rank = 1
    moduli: tuple[int, ...] = ()

    @property
    def identity(self) -> int:
        return 0

    def is_element(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool)

    def _op(self, a, b):
        return a + b

    def _inv(self, a):
        return -a

    def power(self, a, k):
        self.check(a)
        return a * k

    def left_quotient(self, a, b):
        return b - a

    def key(self, a):
        return a

    def generators(self) -> list[int]:
        return [1]

    def coordinates(self, a) -> tuple[int, ...]:
        return (a,)

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Integers()"


@dataclass(frozen=True, order=True)
class FGAbelianElement:
    """Element of Z^r + Z/c_1 + ... + Z/c_k.

    ``moduli`` travels with the element so mixed-group sums are caught.
    """

    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    moduli: tuple[int, ...] = field(default=(), compare=True)

    def __post_init__(self):
        if len(self.torsion) != len(self.moduli):
            raise GroupError("torsion vector and moduli differ in length")
        for t, c in zip(self.torsion, self.moduli):
            if not 0 <= t < c:
                raise GroupError(f"torsion coordinate {t} not reduced mod {c}")

    def __add__(self, other):
        if not isinstance(other, FGAbelianElement):
            return NotImplemented
        if len(self.free) != len(other.free) or self.moduli != other.moduli:
            raise GroupMismatchError("elements of different abelian groups")
        return FGAbelianElement(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % c for a, b, c in zip(self.torsion, other.torsion, self.moduli)),
            self.moduli,
        )

    def __neg__(self):
        return FGAbelianElement(
            tuple(-a for a in self.free),
            tuple((-a) % c for a, c in zip(self.torsion, self.moduli)),
            self.moduli,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return FGAbelianElement(
            tuple(a * k for a in self.free),
            tuple((a * k) % c for a, c in zip(self.torsion, self.moduli)),
            self.moduli,
        )

    __rmul__ = __mul__


class FGAbelian(Group):
    """Finitely generated abelian group Z^rank + sum of Z/c_i."""

    abelian = True

    def __init__(self, rank: int = 0, moduli: Sequence[int] = ()):
        if rank < 0:
            raise GroupError("rank must be non-negative")
        moduli = tuple(int(c) for c in moduli)
        if any(c < 1 for c in moduli):
            raise GroupError("torsion moduli must be positive")
        self.rank = rank
        self.moduli = moduli

    @property
    def identity(self) -> FGAbelianElement:
        return FGAbelianElement((0,) * self.rank, (0,) * len(self.moduli), self.moduli)

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> FGAbelianElement:
        free = tuple(free) + (0,) * (self.rank - len(free))
        torsion = tuple(torsion) + (0,) * (len(self.moduli) - len(torsion))
        if len(free) != self.rank or len(torsion) != len(self.moduli):
            raise GroupError("coordinate vector too long")
        return FGAbelianElement(free, tuple(t % c for t, c in zip(torsion, self.moduli)), self.moduli)

    def generators(self) -> list[FGAbelianElement]:
        gens = []
        for i in range(self.rank):
            gens.append(self.element([int(i == j) for j in range(self.rank)]))
        for i in range(len(self.moduli)):
            gens.append(self.element((), [int(i == j) for j in range(len(self.moduli))]))
        return gens

    def generator_orders(self) -> list[int]:
        """0 for free generators, c_i for torsion ones."""
        return [0] * self.rank + list(self.moduli)

    def coordinates(self, a: FGAbelianElement) -> tuple[int, ...]:
        self.check(a)
        return a.free + a.torsion

    def is_element(self, a) -> bool:
        return (
            isinstance(a, FGAbelianElement)
            and len(a.free) == self.rank
            and a.moduli == self.moduli
        )

    def _op(self, a, b):
        return a + b

    def _inv(self, a):
        return -a

    def power(self, a, k):
        self.check(a)
        return a * k

    def left_quotient(self, a, b):
        return b - a

    def key(self, a):
        return (a.free, a.torsion)

    def order(self) -> int | None:
        """Group order, None when infinite."""
        return None if self.rank else math.prod(self.moduli)

    def elements(self) -> list[FGAbelianElement]:
        if self.rank:
            raise GroupError("infinite group has no element list")
        return [self.element((), t) for t in itertools.product(*(range(c) for c in self.moduli))]

    def __eq__(self, other):
        return isinstance(other, FGAbelian) and (self.rank, self.moduli) == (other.rank, other.moduli)

    def __hash__(self):
        return hash(("FGAbelian", self.rank, self.moduli))

    def __repr__(self):
        parts = ["Z"] * self.rank + [f"Z/{c}" for c in self.moduli]
        return " + ".join(parts) if parts else "0"


class TorsionSum(Group):
    """Countable direct sum of cyclic groups Z/c_0 + Z/c_1 + ...

    Elements are finite tuples of residues; trailing zeros are implicit and
    stripped. ``moduli`` is a callable index -> c_i so the sum can be infinite.
    """

    abelian = True

    def __init__(self, modulus: Callable[[int], int]):
        self._modulus = lru_cache(maxsize=None)(modulus)

    def modulus(self, i: int) -> int:
        return self._modulus(i)

    @staticmethod
    def _strip(t: tuple[int, ...]) -> tuple[int, ...]:
        t = list(t)
        while t and t[-1] == 0:
            t.pop()
        return tuple(t)

    @property
    def identity(self) -> tuple[int, ...]:
        return ()

    def basis(self, i: int) -> tuple[int, ...]:
        return self.element({i: 1})

    def element(self, coords: dict[int, int] | Sequence[int]) -> tuple[int, ...]:
        if not isinstance(coords, dict):
            coords = dict(enumerate(coords))
        size = max(coords, default=-1) + 1
        return self._strip(tuple(coords.get(i, 0) % self.modulus(i) for i in range(size)))

    def is_element(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and all(isinstance(v, int) and 0 <= v < self.modulus(i) for i, v in enumerate(a))
            and (not a or a[-1] != 0)
        )

    def _op(self, a, b):
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return self._strip(tuple((x + y) % self.modulus(i) for i, (x, y) in enumerate(zip(a, b))))

    def _inv(self, a):
        return self._strip(tuple((-x) % self.modulus(i) for i, x in enumerate(a)))

    def power(self, a, k):
        self.check(a)
        return self._strip(tuple((x * k) % self.modulus(i) for i, x in enumerate(a)))

    def left_quotient(self, a, b):
        return self._op(self._inv(a), b)

    def key(self, a):
        return (len(a), a)

    def __repr__(self):
        return "TorsionSum(" + ", ".join(f"Z/{self.modulus(i)}" for i in range(4)) + ", ...)"


class RationalSpace(Group):
    """Q^dim under addition, elements are tuples of Fractions.

    Stands in for finite-support elements of Q^omega.
    """

    abelian = True

    def __init__(self, dim: int):
        self.dim = dim

    @property
    def identity(self):
        return (Fraction(0),) * self.dim

    def element(self, coords: Sequence) -> tuple[Fraction, ...]:
        coords = tuple(Fraction(c) for c in coords)
        return coords + (Fraction(0),) * (self.dim - len(coords))

    def is_element(self, a) -> bool:
        return isinstance(a, tuple) and len(a) == self.dim and all(isinstance(v, Fraction) for v in a)

    def _op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        return tuple(-x for x in a)

    def power(self, a, k):
        self.check(a)
        return tuple(x * k for x in a)

    def left_quotient(self, a, b):
        return tuple(y - x for x, y in zip(a, b))

    def key(self, a):
        return a

    def __repr__(self):
        return f"Q^{self.dim}"


# -- Heisenberg group ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class HeisenbergElement:
    """The matrix [[1, x, z], [0, 1, y], [0, 0, 1]]."""

    x: int
    y: int
    z: int

    def __mul__(self, other):
        if not isinstance(other, HeisenbergElement):
            return NotImplemented
        return HeisenbergElement(self.x + other.x, self.y + other.y, self.z + other.z + self.x * other.y)

    def inverse(self) -> HeisenbergElement:
        return HeisenbergElement(-self.x, -self.y, self.x * self.y - self.z)

    def __pow__(self, n: int) -> HeisenbergElement:
        # (x,y,z)^n = (nx, ny, nz + C(n,2) xy); C(n,2) = n(n-1)/2 holds for n < 0 too
        if not isinstance(n, int):
            return NotImplemented
        return HeisenbergElement(n * self.x, n * self.y, n * self.z + (n * (n - 1) // 2) * self.x * self.y)

    def matrix(self) -> np.ndarray:
        return np.array([[1, self.x, self.z], [0, 1, self.y], [0, 0, 1]], dtype=object)

    @classmethod
    def from_matrix(cls, m) -> HeisenbergElement:
        m = [[int(v) for v in row] for row in m]
        if m[0][0] != 1 or m[1][1] != 1 or m[2][2] != 1 or m[1][0] or m[2][0] or m[2][1]:
            raise GroupError("not an upper unitriangular 3x3 matrix")
        return cls(m[0][1], m[1][2], m[0][2])

    def __str__(self):
        return f"({self.x},{self.y},{self.z})"


class Heisenberg(Group):
    """Integer Heisenberg group, the UT_3(Z) representative."""

    @property
    def identity(self) -> HeisenbergElement:
        return HeisenbergElement(0, 0, 0)

    def generators(self) -> list[HeisenbergElement]:
        return [HeisenbergElement(1, 0, 0), HeisenbergElement(0, 1, 0)]

    def is_element(self, a) -> bool:
        return isinstance(a, HeisenbergElement)

    def _op(self, a, b):
        return a * b

    def _inv(self, a):
        return a.inverse()

    def power(self, a, k):
        self.check(a)
        return a ** k

    def commutator(self, a, b):
        self.check(a, b)
        return HeisenbergElement(0, 0, a.x * b.y - b.x * a.y)

    def key(self, a):
        return (a.x, a.y, a.z)

    def __eq__(self, other):
        return isinstance(other, Heisenberg)

    def __hash__(self):
        return hash("Heisenberg")

    def __repr__(self):
        return "Heisenberg()"


# -- Finite groups by multiplication table -------------------------------------


class FiniteGroup(Group):
    """Finite group given by its Cayley table; elements are ints 0..order-1."""

    def __init__(self, table, labels: Sequence[str] | None = None, name: str = "G", identity: int = 0):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise GroupError("Cayley table must be square")
        self.table = table
        self.name = name
        self._identity = identity
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self._validate()
        self._inverse = np.argmax(table == identity, axis=1)

    def _validate(self):
        t, n, e = self.table, self.order, self._identity
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        rng = np.arange(n)
        for axis in (0, 1):
            if not (np.sort(t, axis=axis) == (rng[:, None] if axis == 0 else rng[None, :])).all():
                raise GroupError("table is not a Latin square")
        if not ((t[e] == rng).all() and (t[:, e] == rng).all()):
            raise GroupError(f"{e} is not an identity")
        # (ab)c == a(bc) for all triples, vectorised over a, b for each c
        for c in range(n):
            if not (t[t[:, :], c] == t[:, t[:, c]]).all():
                raise GroupError("table is not associative")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return self._identity

    def elements(self) -> list[int]:
        return list(range(self.order))

    def is_element(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and not isinstance(a, bool) and 0 <= a < self.order

    def _op(self, a, b):
        return int(self.table[a, b])

    def _inv(self, a):
        return int(self._inverse[a])

    def key(self, a):
        return a

    def label(self, a) -> str:
        return self.labels[a]

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@lru_cache(maxsize=None)
def cyclic(k: int) -> FiniteGroup:
    """Z/k with element i standing for the residue i."""
    if not 1 <= k <= 120:
        raise GroupError("cyclic groups are provided for 1 <= k <= 120")
    r = np.arange(k)
    g = FiniteGroup((r[:, None] + r[None, :]) % k, name=f"Z/{k}")
    g.abelian = True
    return g


@lru_cache(maxsize=None)
def dihedral(k: int) -> FiniteGroup:
    """Dihedral group of order 2k; element i < k is r^i, element k + i is s r^i."""
    if k < 1:
        raise GroupError("dihedral groups need k >= 1")

    def decode(e):
        return (e % k, e // k)  # (rotation exponent, reflection bit)

    def encode(i, s):
        return s * k + i % k

    table = np.empty((2 * k, 2 * k), dtype=np.int64)
    for a in range(2 * k):
        i, s = decode(a)
        for b in range(2 * k):
            j, t = decode(b)
            # s^a r^i s^b r^j = s^(a+b) r^(+-i + j)
            table[a, b] = encode((-i if t else i) + j, (s + t) % 2)
    labels = [f"r^{i}" for i in range(k)] + [f"sr^{i}" for i in range(k)]
    return FiniteGroup(table, labels, name=f"D_{k}")


@lru_cache(maxsize=None)
def symmetric(n: int = 4) -> FiniteGroup:
    """Symmetric group S_n by permutation composition (apply right factor first)."""
    if not 1 <= n <= 5:
        raise GroupError("symmetric groups are provided for n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for a, p in enumerate(perms):
        for b, q in enumerate(perms):
            table[a, b] = index[tuple(p[q[i]] for i in range(n))]
    labels = ["".join(str(v) for v in p) for p in perms]
    return FiniteGroup(table, labels, name=f"S_{n}")


# -- Generic helpers ----------------------------------------------------------


def element_arithmetic(group: Group, a, b=None, k: int | None = None):
    """a*b when ``b`` is given, a^k when ``k`` is given, otherwise a^-1."""
    if b is not None and k is not None:
        raise GroupError("give either b or k, not both")
    if b is not None:
        return group.op(a, b)
    if k is not None:
        return group.power(a, k)
    return group.inv(a)


def commutator(group: Group, a, b):
    return group.commutator(a, b)


def ball(group: Group, generators: Iterable, radius: int) -> list:
    """All products of at most ``radius`` factors from generators, their
    inverses and the identity, in canonical order."""
    if radius < 0:
        raise GroupError("radius must be non-negative")
    gens = list(generators)
    group.check(*gens)
    steps = {group._op(group.identity, g) for g in gens} | {group._inv(g) for g in gens}
    steps = group.sorted(steps)
    seen = {group.identity}
    frontier = [group.identity]
    for _ in range(radius):
        nxt = []
        for a in frontier:
            for s in steps:
                c = group._op(a, s)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return group.sorted(seen)


class GroupHom:
    """Homomorphism from Z, Z^r + torsion, or a torsion sum, given by images
    of the standard generators.

    Construction checks the torsion relations c_i * image(e_i) = identity.
    """

    def __init__(self, domain: Group, codomain: Group, images: Sequence):
        if not isinstance(domain, (Integers, FGAbelian)):
            raise GroupError("homomorphisms are supported from Z and Z^r + torsion")
        gens = domain.generators()
        if len(images) != len(gens):
            raise GroupError(f"need {len(gens)} generator images, got {len(images)}")
        images = list(images)
        codomain.check(*images)
        orders = domain.generator_orders() if isinstance(domain, FGAbelian) else [0]
        for i, (img, c) in enumerate(zip(images, orders)):
            if c and codomain.power(img, c) != codomain.identity:
                raise GroupError(
                    f"ill-defined homomorphism: generator {i} has order {c} "
                    f"but {c} * image({i}) != identity"
                )
        self.domain = domain
        self.codomain = codomain
        self.images = images

    def __call__(self, x):
        self.domain.check(x)
        out = self.codomain.identity
        for img, e in zip(self.images, self.domain.coordinates(x)):
            if e:
                out = self.codomain.op(out, self.codomain.power(img, e))
        return out

    apply = __call__

    def preimage(self, target):
        """Preimage of a SymmetricSet in the codomain, as a SymmetricSet on the domain."""
        from .thickset import SymmetricSet

        return SymmetricSet(self.domain, lambda x: target.contains(self(x)), tag="preimage")


def hom_apply(h: GroupHom, x):
    return h(x)


def hom_preimage(h: GroupHom, target):
    return h.preimage(target)
