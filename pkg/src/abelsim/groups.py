"""Elementary Abelian groups Z^a x T^b x Z_N1 x ... and their elements.

A group is an ordered tuple of primitive factors.  ``R`` factors only appear
inside the solvers; circuits are built from ``Z``, ``T`` and ``Z_N``.
Elements carry rational coordinates reduced into canonical ranges.
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .exactalg import RationalMatrix, format_rational, parse_rational

__all__ = [
    "Factor",
    "Z",
    "T",
    "R",
    "ZN",
    "GroupSpec",
    "GroupElement",
    "Phase",
    "GroupMismatch",
    "canonicalize",
    "dual_group",
    "bullet",
    "bullet_matrix",
    "character",
    "norm_sq",
    "bullet_diag",
    "random_element",
]


class GroupMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    kind: str  # "Z", "T", "ZN" or "R"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "T", "ZN", "R"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind == "ZN" and self.n < 1:
            raise ValueError(f"Z_N needs N >= 1, got {self.n}")
        if self.kind != "ZN" and self.n != 0:
            raise ValueError("only Z_N factors carry an order")

    @property
    def char(self):
        return {"Z": 0, "R": 0, "T": 1}.get(self.kind, self.n)

    @property
    def dual(self):
        return {"Z": T, "T": Z}.get(self.kind, self)

    @property
    def is_finite(self):
        return self.kind == "ZN"

    @property
    def is_discrete(self):
        # coordinates must be integers
        return self.kind in ("Z", "ZN")

    def __str__(self):
        return f"Z_{self.n}" if self.kind == "ZN" else self.kind

    def to_json(self):
        return {"ZN": self.n} if self.kind == "ZN" else self.kind

    @staticmethod
    def from_json(obj):
        if isinstance(obj, str) and obj in ("Z", "T", "R"):
            return Factor(obj)
        if isinstance(obj, dict) and set(obj) == {"ZN"}:
            n = obj["ZN"]
            if isinstance(n, bool) or not isinstance(n, int):
                raise ValueError(f"Z_N order must be an integer, got {n!r}")
            return Factor("ZN", n)
        raise ValueError(f"bad group factor {obj!r}")


Z = Factor("Z")
T = Factor("T")
R = Factor("R")


def ZN(n):
    return Factor("ZN", n)


class GroupSpec(tuple):
    """Ordered tuple of factors."""

    def __new__(cls, factors=()):
        factors = tuple(factors)
        for f in factors:
            if not isinstance(f, Factor):
                raise TypeError(f"not a factor: {f!r}")
        return super().__new__(cls, factors)

    @property
    def m(self):
        return len(self)

    @property
    def chars(self):
        return tuple(f.char for f in self)

    @property
    def is_finite(self):
        return all(f.is_finite for f in self)

    @property
    def has_r(self):
        return any(f.kind == "R" for f in self)

    @property
    def order(self):
        n = 1
        for f in self:
            if not f.is_finite:
                return None
            n *= f.n
        return n

    def __add__(self, other):
        return GroupSpec(tuple(self) + tuple(other))

    def __getitem__(self, key):
        out = super().__getitem__(key)
        return GroupSpec(out) if isinstance(key, slice) else out

    def __str__(self):
        return " × ".join(str(f) for f in self) if self else "{0}"

    def __repr__(self):
        return f"GroupSpec({str(self)})"

    def to_json(self):
        return [f.to_json() for f in self]

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, list):
            raise ValueError("group must be a list of factors")
        return GroupSpec(Factor.from_json(f) for f in obj)

    def zero(self):
        return GroupElement(self, (Fraction(0),) * len(self))

    def element(self, coords):
        return canonicalize(coords, self)

    def generator(self, i):
        return canonicalize([int(i == j) for j in range(len(self))], self)


def _reduce(x, f):
    if f.kind == "Z" or f.kind == "R":
        return x
    if f.kind == "T":
        return x - floor(x)
    return x % f.n


def canonicalize(x, G):
    """Reduce a rational tuple into the canonical ranges of G."""
    x = tuple(v if type(v) is Fraction else Fraction(v) for v in x)
    if len(x) != len(G):
        raise GroupMismatch(f"expected {len(G)} coordinates, got {len(x)}")
    for i, (v, f) in enumerate(zip(x, G)):
        if f.is_discrete and v.denominator != 1:
            raise ValueError(f"coordinate {i} on {f} must be an integer, got {v}")
    return GroupElement(G, tuple(_reduce(v, f) for v, f in zip(x, G)))


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    coords: tuple

    def __post_init__(self):
        for v, f in zip(self.coords, self.group):
            if _reduce(v, f) != v or (f.is_discrete and v.denominator != 1):
                raise ValueError(f"coordinate {v} is not canonical for {f}")

    def __add__(self, other):
        self._check(other)
        return canonicalize([a + b for a, b in zip(self.coords, other.coords)], self.group)

    def __sub__(self, other):
        self._check(other)
        return canonicalize([a - b for a, b in zip(self.coords, other.coords)], self.group)

    def __neg__(self):
        return canonicalize([-a for a in self.coords], self.group)

    def scale(self, k):
        return canonicalize([k * a for a in self.coords], self.group)

    def _check(self, other):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def to_json(self):
        return [format_rational(v) for v in self.coords]

    @staticmethod
    def from_json(obj, G):
        if not isinstance(obj, list):
            raise ValueError("group element must be a list")
        return canonicalize([parse_rational(v) for v in obj], G)

    def __repr__(self):
        return f"({', '.join(format_rational(v) for v in self.coords)}) in {self.group}"


@dataclass(frozen=True, order=True)
class Phase:
    """The unit complex number exp(i*pi*r) with r in [0, 2)."""

    r: Fraction

    def __post_init__(self):
        r = Fraction(self.r)
        object.__setattr__(self, "r", r - 2 * floor(r / 2))

    @staticmethod
    def one():
        return Phase(Fraction(0))

    @staticmethod
    def turns(x):
        """exp(2*pi*i*x)"""
        return Phase(2 * Fraction(x))

    def __mul__(self, other):
        return Phase(self.r + other.r)

    def __truediv__(self, other):
        return Phase(self.r - other.r)

    def conj(self):
        return Phase(-self.r)

    def __pow__(self, k):
        return Phase(self.r * k)

    def __complex__(self):
        return cmath.exp(1j * cmath.pi * float(self.r))

    def is_one(self):
        return self.r == 0

    def __repr__(self):
        return f"Phase(exp(iπ·{format_rational(self.r)}))"


def dual_group(G):
    return GroupSpec(f.dual for f in G)


def bullet_diag(G):
    """Diagonal of the bullet map G* -> G* bullet, indexed by the factors of G."""
    return [Fraction(1, f.n) if f.kind == "ZN" else Fraction(1) for f in G]


def bullet_matrix(G):
    return RationalMatrix.diag(bullet_diag(G))


def bullet(mu, G=None):
    """Rational tuple mu• for mu an element of G*.

    Z_N coordinates are divided by N; all others are returned unchanged.
    """
    return tuple(v / f.n if f.kind == "ZN" else v for v, f in zip(mu.coords, mu.group))


def character(mu, g):
    """chi_mu(g) = exp(2 pi i mu•.g) for mu in G* and g in G."""
    if mu.group != dual_group(g.group):
        raise GroupMismatch(f"character label in {mu.group} does not match {g.group}")
    s = sum((a * b for a, b in zip(bullet(mu), g.coords)), Fraction(0))
    return Phase.turns(s)


def _minimal_rep(v, f):
    if f.kind == "T":
        w = v - floor(v)
        return w if w <= Fraction(1, 2) else w - 1
    if f.kind == "ZN":
        w = v % f.n
        return w if 2 * w <= f.n else w - f.n
    return v


def norm_sq(g):
    """Squared group norm with minimal representatives on T and Z_N."""
    return sum((_minimal_rep(v, f) ** 2 for v, f in zip(g.coords, g.group)), Fraction(0))


def random_element(G, rng, bound=6, den=12):
    """Random element of G; Z and R coordinates lie in [-bound, bound].

    T and R coordinates get denominators up to ``den``.
    """
    out = []
    for f in G:
        if f.kind == "Z":
            out.append(rng.randint(-bound, bound))
        elif f.kind == "ZN":
            out.append(rng.randrange(f.n))
        elif f.kind == "T":
            q = rng.randint(1, den)
            out.append(Fraction(rng.randrange(q), q))
        else:
            q = rng.randint(1, den)
            out.append(Fraction(rng.randint(-bound * q, bound * q), q))
    return canonicalize(out, G)
