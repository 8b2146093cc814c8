"""(Delta, epsilon)-nets of subgroups H = im E, E: R^alpha x Z^beta -> G.

The real directions are discretised with step eps1, small enough that every
point of H lies within group-norm eps of the resulting finitely generated
subgroup N = E'(Z^(alpha+beta)).  A Smith normal form of ker E' splits N
into a finite part (compact generators with their orders) and a free part,
so coefficient tuples map to points without collisions.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, isqrt, lcm

import numpy as np

from .exactalg import RationalMatrix, snf
from .groups import GroupElement, GroupSpec, Z, canonicalize
from .homs import validate
from .linsolve import kernel

__all__ = [
    "NetSpec",
    "NetTooLarge",
    "DEFAULT_DELTA",
    "build_net",
    "sample",
    "enumerate_net",
    "sqrt_upper_eighths",
]

DEFAULT_DELTA = 10


class NetTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class NetSpec:
    epsilon: Fraction
    eps1: Fraction
    compact_generators: tuple  # ((GroupElement, order), ...)
    free_basis: tuple  # (GroupElement, ...)
    deltas: tuple
    x_offset: GroupElement

    @property
    def group(self):
        return self.x_offset.group

    @property
    def compact_orders(self):
        return [s for _, s in self.compact_generators]

    @property
    def free_rank(self):
        return len(self.free_basis)

    @property
    def point_count(self):
        n = 1
        for s in self.compact_orders:
            n *= s
        for d in self.deltas:
            n *= 2 * d + 1
        return n

    def summary(self):
        return {
            "epsilon": str(self.epsilon),
            "eps1": str(self.eps1),
            "free_rank": self.free_rank,
            "compact_orders": self.compact_orders,
            "deltas": list(self.deltas),
            "point_count": self.point_count,
        }


def sqrt_upper_eighths(a):
    """Smallest k/8 with (k/8)^2 >= a."""
    k = isqrt(64 * a)
    if k * k < 64 * a:
        k += 1
    return Fraction(k, 8)


def _eps1(E, eps):
    alpha = sum(1 for f in E.domain if f.kind == "R")
    a = sum(1 for f in E.codomain if f.kind == "T")
    norm = max((abs(x) for x in E.A.entries()), default=Fraction(0))
    if alpha == 0 or a == 0 or norm == 0:
        return Fraction(1)
    bound = 2 * eps / (alpha * sqrt_upper_eighths(a) * norm)
    return Fraction(1, ceil(1 / bound))


def build_net(E, eps, deltas=None, offset=None):
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError(f"epsilon must lie in (0, 1/2], got {eps}")
    G = E.codomain
    kinds = [f.kind for f in E.domain]
    if kinds != sorted(kinds, key=lambda k: k != "R") or any(k not in ("R", "Z") for k in kinds):
        raise ValueError(f"net domain must be R^a x Z^b, got {E.domain}")
    alpha = kinds.count("R")
    n = len(kinds)
    eps1 = _eps1(E, eps)
    scale = RationalMatrix.diag([eps1] * alpha + [1] * (n - alpha))
    Ep = validate(E.A @ scale, GroupSpec([Z] * n), G)

    K = kernel(Ep)
    res = snf(K.A, len(K.domain))
    Eiso = Ep.A @ res.U
    diag = res.diagonal
    compact, free = [], []
    for k in range(n):
        s = diag[k] if k < len(diag) else 0
        gen = canonicalize(Eiso.col(k), G)
        if s == 1:
            continue
        if s > 1:
            compact.append((gen, s))
        else:
            free.append(gen)

    if deltas is None:
        deltas = [DEFAULT_DELTA] * len(free)
    else:
        deltas = [int(d) for d in deltas]
        if len(deltas) == 1 and len(free) != 1:
            deltas = deltas * len(free)
        if len(deltas) != len(free):
            raise ValueError(f"{len(deltas)} deltas given for free rank {len(free)}")
        if any(d < 0 for d in deltas):
            raise ValueError("deltas must be nonnegative")
    if offset is None:
        offset = G.zero()
    return NetSpec(eps, eps1, tuple(compact), tuple(free), tuple(deltas), offset)


def _assemble(net, coeffs):
    """Points offset + coeffs @ generators, exact; coeffs is (count, k)."""
    G = net.group
    gens = [g for g, _ in net.compact_generators] + list(net.free_basis)
    if not gens:
        return [net.x_offset for _ in coeffs]
    L = 1
    for g in gens + [net.x_offset]:
        for x in g.coords:
            L = lcm(L, x.denominator)
    F = np.array([[int(x * L) for x in g.coords] for g in gens], dtype=object).reshape(len(gens), len(G))
    off = np.array([int(x * L) for x in net.x_offset.coords], dtype=object)
    C = np.asarray(coeffs, dtype=object).reshape(-1, len(gens))
    nums = C.dot(F) + off
    out = []
    for row in nums:
        out.append(canonicalize([Fraction(int(x), L) for x in row], G))
    return out


def _ranges(net):
    return [(0, s - 1) for s in net.compact_orders] + [(-d, d) for d in net.deltas]


def sample(net, seed, count):
    """``count`` uniform net points.

    Coefficients come from ``random.Random(seed)`` (Mersenne Twister);
    ``randrange`` draws bounded integers by rejection, so there is no modulo
    bias, and it handles compact orders beyond 64 bits.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = random.Random(seed)
    ranges = _ranges(net)
    coeffs = [[rng.randrange(lo, hi + 1) for lo, hi in ranges] for _ in range(count)]
    return _assemble(net, coeffs)


def enumerate_net(net, cap=100_000):
    if net.point_count > cap:
        raise NetTooLarge(f"net has {net.point_count} points, cap is {cap}")
    coeffs = list(itertools.product(*[range(lo, hi + 1) for lo, hi in _ranges(net)]))
    return _assemble(net, coeffs)
