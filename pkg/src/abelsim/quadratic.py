"""Quadratic functions in normal form.

    xi(g) = exp(i pi (g^T M g + C^T g + 2 v^T g)),    C(i) = M(i,i) c_i

M is a symmetric matrix representing a homomorphism G -> G-bullet, v lives
in G-bullet, and c_i is the characteristic of factor i.  The C term makes
xi independent of the real representative chosen for g.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from .exactalg import RationalMatrix, frac
from .groups import GroupElement, GroupMismatch, GroupSpec, Phase, bullet_diag, dual_group
from .homs import InvalidMatrixRep, validate

__all__ = [
    "QuadraticFunc",
    "InvalidQuadratic",
    "CompositionCheckFailed",
    "make_quadratic",
    "evaluate",
    "evaluate_rep",
    "bicharacter",
    "bicharacter_matrix",
    "symmetrize",
    "canonical_bullet",
    "compose_with_automorphism",
    "compose_with_hom",
]


class InvalidQuadratic(ValueError):
    pass


class CompositionCheckFailed(RuntimeError):
    pass


def canonical_bullet(v, G):
    """Reduce v into the bullet group of G.

    Coordinates of Z factors live in T, of T factors in Z, of Z_N factors in
    {0, 1/N, ..., (N-1)/N}, of R factors in R.
    """
    v = [Fraction(x) for x in v]
    if len(v) != len(G):
        raise GroupMismatch(f"bullet vector of length {len(v)} for {G}")
    out = []
    for i, (x, f) in enumerate(zip(v, G)):
        if f.kind == "Z":
            out.append(x - floor(x))
        elif f.kind == "T":
            if x.denominator != 1:
                raise InvalidQuadratic(f"v[{i}] = {x} must be an integer on a T factor")
            out.append(x)
        elif f.kind == "ZN":
            if (x * f.n).denominator != 1:
                raise InvalidQuadratic(f"v[{i}] = {x} must be a multiple of 1/{f.n}")
            out.append(x - floor(x))
        else:
            out.append(x)
    return tuple(out)


class _IntForm:
    """(M, C, v) scaled to integers by a common denominator L."""

    __slots__ = ("L", "rows", "lin")

    def __init__(self, Q):
        vals = list(Q.M.entries()) + list(Q.C) + list(Q.v)
        L = 1
        for x in vals:
            if x.denominator != 1:
                L = lcm(L, x.denominator)
        self.L = L
        self.rows = [
            [(j, x.numerator * (L // x.denominator)) for j, x in enumerate(r) if x]
            for r in Q.M.rows
        ]
        # C + 2v, the linear part
        self.lin = [
            (c + 2 * a).numerator * (L // (c + 2 * a).denominator) for c, a in zip(Q.C, Q.v)
        ]

    def exponent(self, x):
        D = 1
        for t in x:
            if t.denominator != 1:
                D = lcm(D, t.denominator)
        return self.exponent_int([t.numerator * (D // t.denominator) for t in x], D)

    def exponent_int(self, xi, D):
        """Exponent at the representative xi / D, xi integral."""
        quad = 0
        for i, a in enumerate(xi):
            if a:
                quad += a * sum(m * xi[j] for j, m in self.rows[i])
        lin = sum(c * a for c, a in zip(self.lin, xi) if c and a)
        return frac(quad + D * lin, self.L * D * D)


@dataclass(frozen=True)
class QuadraticFunc:
    group: GroupSpec
    M: RationalMatrix
    v: tuple

    @property
    def C(self):
        return tuple(self.M[i, i] * f.char for i, f in enumerate(self.group))

    def _form(self):
        form = self.__dict__.get("_int_form")
        if form is None:
            form = _IntForm(self)
            object.__setattr__(self, "_int_form", form)
        return form

    def __call__(self, g):
        return evaluate(self, g)


def make_quadratic(M, v, G):
    """Validated QuadraticFunc; M must already be exactly symmetric."""
    G = GroupSpec(G)
    m = len(G)
    if not isinstance(M, RationalMatrix):
        M = RationalMatrix(M, m)
    if M.shape != (m, m):
        raise InvalidQuadratic(f"M has shape {M.shape}, expected {m}x{m}")
    if M != M.T:
        raise InvalidQuadratic("M is not symmetric")
    # M : G -> G-bullet  <=>  Upsilon^-1 M : G -> G*
    ups = bullet_diag(G)
    beta = RationalMatrix([[M[i, j] / ups[i] for j in range(m)] for i in range(m)], m)
    try:
        validate(beta, G, dual_group(G))
    except InvalidMatrixRep as exc:
        raise InvalidQuadratic(f"M is not a homomorphism into the bullet group: {exc}") from exc
    C = [M[i, i] * f.char for i, f in enumerate(G)]
    if any(c.denominator != 1 for c in C):
        raise InvalidQuadratic("C = diag(M) * chars is not integral")
    return QuadraticFunc(G, M, canonical_bullet(v, G))


def evaluate_rep(Q, x):
    """Value at a real representative x (not necessarily canonical)."""
    if len(x) != len(Q.group):
        raise GroupMismatch(f"vector of length {len(x)} for {Q.group}")
    x = [t if isinstance(t, (int, Fraction)) else Fraction(t) for t in x]
    return Phase(Q._form().exponent(x))


def evaluate(Q, g):
    if isinstance(g, GroupElement):
        if g.group != Q.group:
            raise GroupMismatch(f"element of {g.group} given to a quadratic on {Q.group}")
        g = g.coords
    return evaluate_rep(Q, g)


def bicharacter_matrix(Q):
    return Q.M


def bicharacter(Q, g, h):
    """B(g, h) = exp(2 pi i g^T M h)."""
    s = sum((a * Q.M[i, j] * b for i, a in enumerate(g.coords) for j, b in enumerate(h.coords)), Fraction(0))
    return Phase.turns(s)


def symmetrize(M, G):
    """Exactly symmetric matrix with the same bicharacter.

    Requires M - M^T to pair every two elements to an integer.
    """
    G = GroupSpec(G)
    m = len(G)
    for i in range(m):
        for j in range(i + 1, m):
            d = M[i, j] - M[j, i]
            if d == 0:
                continue
            if not (G[i].is_discrete and G[j].is_discrete and d.denominator == 1):
                raise InvalidQuadratic(f"M is not symmetric modulo integers at ({i}, {j})")
    return RationalMatrix([[M[max(i, j), min(i, j)] for j in range(m)] for i in range(m)], m)


def _variants(Q, A, Mp, G):
    """Candidate v' vectors, the derived formula first."""
    At = A.T
    CM = Q.C
    Cp = [Mp[i, i] * f.char for i, f in enumerate(G)]
    base = At.matvec(Q.v)
    corr = [a - b for a, b in zip(At.matvec(CM), Cp)]
    yield [b + c / 2 for b, c in zip(base, corr)]
    yield [b + c for b, c in zip(base, corr)]


def _random_rep(G, rng, bound=6, den=60):
    """Random integral representative xi / D of an element of G."""
    D = rng.randint(1, den)
    xi = []
    for f in G:
        if f.kind == "Z":
            xi.append(D * rng.randint(-bound, bound))
        elif f.kind == "ZN":
            xi.append(D * rng.randrange(f.n))
        elif f.kind == "T":
            xi.append(rng.randrange(D))
        else:
            xi.append(rng.randint(-bound * D, bound * D))
    return xi, D


def _agrees(Qp, Q, f, G, checks, seed):
    # Q is independent of the representative, so A x need not be reduced
    dA, rows = f.A._sparse_int()
    fp, fq = Qp._form(), Q._form()
    m = len(G)

    def same(xi, D):
        yi = [sum(a * xi[j] for j, a in r) for r in rows]
        return Phase(fp.exponent_int(xi, D)) == Phase(fq.exponent_int(yi, D * dA))

    for j in range(m):
        e = [0] * m
        e[j] = 1
        if not same(e, 1):
            return False
    rng = random.Random(seed)
    for _ in range(checks):
        if not same(*_random_rep(G, rng)):
            return False
    return True


def compose_with_hom(Q, f, checks=100, seed=0):
    """Normal form of g -> Q(f(g)) for a homomorphism f into Q.group.

    The result is checked pointwise on every generator and ``checks`` random
    elements; a failed check tries the alternative v' and then raises.
    """
    if f.codomain != Q.group:
        raise GroupMismatch(f"map into {f.codomain} composed with quadratic on {Q.group}")
    G = f.domain
    A = f.A
    Mp = A.T @ Q.M @ A
    for vp in _variants(Q, A, Mp, G):
        try:
            Qp = QuadraticFunc(G, Mp, canonical_bullet(vp, G))
        except InvalidQuadratic:
            continue
        if _agrees(Qp, Q, f, G, checks, seed):
            return Qp
    raise CompositionCheckFailed("no v' candidate reproduces Q(A g) pointwise")


def compose_with_automorphism(Q, f, checks=100, seed=0):
    if f.domain != f.codomain:
        raise GroupMismatch("expected an endomorphism")
    return compose_with_hom(Q, f, checks, seed)
