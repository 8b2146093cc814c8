"""Matrix representations of continuous homomorphisms between elementary groups.

A rational n x m matrix A represents alpha: G -> H when alpha(g) is congruent
to A x modulo H for every real representative x of g.  Validity is checked
through the primal and dual consistency conditions, with the block normal
form as an independent cross-check.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactalg import RationalMatrix
from .groups import GroupMismatch, GroupSpec, bullet_diag, canonicalize, dual_group

__all__ = [
    "MatrixRep",
    "InvalidMatrixRep",
    "NonIntegerRow",
    "ConsistencyViolation",
    "ForbiddenBlock",
    "NotInvertible",
    "validate",
    "apply",
    "compose",
    "dual",
    "identity",
    "invert_automorphism",
    "same_hom",
    "is_zero_hom",
    "reduce_rep",
]


class InvalidMatrixRep(ValueError):
    pass


class ConsistencyViolation(InvalidMatrixRep):
    def __init__(self, i, j, side, detail=""):
        self.i, self.j, self.side = i, j, side
        super().__init__(f"{side} consistency violated at entry ({i}, {j}){': ' + detail if detail else ''}")


class NonIntegerRow(ConsistencyViolation):
    def __init__(self, i, j, side="primal"):
        super().__init__(i, j, side, "row of a discrete codomain factor must be integral")


class ForbiddenBlock(InvalidMatrixRep):
    def __init__(self, i, j, to_kind, from_kind):
        self.i, self.j = i, j
        super().__init__(
            f"entry ({i}, {j}) is nonzero but there is no nontrivial continuous map {from_kind} -> {to_kind}"
        )


class NotInvertible(ValueError):
    pass


def _block(f):
    return "F" if f.kind == "ZN" else f.kind


# (codomain block, domain block) pairs that must vanish
_FORBIDDEN = {
    ("Z", "R"), ("Z", "F"), ("Z", "T"),
    ("R", "F"), ("R", "T"),
    ("F", "R"), ("F", "T"),
}


def _congruent_zero(x, d):
    if d == 0:
        return x == 0
    if type(d) is int:
        return x.numerator % (d * x.denominator) == 0
    return (x / d).denominator == 1


@dataclass(frozen=True)
class MatrixRep:
    domain: GroupSpec
    codomain: GroupSpec
    A: RationalMatrix

    def __call__(self, g):
        return apply(self, g)

    @property
    def shape(self):
        return self.A.shape


def _dual_matrix(A, G, H):
    ug = bullet_diag(G)
    uh = bullet_diag(H)
    return RationalMatrix(
        [[A[i, j] * uh[i] / ug[j] for i in range(len(H))] for j in range(len(G))], len(H)
    )


def _cross_check_blocks(nz, G, H):
    for i, j, a in nz:
        h, g = H[i], G[j]
        if h.kind == "ZN" and g.kind == "ZN":
            step = h.n // gcd(h.n, g.n)
            assert (a / step).denominator == 1, "Z_N -> Z_N block not of the form k*d/gcd(d,c)"
        elif h.kind == "T" and g.kind == "ZN":
            assert (a * g.n).denominator == 1, "Z_N -> T block not in (1/N)Z"
        elif h.kind == "T" and g.kind == "T":
            assert a.denominator == 1, "T -> T block not integral"


def _nonzero(A):
    return [(i, j, x) for i, row in enumerate(A.rows) for j, x in enumerate(row) if x]


def validate(A, G, H):
    """Certify A as a matrix representation of a homomorphism G -> H.

    Conditions are checked in order: forbidden blocks, integral rows,
    primal consistency, then the same two conditions for the dual matrix
    A* = Upsilon_G^-1 A^T Upsilon_H.
    """
    if not isinstance(A, RationalMatrix):
        A = RationalMatrix(A, len(G))
    G, H = GroupSpec(G), GroupSpec(H)
    if A.shape != (len(H), len(G)):
        raise InvalidMatrixRep(f"matrix shape {A.shape} does not match {len(H)}x{len(G)}")
    nz = _nonzero(A)
    for i, j, a in nz:
        if (_block(H[i]), _block(G[j])) in _FORBIDDEN:
            raise ForbiddenBlock(i, j, str(H[i]), str(G[j]))
    for i, j, a in nz:
        if H[i].is_discrete and a.denominator != 1:
            raise NonIntegerRow(i, j)
    for i, j, a in nz:
        if not _congruent_zero(G[j].char * a, H[i].char):
            raise ConsistencyViolation(i, j, "primal", f"{G[j].char}*{a} is not 0 mod {H[i].char}")
    ug, uh = bullet_diag(G), bullet_diag(H)
    # A*(j, i) is the entry mapping H*_i -> G*_j; indices reported as in A
    dual_nz = [(i, j, a * uh[i] / ug[j]) for i, j, a in nz]
    for i, j, d in dual_nz:
        if G[j].dual.is_discrete and d.denominator != 1:
            raise NonIntegerRow(i, j, side="dual")
    for i, j, d in dual_nz:
        if not _congruent_zero(H[i].dual.char * d, G[j].dual.char):
            raise ConsistencyViolation(i, j, "dual", f"{H[i].dual.char}*{d} is not 0 mod {G[j].dual.char}")
    _cross_check_blocks(nz, G, H)
    return MatrixRep(G, H, A)


def identity(G):
    G = GroupSpec(G)
    return MatrixRep(G, G, RationalMatrix.identity(len(G)))


def apply(f, g):
    if g.group != f.domain:
        raise GroupMismatch(f"element of {g.group} given to a map on {f.domain}")
    return canonicalize(f.A.matvec(g.coords), f.codomain)


def compose(f2, f1):
    """f2 after f1."""
    if f1.codomain != f2.domain:
        raise GroupMismatch(f"cannot compose {f1.codomain} -> with map on {f2.domain}")
    return validate(f2.A @ f1.A, f1.domain, f2.codomain)


def dual(f):
    return validate(_dual_matrix(f.A, f.domain, f.codomain), dual_group(f.codomain), dual_group(f.domain))


def is_zero_hom(A, G, H):
    """True when the (valid) matrix A represents the trivial map G -> H."""
    for j, g in enumerate(G):
        col = A.col(j)
        if g.is_discrete:
            for x, h in zip(col, H):
                if not _congruent_zero(x, h.char):
                    return False
        elif any(x != 0 for x in col):
            return False
    return True


def reduce_rep(f):
    """Same homomorphism, with periodic entries of discrete columns reduced.

    Entries in Z_N rows are taken mod N and entries in T rows mod 1, which is
    only allowed in columns whose domain factor is discrete.
    """
    disc = [g.is_discrete for g in f.domain]
    rows = []
    for row, h in zip(f.A.rows, f.codomain):
        c = h.char
        if c:
            row = tuple(a % c if d and a and not 0 <= a < c else a for a, d in zip(row, disc))
        rows.append(row)
    return MatrixRep(f.domain, f.codomain, RationalMatrix._raw(tuple(rows), len(f.domain)))


def same_hom(f1, f2):
    return (
        f1.domain == f2.domain
        and f1.codomain == f2.codomain
        and is_zero_hom(f1.A - f2.A, f1.domain, f1.codomain)
    )


def _is_inverse(A, X, G):
    eye = RationalMatrix.identity(len(G))
    return is_zero_hom(A @ X - eye, G, G) and is_zero_hom(X @ A - eye, G, G)


def _column_group(G, j):
    """Parametrisation of the valid j-th columns of an endomorphism of G.

    Returns ``(P, D)``: P maps the parameter group D onto the set of allowed
    columns (as real vectors).
    """
    from .groups import R as RF, Z as ZF

    gj = G[j]
    m = len(G)
    cols, params = [], []
    for i, h in enumerate(G):
        if gj.kind == "Z":
            # any element of G
            cols.append(i)
            params.append(RF if h.kind in ("T", "R") else ZF)
        elif gj.kind == "ZN":
            if h.kind == "ZN":
                cols.append((i, Fraction(h.n // gcd(h.n, gj.n))))
                params.append(ZF)
            elif h.kind == "T":
                cols.append((i, Fraction(1, gj.n)))
                params.append(ZF)
        elif gj.kind == "T":
            if h.kind == "T":
                cols.append((i, Fraction(1)))
                params.append(ZF)
        else:  # R
            if h.kind in ("T", "R"):
                cols.append((i, Fraction(1)))
                params.append(RF)
    P = [[Fraction(0)] * len(cols) for _ in range(m)]
    for k, c in enumerate(cols):
        i, s = (c, Fraction(1)) if isinstance(c, int) else c
        P[i][k] = s
    return RationalMatrix(P, len(cols)), GroupSpec(params)


def invert_automorphism(f):
    """Matrix representation of the inverse of an automorphism of G.

    The result is cached on ``f``.
    """
    X = f.__dict__.get("_inverse")
    if X is None:
        X = _invert(f)
        object.__setattr__(f, "_inverse", X)
    return X


def _invert(f):
    from .groups import R as RF
    from .linsolve import Infeasible, solve_group_system

    G = f.domain
    if f.codomain != G:
        raise GroupMismatch("invert_automorphism needs an endomorphism")
    A = f.A
    cand = A.inverse()
    if cand is not None:
        try:
            X = validate(cand, G, G)
            if _is_inverse(A, X.A, G):
                return X
        except InvalidMatrixRep:
            pass
    m = len(G)
    cols = []
    for j, gj in enumerate(G):
        P, D = _column_group(G, j)
        AP = A @ P
        if gj.is_discrete:
            target = G
        else:
            # continuous columns must match e_j exactly
            target = GroupSpec([RF] * m)
        rhs = canonicalize([int(i == j) for i in range(m)], target)
        sol = solve_group_system(MatrixRep(D, target, AP), rhs)
        if isinstance(sol, Infeasible):
            raise NotInvertible(f"column {j} of the inverse has no solution")
        cols.append(P.matvec(sol.x0.coords))
    X = RationalMatrix([[cols[j][i] for j in range(m)] for i in range(m)], m)
    X = reduce_rep(validate(X, G, G))
    if not _is_inverse(A, X.A, G):
        raise NotInvertible("column solutions do not assemble into an inverse")
    return X
