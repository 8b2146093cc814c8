"""Linear systems over elementary Abelian groups.

``solve_group_system`` lifts A x = b (mod H) to a mixed real-integer system
by treating discrete coordinates as integer unknowns, continuous ones as
real unknowns, and adding one integer unknown per periodic codomain row to
absorb the modulus.  ``solve_mixed`` removes the real block by exact row
reduction and finishes the integer part with a Smith normal form.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exactalg import RationalMatrix, rref, snf
from .groups import GroupElement, GroupSpec, R, Z, canonicalize
from .homs import MatrixRep, is_zero_hom, reduce_rep, validate

__all__ = [
    "MixedSystem",
    "GeneralSolution",
    "Infeasible",
    "solve_mixed",
    "solve_group_system",
    "kernel",
]


@dataclass(frozen=True)
class MixedSystem:
    """A x + B y = c with x integral and y real."""

    A: RationalMatrix
    B: RationalMatrix
    c: tuple

    def __post_init__(self):
        n = len(self.c)
        if self.A.nrows != n or self.B.nrows != n:
            raise ValueError("inconsistent dimensions in mixed system")


@dataclass(frozen=True)
class GeneralSolution:
    """All solutions are x0 + E(w) for w in the domain of E."""

    x0: GroupElement
    E: MatrixRep


@dataclass(frozen=True)
class Infeasible:
    reason: str = ""

    def __bool__(self):
        return False


def _row_scaled_integers(rows, rhs):
    """Scale each equation by the lcm of its denominators."""
    out_rows, out_rhs = [], []
    for r, c in zip(rows, rhs):
        d = 1
        for x in list(r) + [c]:
            d = lcm(d, x.denominator)
        out_rows.append([int(x * d) for x in r])
        out_rhs.append(int(c * d))
    return out_rows, out_rhs


def solve_mixed(sys):
    """General solution of a mixed real-integer linear system.

    The solution lives in Z^a x R^b (integer unknowns first).  The kernel map
    has domain R^k x Z^l and drops nothing; callers prune as needed.
    """
    A, B, c = sys.A, sys.B, [Fraction(x) for x in sys.c]
    n, a, b = len(c), A.ncols, B.ncols

    # eliminate the real unknowns
    RB, Tm, pivots = rref(B.rows, b)
    r = len(pivots)
    Tmat = RationalMatrix(Tm, n) if n else RationalMatrix.zeros(0, 0)
    RA = Tmat @ A if n else A
    Rc = Tmat.matvec(c) if n else ()

    # residual integer system from rows where B vanished
    int_rows, int_rhs = _row_scaled_integers(RA.rows[r:], Rc[r:])
    res = snf(RationalMatrix(int_rows, a) if int_rows else RationalMatrix.zeros(0, a), a)
    cp = res.U_inv.matvec(int_rhs) if int_rows else ()
    diag = res.diagonal
    rank = res.rank
    z0 = [Fraction(0)] * a
    for i, ci in enumerate(cp):
        s = diag[i] if i < len(diag) else 0
        if s == 0:
            if ci != 0:
                return Infeasible(f"integer equation {i} reduces to 0 = {ci}")
        else:
            if (ci / s).denominator != 1:
                return Infeasible(f"integer equation {i} needs {s} | {ci}")
            z0[i] = ci / s
    x0 = res.V_inv.matvec(z0)
    int_kernel = [res.V_inv.col(k) for k in range(rank, a)]

    # real unknowns: pivot coordinates are determined by x, the rest are free
    free = [j for j in range(b) if j not in pivots]

    def y_of(x, rhs):
        y = [Fraction(0)] * b
        for k, pj in enumerate(pivots):
            y[pj] = rhs[k] - sum((RA[k, i] * x[i] for i in range(a) if x[i]), Fraction(0))
        return y

    y0 = y_of(x0, Rc[:r])
    gens_real, gens_int = [], []
    for f in free:
        y = [Fraction(0)] * b
        y[f] = Fraction(1)
        for k, pj in enumerate(pivots):
            y[pj] = -RB[k][f]
        gens_real.append([Fraction(0)] * a + y)
    zero_rhs = [Fraction(0)] * r
    for kv in int_kernel:
        gens_int.append(list(kv) + y_of(kv, zero_rhs))
    gens = gens_real + gens_int
    dom = GroupSpec([R] * len(gens_real) + [Z] * len(gens_int))
    cod = GroupSpec([Z] * a + [R] * b)
    E = RationalMatrix([[g[i] for g in gens] for i in range(a + b)], len(gens))
    return GeneralSolution(GroupElement(cod, tuple(x0) + tuple(y0)), MatrixRep(dom, cod, E))


def solve_group_system(f, b):
    """Solve f(x) = b for x in the domain of f."""
    G, H = f.domain, f.codomain
    if b.group != H:
        raise ValueError(f"right-hand side in {b.group}, expected {H}")
    A = f.A
    n = len(H)
    int_cols = [j for j, g in enumerate(G) if g.is_discrete]
    real_cols = [j for j, g in enumerate(G) if not g.is_discrete]
    mod_rows = [i for i, h in enumerate(H) if h.char != 0]

    int_block = [
        [A[i, j] for j in int_cols] + [Fraction(H[i].char) if i == k else Fraction(0) for k in mod_rows]
        for i in range(n)
    ]
    real_block = [[A[i, j] for j in real_cols] for i in range(n)]
    sys = MixedSystem(
        RationalMatrix(int_block, len(int_cols) + len(mod_rows)),
        RationalMatrix(real_block, len(real_cols)),
        tuple(b.coords),
    )
    sol = solve_mixed(sys)
    if isinstance(sol, Infeasible):
        return sol

    # project the lifted solution back onto G, dropping modulus unknowns
    ai = len(int_cols) + len(mod_rows)
    where = {}
    for k, j in enumerate(int_cols):
        where[j] = k
    for k, j in enumerate(real_cols):
        where[j] = ai + k
    m = len(G)
    x0 = canonicalize([sol.x0.coords[where[j]] for j in range(m)], G)
    Efull = sol.E.A
    keep_cols, kinds = [], []
    for c, kind in enumerate(sol.E.domain):
        col = [Efull[where[j], c] for j in range(m)]
        cm = RationalMatrix.column(col)
        if is_zero_hom(cm, GroupSpec([kind]), G):
            continue
        if kind == Z:
            lead = next(x for x in col if x != 0)
            if lead < 0:
                col = [-x for x in col]
        keep_cols.append(col)
        kinds.append(kind)
    E = RationalMatrix([[col[i] for col in keep_cols] for i in range(m)], len(keep_cols))
    E = reduce_rep(validate(E, GroupSpec(kinds), G))
    return GeneralSolution(x0, E)


def kernel(f):
    """Map E with image equal to ker f."""
    sol = solve_group_system(f, f.codomain.zero())
    assert not isinstance(sol, Infeasible)
    return sol.E
