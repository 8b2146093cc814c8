"""Support x0 + H of a stabilizer state.

Split Lambda into its G* rows (Lambda1) and G rows (Lambda2).  The diagonal
stabilizer labels are D = {Lambda1 u : Lambda2 u = 0}; the support is the
coset of H = Lambda2(Gamma0) on which every diagonal stabilizer element
acts as the identity, i.e. chi_mu(x) * gamma_mu = 1 for mu in D.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .exactalg import RationalMatrix, format_rational
from .groups import GroupElement, GroupSpec, R, Z, canonicalize, dual_group
from .homs import MatrixRep, dual, is_zero_hom, validate
from .linsolve import Infeasible, kernel, solve_group_system
from .quadratic import compose_with_hom

__all__ = [
    "SupportDesc",
    "InternalInconsistency",
    "covering_map",
    "diagonal_labels",
    "support",
]


class InternalInconsistency(RuntimeError):
    """An invariant that holds for every valid circuit failed."""


@dataclass(frozen=True)
class SupportDesc:
    x0: GroupElement
    E_H: MatrixRep

    @property
    def domain_shape(self):
        a = sum(1 for f in self.E_H.domain if f.kind == "R")
        return a, len(self.E_H.domain) - a

    def to_json(self):
        return {
            "x0": self.x0.to_json(),
            "E_H": [[format_rational(x) for x in row] for row in self.E_H.A.rows],
            "domain": list(self.domain_shape),
            "group": self.x0.group.to_json(),
        }


def covering_map(G):
    """Onto map q: R^a x Z^b -> G; T and R factors come from R, the rest from Z."""
    cont = [i for i, f in enumerate(G) if not f.is_discrete]
    disc = [i for i, f in enumerate(G) if f.is_discrete]
    order = cont + disc
    rows = [[Fraction(int(order[c] == i)) for c in range(len(order))] for i in range(len(G))]
    dom = GroupSpec([R] * len(cont) + [Z] * len(disc))
    return validate(RationalMatrix(rows, len(order)), dom, G)


def _split(S):
    m = len(S.group_now)
    L = S.Lambda.A
    return L.submatrix(rows=range(m)), L.submatrix(rows=range(m, 2 * m))


def _drop_trivial(f):
    keep = [j for j, kind in enumerate(f.domain) if not is_zero_hom(f.A.submatrix(cols=[j]), GroupSpec([kind]), f.codomain)]
    return MatrixRep(GroupSpec(f.domain[j] for j in keep), f.codomain, f.A.submatrix(cols=keep))


def diagonal_labels(S):
    """E_D with image the Z-type labels of the stabilizer group."""
    G = S.group_now
    q = covering_map(S.Lambda.domain)
    L1, L2 = _split(S)
    lam2 = validate(L2 @ q.A, q.domain, G)
    E = kernel(lam2)
    return _drop_trivial(validate(L1 @ q.A @ E.A, E.domain, dual_group(G)))


def support(S):
    G = S.group_now
    m = len(G)
    ED = diagonal_labels(S)
    W = ED.domain

    # phase of the diagonal element labelled by ED(w), as a function of w
    lift = validate(RationalMatrix.vstack([ED.A, RationalMatrix.zeros(m, len(W))], len(W)), W, S.Q.group)
    QW = compose_with_hom(S.Q, lift)
    Mw = QW.M
    ell = []
    for i, fi in enumerate(W):
        for j, fj in enumerate(W):
            x = Mw[i, j]
            if fi.kind == "R" or fj.kind == "R":
                ok = x == 0
            else:
                ok = x.denominator == 1
            if not ok:
                raise InternalInconsistency(
                    f"diagonal stabilizer phases are not a character: M'[{i},{j}] = {x}"
                )
        if fi.kind == "R":
            ell.append(QW.v[i])
        else:
            t = QW.v[i] + Mw[i, i] / 2
            ell.append(t - floor(t))

    # chi_{ED w}(x0) = conj(phase(w))  <=>  ED*(x0) = -ell  in W*
    EDs = dual(ED)
    rhs = canonicalize([-x for x in ell], EDs.codomain)
    sol = solve_group_system(EDs, rhs)
    if isinstance(sol, Infeasible):
        raise InternalInconsistency(f"no support offset solves the diagonal condition: {sol.reason}")

    q = covering_map(S.Lambda.domain)
    _, L2 = _split(S)
    EH = _drop_trivial(validate(L2 @ q.A, q.domain, G))
    return SupportDesc(sol.x0, EH)
