"""Pauli operators and stabilizer-state tracking through normalizer gates.

A stabilizer state on G is described by a label map Lambda: Gamma0 -> Gamma
with Gamma = G* x G, whose image is the set of labels (mu, g) of the
stabilizer group, together with a quadratic function xi on Gamma whose
restriction to that image gives the phase of each stabilizer element

    gamma(mu, g) Z(mu) X(g).

Each gate acts on labels by a matrix bold-A and on phases by
xi' = (xi * correction) o bold-A^-1.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import RationalMatrix
from .groups import (
    GroupElement,
    GroupMismatch,
    GroupSpec,
    Phase,
    bullet_diag,
    canonicalize,
    character,
    dual_group,
)
from .homs import MatrixRep, apply, dual, invert_automorphism, reduce_rep, validate
from .quadratic import (
    QuadraticFunc,
    canonical_bullet,
    compose_with_hom,
    evaluate,
)

__all__ = [
    "PauliOp",
    "Automorphism",
    "QuadraticPhase",
    "Fourier",
    "Circuit",
    "StabilizerDesc",
    "gamma_group",
    "pauli_multiply",
    "pauli_identity",
    "conjugate_pauli",
    "initial_state",
    "apply_gate",
    "run_circuit",
    "group_chain",
    "stabilizer_element",
    "fourier_group",
]

# random pointwise checks per phase composition; generators are always checked
COMPOSE_CHECKS = 16


def gamma_group(G):
    return dual_group(G) + G


@dataclass(frozen=True)
class PauliOp:
    """phase * Z(mu) X(g)"""

    group: GroupSpec
    phase: Phase
    mu: GroupElement
    g: GroupElement

    def __post_init__(self):
        if self.mu.group != dual_group(self.group) or self.g.group != self.group:
            raise GroupMismatch("Pauli label does not match its group")


def pauli_identity(G):
    return PauliOp(G, Phase.one(), dual_group(G).zero(), G.zero())


def pauli_multiply(a, b):
    """a * b reordered as phase * Z(mu) X(g).

    X(g) Z(nu) = conj(chi_nu(g)) Z(nu) X(g).
    """
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")
    ph = a.phase * b.phase * character(b.mu, a.g).conj()
    return PauliOp(a.group, ph, a.mu + b.mu, a.g + b.g)


@dataclass(frozen=True)
class Automorphism:
    rep: MatrixRep


@dataclass(frozen=True)
class QuadraticPhase:
    Q: QuadraticFunc


@dataclass(frozen=True)
class Fourier:
    registers: tuple

    def __post_init__(self):
        object.__setattr__(self, "registers", tuple(sorted(set(int(i) for i in self.registers))))


@dataclass(frozen=True)
class Circuit:
    group0: GroupSpec
    input: GroupElement
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.input.group != self.group0:
            raise GroupMismatch("input element is not in the initial group")
        for f in self.group0:
            if f.kind == "R":
                raise ValueError("R factors are not allowed in circuits")


def fourier_group(G, registers):
    for i in registers:
        if not 0 <= i < len(G):
            raise IndexError(f"Fourier register {i} out of range for {G}")
    return GroupSpec(f.dual if i in registers else f for i, f in enumerate(G))


def group_chain(circuit):
    """Designated groups G(0), ..., G(T); checks gate/group agreement."""
    chain = [circuit.group0]
    G = circuit.group0
    for t, gate in enumerate(circuit.gates):
        _check_gate(gate, G, t)
        if isinstance(gate, Fourier):
            G = fourier_group(G, gate.registers)
        chain.append(G)
    return chain


def _check_gate(gate, G, t=None):
    where = "" if t is None else f"gate {t}: "
    if isinstance(gate, Automorphism):
        if gate.rep.domain != G or gate.rep.codomain != G:
            raise GroupMismatch(f"{where}automorphism on {gate.rep.domain}, circuit is on {G}")
    elif isinstance(gate, QuadraticPhase):
        if gate.Q.group != G:
            raise GroupMismatch(f"{where}quadratic gate on {gate.Q.group}, circuit is on {G}")
    elif isinstance(gate, Fourier):
        fourier_group(G, gate.registers)
    else:
        raise TypeError(f"{where}unknown gate {gate!r}")


@dataclass(frozen=True)
class StabilizerDesc:
    group_now: GroupSpec
    Lambda: MatrixRep
    Q: QuadraticFunc

    @property
    def M(self):
        return self.Q.M

    @property
    def v(self):
        return self.Q.v


def initial_state(G0, g):
    """Stabilizer description of the basis state |g>."""
    G0 = GroupSpec(G0)
    if g.group != G0:
        raise GroupMismatch("input element not in G0")
    m = len(G0)
    Gam = gamma_group(G0)
    I, O = RationalMatrix.identity(m), RationalMatrix.zeros(m, m)
    Lam = MatrixRep(Gam, Gam, RationalMatrix.block([[I, O], [O, O]]))
    ups = bullet_diag(G0)
    v = [-u * x for u, x in zip(ups, g.coords)] + [0] * m
    Q = QuadraticFunc(Gam, RationalMatrix.zeros(2 * m, 2 * m), canonical_bullet(v, Gam))
    return StabilizerDesc(G0, Lam, Q)


def _add_quadratic(Q, M, v):
    return QuadraticFunc(Q.group, Q.M + M, canonical_bullet([a + b for a, b in zip(Q.v, v)], Q.group))


def _beta(Qg):
    """Matrix of beta: G -> G* with B(g, h) = chi_beta(g)(h)."""
    ups = bullet_diag(Qg.group)
    m = len(Qg.group)
    return RationalMatrix([[Qg.M[i, j] / ups[i] for j in range(m)] for i in range(m)], m)


def _fourier_mats(G, registers):
    """(S, S^-1, M_F) for a Fourier transform on the given registers of G.

    S sends (mu_i, g_i) to (g_i, -mu_i); M_F adds the phase
    chi_{mu_i e_i}(g_i e_i) = exp(2 pi i Upsilon_ii mu_i g_i) per register.
    """
    m = len(G)
    n = 2 * m
    ups = bullet_diag(G)
    S = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    Sinv = [row[:] for row in S]
    MF = [[Fraction(0)] * n for _ in range(n)]
    for i in registers:
        for X in (S, Sinv):
            X[i][i] = X[m + i][m + i] = Fraction(0)
        S[i][m + i], S[m + i][i] = Fraction(1), Fraction(-1)
        Sinv[i][m + i], Sinv[m + i][i] = Fraction(-1), Fraction(1)
        MF[i][m + i] = MF[m + i][i] = ups[i]
    return RationalMatrix(S, n), RationalMatrix(Sinv, n), RationalMatrix(MF, n)


def apply_gate(S, gate):
    G = S.group_now
    _check_gate(gate, G)
    m = len(G)
    Gam = gamma_group(G)
    if isinstance(gate, Automorphism):
        f = gate.rep
        X = invert_automorphism(f)
        bold = RationalMatrix.block_diag(dual(X).A, f.A)
        bold_inv = validate(RationalMatrix.block_diag(dual(f).A, X.A), Gam, Gam)
        Q = S.Q
        G_new = G
    elif isinstance(gate, QuadraticPhase):
        Qg = gate.Q
        b = _beta(Qg)
        I, O = RationalMatrix.identity(m), RationalMatrix.zeros(m, m)
        bold = RationalMatrix.block([[I, b], [O, I]])
        bold_inv = validate(RationalMatrix.block([[I, -b], [O, I]]), Gam, Gam)
        # xi_Q(g) * conj(chi_beta(g)(g)) = xi_{-M_Q, v_Q + C_Q}(g)
        Madd = RationalMatrix.block_diag(O, -Qg.M)
        vadd = [Fraction(0)] * m + [a + c for a, c in zip(Qg.v, Qg.C)]
        Q = _add_quadratic(S.Q, Madd, vadd)
        G_new = G
    else:
        G_new = fourier_group(G, gate.registers)
        bold, Sinv, MF = _fourier_mats(G, gate.registers)
        Q = _add_quadratic(S.Q, MF, [0] * (2 * m))
        bold_inv = validate(Sinv, gamma_group(G_new), Gam)
        Gam = gamma_group(G_new)
    Lam = reduce_rep(validate(bold @ S.Lambda.A, S.Lambda.domain, Gam))
    Q = compose_with_hom(Q, bold_inv, checks=COMPOSE_CHECKS)
    return StabilizerDesc(G_new, Lam, Q)


def run_circuit(circuit):
    group_chain(circuit)
    S = initial_state(circuit.group0, circuit.input)
    for gate in circuit.gates:
        S = apply_gate(S, gate)
    return S


def stabilizer_element(S, u):
    """The stabilizer element labelled by Lambda(u), u in the domain of Lambda."""
    lab = apply(S.Lambda, u)
    m = len(S.group_now)
    G = S.group_now
    mu = GroupElement(dual_group(G), lab.coords[:m])
    g = GroupElement(G, lab.coords[m:])
    return PauliOp(G, evaluate(S.Q, lab), mu, g)


def conjugate_pauli(gate, p):
    """U p U^dagger for a single Pauli operator."""
    G = p.group
    _check_gate(gate, G)
    if isinstance(gate, Automorphism):
        f = gate.rep
        dinv = dual(invert_automorphism(f))
        return PauliOp(G, p.phase, apply(dinv, p.mu), apply(f, p.g))
    if isinstance(gate, QuadraticPhase):
        Qg = gate.Q
        bg = canonicalize(_beta(Qg).matvec(p.g.coords), dual_group(G))
        ph = p.phase * evaluate(Qg, p.g) * character(bg, p.g).conj()
        return PauliOp(G, ph, p.mu + bg, p.g)
    mu, g, ph = list(p.mu.coords), list(p.g.coords), p.phase
    Gn = G
    for i in gate.registers:
        ph = ph * Phase.turns(bullet_diag(Gn)[i] * mu[i] * g[i])
        mu[i], g[i] = g[i], -mu[i]
        Gn = fourier_group(Gn, (i,))
    return PauliOp(Gn, ph, canonicalize(mu, dual_group(Gn)), canonicalize(g, Gn))
