"""Random valid groups, gates and circuits for property and differential tests."""

from fractions import Fraction
from math import gcd

from .exactalg import RationalMatrix
from .groups import GroupSpec, T, Z, ZN, random_element
from .homs import InvalidMatrixRep, validate
from .quadratic import make_quadratic
from .stabilizer import Automorphism, Circuit, Fourier, QuadraticPhase, fourier_group

__all__ = [
    "random_finite_group",
    "random_group",
    "random_automorphism",
    "random_hom",
    "random_quadratic",
    "random_gate",
    "random_circuit",
    "random_rational",
]


def random_rational(rng, bound=3, den=6):
    q = rng.randint(1, den)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def random_finite_group(rng, max_order=64, max_m=4, orders=(2, 3, 4, 5, 6, 8)):
    """Random product of cyclic groups of order at most ``max_order``."""
    factors, size = [], 1
    m = rng.randint(1, max_m)
    for _ in range(m):
        choices = [n for n in orders if size * n <= max_order]
        if not choices:
            break
        n = rng.choice(choices)
        factors.append(ZN(n))
        size *= n
    return GroupSpec(factors)


def random_group(rng, max_m=4, orders=(2, 3, 4, 6)):
    """Random circuit group mixing Z, T and Z_N."""
    m = rng.randint(1, max_m)
    out = []
    for _ in range(m):
        k = rng.random()
        out.append(Z if k < 0.3 else T if k < 0.55 else ZN(rng.choice(orders)))
    return GroupSpec(out)


def _shear_value(rng, hi, gj):
    """Candidate entry for the (codomain hi, domain gj) position."""
    if hi.kind == "ZN" and gj.kind == "ZN":
        return rng.randint(-2, 2) * (hi.n // gcd(hi.n, gj.n))
    if hi.kind == "T" and gj.kind == "ZN":
        return Fraction(rng.randint(-gj.n, gj.n), gj.n)
    if hi.kind == "T" and gj.kind == "Z":
        return random_rational(rng)
    if hi.kind in ("Z", "ZN", "T") and gj.kind in ("Z", "T"):
        return rng.randint(-2, 2)
    return 0


def random_automorphism(G, rng, steps=None):
    """Product of random units, signed swaps and shears; always invertible."""
    m = len(G)
    A = RationalMatrix.identity(m)
    steps = steps if steps is not None else rng.randint(1, 2 * m + 1)
    for _ in range(steps):
        E = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        kind = rng.random()
        i = rng.randrange(m)
        if kind < 0.3:
            f = G[i]
            if f.kind == "ZN":
                units = [u for u in range(1, f.n) if gcd(u, f.n) == 1] or [0]
                E[i][i] = Fraction(rng.choice(units))
            else:
                E[i][i] = Fraction(rng.choice((1, -1)))
        elif kind < 0.45:
            j = rng.randrange(m)
            if G[i] != G[j]:
                continue
            E[i][i] = E[j][j] = Fraction(0)
            E[i][j] = E[j][i] = Fraction(1)
        else:
            j = rng.randrange(m)
            if i == j:
                continue
            E[i][j] = Fraction(_shear_value(rng, G[i], G[j]))
        Em = RationalMatrix(E, m)
        try:
            validate(Em, G, G)
        except InvalidMatrixRep:
            continue
        A = Em @ A
    return validate(A, G, G)


def random_hom(G, H, rng, density=0.6):
    """Random valid homomorphism G -> H, built entry by entry from the block rules."""
    rows = []
    for h in H:
        row = []
        for g in G:
            x = Fraction(0)
            if rng.random() < density:
                if g.kind == "Z":
                    x = Fraction(rng.randint(-3, 3)) if h.is_discrete else random_rational(rng)
                elif g.kind == "T" and h.kind == "T":
                    x = Fraction(rng.randint(-3, 3))
                elif g.kind == "ZN" and h.kind == "T":
                    x = Fraction(rng.randrange(g.n), g.n)
                elif g.kind == "ZN" and h.kind == "ZN":
                    x = Fraction(rng.randint(0, 3) * (h.n // gcd(h.n, g.n)))
                elif g.kind == "R" and h.kind in ("T", "R"):
                    x = random_rational(rng)
            row.append(x)
        rows.append(row)
    return validate(RationalMatrix(rows, len(G)), G, H)


def _m_entry(rng, a, b):
    ka, kb = a.kind, b.kind
    if "T" in (ka, kb):
        if ka == "T" and kb == "T":
            return Fraction(0)
        other = b if ka == "T" else a
        return Fraction(rng.randint(-2, 2)) if other.kind == "Z" else Fraction(0)
    if ka == "ZN" and kb == "ZN":
        return Fraction(rng.randint(0, 2 * gcd(a.n, b.n)), gcd(a.n, b.n))
    if ka == "ZN" or kb == "ZN":
        n = a.n if ka == "ZN" else b.n
        return Fraction(rng.randint(0, 2 * n), n)
    return random_rational(rng)


def _v_entry(rng, f):
    if f.kind == "Z":
        q = rng.randint(1, 6)
        return Fraction(rng.randrange(q), q)
    if f.kind == "T":
        return Fraction(rng.randint(-3, 3))
    return Fraction(rng.randrange(f.n), f.n)


def random_quadratic(G, rng):
    m = len(G)
    M = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            if i == j and G[i].kind == "ZN":
                x = Fraction(rng.randint(0, 2 * G[i].n), G[i].n)
            else:
                x = _m_entry(rng, G[i], G[j])
            if rng.random() < 0.3:
                x = Fraction(0)
            M[i][j] = M[j][i] = x
    return make_quadratic(RationalMatrix(M, m), [_v_entry(rng, f) for f in G], G)


def random_gate(G, rng, kinds=("automorphism", "quadratic", "fourier"), steps=None):
    """Random gate; ``steps`` bounds the elementary moves in an automorphism."""
    kind = rng.choice(kinds)
    if kind == "automorphism":
        return Automorphism(random_automorphism(G, rng, steps))
    if kind == "quadratic":
        return QuadraticPhase(random_quadratic(G, rng))
    regs = [i for i in range(len(G)) if rng.random() < 0.5] or [rng.randrange(len(G))]
    return Fourier(tuple(regs))


def random_circuit(G, rng, n_gates, kinds=("automorphism", "quadratic", "fourier"), steps=None):
    x = random_element(G, rng)
    gates = []
    Gt = G
    for _ in range(n_gates):
        gate = random_gate(Gt, rng, kinds, steps)
        gates.append(gate)
        if isinstance(gate, Fourier):
            Gt = fourier_group(Gt, gate.registers)
    return Circuit(G, x, tuple(gates))
