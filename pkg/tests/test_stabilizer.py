import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelsim.exactalg import RationalMatrix
from abelsim.generators import random_circuit, random_finite_group, random_gate, random_group, random_rational
from abelsim.groups import GroupMismatch, GroupSpec, Phase, T, Z, ZN, character, dual_group, random_element
from abelsim.homs import same_hom, validate
from abelsim.oracle import TOL, dense_conjugate, dense_pauli, dense_run
from abelsim.quadratic import evaluate, make_quadratic
from abelsim.stabilizer import (
    Automorphism,
    Circuit,
    Fourier,
    PauliOp,
    QuadraticPhase,
    apply_gate,
    conjugate_pauli,
    group_chain,
    initial_state,
    pauli_identity,
    pauli_multiply,
    run_circuit,
    stabilizer_element,
)

seeds = st.integers(0, 2**32 - 1)
Z2 = GroupSpec([ZN(2)])


def pauli(G, mu=None, g=None, phase=Phase.one()):
    mu = dual_group(G).zero() if mu is None else dual_group(G).element(mu)
    g = G.zero() if g is None else G.element(g)
    return PauliOp(G, phase, mu, g)


def test_pauli_commutation_phase():
    G = GroupSpec([ZN(4)])
    Zp, Xp = pauli(G, mu=[1]), pauli(G, g=[1])
    zx, xz = pauli_multiply(Zp, Xp), pauli_multiply(Xp, Zp)
    assert (zx.mu, zx.g) == (xz.mu, xz.g)
    assert zx.phase / xz.phase == Phase(F(1, 2))
    assert np.allclose(dense_pauli(zx), dense_pauli(Zp) @ dense_pauli(Xp))
    assert np.allclose(dense_pauli(xz), dense_pauli(Xp) @ dense_pauli(Zp))


def test_pauli_identity_and_inverse(rng):
    G = GroupSpec([Z, T, ZN(6)])
    p = PauliOp(G, Phase(random_rational(rng)), random_element(dual_group(G), rng), random_element(G, rng))
    assert pauli_multiply(pauli_identity(G), p) == p
    inv = PauliOp(G, p.phase.conj() * character(p.mu, p.g).conj(), -p.mu, -p.g)
    assert pauli_multiply(p, inv) == pauli_identity(G)


def test_initial_state_z2():
    S = initial_state(Z2, Z2.zero())
    assert S.Lambda.A == RationalMatrix([[1, 0], [0, 0]])
    assert S.M == RationalMatrix.zeros(2, 2) and S.v == (0, 0)
    S1 = initial_state(Z2, Z2.element([1]))
    assert S1.v == (F(1, 2), 0)
    Gam = S1.Q.group
    assert evaluate(S1.Q, Gam.element([0, 0])) == Phase.one()
    assert evaluate(S1.Q, Gam.element([1, 0])) == Phase(1)


def test_initial_state_zero_input():
    G = GroupSpec([Z, T, ZN(3)])
    assert all(x == 0 for x in initial_state(G, G.zero()).v)


def test_fourier_on_z2():
    S = apply_gate(initial_state(Z2, Z2.zero()), Fourier((0,)))
    expected = validate([[0, 0], [-1, 0]], S.Lambda.domain, S.Lambda.codomain)
    assert same_hom(S.Lambda, expected)
    # the stabilizer of |+> is {I, X}
    psi = dense_run(Circuit(Z2, Z2.zero(), (Fourier((0,)),))).amplitudes
    for u in ([0, 0], [1, 0], [0, 1], [1, 1]):
        p = stabilizer_element(S, S.Lambda.domain.element(u))
        assert np.allclose(dense_pauli(p) @ psi, psi)


def test_identity_automorphism_is_noop(rng):
    G = GroupSpec([Z, T, ZN(4)])
    S = initial_state(G, random_element(G, rng))
    S2 = apply_gate(S, Automorphism(validate(RationalMatrix.identity(3), G, G)))
    assert S2 == S


def test_phase_gate_on_plus():
    S = apply_gate(initial_state(Z2, Z2.zero()), Fourier((0,)))
    gate = QuadraticPhase(make_quadratic([[F(1, 2)]], [F(1, 2)], Z2))
    S2 = apply_gate(S, gate)
    U = np.diag([1, 1j])
    for u in ([1, 0], [0, 1]):
        w = S.Lambda.domain.element(u)
        before = dense_pauli(stabilizer_element(S, w))
        after = dense_pauli(stabilizer_element(S2, w))
        assert np.allclose(U @ before @ U.conj().T, after, atol=TOL)


def test_empty_circuit():
    G = GroupSpec([Z, ZN(3)])
    g = G.element([2, 1])
    assert run_circuit(Circuit(G, g, ())) == initial_state(G, g)


def test_bell_pair():
    G = GroupSpec([ZN(2), ZN(2)])
    cnot = Automorphism(validate([[1, 0], [1, 1]], G, G))
    c = Circuit(G, G.zero(), (Fourier((0,)), cnot))
    S = run_circuit(c)
    psi = dense_run(c).amplitudes
    labels = set()
    for u in range(16):
        w = S.Lambda.domain.element([(u >> k) & 1 for k in range(4)])
        p = stabilizer_element(S, w)
        assert np.allclose(dense_pauli(p) @ psi, psi, atol=TOL)
        labels.add((p.mu.coords, p.g.coords))
    assert labels == {((0, 0), (0, 0)), ((1, 1), (0, 0)), ((0, 0), (1, 1)), ((1, 1), (1, 1))}


def test_gate_group_mismatch():
    G = GroupSpec([ZN(3)])
    gate = Automorphism(validate([[1]], Z2, Z2))
    with pytest.raises(GroupMismatch):
        apply_gate(initial_state(G, G.zero()), gate)
    with pytest.raises(GroupMismatch):
        group_chain(Circuit(G, G.zero(), (gate,)))


def test_group_chain_flips():
    G = GroupSpec([Z, ZN(4), T])
    c = Circuit(G, G.zero(), (Fourier((0, 2)), Fourier((0,))))
    assert group_chain(c) == [G, GroupSpec([T, ZN(4), Z]), GroupSpec([Z, ZN(4), Z])]


@pytest.mark.parametrize("f", [Z, T])
def test_fourier_twice_negates(f):
    G = GroupSpec([f, ZN(3)])
    S0 = initial_state(G, G.zero())
    # put some structure into Lambda first
    S0 = apply_gate(S0, Fourier((1,)))
    twice = apply_gate(apply_gate(S0, Fourier((0,))), Fourier((0,)))
    neg = apply_gate(S0, Automorphism(validate([[-1, 0], [0, 1]], G, G)))
    assert same_hom(twice.Lambda, neg.Lambda)


def _check_update(S, gate, rng, n=5):
    S2 = apply_gate(S, gate)
    for _ in range(n):
        w = random_element(S.Lambda.domain, rng)
        before = stabilizer_element(S, w)
        expect = dense_conjugate(gate, before)
        assert np.allclose(expect, dense_pauli(stabilizer_element(S2, w)), atol=TOL)
        # the symbolic single-Pauli rule agrees too
        assert np.allclose(expect, dense_pauli(conjugate_pauli(gate, before)), atol=TOL)
    return S2


@given(seeds, st.sampled_from(["automorphism", "quadratic", "fourier"]))
def test_gate_update_matches_dense(seed, kind):
    rng = random.Random(seed)
    G = random_finite_group(rng, 64, 3)
    S = run_circuit(random_circuit(G, rng, rng.randint(0, 4)))
    _check_update(S, random_gate(S.group_now, rng, (kind,)), rng)


@given(seeds)
def test_stabilizer_elements_commute(seed):
    rng = random.Random(seed)
    G = random_group(rng, max_m=3)
    c = random_circuit(G, rng, rng.randint(0, 6))
    S = initial_state(G, c.input)
    for gate in (None,) + c.gates:
        if gate is not None:
            S = apply_gate(S, gate)
        for _ in range(5):
            a = stabilizer_element(S, random_element(S.Lambda.domain, rng))
            b = stabilizer_element(S, random_element(S.Lambda.domain, rng))
            assert character(a.mu, b.g) == character(b.mu, a.g)
