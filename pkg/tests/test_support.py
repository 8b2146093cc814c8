import random
from fractions import Fraction as F

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from abelsim.exactalg import RationalMatrix
from abelsim.generators import random_circuit, random_finite_group, random_group
from abelsim.groups import GroupSpec, T, Z, ZN, character, dual_group, random_element
from abelsim.homs import apply, is_zero_hom, validate
from abelsim.linsolve import Infeasible, solve_group_system
from abelsim.oracle import SUPPORT_TOL, dense_run, dense_support
from abelsim.quadratic import QuadraticFunc, evaluate
from abelsim.sampler import build_net, enumerate_net
from abelsim.stabilizer import Circuit, Fourier, StabilizerDesc, apply_gate, initial_state, run_circuit
from abelsim.support import covering_map, diagonal_labels, support

seeds = st.integers(0, 2**32 - 1)


def images(E, rng, n):
    return [apply(E, random_element(E.domain, rng)) for _ in range(n)]


def test_basis_state():
    G = GroupSpec([Z, T, ZN(5)])
    g = G.element([4, F(2, 7), 3])
    S = initial_state(G, g)
    sd = support(S)
    assert sd.x0 == g
    assert len(sd.E_H.domain) == 0 and sd.domain_shape == (0, 0)
    ED = diagonal_labels(S)
    # every label of G* is diagonal: solve ED(w) = mu for random mu
    rng = random.Random(5)
    for _ in range(10):
        mu = random_element(dual_group(G), rng)
        assert not isinstance(solve_group_system(ED, mu), Infeasible)


def test_qft_over_z():
    G = GroupSpec([Z])
    sd = support(run_circuit(Circuit(G, G.zero(), (Fourier((0,)),))))
    assert sd.x0 == GroupSpec([T]).zero()
    assert sd.domain_shape == (1, 0)
    assert abs(sd.E_H.A[0, 0]) == 1


def test_plus_state():
    S = run_circuit(Circuit(GroupSpec([ZN(2)]), GroupSpec([ZN(2)]).zero(), (Fourier((0,)),)))
    sd = support(S)
    assert sd.x0.coords == (0,)
    assert {p.coords for p in enumerate_net(build_net(sd.E_H, F(1, 4), offset=sd.x0))} == {(0,), (1,)}
    ED = diagonal_labels(S)
    assert is_zero_hom(ED.A, ED.domain, ED.codomain)


def test_uniform_torus_state_has_no_diagonal_labels():
    G = GroupSpec([Z])
    S = run_circuit(Circuit(G, G.zero(), (Fourier((0,)),)))
    ED = diagonal_labels(S)
    assert is_zero_hom(ED.A, ED.domain, ED.codomain)


def test_comb_state_over_t():
    # sum_x |3x> over Z has stabilizers Z(1/3) and X(3); after the QFT the
    # support is {0, 1/3, 2/3} in T
    G = GroupSpec([Z])
    Gam = GroupSpec([T, Z])
    Lam = validate([[F(1, 3), 0], [0, 3]], GroupSpec([Z, Z]), Gam)
    S = StabilizerDesc(G, Lam, QuadraticFunc(Gam, RationalMatrix.zeros(2, 2), (F(0), F(0))))
    sd = support(apply_gate(S, Fourier((0,))))
    pts = enumerate_net(build_net(sd.E_H, F(1, 8), offset=sd.x0))
    assert {p.coords for p in pts} == {(0,), (F(1, 3),), (F(2, 3),)}


def test_covering_map_order():
    q = covering_map(GroupSpec([Z, T, ZN(3), T]))
    assert [f.kind for f in q.domain] == ["R", "R", "Z", "Z"]


@given(seeds)
def test_membership_and_orthogonality(seed):
    rng = random.Random(seed)
    G = random_group(rng, max_m=3)
    S = run_circuit(random_circuit(G, rng, rng.randint(0, 6)))
    sd = support(S)
    ED = diagonal_labels(S)
    Gn = S.group_now
    zero = Gn.zero()
    for mu in images(ED, rng, 10):
        gamma = evaluate(S.Q, S.Q.group.element(list(mu.coords) + list(zero.coords)))
        for x in images(sd.E_H, rng, 5):
            assert character(mu, x).is_one()
            assert (character(mu, sd.x0 + x) * gamma).is_one()


@given(seeds)
def test_finite_support_and_flatness(seed):
    rng = random.Random(seed)
    G = random_finite_group(rng, 128, 3)
    c = random_circuit(G, rng, rng.randint(0, 8))
    sd = support(run_circuit(c))
    pts = enumerate_net(build_net(sd.E_H, F(1, 64), offset=sd.x0))
    state = dense_run(c)
    assert set(pts) == dense_support(state)
    amp = np.abs(state.amplitudes)
    on = amp[amp > SUPPORT_TOL * amp.max()]
    assert np.allclose(on, on[0], atol=1e-9)
