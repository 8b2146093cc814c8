import random
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelsim.generators import random_hom
from abelsim.groups import GroupSpec, R, T, Z, ZN, canonicalize, norm_sq
from abelsim.homs import validate
from abelsim.linsolve import Infeasible, solve_group_system
from abelsim.sampler import NetTooLarge, build_net, enumerate_net, sample, sqrt_upper_eighths

seeds = st.integers(0, 2**32 - 1)
TG = GroupSpec([T])


def torus_net(eps=F(1, 8)):
    return build_net(validate([[1]], GroupSpec([R]), TG), eps)


def covers(points, target, eps):
    return min(norm_sq(target - p) for p in points) <= eps * eps


def test_sqrt_upper_eighths():
    assert sqrt_upper_eighths(1) == 1
    assert sqrt_upper_eighths(2) == F(12, 8)
    assert sqrt_upper_eighths(4) == 2
    for a in range(1, 50):
        r = sqrt_upper_eighths(a)
        assert r * r >= a > (r - F(1, 8)) ** 2


def test_torus_net():
    net = torus_net()
    assert net.eps1 == F(1, 4)
    pts = enumerate_net(net)
    assert sorted(p.coords[0] for p in pts) == [0, F(1, 4), F(1, 2), F(3, 4)]
    for k in range(80):
        assert covers(pts, TG.element([F(k, 80)]), F(1, 8))


def test_integer_net():
    net = build_net(validate([[1]], GroupSpec([Z]), GroupSpec([Z])), F(1, 8), deltas=[10])
    assert net.free_rank == 1 and net.free_basis[0].coords == (1,)
    assert sorted(p.coords[0] for p in enumerate_net(net)) == list(range(-10, 11))


def test_zero_net():
    net = build_net(validate([[0]], GroupSpec([Z]), TG), F(1, 8))
    assert enumerate_net(net) == [TG.zero()]
    empty = build_net(validate([[]] * 1, GroupSpec([]), TG), F(1, 8))
    assert enumerate_net(empty) == [TG.zero()]


def test_finite_net():
    Z2 = GroupSpec([ZN(2)])
    net = build_net(validate([[1]], GroupSpec([Z]), Z2), F(1, 8))
    assert {p.coords for p in enumerate_net(net)} == {(0,), (1,)}


def test_sample_frequencies():
    draws = sample(torus_net(), seed=11, count=4000)
    counts = Counter(p.coords for p in draws)
    assert len(counts) == 4
    assert all(850 <= c <= 1150 for c in counts.values())


def test_sample_edge_cases():
    net = torus_net()
    assert sample(net, 3, 0) == []
    assert sample(net, 3, 50) == sample(net, 3, 50)
    with pytest.raises(ValueError):
        sample(net, 3, -1)
    with pytest.raises(ValueError):
        build_net(validate([[1]], GroupSpec([R]), TG), F(3, 4))


def test_enumerate_cap():
    net = build_net(validate([[1]], GroupSpec([Z]), GroupSpec([Z])), F(1, 8), deltas=[100])
    with pytest.raises(NetTooLarge):
        enumerate_net(net, cap=50)


def test_line_in_torus_is_covered():
    # H = {(t, 3t mod 1)} in T^2
    eps = F(1, 8)
    G = GroupSpec([T, T])
    net = build_net(validate([[1], [3]], GroupSpec([R]), G), eps)
    pts = enumerate_net(net)
    steps = int(1 / (eps / 10))
    for k in range(steps):
        t = F(k, steps)
        assert covers(pts, G.element([t, 3 * t]), eps)


@given(seeds)
def test_collision_free_and_members(seed):
    rng = random.Random(seed)
    G = GroupSpec(rng.choice([Z, T, ZN(4), ZN(6)]) for _ in range(rng.randint(1, 3)))
    dom = GroupSpec([R] * rng.randint(0, 2) + [Z] * rng.randint(0, 2))
    E = random_hom(dom, G, rng)
    offset = canonicalize([F(rng.randint(0, 5)) for _ in G], G)
    net = build_net(E, F(1, 4), deltas=[2], offset=offset)
    if net.point_count > 20000:
        return
    pts = enumerate_net(net)
    assert len(pts) == len(set(pts)) == net.point_count
    # every point is offset + E(w) for some w
    for p in pts[:: max(1, len(pts) // 25)]:
        assert not isinstance(solve_group_system(E, p - offset), Infeasible)


@given(seeds)
def test_delta_monotone(seed):
    rng = random.Random(seed)
    E = random_hom(GroupSpec([Z, Z]), GroupSpec([Z, ZN(3)]), rng)
    small = build_net(E, F(1, 4), deltas=[1])
    big = build_net(E, F(1, 4), deltas=[2])
    if small.free_rank:
        assert big.point_count > small.point_count
    else:
        assert big.point_count == small.point_count
