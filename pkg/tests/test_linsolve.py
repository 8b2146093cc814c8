import itertools
import random
from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

from abelsim.exactalg import RationalMatrix
from abelsim.generators import random_finite_group, random_group, random_hom
from abelsim.groups import GroupSpec, R, Z, ZN, canonicalize, random_element
from abelsim.homs import apply, identity, validate
from abelsim.linsolve import GeneralSolution, Infeasible, MixedSystem, kernel, solve_group_system, solve_mixed

seeds = st.integers(0, 2**32 - 1)
Z4 = GroupSpec([ZN(4)])


def span(E):
    """Subgroup generated by the columns of E (finite codomain), by closure."""
    G = E.codomain
    gens = [canonicalize(E.A.col(j), G) for j in range(len(E.domain))]
    seen = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def all_elements(G):
    return [G.element(list(c)) for c in itertools.product(*[range(f.n) for f in G])]


def test_mixed_one_equation():
    sol = solve_mixed(MixedSystem(RationalMatrix([[2]]), RationalMatrix([[1]]), (F(3, 2),)))
    assert sol.x0.coords == (0, F(3, 2))
    assert sol.E.A == RationalMatrix([[1], [-2]])
    assert sol.E.domain == GroupSpec([Z])


def test_mixed_parity_infeasible():
    sol = solve_mixed(MixedSystem(RationalMatrix([[2]]), RationalMatrix.zeros(1, 0), (F(1),)))
    assert isinstance(sol, Infeasible) and not sol


def test_mixed_empty_constraint():
    sol = solve_mixed(MixedSystem(RationalMatrix.zeros(0, 1), RationalMatrix.zeros(0, 1), ()))
    assert sol.x0.coords == (0, 0)
    assert sol.E.domain == GroupSpec([R, Z])
    assert sol.E.A == RationalMatrix([[0, 1], [1, 0]])


def test_group_system_z4():
    f = validate([[2]], Z4, Z4)
    sol = solve_group_system(f, Z4.element([2]))
    assert sol.x0.coords[0] in (1, 3)
    assert sol.E.domain == GroupSpec([Z]) and sol.E.A == RationalMatrix([[2]])
    assert isinstance(solve_group_system(f, Z4.element([1])), Infeasible)


def test_group_system_identity(rng):
    G = GroupSpec([Z, ZN(6)])
    b = random_element(G, rng)
    sol = solve_group_system(identity(G), b)
    assert sol.x0 == b and len(sol.E.domain) == 0


def test_kernel_examples():
    assert span(kernel(identity(Z4))) == {Z4.zero()}
    zero = validate([[0]], Z4, Z4)
    assert span(kernel(zero)) == set(all_elements(Z4))
    Zg = GroupSpec([Z])
    f = validate([[2]], Zg, Z4)
    E = kernel(f)
    assert E.domain == Zg and E.A == RationalMatrix([[2]])
    image = {apply(E, Zg.element([w])).coords[0] for w in range(-4, 5)}
    for x in range(8):
        assert (apply(f, Zg.element([x])) == Z4.zero()) == (x in image)


def test_kernel_domain_reals_first():
    G = GroupSpec([R, Z, R])
    H = GroupSpec([ZN(3)])
    E = kernel(validate([[0, 1, 0]], G, H))
    kinds = [f.kind for f in E.domain]
    assert kinds == sorted(kinds, key=lambda k: k != "R")


def check_sound(f, b, sol, rng):
    assert isinstance(sol, GeneralSolution)
    assert apply(f, sol.x0) == b
    for _ in range(20):
        w = random_element(sol.E.domain, rng)
        assert apply(f, apply(sol.E, w)) == f.codomain.zero()


@given(seeds)
def test_image_always_feasible(seed):
    rng = random.Random(seed)
    G, H = random_group(rng), random_group(rng)
    f = random_hom(G, H, rng)
    b = apply(f, random_element(G, rng))
    check_sound(f, b, solve_group_system(f, b), rng)


@given(seeds)
def test_finite_completeness(seed):
    rng = random.Random(seed)
    G, H = random_finite_group(rng, 64, 3), random_finite_group(rng, 64, 3)
    f = random_hom(G, H, rng)
    brute_kernel = {g for g in all_elements(G) if apply(f, g) == H.zero()}
    assert span(kernel(f)) == brute_kernel
    b = random_element(H, rng)
    sol = solve_group_system(f, b)
    preimage = [g for g in all_elements(G) if apply(f, g) == b]
    if isinstance(sol, Infeasible):
        assert preimage == []
    else:
        check_sound(f, b, sol, rng)
        assert {sol.x0 + k for k in brute_kernel} == set(preimage)
