"""Bell and GHZ states as normalizer circuits over Z_2^n.

H is a Fourier transform on one register, CNOT the automorphism
(x, y) -> (x, x + y).  Prints the stabilizer generators and the support.
"""

from abelsim.groups import GroupSpec, ZN
from abelsim.homs import validate
from abelsim.sampler import build_net, enumerate_net
from abelsim.stabilizer import Automorphism, Circuit, Fourier, run_circuit, stabilizer_element
from abelsim.support import support


def cnot(n, c, t):
    G = GroupSpec([ZN(2)] * n)
    A = [[int(r == s or (r == t and s == c)) for s in range(n)] for r in range(n)]
    return Automorphism(validate(A, G, G))


def show(name, n, gates):
    G = GroupSpec([ZN(2)] * n)
    S = run_circuit(Circuit(G, G.zero(), gates))
    print(f"{name}:")
    for j in range(len(S.Lambda.domain)):
        p = stabilizer_element(S, S.Lambda.domain.generator(j))
        if p.mu.coords == (0,) * n and p.g.coords == (0,) * n:
            continue
        print(f"  stabilizer Z{p.mu.to_json()} X{p.g.to_json()}  phase {p.phase}")
    sd = support(S)
    pts = enumerate_net(build_net(sd.E_H, "1/4", offset=sd.x0))
    print("  support", sorted(tuple(int(x) for x in p.coords) for p in pts))


if __name__ == "__main__":
    show("Bell", 2, [Fourier((0,)), cnot(2, 0, 1)])
    show("GHZ", 3, [Fourier((0,)), cnot(3, 0, 1), cnot(3, 1, 2)])
