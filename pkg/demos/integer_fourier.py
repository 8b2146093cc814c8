"""Fourier transforms over Z and T.

The QFT of |0> over Z is spread over the whole circle, so the sampler needs
an epsilon-net; the comb sum_x |3x> lands on the three points {0, 1/3, 2/3}.
"""

from fractions import Fraction as F

from abelsim.exactalg import RationalMatrix
from abelsim.groups import GroupSpec, T, Z
from abelsim.homs import validate
from abelsim.quadratic import QuadraticFunc
from abelsim.sampler import build_net, enumerate_net, sample
from abelsim.stabilizer import Circuit, Fourier, StabilizerDesc, apply_gate, run_circuit
from abelsim.support import support

G = GroupSpec([Z])

S = run_circuit(Circuit(G, G.zero(), (Fourier((0,)),)))
sd = support(S)
print("QFT|0> over Z lives on", S.group_now, "with support", sd.to_json())
for eps in (F(1, 8), F(1, 32)):
    net = build_net(sd.E_H, eps, offset=sd.x0)
    pts = [str(p.coords[0]) for p in enumerate_net(net)]
    print(f"  eps = {eps}: {len(pts)} net points {pts[:8]}{' ...' if len(pts) > 8 else ''}")
print("  five samples:", [str(p.coords[0]) for p in sample(net, seed=0, count=5)])

# sum_x |3x> is stabilized by Z(1/3) and X(3)
Gam = GroupSpec([T, Z])
Lam = validate([[F(1, 3), 0], [0, 3]], GroupSpec([Z, Z]), Gam)
comb = StabilizerDesc(G, Lam, QuadraticFunc(Gam, RationalMatrix.zeros(2, 2), (F(0), F(0))))
sd = support(apply_gate(comb, Fourier((0,))))
pts = enumerate_net(build_net(sd.E_H, F(1, 8), offset=sd.x0))
print("comb r = 3 after the QFT:", sorted(str(p.coords[0]) for p in pts))
