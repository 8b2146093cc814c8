"""Random circuits over finite groups, checked against dense simulation."""

import random
from fractions import Fraction as F

from abelsim.generators import random_circuit, random_finite_group
from abelsim.oracle import dense_run, dense_support
from abelsim.sampler import build_net, enumerate_net
from abelsim.stabilizer import run_circuit
from abelsim.support import support

rng = random.Random(11)
for k in range(10):
    G = random_finite_group(rng, max_order=128)
    circuit = random_circuit(G, rng, rng.randint(1, 10))
    sd = support(run_circuit(circuit))
    ours = set(enumerate_net(build_net(sd.E_H, F(1, 4), offset=sd.x0)))
    dense = dense_support(dense_run(circuit))
    verdict = "agree" if ours == dense else "DISAGREE"
    print(f"{k}: {str(G):28} {len(circuit.gates):2} gates  |support| = {len(ours):3}  {verdict}")
