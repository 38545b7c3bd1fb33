"""How three and four modes share entanglement.

Run with ``python3 demos/tripartite_sharing.py``.
"""

import numpy as np

from gaussent import sampling
from gaussent import tripartite as tp
from gaussent.separability import log_negativity

print("GHZ/W states: pairwise and genuinely tripartite entanglement both grow.")
for a in (1.5, 2.0, 5.0, 1e3):
    print(f"  a={a:<7g} pairwise={tp.ghzw_pairwise_contangle(a):.5f}  residual={tp.ghzw_residual(a):.5f}")
print(f"  pairwise limit ln^2(3)/4 = {np.log(3) ** 2 / 4:.5f}")

print("\nMonogamy of the Gaussian tangle on random mixed three-mode states:")
rng = np.random.default_rng(0)
for _ in range(3):
    rep = tp.monogamy_check(sampling.random_state(3, rng, nu_max=2.0))
    print("  " + "  ".join(f"probe {r.probe}: {r.lhs:.4f} >= {r.rhs:.4f}" for r in rep.rows))

print("\nFour modes: the (1,2) pair grows with a, the (12)|(34) blocks grow with s.")
for s, a in ((0.5, 0.5), (0.5, 2.0), (2.0, 0.5), (2.0, 2.0)):
    cm = tp.four_mode_promiscuous(s, a).cm
    print(f"  s={s} a={a}  E_N(1|2)={log_negativity(cm, ([0], [1])):.3f}  E_N(12|34)={log_negativity(cm, ([0, 1], [2, 3])):.3f}")
