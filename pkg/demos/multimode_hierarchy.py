"""Entanglement in fully symmetric multimode states.

Run with ``python3 demos/multimode_hierarchy.py``.
"""

import numpy as np

from gaussent.separability import log_negativity
from gaussent.symmetric import (
    asymptotic_1K_bound,
    fully_symmetric_pure,
    one_vs_block_log_negativity,
    unitary_localization,
)

n = 10
print(f"One mode against K others in a pure {n}-mode symmetric state:")
for b in (1.5, 10.0, 1e3):
    s = fully_symmetric_pure(n, b)
    row = " ".join(f"{one_vs_block_log_negativity(s, k):.3f}" for k in range(1, n))
    print(f"  b={b:<7g} {row}")
print("  infinite-b limit " + " ".join(f"{asymptotic_1K_bound(n - 1, k):.3f}" for k in range(1, n - 1)) + "   (diverges)")
print(f"  every finite limit stays below ln sqrt5 = {0.5 * np.log(5):.4f}")

print("\nLocalizing the 3|3 block entanglement of a 6-mode state onto one pair:")
s = fully_symmetric_pure(6, 2.0)
res = unitary_localization(s, [0, 1, 2])
print(f"  block E_N     = {log_negativity(s, [0, 1, 2]):.12f}")
print(f"  two-mode E_N  = {log_negativity(res.two_mode, [0]):.12f}")
print(f"  leakage       = {res.leakage:.1e}")
