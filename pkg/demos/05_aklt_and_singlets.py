"""Physical ground states as perfect channels: singlets and AKLT.

Every U(2) singlet is a perfect channel, so the antiferromagnetic
Heisenberg ring and Majumdar-Ghosh ground states teleport at fidelity 1.
The AKLT ground state (built from virtual singlet pairs projected onto
local triplets) is a perfect channel too; its string-order parameter
equals -1 and coincides with the Upsilon^2 expectation up to a sign.
"""

import numpy as np

from bellport import (
    aklt_state,
    decompose_classes,
    heisenberg_ring_ground,
    majumdar_ghosh_dimers,
    order_parameter,
    random_state,
    singlet_random,
    string_order,
    teleport,
    upsilon_expectations,
)

client = random_state(1, 2, 11)

print("singlet-family channels (class [(-1)^(L/2) : (-1)^(L/2)]):")
for name, state in [
    ("Majumdar-Ghosh dimers, L=4", majumdar_ghosh_dimers(2)),
    ("random singlet, L=4", singlet_random(2, seed=8)),
    ("random singlet, L=6", singlet_random(3, seed=9)),
    ("Heisenberg ring ground, L=4", heisenberg_ring_ground(4)),
    ("Heisenberg ring ground, L=6", heisenberg_ring_ground(6)),
]:
    dec = decompose_classes(state)
    cls = dec.pure_class(1e-8)
    rng = np.random.default_rng(12)
    fidelity = min(
        teleport(client, state, cls, rng=rng).fidelity for _ in range(16)
    )
    print(f"  {name:28s} class [{cls.j:+d}:{cls.k:+d}]"
          f"  efficiency={order_parameter(state).efficiency:.6f}"
          f"  min sampled fidelity={fidelity:.10f}")

print("\nAKLT ground state in the virtual-qubit picture:")
for L in (4, 6, 8):
    state = aklt_state(L)
    s = string_order(state)
    e2 = upsilon_expectations(state)[1]
    cls = decompose_classes(state).pure_class()
    print(f"  L={L}: string order={s:+.6f}  <Upsilon^2>={e2:+.6f}"
          f"  (relation: -(-1)^(L/2) * S = {-((-1)**(L//2)) * s:+.6f})"
          f"  class [{cls.j:+d}:{cls.k:+d}]")
