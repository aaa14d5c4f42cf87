"""Teleport one qubit across a single Bell pair.

Alice holds an unknown qubit |v> plus the first half of a Bell pair
|j:k}; Bob holds the second half.  Alice's Bell measurement projects the
three-qubit system onto |p:q} (x) Xtilde^{jk}_{pq}|v>, every outcome
with probability exactly 1/4, and Bob undoes the residual gate from the
two classical sign bits (p, q).
"""

import numpy as np

from bellport import (
    BELL_LABELS,
    bell_state,
    correction_gate,
    random_state,
    teleport,
)

client = random_state(1, 2, seed=7)
print(f"client amplitudes: {np.round(client.amplitudes, 4)}\n")

for label in BELL_LABELS:
    channel = bell_state(label)
    print(f"channel |{label.j:+d}:{label.k:+d}}}")
    for outcome in BELL_LABELS:
        result = teleport(client, channel, label, forced=[outcome])
        gate = correction_gate(label, result.record.aggregate_class)
        print(
            f"  outcome ({outcome.j:+d}:{outcome.k:+d})"
            f"  p={result.record.joint_probability:.4f}"
            f"  correction=\n{np.real_if_close(gate).astype(int)}"
            f"  fidelity={result.fidelity:.12f}"
        )
    print()

print("Every branch teleports at fidelity 1 with two classical bits.")
