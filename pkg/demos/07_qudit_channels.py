"""Qudit teleportation with Weyl-Heisenberg operators.

P and Q (permutation and phase matrices, QP = omega PQ) replace U1 and
U2; the d^2 generalized Bell states |j:k} are perfect channels, each
measurement outcome is one of d^2 equally likely pairs (p, q), and two
mod-d symbols determine Bob's correction R-monomial.  L-qudit channel
space splits into d^2 classes of dimension d^(L-2).
"""

import numpy as np

from bellport import qudit_bell, qudit_decompose, qudit_teleport, tensor
from bellport.states import PureState

d = 3
rng = np.random.default_rng(15)
amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
client = PureState(amps / np.linalg.norm(amps), local_dim=d)
print(f"qutrit client: {np.round(client.amplitudes, 4)}\n")

for label in [(0, 0), (1, 2), (2, 1)]:
    fids, probs = [], []
    for p in range(d):
        for q in range(d):
            res = qudit_teleport(client, label, forced=(p, q))
            fids.append(res.fidelity)
            probs.append(res.record.joint_probability)
    print(f"channel |{label[0]}:{label[1]}}}: all {d * d} branches"
          f" fidelity >= {min(fids):.12f}, probabilities ~ {probs[0]:.4f}")

print("\nclass decomposition of a product of generalized Bells:")
state = tensor(qudit_bell(d, 1, 2), qudit_bell(d, 2, 2))
weights = qudit_decompose(state)
occupied = {k: round(w, 6) for k, w in weights.items() if w > 1e-9}
print(f"  occupied classes (label sums mod {d}): {occupied}")

print("\nclass weights of a random 2-qutrit-pair state (should spread):")
rng_state = rng.standard_normal(d**4) + 1j * rng.standard_normal(d**4)
random4 = PureState(rng_state / np.linalg.norm(rng_state), local_dim=d)
spread = qudit_decompose(random4)
print("  sum of squared weights:", round(sum(w**2 for w in spread.values()), 12))
print("  largest:", round(max(spread.values()) ** 2, 4))
