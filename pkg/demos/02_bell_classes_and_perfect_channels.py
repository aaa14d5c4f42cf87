"""Bell classes: every state of a class subspace is a perfect channel.

A 2L-qubit channel decomposes into four subspaces labelled by the
eigenvalues of the string operators Upsilon^1 and Upsilon^2.  Any state
inside one subspace teleports with fidelity 1 -- regardless of how Alice
pairs the qubits or orders her measurements -- and the aggregate class
of her outcomes is uniform over the four possibilities.
"""

import numpy as np

from bellport import (
    BELL_CLASSES,
    BELL_LABELS,
    class_projector_apply,
    decompose_classes,
    labels_class,
    normalize,
    random_state,
    teleport,
)
from itertools import product

rng = np.random.default_rng(21)
client = random_state(1, 2, rng)

# A random state inside class [-:+], built by projecting a Haar draw.
channel = normalize(class_projector_apply(random_state(4, 2, rng), (-1, 1)))
print("class weights:", {
    f"[{c.j:+d}:{c.k:+d}]": round(w**2, 6)
    for c, w in decompose_classes(channel).coefficients.items()
})

pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)), ((1, 4), (2, 3))]
for pairing in pairings:
    fidelities = []
    for _ in range(32):
        res = teleport(client, channel, (-1, 1), pairing, rng=rng)
        fidelities.append(res.fidelity)
    print(f"pairing {pairing}: min fidelity over 32 sampled runs = {min(fidelities):.12f}")

# Aggregate measurement classes are uniformly likely for class channels.
counts = {c: 0 for c in BELL_CLASSES}
for _ in range(4000):
    res = teleport(client, channel, (-1, 1), rng=rng)
    counts[res.record.aggregate_class] += 1
print("aggregate-class frequencies (expect ~0.25 each):")
for c, n in counts.items():
    print(f"  [{c.j:+d}:{c.k:+d}]  {n / 4000:.3f}")

# Bell basis products index the classes by sign products of their labels.
print("\nbasis-product classes:")
for labels in product(BELL_LABELS[:2], repeat=2):
    print(f"  {[tuple(l) for l in labels]} -> class {tuple(labels_class(labels))}")
