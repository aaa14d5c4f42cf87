"""Teleportation over three-qubit channels.

The eight generalized Bell states |j:k:l} are joint eigenstates of
Lambda^1 = U1 x U1 x U1, Lambda^2 = U2 x U2 x I, Lambda^3 = U2 x I x U2.
Measuring all three projects |v> (x) |j:k:l} onto
|p:q:(kq)} (x) Xtilde^{jl}_{pq} |v>: the third label carries no fresh
information, two sign bits suffice, and a reduced measurement of
(Lambda^1, Lambda^2) alone even teleports superpositions over the
middle label k.  Teleporting TWO qubits this way is impossible: the
operator Theta linking the two corrections has rank 2.
"""

import numpy as np

from bellport import BELL3_LABELS, bell3_state, random_state, teleport3, theta_rank
from bellport.states import PureState, normalize
from itertools import product

client = random_state(1, 2, 13)

print("basis channels, full measurement (outcome (p, q, kq)):")
for lab in BELL3_LABELS[:4]:
    fids = []
    for p, q in product((1, -1), repeat=2):
        res = teleport3(client, bell3_state(lab), (lab.j, lab.l),
                        mode="full", forced=(p, q, lab.k * q))
        fids.append(res.fidelity)
    print(f"  |{lab.j:+d}:{lab.k:+d}:{lab.l:+d}}}: fidelities {np.round(fids, 12)}")

print("\nk-superposition channel, reduced (Lambda1, Lambda2) measurement:")
rng = np.random.default_rng(14)
alphas = rng.standard_normal(2) + 1j * rng.standard_normal(2)
alphas /= np.linalg.norm(alphas)
channel = normalize(PureState(
    alphas[0] * bell3_state((1, 1, -1)).amplitudes
    + alphas[1] * bell3_state((1, -1, -1)).amplitudes,
    normalized=False,
))
for p, q in product((1, -1), repeat=2):
    res = teleport3(client, channel, (1, -1), mode="reduced", forced=(p, q))
    print(f"  outcome ({p:+d},{q:+d}): fidelity = {res.fidelity:.12f}")

print("\ntwo-qubit teleportation obstruction:")
for kappa in (1, -1):
    rank, det = theta_rank(kappa)
    print(f"  Theta(kappa={kappa:+d}): rank {rank}, |det| = {abs(det):.2e}")
