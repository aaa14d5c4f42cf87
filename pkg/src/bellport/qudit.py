"""Qudit generalization of the Bell-measurement protocol.

For a fixed primitive d-th root of unity omega = exp(2 pi i / d), the
permutation and phase matrices P |l> = |l+1 mod d>, Q |l> = omega^l |l>
generate the Weyl-Heisenberg group; R^{kj} = P^k Q^j.  The d^2 states

    |j:k} = (I (x) R^{kj}) |0:0} = d^{-1/2} sum_l omega^{jl} |l> (x) |l+k>

form an orthonormal basis, and the teleport identity

    |v> (x) |j:k} = 1/d sum_{p,q} |p:q} (x) Xtilde^{jk}_{pq} |v>

holds with Xtilde^{jk}_{pq} = R^{kj} R^{q,-p}.  Channels on L qudits
split into d^2 perfect-channel classes of dimension d^{L-2}, the joint
eigenspaces of P^(xL) and the alternating product Q (x) Q^dag (x) Q ...
(the conjugation pattern makes the two commute; for d = 2 it collapses
to the qubit Upsilon operators).
"""

from __future__ import annotations

import numpy as np

from .measure import ImpossibleOutcomeError, MeasurementOutcome, MeasurementRecord
from .protocol import TeleportResult
from .states import (
    PureState,
    _as_rng,
    apply_local,
    overlap_fidelity,
    tensor,
)

ZERO_PROB_ATOL = 1e-14


def omega_root(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def permutation_matrix(d: int) -> np.ndarray:
    """P with P|l> = |l+1 mod d>."""
    if d < 2:
        raise ValueError("qudit dimension must be >= 2")
    m = np.zeros((d, d), dtype=complex)
    for l in range(d):
        m[(l + 1) % d, l] = 1.0
    return m


def phase_matrix(d: int) -> np.ndarray:
    """Q with Q|l> = omega^l |l>."""
    if d < 2:
        raise ValueError("qudit dimension must be >= 2")
    return np.diag(omega_root(d) ** np.arange(d))


def generalized_pauli(d: int, k: int, j: int) -> np.ndarray:
    """R^{kj} = P^k Q^j (indices mod d)."""
    return np.linalg.matrix_power(permutation_matrix(d), k % d) @ np.linalg.matrix_power(
        phase_matrix(d), j % d
    )


def qudit_bell(d: int, j: int, k: int) -> PureState:
    """|j:k} = d^{-1/2} sum_l omega^{jl} |l> (x) |l+k>."""
    j, k = j % d, k % d
    amps = np.zeros(d * d, dtype=complex)
    w = omega_root(d)
    for l in range(d):
        amps[l * d + (l + k) % d] = w ** (j * l)
    return PureState(amps / np.sqrt(d), local_dim=d)


def qudit_x_tilde(d: int, j: int, k: int, p: int, q: int) -> np.ndarray:
    """Xtilde^{jk}_{pq} = R^{kj} R^{q,-p}; the recipient-side operator."""
    return generalized_pauli(d, k, j) @ generalized_pauli(d, q, -p)


def _bell_bra_matrix(d: int) -> np.ndarray:
    rows = [qudit_bell(d, j, k).amplitudes for j in range(d) for k in range(d)]
    return np.array(rows).conj()


def qudit_bell_measure(
    state: PureState,
    a: int,
    b: int,
    *,
    forced: tuple[int, int] | None = None,
    rng: int | np.random.Generator | None = None,
) -> tuple[MeasurementOutcome, PureState]:
    """Generalized Bell measurement on the qudit pair (a, b).

    Returns the outcome (labels mod d) and the residual state on the
    remaining sites; the measured pair is dropped since it collapses
    exactly onto |j:k}.
    """
    d = state.local_dim
    n = state.num_sites
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"invalid site pair ({a}, {b})")
    if n < 3:
        raise ValueError("measurement must leave at least one site")
    t = np.moveaxis(state.as_tensor(), (a, b), (0, 1)).reshape(d * d, -1)
    comps = _bell_bra_matrix(d) @ t
    probs = np.sum(np.abs(comps) ** 2, axis=1)
    labels = [(j, k) for j in range(d) for k in range(d)]
    if forced is not None:
        forced = (forced[0] % d, forced[1] % d)
        row = labels.index(forced)
        if probs[row] <= ZERO_PROB_ATOL:
            raise ImpossibleOutcomeError(
                f"outcome {forced} has probability {probs[row]:.3e}"
            )
    else:
        gen = _as_rng(rng)
        row = int(gen.choice(len(labels), p=probs / probs.sum()))
    prob = float(probs[row])
    residual = comps[row] / np.sqrt(prob)
    outcome = MeasurementOutcome(pair=(a, b), label=labels[row], probability=prob)
    return outcome, PureState(residual, local_dim=d)


def qudit_teleport(
    client: PureState,
    channel: PureState | tuple[int, int],
    assumed: tuple[int, int] | None = None,
    *,
    d: int | None = None,
    forced: tuple[int, int] | None = None,
    rng: int | np.random.Generator | None = None,
) -> TeleportResult:
    """Teleport one qudit across a two-qudit channel.

    ``channel`` is either a 2-site state or a label pair (j, k), in
    which case the generalized Bell state is built (``d`` defaults to
    the client dimension).  ``assumed`` defaults to the channel label
    when one is given.  Alice sends the two mod-d symbols (p, q) -- the
    qudit analogue of two classical bits -- and Bob applies
    (Xtilde^{jk}_{pq})^dagger.
    """
    if client.num_sites != 1:
        raise ValueError("client must be a single qudit")
    dim = client.local_dim
    if isinstance(channel, tuple):
        chan_state = qudit_bell(d or dim, *channel)
        if assumed is None:
            assumed = (channel[0] % (d or dim), channel[1] % (d or dim))
    else:
        chan_state = channel
    if chan_state.local_dim != dim or chan_state.num_sites != 2:
        raise ValueError("channel must be a two-qudit state of the client dimension")
    if assumed is None:
        raise ValueError("assumed channel label is required for a state channel")
    total = tensor(client, chan_state)
    outcome, residual = qudit_bell_measure(total, 0, 1, forced=forced, rng=rng)
    p, q = outcome.label
    gate = qudit_x_tilde(dim, assumed[0], assumed[1], p, q).conj().T
    recipient = apply_local(residual, gate, 0)
    record = MeasurementRecord(
        outcomes=(outcome,),
        aggregate_class=outcome.label,
        joint_probability=outcome.probability,
    )
    return TeleportResult(
        record=record,
        correction=gate,
        recipient_state=recipient,
        fidelity=overlap_fidelity(client, recipient),
    )


# ---------------------------------------------------------------------------
# class decomposition


def apply_qudit_upsilon(state: PureState, alpha: int) -> PureState:
    """Site-wise class operators: alpha=1 applies P everywhere, alpha=2
    applies Q on even sites and Q^dagger on odd sites."""
    d = state.local_dim
    if alpha == 1:
        ops = [permutation_matrix(d)] * state.num_sites
    elif alpha == 2:
        q = phase_matrix(d)
        ops = [q if s % 2 == 0 else q.conj().T for s in range(state.num_sites)]
    else:
        raise ValueError("alpha must be 1 or 2")
    out = state
    for site, op in enumerate(ops):
        out = apply_local(out, op, site)
    return out


def qudit_class_projector_apply(state: PureState, J: int, K: int) -> PureState:
    """Project onto the class whose generalized Bell products have label
    sums (sum j_i, sum k_i) = (J, K) mod d.  Possibly unnormalized."""
    d = state.local_dim
    if state.num_sites % 2 != 0:
        raise ValueError("qudit classes need an even number of sites")
    w = omega_root(d)
    acc = np.zeros_like(state.amplitudes)
    pow_a = state
    for a in range(d):
        pow_ab = pow_a
        for b in range(d):
            acc = acc + (w ** (a * J + b * K)) * pow_ab.amplitudes
            pow_ab = apply_qudit_upsilon(pow_ab, 2)
        pow_a = apply_qudit_upsilon(pow_a, 1)
    return PureState(acc / (d * d), local_dim=d, normalized=False)


def qudit_decompose(state: PureState) -> dict[tuple[int, int], float]:
    """Class weights |c_(J,K)| over the d^2 classes; squares sum to 1."""
    d = state.local_dim
    return {
        (J, K): qudit_class_projector_apply(state, J, K).norm()
        for J in range(d)
        for K in range(d)
    }
