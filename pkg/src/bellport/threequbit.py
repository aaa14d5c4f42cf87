"""Teleportation over three-qubit channels.

The eight states |j:k:l} = (|+,k,l> + j |-,kbar,lbar>) / sqrt(2) are the
joint eigenbasis of Lambda^1 = U1 x U1 x U1, Lambda^2 = U2 x U2 x I and
Lambda^3 = U2 x I x U2.  Expanding a client against such a channel gives

    |v> (x) |j:k:l} = 1/2 sum_{p,q} |p:q:(kq)} (x) Xtilde^{jl}_{pq} |v>

so Alice's third outcome label is always kq, two sign bits (p, q)
determine Bob's correction, and each |j:k:l} is a perfect channel.  The
channel classes [j:l] are the (Lambda^1, Lambda^3) eigenspaces; within
one class the k-label is free, so the reduced measurement that still
teleports superpositions alpha_+ |j:+:l} + alpha_- |j:-:l} perfectly is
the rank-2 projection fixing (Lambda^1, Lambda^2) = (p, q), leaving the
redundant Lambda^3 unmeasured.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .algebra import u_matrix, x_operator, x_tilde_operator
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


class Bell3Label(NamedTuple):
    j: int
    k: int
    l: int


BELL3_LABELS: tuple[Bell3Label, ...] = tuple(
    Bell3Label(j, k, l) for j in (1, -1) for k in (1, -1) for l in (1, -1)
)


def bell3_state(label: Bell3Label | tuple[int, int, int]) -> PureState:
    """|j:k:l} = (|+,k,l> + j |-,kbar,lbar>) / sqrt(2)."""
    j, k, l = label
    if any(s not in (1, -1) for s in (j, k, l)):
        raise ValueError(f"bad three-qubit Bell label {label!r}")
    amps = np.zeros(8, dtype=complex)

    def pos(*signs: int) -> int:
        return sum((0 if s == 1 else 1) << (2 - i) for i, s in enumerate(signs))

    amps[pos(1, k, l)] = 1.0
    amps[pos(-1, -k, -l)] = j
    return PureState(amps / np.sqrt(2.0))


_BELL3_BRA = np.array([bell3_state(lab).amplitudes for lab in BELL3_LABELS]).conj()


def lambda_operator(alpha: int) -> np.ndarray:
    """The 8x8 matrix of Lambda^alpha."""
    if alpha == 1:
        return np.kron(np.kron(u_matrix(1), u_matrix(1)), u_matrix(1))
    if alpha == 2:
        return np.kron(np.kron(u_matrix(2), u_matrix(2)), np.eye(2))
    if alpha == 3:
        return np.kron(np.kron(u_matrix(2), np.eye(2)), u_matrix(2))
    raise ValueError(f"Lambda index must be 1, 2 or 3, got {alpha}")


def y_operator(j: int, k: int, l: int, p: int, q: int, r: int) -> np.ndarray:
    """Two-site operator with |j:k:l} = (I (x) Y^{jkl}_{pqr}) |p:q:r}.

    Y^{jkl}_{pqr} = Z^k_q (x) X^{jl}_{pr} with Z the identity when the
    middle labels agree and U1 when they differ.
    """
    z = np.eye(2, dtype=complex) if k == q else u_matrix(1)
    return np.kron(z, x_operator(j, l, p, r))


def _trio_components(state: PureState) -> np.ndarray:
    """Bell3-basis amplitudes of sites (0, 1, 2): shape (8, rest)."""
    if state.local_dim != 2 or state.num_sites < 4:
        raise ValueError("need a qubit state with at least 4 sites")
    t = state.as_tensor().reshape(8, -1)
    return _BELL3_BRA @ t


def teleport3(
    client: PureState,
    channel: PureState,
    assumed: tuple[int, int],
    mode: str = "full",
    *,
    forced: tuple[int, ...] | None = None,
    rng: int | np.random.Generator | None = None,
) -> TeleportResult:
    """Teleport a qubit across a 3-qubit channel.

    ``assumed`` is the channel class (j, l), the (Lambda^1, Lambda^3)
    eigenvalue pair.  In ``full`` mode Alice measures all three Lambda
    operators on (client, channel qubit 1, channel qubit 2); the forced
    outcome is a triple (p, q, t) whose third label is constrained to
    t = kq.  In ``reduced`` mode only (Lambda^1, Lambda^2) are measured
    and forced outcomes are pairs (p, q).  Either way Bob applies
    (Xtilde^{jl}_{pq})^dagger to the last qubit.
    """
    if client.num_sites != 1 or client.local_dim != 2:
        raise ValueError("client must be a single qubit")
    if channel.num_sites != 3 or channel.local_dim != 2:
        raise ValueError("channel must be a 3-qubit state")
    if mode not in ("full", "reduced"):
        raise ValueError(f"mode must be 'full' or 'reduced', got {mode!r}")
    total = tensor(client, channel)
    comps = _trio_components(total)  # (8, 2)

    if mode == "full":
        probs = np.sum(np.abs(comps) ** 2, axis=1)
        if forced is not None:
            row = BELL3_LABELS.index(Bell3Label(*forced))
            if probs[row] <= ZERO_PROB_ATOL:
                raise ImpossibleOutcomeError(
                    f"outcome {forced} has probability {probs[row]:.3e}"
                )
        else:
            gen = _as_rng(rng)
            row = int(gen.choice(8, p=probs / probs.sum()))
        label: tuple[int, ...] = BELL3_LABELS[row]
        prob = float(probs[row])
        residual_amps = comps[row] / np.sqrt(prob)
        p, q = label.j, label.k
    else:
        groups: dict[tuple[int, int], list[int]] = {}
        for i, lab in enumerate(BELL3_LABELS):
            groups.setdefault((lab.j, lab.k), []).append(i)
        pairs = list(groups)
        probs = np.array(
            [np.sum(np.abs(comps[groups[pq]]) ** 2) for pq in pairs]
        )
        if forced is not None:
            if len(forced) != 2:
                raise ValueError("reduced-mode forced outcome is a pair (p, q)")
            row = pairs.index(tuple(forced))
            if probs[row] <= ZERO_PROB_ATOL:
                raise ImpossibleOutcomeError(
                    f"outcome {forced} has probability {probs[row]:.3e}"
                )
        else:
            gen = _as_rng(rng)
            row = int(gen.choice(len(pairs), p=probs / probs.sum()))
        label = pairs[row]
        prob = float(probs[row])
        block = comps[groups[label]] / np.sqrt(prob)  # (2, 2): l-label x last site
        # The projected trio must factor from the recipient qubit.
        _, s_, vh = np.linalg.svd(block)
        if s_[1] > 1e-8:
            raise ValueError(
                "reduced measurement left the recipient entangled; "
                "the channel is not confined to one (Lambda1, Lambda3) class"
            )
        residual_amps = vh[0]
        p, q = label

    residual = PureState(residual_amps / np.linalg.norm(residual_amps))
    j, l = assumed
    gate = x_tilde_operator(j, l, p, q).conj().T
    recipient = apply_local(residual, gate, 0)
    # sites 0..2 are measured jointly; the pair field records the span
    outcome = MeasurementOutcome(pair=(0, 2), label=label, probability=prob)
    record = MeasurementRecord(
        outcomes=(outcome,),
        aggregate_class=(p, q),
        joint_probability=prob,
    )
    return TeleportResult(
        record=record,
        correction=gate,
        recipient_state=recipient,
        fidelity=overlap_fidelity(client, recipient),
    )


def theta_operator(kappa: int) -> np.ndarray:
    """Theta = (I (x) I + kappa U2 (x) U2) / sqrt(2)."""
    if kappa not in (1, -1):
        raise ValueError("kappa must be +1 or -1")
    return (
        np.eye(4, dtype=complex) + kappa * np.kron(u_matrix(2), u_matrix(2))
    ) / np.sqrt(2.0)


def theta_rank(kappa: int = 1) -> tuple[int, complex]:
    """Rank and determinant of Theta; rank 2 and det 0 for either sign,
    which rules out two-qubit teleportation through this construction."""
    th = theta_operator(kappa)
    rank = int(np.linalg.matrix_rank(th, tol=1e-12))
    det = complex(np.linalg.det(th))
    return rank, det
