"""Projective Bell measurements on site pairs.

A Bell measurement on sites (a, b) is the simultaneous measurement of
(U1)_a (U1)_b and (U2)_a (U2)_b; the outcome (j:k) collapses the pair
exactly onto the Bell state |j:k}.  Projection is carried out as a 4x4
basis rotation on the two addressed axes, O(d^n) per measurement, never
through full projector matrices.

Outcomes can be sampled (seeded, reproducible) or forced, which lets
tests enumerate every branch of a protocol deterministically.  Forcing
a branch whose probability is below ZERO_PROB_ATOL raises
ImpossibleOutcomeError: that branch cannot physically occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bell import BELL_LABELS, BellClass, BellLabel, bell_state
from .states import PureState, _as_rng

ZERO_PROB_ATOL = 1e-14

# Rows of _BELL_BRA are the conjugated Bell states in BELL_LABELS order,
# so _BELL_BRA @ (pair amplitudes) gives the four outcome amplitudes.
_BELL_BRA = np.array([bell_state(lab).amplitudes for lab in BELL_LABELS]).conj()


class ImpossibleOutcomeError(ValueError):
    """Raised when a forced measurement outcome has probability ~ 0."""


@dataclass(frozen=True)
class MeasurementOutcome:
    pair: tuple[int, int]
    label: BellLabel
    probability: float


@dataclass(frozen=True)
class MeasurementRecord:
    """Ordered outcomes of a measurement sequence.

    ``aggregate_class`` is the pair of sign products over all outcomes;
    ``joint_probability`` is the product of the conditional outcome
    probabilities.
    """

    outcomes: tuple[MeasurementOutcome, ...]
    aggregate_class: BellClass
    joint_probability: float


def _pair_components(state: PureState, a: int, b: int) -> np.ndarray:
    """Amplitudes in the Bell basis of (a, b): shape (4, rest)."""
    n = state.num_sites
    if state.local_dim != 2:
        raise ValueError("Bell measurements act on qubit states")
    if a == b:
        raise ValueError("measurement sites must be distinct")
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"sites ({a}, {b}) out of range for {n} sites")
    t = np.moveaxis(state.as_tensor(), (a, b), (0, 1)).reshape(4, -1)
    return _BELL_BRA @ t


def outcome_distribution(state: PureState, a: int, b: int) -> dict[BellLabel, float]:
    """Probability of each Bell outcome for a measurement on (a, b)."""
    comps = _pair_components(state, a, b)
    probs = np.sum(np.abs(comps) ** 2, axis=1)
    return {lab: float(p) for lab, p in zip(BELL_LABELS, probs)}


def bell_measure(
    state: PureState,
    a: int,
    b: int,
    *,
    forced: BellLabel | tuple[int, int] | None = None,
    rng: int | np.random.Generator | None = None,
) -> tuple[MeasurementOutcome, PureState]:
    """Measure the pair (a, b) in the Bell basis.

    Returns the outcome and the renormalized post-measurement state on
    all sites; the measured pair factors out exactly as |j:k}.  Exactly
    one of ``forced`` (a Bell label) or ``rng`` (seed or Generator)
    selects the branch.
    """
    n = state.num_sites
    comps = _pair_components(state, a, b)
    probs = np.sum(np.abs(comps) ** 2, axis=1)
    if forced is not None:
        forced = BellLabel(*forced)
        row = BELL_LABELS.index(forced)
        if probs[row] <= ZERO_PROB_ATOL:
            raise ImpossibleOutcomeError(
                f"outcome {forced} on sites ({a}, {b}) has probability {probs[row]:.3e}"
            )
    else:
        gen = _as_rng(rng)
        row = int(gen.choice(4, p=probs / probs.sum()))
    label = BELL_LABELS[row]
    prob = float(probs[row])
    residual = comps[row] / np.sqrt(prob)
    pair_tensor = bell_state(label).amplitudes.reshape(2, 2)
    post = np.multiply.outer(pair_tensor, residual.reshape((2,) * (n - 2)))
    post = np.moveaxis(post, (0, 1), (a, b)).reshape(-1)
    outcome = MeasurementOutcome(pair=(a, b), label=label, probability=prob)
    return outcome, PureState(post, local_dim=2)


def _contract_measured(
    state: PureState, measured: Sequence[tuple[int, int, BellLabel]]
) -> PureState:
    """Strip collapsed pairs off a post-measurement state."""
    t = state.as_tensor()
    sites = list(range(state.num_sites))
    for a, b, label in measured:
        bra = bell_state(label).amplitudes.conj().reshape(2, 2)
        ia, ib = sites.index(a), sites.index(b)
        t = np.tensordot(bra, t, axes=([0, 1], [ia, ib]))
        sites.remove(a)
        sites.remove(b)
    amps = t.reshape(-1)
    return PureState(amps / np.linalg.norm(amps), local_dim=2)


def measure_sequence(
    state: PureState,
    pairs: Sequence[tuple[int, int]],
    *,
    forced: Sequence[BellLabel | tuple[int, int] | None] | None = None,
    rng: int | np.random.Generator | None = None,
) -> tuple[MeasurementRecord, PureState]:
    """Run Bell measurements over disjoint site pairs, in order.

    ``forced`` may fix the outcome of each pair (None entries are
    sampled).  Returns the record plus the residual state on the
    unmeasured sites, in their original order.
    """
    n = state.num_sites
    flat = [s for pair in pairs for s in pair]
    if len(set(flat)) != len(flat):
        raise ValueError(f"measurement pairs overlap: {pairs}")
    if len(flat) > n - 1:
        raise ValueError("measurements must leave at least one site untouched")
    if forced is not None and len(forced) != len(pairs):
        raise ValueError("one forced label (or None) is needed per pair")
    gen = _as_rng(rng)

    outcomes: list[MeasurementOutcome] = []
    current = state
    for i, (a, b) in enumerate(pairs):
        want = forced[i] if forced is not None else None
        if want is None:
            outcome, current = bell_measure(current, a, b, rng=gen)
        else:
            outcome, current = bell_measure(current, a, b, forced=want)
        outcomes.append(outcome)

    agg = BellClass(
        int(np.prod([o.label.j for o in outcomes])),
        int(np.prod([o.label.k for o in outcomes])),
    )
    joint = float(np.prod([o.probability for o in outcomes]))
    record = MeasurementRecord(
        outcomes=tuple(outcomes), aggregate_class=agg, joint_probability=joint
    )
    residual = _contract_measured(
        current, [(o.pair[0], o.pair[1], o.label) for o in outcomes]
    )
    return record, residual
