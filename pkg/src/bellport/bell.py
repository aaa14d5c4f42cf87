"""Bell basis, Upsilon string operators, and Bell-class decomposition.

A channel on an even number L of qubits splits into four orthogonal
subspaces ("Bell classes") labelled [j:k], the simultaneous eigenspaces
of the site-wise products Upsilon^1 = U1^(xL) and Upsilon^2 = U2^(xL).
Every state inside one class is a perfect teleportation channel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import SIGNS, u_matrix
from .states import PureState, apply_local, inner_product, tensor

# A state is reported as lying in a single class when its top class
# weight exceeds 1 - PURE_CLASS_TOL.
PURE_CLASS_TOL = 1e-9
# Class components below this amplitude are treated as absent.
COMPONENT_ATOL = 1e-12


class BellLabel(NamedTuple):
    """Outcome/state label (j, k) of one Bell pair; entries are +-1."""

    j: int
    k: int


class BellClass(NamedTuple):
    """Class label [j:k] of a multi-pair channel; entries are +-1."""

    j: int
    k: int


BELL_LABELS: tuple[BellLabel, ...] = tuple(
    BellLabel(j, k) for j in SIGNS for k in SIGNS
)
BELL_CLASSES: tuple[BellClass, ...] = tuple(
    BellClass(j, k) for j in SIGNS for k in SIGNS
)


def format_sign_pair(pair: Sequence[int]) -> str:
    """Compact text form of a label/class, e.g. (+1, -1) -> '+-'."""
    return "".join("+" if s == 1 else "-" for s in pair)


def parse_sign_pair(text: str) -> tuple[int, ...]:
    if not text or any(c not in "+-" for c in text):
        raise ValueError(f"cannot parse sign string {text!r}")
    return tuple(1 if c == "+" else -1 for c in text)


def bell_state(label: BellLabel | tuple[int, int]) -> PureState:
    """Two-qubit Bell state |j:k} = (|+,k> + j |-,kbar>) / sqrt(2)."""
    j, k = label
    if j not in SIGNS or k not in SIGNS:
        raise ValueError(f"bad Bell label {label!r}")
    amps = np.zeros(4, dtype=complex)
    amps[0 * 2 + (0 if k == 1 else 1)] = 1.0
    amps[1 * 2 + (0 if k == -1 else 1)] = j
    return PureState(amps / np.sqrt(2.0))


def bell_basis_state(labels: Sequence[BellLabel | tuple[int, int]]) -> PureState:
    """Tensor product of Bell pairs: |j1:k1} (x) ... (x) |jn:kn}."""
    if not labels:
        raise ValueError("need at least one Bell label")
    out = bell_state(labels[0])
    for lab in labels[1:]:
        out = tensor(out, bell_state(lab))
    return out


def labels_class(labels: Sequence[BellLabel | tuple[int, int]]) -> BellClass:
    """Class of a Bell basis product: component-wise sign products."""
    j = k = 1
    for lj, lk in labels:
        j *= lj
        k *= lk
    return BellClass(j, k)


def apply_upsilon(state: PureState, alpha: int) -> PureState:
    """Apply Upsilon^alpha = prod_sites U^alpha, one site at a time."""
    if alpha not in (1, 2, 3):
        raise ValueError(f"Upsilon index must be 1, 2 or 3, got {alpha}")
    if state.local_dim != 2:
        raise ValueError("Upsilon operators are defined for qubit states")
    out = state
    u = u_matrix(alpha)
    for site in range(state.num_sites):
        out = apply_local(out, u, site)
    return out


def upsilon_expectations(state: PureState) -> tuple[float, float, float]:
    """(<Upsilon^1>, <Upsilon^2>, <Upsilon^3>) as real numbers.

    Upsilon^3 is self-adjoint only for an even number of sites; for odd
    sites its expectation is purely imaginary and the returned real part
    is zero.
    """
    return tuple(
        float(np.real(inner_product(state, apply_upsilon(state, a))))
        for a in (1, 2, 3)
    )


def _require_even_qubits(state: PureState) -> None:
    if state.local_dim != 2:
        raise ValueError("Bell classes are defined for qubit states")
    if state.num_sites % 2 != 0:
        raise ValueError("Bell classes need an even number of sites")


def class_projector_apply(state: PureState, cls: BellClass | tuple[int, int]) -> PureState:
    """P_[j:k] s = (s + j Y1 s + k Y2 s + jk Y3 s) / 4, possibly unnormalized."""
    _require_even_qubits(state)
    j, k = cls
    y1 = apply_upsilon(state, 1).amplitudes
    y2 = apply_upsilon(state, 2).amplitudes
    y3 = apply_upsilon(state, 3).amplitudes
    amps = 0.25 * (state.amplitudes + j * y1 + k * y2 + j * k * y3)
    return PureState(amps, local_dim=2, normalized=False)


@dataclass(frozen=True)
class ClassDecomposition:
    """Split of a channel into its four Bell-class components.

    ``coefficients[c]`` is the (nonnegative, by phase convention) weight
    c_[j:k]; the squared values sum to one.  ``components`` holds the
    renormalized class vectors and omits entries whose coefficient is
    below COMPONENT_ATOL, so "which class is this" queries get a crisp
    answer.
    """

    coefficients: dict[BellClass, float]
    components: dict[BellClass, PureState]

    def dominant_class(self) -> BellClass:
        return max(self.coefficients, key=lambda c: self.coefficients[c])

    def pure_class(self, tol: float = PURE_CLASS_TOL) -> BellClass | None:
        """The single occupied class, or None if the state straddles classes."""
        best = self.dominant_class()
        if self.coefficients[best] ** 2 > 1.0 - tol:
            return best
        return None


def decompose_classes(state: PureState) -> ClassDecomposition:
    """Project a channel onto the four Bell classes.

    The weights satisfy |c_[j:k]|^2 = (1 + Omega_[j:k]) / 4 with Omega
    the signed combination of Upsilon expectations.
    """
    _require_even_qubits(state)
    base = state.amplitudes
    ys = [apply_upsilon(state, a).amplitudes for a in (1, 2, 3)]
    coefficients: dict[BellClass, float] = {}
    components: dict[BellClass, PureState] = {}
    for cls in BELL_CLASSES:
        j, k = cls
        amps = 0.25 * (base + j * ys[0] + k * ys[1] + j * k * ys[2])
        c = float(np.linalg.norm(amps))
        coefficients[cls] = c
        if c >= COMPONENT_ATOL:
            components[cls] = PureState(amps / c, local_dim=2)
    return ClassDecomposition(coefficients=coefficients, components=components)
