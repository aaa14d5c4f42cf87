"""Named channel families: Bell products, singlets, cluster and AKLT states.

Singlet states (invariant up to phase under A^(xL) for every unitary A)
all live in the Bell class [(-1)^(L/2) : (-1)^(L/2)] and are perfect
channels; this module builds random singlets, Majumdar-Ghosh dimer
coverings, and antiferromagnetic Heisenberg ring ground states as
physical examples.  Linear cluster states come with their K_j
stabilizers and the derived G1/G2 string operators; the AKLT ground
state is built in the virtual-qubit picture together with its string
order parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import u_matrix
from .bell import BellLabel, bell_basis_state, bell_state
from .states import (
    PureState,
    _as_rng,
    apply_local,
    apply_two_site,
    inner_product,
    normalize,
    permute_sites,
    random_state,
)

CHANNEL_KINDS = (
    "bell-product",
    "singlet-random",
    "mg-dimers",
    "heisenberg-ring",
    "cluster1d",
    "ghz",
    "aklt",
    "random",
    "explicit",
)


class DegenerateGroundStateError(RuntimeError):
    """Ground state not unique within tolerance; carries the gap found."""

    def __init__(self, gap: float, tol: float):
        super().__init__(
            f"ground state degenerate within tolerance: gap {gap:.3e} < {tol:.3e}"
        )
        self.gap = gap


@dataclass(frozen=True)
class ChannelSpec:
    """Declarative channel description, also usable from the CLI.

    ``qubits`` is the total qubit count L for every variant (converted
    internally to the pair count where a builder wants one).
    """

    kind: str
    qubits: int = 0
    seed: int | None = None
    labels: tuple[BellLabel, ...] | None = None
    amplitudes: np.ndarray | None = None


def build(spec: ChannelSpec) -> PureState:
    """Construct the state a ChannelSpec describes."""
    kind = spec.kind
    if kind == "bell-product":
        if not spec.labels:
            raise ValueError("bell-product spec needs labels")
        return bell_basis_state(spec.labels)
    if kind == "explicit":
        if spec.amplitudes is None:
            raise ValueError("explicit spec needs amplitudes")
        return normalize(PureState(spec.amplitudes, normalized=False))
    L = spec.qubits
    if kind == "random":
        return random_state(L, 2, spec.seed)
    if kind == "singlet-random":
        _require_even(L)
        return singlet_random(L // 2, spec.seed)
    if kind == "mg-dimers":
        _require_even(L)
        return majumdar_ghosh_dimers(L // 2)
    if kind == "heisenberg-ring":
        return heisenberg_ring_ground(L)
    if kind == "cluster1d":
        return cluster_state(L)
    if kind == "ghz":
        return ghz_state(L)
    if kind == "aklt":
        return aklt_state(L)
    raise ValueError(f"unknown channel kind {kind!r}")


def parse_channel_spec(text: str) -> ChannelSpec:
    """Parse 'kind:arg[:seed]' strings, e.g. 'cluster1d:6' or 'bell:+-,-+'.

    'bell:<labels>' takes comma-separated sign pairs; every other kind
    takes the qubit count, optionally followed by ':<seed>'.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("bell", "bell-product"):
        labels = []
        for part in rest.split(","):
            part = part.strip()
            if len(part) != 2 or any(c not in "+-" for c in part):
                raise ValueError(f"bad Bell label {part!r} in {text!r}")
            labels.append(BellLabel(*(1 if c == "+" else -1 for c in part)))
        return ChannelSpec(kind="bell-product", qubits=2 * len(labels), labels=tuple(labels))
    if kind not in CHANNEL_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}")
    parts = rest.split(":") if rest else []
    if not parts or not parts[0]:
        raise ValueError(f"channel spec {text!r} needs a qubit count")
    qubits = int(parts[0])
    seed = int(parts[1]) if len(parts) > 1 else None
    return ChannelSpec(kind=kind, qubits=qubits, seed=seed)


def _require_even(L: int) -> None:
    if L < 2 or L % 2 != 0:
        raise ValueError(f"channel size must be a positive even qubit count, got {L}")


def ghz_state(L: int) -> PureState:
    """(|++...+> + |--...->) / sqrt(2); lies in Bell class [+:+] for even L."""
    if L < 2:
        raise ValueError("GHZ needs at least 2 qubits")
    amps = np.zeros(2**L, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(amps)


# ---------------------------------------------------------------------------
# singlet channels


def majumdar_ghosh_dimers(n_pairs: int) -> PureState:
    """Product of nearest-neighbour singlets, the Majumdar-Ghosh ground state."""
    if n_pairs < 1:
        raise ValueError("need at least one dimer")
    return bell_basis_state([BellLabel(-1, -1)] * n_pairs)


def noncrossing_matchings(L: int) -> list[tuple[tuple[int, int], ...]]:
    """All non-crossing perfect matchings of sites 0..L-1 (Catalan many)."""
    _require_even(L)

    def match(sites: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
        if not sites:
            return [()]
        first = sites[0]
        out = []
        for i in range(1, len(sites), 2):  # partner must leave even gaps
            partner = sites[i]
            inner = match(sites[1:i])
            outer = match(sites[i + 1 :])
            for a in inner:
                for b in outer:
                    out.append(((first, partner),) + a + b)
        return out

    return match(tuple(range(L)))


def dimer_product(matching: Sequence[tuple[int, int]], L: int) -> PureState:
    """Singlet placed on every pair of the matching (pairs may be nested)."""
    state = bell_basis_state([BellLabel(-1, -1)] * (L // 2))
    perm = [0] * L
    slot = 0
    for a, b in matching:
        perm[slot] = a
        perm[slot + 1] = b
        slot += 2
    return permute_sites(state, perm)


def singlet_random(
    n_pairs: int, seed: int | np.random.Generator | None = None
) -> PureState:
    """Random state of the singlet space of L = 2 * n_pairs qubits.

    Draws complex-normal coefficients over the non-crossing dimer
    products (which span the singlet space) and normalizes.
    """
    L = 2 * n_pairs
    rng = _as_rng(seed)
    basis = [dimer_product(m, L) for m in noncrossing_matchings(L)]
    coeffs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    amps = sum(c * s.amplitudes for c, s in zip(coeffs, basis))
    return normalize(PureState(amps, normalized=False))


def heisenberg_ring_ground(L: int, degeneracy_tol: float = 1e-8) -> PureState:
    """Ground state of the spin-1/2 antiferromagnetic Heisenberg ring.

    H = sum_i S_i . S_{i+1} with periodic boundary, diagonalized densely;
    practical for L <= 12.  Raises DegenerateGroundStateError when the
    spectral gap falls below ``degeneracy_tol``.
    """
    _require_even(L)
    if L > 12:
        raise ValueError("dense diagonalization is limited to L <= 12")
    sx = 0.5 * u_matrix(1)
    sy = 0.5j * u_matrix(3)  # sigma_y / 2 = i U3 / 2
    sz = 0.5 * u_matrix(2)
    dim = 2**L
    H = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(2, dtype=complex)
    for i in range(L):
        j = (i + 1) % L
        for op in (sx, sy, sz):
            term = np.array([[1.0]], dtype=complex)
            for site in range(L):
                term = np.kron(term, op if site in (i, j) else eye)
            H += term
    energies, vectors = np.linalg.eigh(H)
    gap = float(energies[1] - energies[0])
    if gap < degeneracy_tol:
        raise DegenerateGroundStateError(gap, degeneracy_tol)
    ground = vectors[:, 0]
    return normalize(PureState(ground, normalized=False))


# ---------------------------------------------------------------------------
# cluster states and their string operators


def cluster_state(L: int) -> PureState:
    """Linear cluster state on L qubits.

    Built by the two-site factors (|+>_j + |->_j U2_{j+1}): the sign of
    each computational amplitude is (-1)^(number of adjacent |-,-> pairs).
    """
    if L < 2:
        raise ValueError("cluster state needs at least 2 qubits")
    amps = np.ones(2**L, dtype=complex)
    idx = np.arange(2**L)
    for j in range(L - 1):
        bit_j = (idx >> (L - 1 - j)) & 1
        bit_j1 = (idx >> (L - 2 - j)) & 1
        amps[(bit_j & bit_j1) == 1] *= -1.0
    return PureState(amps / np.sqrt(2.0**L))


@dataclass(frozen=True)
class UProduct:
    """Signed product of single-site U factors: sign * (x)_s U^{factors[s]}."""

    sign: int
    factors: tuple[int, ...]

    def apply(self, state: PureState) -> PureState:
        out = state
        for site, f in enumerate(self.factors):
            if f:
                out = apply_local(out, u_matrix(f), site)
        return PureState(self.sign * out.amplitudes, normalized=out.normalized)


@dataclass(frozen=True)
class StabilizerReport:
    name: str
    eigenvalue: float
    deviation: float


def cluster_stabilizer(j: int, L: int) -> UProduct:
    """K_j for the linear cluster state (j is 1-based, as usual)."""
    if not 1 <= j <= L:
        raise ValueError(f"stabilizer index {j} out of range 1..{L}")
    factors = [0] * L
    if j == 1:
        factors[0], factors[1] = 1, 2
    elif j == L:
        factors[L - 2], factors[L - 1] = 2, 1
    else:
        factors[j - 2], factors[j - 1], factors[j] = 2, 1, 2
    return UProduct(sign=1, factors=tuple(factors))


def _u_product_multiply(ops: Sequence[UProduct], L: int) -> UProduct:
    """Site-wise product of commuting U products, refactored as +-U^i."""
    mats = [np.eye(2, dtype=complex) for _ in range(L)]
    sign = 1
    for op in ops:  # leftmost factor acts last; accumulate left-to-right
        sign *= op.sign
        for site, f in enumerate(op.factors):
            if f:
                mats[site] = mats[site] @ u_matrix(f)
    factors = []
    for m in mats:
        for i in range(4):
            if np.array_equal(m, u_matrix(i)):
                factors.append(i)
                break
            if np.array_equal(m, -u_matrix(i)):
                factors.append(i)
                sign = -sign
                break
        else:
            raise ValueError("site product is not +-U^i")
    return UProduct(sign=sign, factors=tuple(factors))


def cluster_g_operators(L: int) -> tuple[UProduct, UProduct]:
    """G1, G2 as signed single-site factorizations of K products.

    For an even pair count (L/2 even) the products are
    G1 = prod_j K_{4j-3} K_{4j} and G2 = prod_j K_{4j-2} K_{4j-1}; an
    odd pair count prepends K_{L-1} resp. K_L.  Each site factor lands
    on one of U0..U3, witnessing local-unitary equivalence to the
    Upsilon operators.
    """
    _require_even(L)
    if L < 4:
        raise ValueError("G operators need L >= 4")
    pairs = L // 2
    if pairs % 2 == 0:
        idx1 = [x for j in range(1, pairs // 2 + 1) for x in (4 * j - 3, 4 * j)]
        idx2 = [x for j in range(1, pairs // 2 + 1) for x in (4 * j - 2, 4 * j - 1)]
    else:
        m = (pairs - 1) // 2
        idx1 = [L - 1] + [x for j in range(1, m + 1) for x in (4 * j - 3, 4 * j)]
        idx2 = [L] + [x for j in range(1, m + 1) for x in (4 * j - 2, 4 * j - 1)]
    g1 = _u_product_multiply([cluster_stabilizer(j, L) for j in idx1], L)
    g2 = _u_product_multiply([cluster_stabilizer(j, L) for j in idx2], L)
    return g1, g2


def stabilizer_report(state: PureState, op: UProduct, name: str) -> StabilizerReport:
    """Eigenvalue estimate <s|Op|s> and the residual ||Op s - ev s||."""
    applied = op.apply(state)
    ev = float(np.real(inner_product(state, applied)))
    deviation = float(np.linalg.norm(applied.amplitudes - ev * state.amplitudes))
    return StabilizerReport(name=name, eigenvalue=ev, deviation=deviation)


# ---------------------------------------------------------------------------
# AKLT ground state in the virtual-qubit picture


def _triplet_projector() -> np.ndarray:
    singlet = bell_state(BellLabel(-1, -1)).amplitudes
    return np.eye(4, dtype=complex) - np.outer(singlet, singlet.conj())


def _aklt_build(L: int) -> tuple[PureState, float]:
    _require_even(L)
    if L < 4:
        raise ValueError("AKLT construction needs L >= 4")
    n_pairs = L // 2
    state = bell_basis_state([BellLabel(-1, -1)] * n_pairs)
    pt = _triplet_projector()
    for r in range(1, L - 2, 2):  # pairs (1,2), (3,4), ..., (L-3,L-2)
        state = apply_two_site(state, pt, r, r + 1)
    nrm = state.norm()
    return normalize(state), nrm


def aklt_state(L: int) -> PureState:
    """AKLT ground state with spin-1/2 boundaries on L virtual qubits.

    Triplet projectors act across the junctions of a singlet product;
    qubits 0 and L-1 are the boundary spin-1/2 sites and each interior
    pair (2r-1, 2r) represents one spin-1 site.
    """
    return _aklt_build(L)[0]


def aklt_projection_norm(L: int) -> float:
    """Norm of the unnormalized projected state (projection diagnostic)."""
    return _aklt_build(L)[1]


def string_order(state: PureState) -> float:
    """String-order parameter in the virtual-qubit representation.

    Evaluates 4 <s^z_1 (x)[prod_k exp(i pi S^z_k)] (x) s^z_(end)> where
    the boundary spin operators are U2/2 on the first and last qubits
    and exp(i pi S^z) = -U2 (x) U2 on each interior virtual pair.  The
    result lies in [-1, 1] and equals -(-1)^(L/2) <Upsilon^2>.
    """
    L = state.num_sites
    if state.local_dim != 2 or L % 2 != 0:
        raise ValueError("string order needs an even number of qubit sites")
    n_pairs = L // 2
    out = state
    u2 = u_matrix(2)
    for site in range(L):
        out = apply_local(out, u2, site)
    scalar = 4.0 * 0.5 * 0.5 * (-1.0) ** (n_pairs - 1)
    return float(scalar * np.real(inner_product(state, out)))
