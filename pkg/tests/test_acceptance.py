"""Acceptance suite: one test per headline criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""

import time
from itertools import product

import numpy as np

from bellport.algebra import SIGNS, delta_sign, epsilon_sign, u_matrix, x_operator
from bellport.bell import (
    BELL_CLASSES,
    BELL_LABELS,
    bell_basis_state,
    bell_state,
    class_projector_apply,
    decompose_classes,
    labels_class,
    upsilon_expectations,
)
from bellport.channels import (
    aklt_state,
    cluster_g_operators,
    cluster_stabilizer,
    cluster_state,
    heisenberg_ring_ground,
    singlet_random,
    stabilizer_report,
    string_order,
)
from bellport.measure import ImpossibleOutcomeError, measure_sequence
from bellport.protocol import (
    fig2_run,
    fig2_violations,
    min_fidelity_scan,
    order_parameter,
    teleport,
)
from bellport.qudit import qudit_class_projector_apply, qudit_teleport
from bellport.states import (
    PureState,
    normalize,
    random_product_state,
    random_state,
    tensor,
)
from bellport.threequbit import BELL3_LABELS, bell3_state, teleport3, theta_rank
from bellport.algebra import x_tilde_operator


def _report(num, name, ok, detail=""):
    line = f"[criterion {num:02d}] {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _all_branches(n_pairs):
    return list(product(BELL_LABELS, repeat=n_pairs))


def test_criterion_01_single_bell_teleport():
    with _Timer() as t:
        client = random_state(1, 2, 1001)
        ok = True
        for lab in BELL_LABELS:
            channel = bell_state(lab)
            for outcome in BELL_LABELS:
                res = teleport(client, channel, lab, forced=[outcome])
                ok &= abs(res.fidelity - 1.0) <= 1e-10
                ok &= abs(res.record.joint_probability - 0.25) <= 1e-12
    ok &= t.elapsed < 1.0
    _report(1, "single-Bell teleport", ok, f"{t.elapsed:.2f}s")


def test_criterion_02_operator_algebra_properties():
    with _Timer() as t:
        ok = True
        for j, k, p, q in product(SIGNS, repeat=4):  # p1, 16 tuples
            x = x_operator(j, k, p, q)
            ok &= np.array_equal(x, epsilon_sign(j, k, p, q) * x_operator(p, q, j, k))
            ok &= np.array_equal(x, x_operator(p, q, j, k).conj().T)
        for j, k, p, q, a, b in product(SIGNS, repeat=6):  # p2, 64 tuples
            ok &= np.array_equal(
                x_operator(j, k, p, q) @ x_operator(p, q, a, b),
                x_operator(j, k, a, b),
            )
        for j, k, p, q, a, b, c, d in product(SIGNS, repeat=8):  # p3-p5, 256 each
            lhs = x_operator(j, k, p, q) @ x_operator(a, b, c, d)
            p3 = (
                epsilon_sign(j, k, p, q)
                * epsilon_sign(j, b, p, q)
                * x_operator(j, b, p, q)
                @ x_operator(a, k, c, d)
            )
            p4 = (
                delta_sign(a, k, j, k)
                * delta_sign(a, b, j, b)
                * epsilon_sign(j, k, p, q)
                * epsilon_sign(a, k, p, q)
                * x_operator(a, k, p, q)
                @ x_operator(j, b, c, d)
            )
            p5 = (
                delta_sign(j, k, p, q)
                * delta_sign(a, b, c, d)
                * delta_sign(j * a, k * b, p * c, q * d)
                * epsilon_sign(j, b, p, d)
                * x_operator(j * a, k * b, p * c, q * d)
            )
            ok &= np.array_equal(lhs, p3)
            ok &= np.array_equal(lhs, p4)
            ok &= np.array_equal(lhs, p5)
    ok &= t.elapsed < 1.0
    _report(2, "operator algebra (p1)-(p5) exact", ok, f"{t.elapsed:.2f}s")


def test_criterion_03_perfect_channel_basis():
    with _Timer() as t:
        client = random_state(1, 2, 1003)
        rng = np.random.default_rng(1003)
        pairings = [((0, 1), (2, 3))]
        for _ in range(2):
            sites = list(rng.permutation(5))
            pairings.append(((sites[0], sites[1]), (sites[2], sites[3])))
        ok = True
        checked = 0
        for labels in _all_branches(2):  # 16 basis products
            channel = bell_basis_state(labels)
            cls = labels_class(labels)
            for pairing in pairings:
                for branch in _all_branches(2):
                    try:
                        res = teleport(client, channel, cls, pairing, forced=branch)
                    except ImpossibleOutcomeError:
                        continue  # physically unreachable branch
                    checked += 1
                    ok &= abs(res.fidelity - 1.0) <= 1e-10
        ok &= checked >= 16 * 16  # default pairing alone reaches all branches
        # aggregate-class probabilities for random in-class channels
        for cls in BELL_CLASSES:
            channel = normalize(
                class_projector_apply(random_state(4, 2, rng), cls)
            )
            total = tensor(client, channel)
            class_prob = {c: 0.0 for c in BELL_CLASSES}
            for branch in _all_branches(2):
                try:
                    record, _ = measure_sequence(
                        total, [(0, 1), (2, 3)], forced=list(branch)
                    )
                except ImpossibleOutcomeError:
                    continue
                class_prob[record.aggregate_class] += record.joint_probability
            ok &= all(abs(p - 0.25) <= 1e-12 for p in class_prob.values())
    ok &= t.elapsed < 10.0
    _report(3, "perfect-channel basis, L=4", ok, f"{checked} branches, {t.elapsed:.2f}s")


def test_criterion_04_singlet_channels():
    with _Timer() as t:
        ok = True
        for n_pairs, L in ((2, 4), (3, 6)):
            expected_cls = ((-1) ** n_pairs, (-1) ** n_pairs)
            for i in range(20):
                channel = singlet_random(n_pairs, seed=2000 + 10 * L + i)
                ok &= decompose_classes(channel).pure_class() == expected_cls
                client = random_state(1, 2, 3000 + i)
                branches = _all_branches(n_pairs)
                count = 0
                for branch in branches:
                    try:
                        res = teleport(client, channel, expected_cls, forced=branch)
                    except ImpossibleOutcomeError:
                        continue
                    count += 1
                    ok &= abs(res.fidelity - 1.0) <= 1e-10
                if L == 4:  # top up to 64 branches with sampled runs
                    rng = np.random.default_rng(4000 + i)
                    for _ in range(64 - count):
                        res = teleport(client, channel, expected_cls, rng=rng)
                        count += 1
                        ok &= abs(res.fidelity - 1.0) <= 1e-10
                ok &= count >= 64
    ok &= t.elapsed < 30.0
    _report(4, "singlet channels, L=4 and L=6", ok, f"{t.elapsed:.2f}s")


def test_criterion_05_appendix_a_probabilities():
    ok = True
    client = random_state(1, 2, 1005)
    for phi in (0.0, 0.3, np.pi / 4, 1.2):
        amps = np.cos(phi) * np.kron(
            bell_state((1, -1)).amplitudes, bell_state((-1, 1)).amplitudes
        ) + np.sin(phi) * np.kron(
            bell_state((-1, 1)).amplitudes, bell_state((1, -1)).amplitudes
        )
        total = tensor(client, PureState(amps))
        class_prob = {c: 0.0 for c in BELL_CLASSES}
        for lab1, lab2 in product(BELL_LABELS, repeat=2):
            expected = (1.0 - lab2.j * lab2.k * np.sin(2 * phi)) / 16.0
            try:
                record, _ = measure_sequence(
                    total, [(0, 1), (2, 3)], forced=[lab1, lab2]
                )
                prob = record.joint_probability
            except ImpossibleOutcomeError:
                prob = 0.0
            ok &= abs(prob - expected) <= 1e-12
            class_prob[labels_class([lab1, lab2])] += prob
        ok &= all(abs(p - 0.25) <= 1e-12 for p in class_prob.values())
    _report(5, "Appendix A outcome probabilities", ok)


def test_criterion_06_fig2_bound_and_coverage():
    with _Timer() as t:
        rows = fig2_run(trials=2000, seed=42)
        violations = fig2_violations(rows)
        omegas = [r.omega for r in rows]
        ok = not violations
        ok &= max(omegas) > 2.5
        ok &= min(omegas) < 0.0
    ok &= t.elapsed < 60.0
    _report(
        6,
        "fidelity/order-parameter scatter",
        ok,
        f"{len(rows)} rows, {len(violations)} violations, "
        f"omega in [{min(omegas):.2f}, {max(omegas):.2f}], {t.elapsed:.1f}s",
    )


def test_criterion_07_efficiency_bounds():
    ok = True
    rng = np.random.default_rng(1007)
    for _ in range(1000):
        s = random_product_state(4, 2, rng)
        ok &= order_parameter(s).efficiency <= 1 / 3 + 1e-12
    for labels in _all_branches(2):
        eff = order_parameter(bell_basis_state(labels)).efficiency
        ok &= abs(eff - 1.0) <= 1e-10
    for _ in range(100):  # per-site identity <U1>^2 + <U2>^2 - <U3>^2 = 1
        v = random_state(1, 2, rng).amplitudes
        evs = [complex(np.vdot(v, u_matrix(a) @ v)) for a in (1, 2, 3)]
        ok &= abs(evs[0] ** 2 + evs[1] ** 2 - evs[2] ** 2 - 1.0) <= 1e-12
    _report(7, "efficiency bounds (product vs class states)", ok)


# Explicit single-site factorizations printed for L = 6 and L = 8; the
# overall signs follow from the site-by-site K products (the L = 8 G1
# listing omits its sign; the stabilizer eigencheck below pins it).
_PRINTED_G = {
    6: {"G1": (1, 2, 2, 3, 3, 2), "G2": (2, 3, 3, 2, 2, 1)},
    8: {"G1": (1, 2, 2, 3, 3, 2, 2, 1), "G2": (2, 3, 3, 2, 2, 3, 3, 2)},
}


def test_criterion_08_cluster_states():
    ok = True
    for L in (4, 6, 8):
        state = cluster_state(L)
        for j in range(1, L + 1):
            rep = stabilizer_report(state, cluster_stabilizer(j, L), f"K{j}")
            ok &= abs(rep.eigenvalue - 1.0) <= 1e-10 and rep.deviation <= 1e-10
        g1, g2 = cluster_g_operators(L)
        if L in _PRINTED_G:
            ok &= g1.factors == _PRINTED_G[L]["G1"]
            ok &= g2.factors == _PRINTED_G[L]["G2"]
        for g in (g1, g2):
            rep = stabilizer_report(state, g, "G")
            ok &= abs(rep.eigenvalue - 1.0) <= 1e-10 and rep.deviation <= 1e-10
        top = max(decompose_classes(state).coefficients.values()) ** 2
        ok &= top < 1.0 - 1e-6
    _report(8, "cluster-state stabilizers and G operators", ok)


def test_criterion_09_aklt():
    ok = True
    for L in (4, 6, 8):
        state = aklt_state(L)
        s = string_order(state)
        ok &= abs(s + 1.0) <= 1e-10
        e2 = upsilon_expectations(state)[1]
        ok &= abs(e2 - (-((-1.0) ** (L // 2))) * s) <= 1e-10
        ok &= decompose_classes(state).pure_class() is not None
    _report(9, "AKLT string order and class purity", ok)


def test_criterion_10_appendix_b_scan():
    with _Timer() as t:
        ok = True
        details = []
        for theta in (0.2, 0.6, 1.0, 1.4):
            res = min_fidelity_scan(theta)
            err = abs(res.minimum - np.cos(theta))
            ok &= err <= 1e-3
            ok &= res.c_mag < 0.05
            ok &= abs(res.a.imag) < 0.05
            details.append(f"theta={theta}: |min-cos|={err:.1e}")
    ok &= t.elapsed < 60.0
    _report(10, "Appendix B minimum-fidelity scan", ok, "; ".join(details))


def test_criterion_11_three_qubit():
    ok = True
    client = random_state(1, 2, 1011)
    for lab in BELL3_LABELS:
        channel = bell3_state(lab)
        for p, q in product(SIGNS, SIGNS):
            full = teleport3(
                client, channel, (lab.j, lab.l), mode="full", forced=(p, q, lab.k * q)
            )
            ok &= abs(full.fidelity - 1.0) <= 1e-10
            red = teleport3(client, channel, (lab.j, lab.l), mode="reduced", forced=(p, q))
            ok &= abs(red.fidelity - 1.0) <= 1e-10
    # Eq-(3qc) identity, entrywise
    for lab in BELL3_LABELS:
        lhs = tensor(client, bell3_state(lab)).amplitudes
        rhs = np.zeros(16, dtype=complex)
        for p, q in product(SIGNS, SIGNS):
            rhs += 0.5 * np.kron(
                bell3_state((p, q, lab.k * q)).amplitudes,
                x_tilde_operator(lab.j, lab.l, p, q) @ client.amplitudes,
            )
        ok &= bool(np.allclose(lhs, rhs, atol=1e-12))
    for kappa in (1, -1):
        rank, _ = theta_rank(kappa)
        ok &= rank == 2
    _report(11, "three-qubit channels (full and reduced)", ok)


def test_criterion_12_qudit():
    ok = True
    for d in (3, 5):
        rng = np.random.default_rng(1012 + d)
        amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        client = PureState(amps / np.linalg.norm(amps), local_dim=d)
        for label in ((0, 0), (1, d - 1)):
            for p, q in product(range(d), repeat=2):
                res = qudit_teleport(client, label, forced=(p, q))
                ok &= abs(res.fidelity - 1.0) <= 1e-10
    # d = 3, L = 4: nine class projectors of rank 9
    d, L = 3, 4
    eye = np.eye(d**L, dtype=complex)
    for J in range(d):
        for K in range(d):
            proj = np.zeros((d**L, d**L), dtype=complex)
            for col in range(d**L):
                proj[:, col] = qudit_class_projector_apply(
                    PureState(eye[:, col], local_dim=d), J, K
                ).amplitudes
            ok &= int(np.linalg.matrix_rank(proj, tol=1e-8)) == d ** (L - 2)
    _report(12, "qudit channels and class dimensions", ok)


def test_criterion_13_heisenberg():
    ok = True
    for L in (4, 6):
        ground = heisenberg_ring_ground(L)
        ok &= abs(order_parameter(ground).efficiency - 1.0) <= 1e-8
        cls = decompose_classes(ground).pure_class(1e-8)
        client = random_state(1, 2, 1013)
        rng = np.random.default_rng(1013 + L)
        for _ in range(20):
            res = teleport(client, ground, cls, rng=rng)
            ok &= abs(res.fidelity - 1.0) <= 1e-8
    _report(13, "Heisenberg ring ground states", ok)
