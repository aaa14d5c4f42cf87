"""The teleportation-order parameter and its fidelity lower bound.

The vector of Upsilon expectations (scaled by 1/sqrt(3)) measures how
well a channel's entanglement is ordered for the Bell-measurement
protocol.  Its squared length -- the efficiency -- is 1 exactly on the
perfect-channel classes and at most 1/3 for product states.  The signed
combination Omega_[j:k] lower-bounds the teleportation fidelity via
F >= (Omega - 1) / 2; this script reproduces the scatter experiment and
writes plot-ready data.
"""

from bellport import (
    bell_basis_state,
    cluster_state,
    fig2_run,
    fig2_violations,
    ghz_state,
    order_parameter,
    qubit_ket,
    singlet_random,
)
from bellport.cli import emit_plotdata

print("efficiency of named channels:")
for name, state in [
    ("GHZ(4)", ghz_state(4)),
    ("product |++++>", qubit_ket([1, 1, 1, 1])),
    ("singlet pair product", bell_basis_state([(-1, -1), (-1, -1)])),
    ("random singlet L=6", singlet_random(3, seed=5)),
    ("cluster(4)", cluster_state(4)),
]:
    op = order_parameter(state)
    print(f"  {name:24s} efficiency = {op.efficiency:.6f}")

rows = fig2_run(trials=500, seed=42)
bad = fig2_violations(rows)
omegas = [r.omega for r in rows]
print(f"\nscatter: {len(rows)} rows, omega in [{min(omegas):.2f}, {max(omegas):.2f}],"
      f" bound violations: {len(bad)}")

slack = min(r.fidelity - (r.omega - 1.0) / 2.0 for r in rows)
print(f"minimum slack above the (omega-1)/2 line: {slack:.3e}")

emit_plotdata(rows, "fig2_scatter.dat")
print("wrote fig2_scatter.dat (gnuplot: plot 'fig2_scatter.dat' i 0, '' i 1 w l)")
