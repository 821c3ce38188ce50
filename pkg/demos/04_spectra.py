#!/usr/bin/env python3
"""The three energy ladders and the degeneracy-lifting term.

In natural units (hbar = m = e = B = 1):

  E_QM  = n_r + (|l| - l)/2 + 1/2 + k_z^2/2      (textbook, l-degenerate)
  E_EL  = n_r + 1/2 + k_z^2/2                    (invariant route, eB > 0)
  E_CBR = (2 n_r + sqrt(l^2 + 1/4) + 1)/2 + k_z^2/2

The shell-regularised ladder carries the non-cyclotronic term
(omega_c/2) sqrt(l^2 + 1/4) that lifts the l-degeneracy; for l >= 1 the
three ladders are ordered E_QM <= E_EL <= E_CBR.
"""

from bmlandau import (
    PhysParams,
    QuantumNumbers,
    default_ordering_grid,
    degeneracy_splitting,
    energy_cbr,
    energy_el,
    energy_qm,
    spectral_ordering_check,
)

params = PhysParams()

print("lowest states (k_z = 0):")
print(f"{'n_r':>4} {'l':>3} {'E_QM':>10} {'E_EL':>10} {'E_CBR':>12}")
for n_r in range(3):
    for l in range(0, 4):
        qn = QuantumNumbers(n_r, l, 0.0)
        print(
            f"{n_r:>4} {l:>3} {energy_qm(qn, params):>10.6f} "
            f"{energy_el(qn, params):>10.6f} {energy_cbr(qn, params):>12.8f}"
        )

print("\ndegeneracy-lifting term (omega_c/2) sqrt(l^2 + 1/4):")
for l in range(0, 6):
    print(f"  l = {l}: {degeneracy_splitting(l, params):.8f}")

report = spectral_ordering_check(default_ordering_grid(), params)
print(
    f"\nordering sweep n_r in [0,10], l in [1,10], k_z in (0,1,2): "
    f"{report.checked} states, {len(report.violations)} violations"
)

qn = QuantumNumbers(0, 1, 0.0)
print(
    f"\nreference triple at (0, 1, 0): "
    f"({energy_qm(qn, params)}, {energy_el(qn, params)}, {energy_cbr(qn, params):.7f})"
)
