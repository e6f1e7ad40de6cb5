"""Spin coherent states and their mean spin.

A coherent state points the spin along a unit vector. Its mean spin is
exactly s times that vector, which we check for a few spins and directions.
"""
import numpy as np

from neelstates import Direction, coherent_state, expectation, spin_matrices

for s in ("1/2", "1", "3/2"):
    ops = spin_matrices(s)
    print(f"s = {s}, Sz diagonal = {np.diag(ops.sz).real}")
    for theta, phi in [(0.0, 0.0), (np.pi / 2, 0.0), (1.1, -2.0)]:
        n = Direction(theta, phi)
        psi = coherent_state(s, n)
        mean = np.array([expectation(psi, op).real for op in ops])
        print(f"  theta={theta:.3f} phi={phi:+.3f}  <S> = {np.round(mean, 6)}  n = {np.round(n.unit_vector, 6)}")

# spin 1 on the equator: amplitudes 1/2, 1/sqrt(2), 1/2
print(coherent_state(1, Direction(np.pi / 2, 0.0)).real)
