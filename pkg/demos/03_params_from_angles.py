"""From a chosen pair of directions back to the Hamiltonians that support it.

For generic angles the answer is a single ray in the six-dimensional
parameter space. Pinning Jx = 1 gives one representative, which can be
compared with the explicit formula and fed back into the forward solver.
"""
import numpy as np

from neelstates import (
    ModelContext,
    NeelAngles,
    angle_invariants,
    closed_form_params,
    solve_angles,
    solve_params,
)

ctx = ModelContext(d=2, s="1/2")
angles = NeelAngles.from_radians(0.9, 0.4, 2.1, -1.3)
ray = solve_params(angles, ctx)
print("nullspace dimension:", ray.k)
print("singular values:", np.array2string(ray.singular_values, precision=3))
print("Jx=1 representative:", ray.representative.as_dict())
print("explicit formula:   ", closed_form_params(angle_invariants(angles), ctx))
print("recovered angles:", solve_angles(ray.representative, ctx).as_tuple())
print("original angles: ", angles.canonical().as_tuple())

# antiparallel spins in the xy plane admit a larger family of Hamiltonians
flat = solve_params(NeelAngles.from_radians(np.pi / 2, 0.0, np.pi / 2, np.pi), ctx)
print("antiparallel transverse: dimension", flat.k)
print(np.round(flat.basis, 6))
