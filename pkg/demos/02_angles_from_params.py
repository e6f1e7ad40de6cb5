"""From Hamiltonian parameters to the two sublattice directions.

The transverse-field XY chain with Jx=1, Jy=0.5 factorizes at hz = sqrt(1/2).
There the two directions are mirror images in the xz plane.
"""
import math

from neelstates import ModelContext, Params, condition_residual, energy_per_site, solve_angles

ctx = ModelContext(d=1, s="1/2")
p = Params(1.0, 0.5, 0.0, hz=math.sqrt(0.5))
print("condition residual:", condition_residual(p, ctx))

angles = solve_angles(p, ctx)
for k, dr in enumerate((angles.dir1, angles.dir2), start=1):
    print(f"sublattice {k}: theta = {dr.theta:.12f}, phi = {dr.phi:+.12f}")
print("energy per site:", energy_per_site(p, ctx))

# the same couplings in three dimensions at spin 1 need a field 6 times larger
ctx3 = ModelContext(d=3, s=1)
p3 = p.with_field_scaled(ctx3.two_ds / ctx.two_ds)
print("d=3, s=1 residual:", condition_residual(p3, ctx3))
print("d=3, s=1 angles:", solve_angles(p3, ctx3).as_tuple())
