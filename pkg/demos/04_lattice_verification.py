"""Direct check on small lattices: H|N> = N eps |N>.

We draw couplings, pick a field direction and scan the field magnitude
until the factorization condition holds. The resulting product state is
then checked against the full Hamiltonian on a periodic lattice.
"""
import numpy as np

from neelstates import (
    Lattice,
    ModelContext,
    Params,
    check_eigenstate,
    factorizing_field_scan,
    solve_angles,
)

rng = np.random.default_rng(0)
for d, s, extents in [(1, "1/2", (6,)), (1, 1, (4,)), (2, "1/2", (2, 4)), (3, "1/2", (2, 2, 2))]:
    ctx = ModelContext(d, s)
    lat = Lattice(extents)
    J = np.array([1.0, 0.4, -0.2])
    hdir = rng.normal(size=3)
    hdir /= np.linalg.norm(hdir)
    t = factorizing_field_scan(Params(*J), np.r_[0, 0, 0, hdir], ctx, t_range=(0, 20))[0]
    p = Params(*J, *(t * hdir))
    angles = solve_angles(p, ctx)
    for label, a in (("N", angles), ("swapped", angles.swapped())):
        chk = check_eigenstate(p, lat, ctx.s, a)
        print(f"d={d} s={s} L={extents} {label:8s} |field|={t:.6f} residual={chk.residual:.2e} "
              f"<H>={chk.expectation:.10f} N*eps={chk.energy:.10f}")
