"""Where does the Neel energy sit in the full spectrum?

Dense diagonalization of a four-site chain. This only locates the product
state's energy among the eigenvalues; it says nothing general about ground
states.
"""
import math

import numpy as np

from neelstates import Lattice, ModelContext, Params, energy_per_site, spectrum_probe

lat = Lattice((4,))
ctx = ModelContext(1, "1/2")
for p in (Params(1.0, 0.5, 0.0, hz=math.sqrt(0.5)), Params(1.0, 1.0, 1.0, hz=2.0), Params(-1.0, -0.5, 0.0, hz=math.sqrt(0.5))):
    ev = spectrum_probe(p, lat, ctx.s)
    e = lat.num_sites * energy_per_site(p, ctx)
    idx = int(np.argmin(np.abs(ev - e)))
    print(f"J={p.J} hz={p.hz:.4f}: N*eps={e:+.6f}, level {idx} of {len(ev)}, lowest={ev[0]:+.6f}")
