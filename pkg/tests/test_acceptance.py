"""End-to-end acceptance checks, one test per criterion.

Each test logs a PASS/FAIL line through the ``criterion`` fixture; the lines
are collected in the "acceptance criteria" section of the pytest summary.
"""

import math
import time

import numpy as np
import pytest

from neelstates import (
    Lattice,
    ModelContext,
    NeelAngles,
    Params,
    alpha_beta,
    angle_invariants,
    bond_residual,
    check_eigenstate,
    closed_form_params,
    coherent_state,
    condition_residual,
    energy_per_site,
    expectation,
    factorizing_field_scan,
    field_normalizing_scale,
    solve_angles,
    solve_params,
    spin_matrices,
)
from neelstates.spin_algebra import as_spin, wrap_angle

from sampling import random_angles

GRID = [
    (1, "1/2", (4,)),
    (1, "1/2", (6,)),
    (1, "1", (4,)),
    (1, "3/2", (4,)),
    (2, "1/2", (2, 4)),
    (3, "1/2", (2, 2, 2)),
]
PER_CELL = 25
CONTEXTS = [ModelContext(d, s) for d in (1, 2, 3) for s in ("1/2", "1", "3/2", "5/2")]


def _projected_params(rng, ctx):
    """Random couplings, then the field magnitude along a random direction found by a scan."""
    while True:
        J = rng.uniform(-1, 1, 3)
        sums = np.array([J[0] + J[1], J[0] + J[2], J[1] + J[2]])
        if np.min(np.abs(sums)) < 0.05 or abs(J.sum()) < 0.1:
            continue
        hdir = rng.normal(size=3)
        hdir /= np.linalg.norm(hdir)
        q = hdir[0] ** 2 / (sums[0] * sums[1]) + hdir[1] ** 2 / (sums[0] * sums[2]) + hdir[2] ** 2 / (sums[1] * sums[2])
        if q < 0.05:
            continue
        t_max = 2 * ctx.two_ds / math.sqrt(q)
        roots = factorizing_field_scan(Params(*J), np.r_[0, 0, 0, hdir], ctx, t_range=(0.0, t_max), samples=201)
        return Params(*J, *(roots[0] * hdir))


def _grid_runs(rng):
    for d, s, extents in GRID:
        ctx = ModelContext(d, s)
        lat = Lattice(extents)
        for _ in range(PER_CELL):
            p = _projected_params(rng, ctx)
            yield ctx, lat, p


@pytest.fixture(scope="module")
def grid_results():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    rows = []
    for ctx, lat, p in _grid_runs(rng):
        angles = solve_angles(p, ctx)
        rows.append(
            (
                ctx,
                lat,
                p,
                check_eigenstate(p, lat, ctx.s, angles),
                check_eigenstate(p, lat, ctx.s, angles.swapped()),
            )
        )
    return rows, time.perf_counter() - start


def test_criterion_1_eigenstate_grid(criterion, grid_results):
    with criterion("1 eigenstate grid") as info:
        rows, elapsed = grid_results
        worst = max(max(c.residual / c.norm_h_psi, w.residual / w.norm_h_psi) for *_, c, w in rows)
        info["detail"] = f"runs={len(rows)} worst rel residual={worst:.2e} time={elapsed:.2f}s"
        assert len(rows) == len(GRID) * PER_CELL
        for ctx, lat, p, c, w in rows:
            assert c.passes(1e-10), (ctx, lat, p, c)
            assert w.passes(1e-10), (ctx, lat, p, w)
        assert elapsed <= 60.0


def test_criterion_2_energy(criterion, grid_results):
    with criterion("2 energy eigenvalue") as info:
        rows, _ = grid_results
        worst = 0.0
        for ctx, lat, p, c, w in rows:
            target = lat.num_sites * energy_per_site(p, ctx)
            for chk in (c, w):
                worst = max(worst, abs(chk.expectation - target) / abs(target))
        info["detail"] = f"worst rel error={worst:.2e}"
        assert worst <= 1e-10


def _angle_error(a: NeelAngles, b: NeelAngles) -> float:
    def err(x, y):
        return max(
            abs(x.dir1.theta - y.dir1.theta),
            abs(wrap_angle(x.dir1.phi - y.dir1.phi)),
            abs(x.dir2.theta - y.dir2.theta),
            abs(wrap_angle(x.dir2.phi - y.dir2.phi)),
        )

    return min(err(a, b), err(a, b.swapped()))


@pytest.fixture(scope="module")
def ray_samples():
    rng = np.random.default_rng(3)
    out = []
    for i in range(1000):
        ctx = CONTEXTS[i % len(CONTEXTS)]
        angles = random_angles(rng)
        out.append((ctx, angles, solve_params(angles, ctx)))
    return out


def test_criterion_3_roundtrip(criterion, ray_samples):
    with criterion("3 angles round trip") as info:
        worst = 0.0
        for ctx, angles, ray in ray_samples:
            assert ray.k == 1
            p = ray.representative or ray.member([1.0])
            worst = max(worst, _angle_error(angles, solve_angles(p, ctx)))
        info["detail"] = f"pairs={len(ray_samples)} worst angle error={worst:.2e}"
        assert worst <= 1e-9


def test_criterion_4_closed_form(criterion, ray_samples):
    with criterion("4 closed-form cross-check") as info:
        worst_mixed = worst_abs = 0.0
        count = 0
        for ctx, angles, ray in ray_samples:
            inv = angle_invariants(angles)
            if abs(inv.chi) <= 1e-3:
                continue
            count += 1
            got = ray.representative.as_array()
            ref = closed_form_params(inv, ctx)
            diff = np.abs(got - ref)
            worst_abs = max(worst_abs, float(diff.max()))
            worst_mixed = max(worst_mixed, float(np.max(diff / np.maximum(1.0, np.abs(ref)))))
        info["detail"] = f"pairs={count} worst mixed error={worst_mixed:.2e} worst abs error={worst_abs:.2e}"
        assert count >= 900
        assert worst_mixed <= 1e-9


def test_criterion_5_condition_closure(criterion, ray_samples):
    with criterion("5 condition closure") as info:
        worst = worst_lam = 0.0
        for ctx, _, ray in ray_samples:
            p = ray.member([1.0])
            lam = field_normalizing_scale(p, ctx)
            worst_lam = max(worst_lam, abs(lam - 1.0))
            worst = max(worst, abs(condition_residual(p.with_field_scaled(lam), ctx)), abs(condition_residual(p, ctx)))
        info["detail"] = f"worst |residual|={worst:.2e} worst |lambda-1|={worst_lam:.2e}"
        assert worst <= 1e-8


def test_criterion_6_spin_algebra(criterion):
    with criterion("6 spin algebra") as info:
        rng = np.random.default_rng(6)
        worst = 0.0
        for s in ("1/2", "1", "3/2", "2", "5/2"):
            sx, sy, sz = spin_matrices(s)
            ss = as_spin(s).s
            eye = np.eye(sx.shape[0])
            for a, b, c in ((sx, sy, sz), (sy, sz, sx), (sz, sx, sy)):
                worst = max(worst, np.abs(a @ b - b @ a - 1j * c).max())
            worst = max(worst, np.abs(sx @ sx + sy @ sy + sz @ sz - ss * (ss + 1) * eye).max())
            for _ in range(100):
                dr = random_angles(rng, 0.0, math.pi).dir1
                psi = coherent_state(s, dr)
                mean = np.array([expectation(psi, op) for op in (sx, sy, sz)])
                worst = max(worst, np.abs(mean - ss * dr.unit_vector).max())
        info["detail"] = f"worst deviation={worst:.2e}"
        assert worst <= 1e-12


def _angles_from_vieta(alpha, beta) -> NeelAngles:
    z = np.roots([1.0, -beta, alpha])
    return NeelAngles.from_radians(2 * math.atan(abs(z[0])), np.angle(z[0]), 2 * math.atan(abs(z[1])), np.angle(z[1]))


def test_criterion_7_typo_arbitration(criterion):
    with criterion("7 hz coefficient arbitration") as info:
        rng = np.random.default_rng(7)
        worst = 0.0
        for d in (1, 2, 3):
            for s in ("1/2", "1"):
                ctx = ModelContext(d, s)
                for _ in range(20):
                    p = _projected_params(rng, ctx)
                    a = _angles_from_vieta(*alpha_beta(p, ctx))
                    worst = max(worst, bond_residual(p, ctx, a), bond_residual(p, ctx, a.swapped()))

        # the alternative reading keeps the product of roots and puts -2hz in the sum-of-roots bracket
        ctx = ModelContext(2, "1/2")
        g = ctx.two_ds
        control = []
        for _ in range(20):
            p = _projected_params(rng, ctx)
            if abs(p.hz) < 0.1:
                continue
            jx, jy, jz, hx, hy, hz = p.as_array()
            fm, fp = complex(hx, -hy), complex(hx, hy)
            den = g * g * (jx * jx - jy * jy) - fm * fm
            alpha, _ = alpha_beta(p, ctx)
            beta_alt = g * ((jx - jy) * fp - fm * (jx + jy + 2 * jz - 2 * hz)) / den
            control.append(bond_residual(p, ctx, _angles_from_vieta(alpha, beta_alt)))
        info["detail"] = f"worst residual={worst:.2e} control min residual={min(control):.2e}"
        assert worst <= 1e-10
        assert min(control) > 1e-3


def test_criterion_8a_antiparallel_nullspace_dim(criterion):
    with criterion("8a antiparallel nullspace dimension") as info:
        angles = NeelAngles.from_radians(math.pi / 2, 0.0, math.pi / 2, math.pi)
        ray = solve_params(angles, ModelContext(1, "1/2"))
        info["detail"] = f"expected 2, got {ray.k}"
        assert ray.k == 2


def test_criterion_8b_antiparallel_member(criterion):
    with criterion("8b antiparallel member eigenstate") as info:
        angles = NeelAngles.from_radians(math.pi / 2, 0.0, math.pi / 2, math.pi)
        ctx = ModelContext(1, "1/2")
        lat = Lattice((4,))
        worst = 0.0
        for jx, jz in ((1.0, 0.5), (1.0, -0.3), (0.7, 0.0), (-1.2, 0.9)):
            p = Params(jx, -jz, jz, ctx.two_ds * math.sqrt(jx * jx - jz * jz), 0, 0)
            chk = check_eigenstate(p, lat, ctx.s, angles)
            worst = max(worst, chk.residual / chk.norm_h_psi)
            assert chk.passes(1e-10)
        info["detail"] = f"worst rel residual={worst:.2e}"


def test_criterion_9_xy_chain_field(criterion):
    with criterion("9 analytic factorizing field") as info:
        ctx = ModelContext(1, "1/2")
        roots = factorizing_field_scan(Params(1.0, 0.5, 0.0), [0, 0, 0, 0, 0, 1], ctx, t_range=(0.0, 5.0))
        expected = math.sqrt((0.0 + 1.0) * (0.0 + 0.5)) * ctx.two_ds
        err = abs(roots[0] - expected)
        info["detail"] = f"root={roots[0]!r} error={err:.2e}"
        assert len(roots) == 1
        assert err <= 1e-10
