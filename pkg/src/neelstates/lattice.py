"""Periodic d-dimensional cubic lattices with even extents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

__all__ = ["Lattice", "Site", "sites", "directed_bonds", "parity"]


class Site(NamedTuple):
    flat: int
    coords: tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """Cubic lattice of size ``L_1 x ... x L_d`` with periodic wrap.

    Every extent must be even so the lattice splits into two sublattices.
    """

    extents: tuple[int, ...]

    def __post_init__(self):
        ext = tuple(int(x) for x in np.atleast_1d(self.extents))
        if not ext:
            raise ValueError("a lattice needs at least one dimension")
        for L in ext:
            if L <= 0 or L % 2:
                raise ValueError(f"extents must be positive and even, got {ext}")
        object.__setattr__(self, "extents", ext)

    @property
    def d(self) -> int:
        return len(self.extents)

    @property
    def num_sites(self) -> int:
        return math.prod(self.extents)

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for L in reversed(self.extents):
            out.append(acc)
            acc *= L
        return tuple(reversed(out))

    def flat_index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.d:
            raise ValueError(f"expected {self.d} coordinates, got {len(coords)}")
        return sum((c % L) * st for c, L, st in zip(coords, self.extents, self.strides))

    def coords(self, flat: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(flat, self.extents))

    def hilbert_dim(self, local_dim: int) -> int:
        return local_dim**self.num_sites


def sites(lat: Lattice) -> list[Site]:
    """All sites in row-major flat order."""
    return [Site(k, lat.coords(k)) for k in range(lat.num_sites)]


def directed_bonds(lat: Lattice) -> list[tuple[Site, Site]]:
    """One bond ``(l, l + e_i)`` per site and direction, wrapped periodically.

    The list has exactly ``N * d`` entries, ordered by site then direction.
    For an extent of 2 the same geometric pair shows up twice, once from
    each end.
    """
    bonds = []
    for site in sites(lat):
        for i in range(lat.d):
            nxt = list(site.coords)
            nxt[i] = (nxt[i] + 1) % lat.extents[i]
            nxt = tuple(nxt)
            bonds.append((site, Site(lat.flat_index(nxt), nxt)))
    return bonds


def parity(site) -> int:
    """Sublattice label ``sum(coords) mod 2``; accepts a Site or a coordinate tuple."""
    coords = site.coords if isinstance(site, Site) else site
    return int(sum(coords)) % 2
