"""Lattice operations of a simplicial cone.

With generator matrix ``A`` the cone order is the coordinatewise order of
``A^{-1} x``, so ``x+ = A max(A^{-1} x, 0)`` and the other operations follow
from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .avn import AvnOperator, Lattice
from .cones import ConeSpec
from .errors import UnsupportedRepresentation
from .numeric import as_batch, unbatch


@dataclass(frozen=True, eq=False)
class YoudineLattice:
    cone: ConeSpec
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.cone.kind != "simplicial":
            raise UnsupportedRepresentation("lattice operations exist only for simplicial cones")
        object.__setattr__(self, "inverse", np.linalg.inv(self.cone.generators))

    @property
    def dim(self) -> int:
        return self.cone.dim

    def coordinates(self, x) -> np.ndarray:
        X, single = as_batch(x, self.dim)
        return unbatch(X @ self.inverse.T, single)

    def pos_part(self, x) -> np.ndarray:
        X, single = as_batch(x, self.dim)
        coef = np.maximum(X @ self.inverse.T, 0.0)
        return unbatch(coef @ self.cone.generators.T, single)

    def neg_part(self, x) -> np.ndarray:
        return self.pos_part(-np.asarray(x, dtype=np.float64))

    def join(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return x + self.pos_part(np.asarray(y, dtype=np.float64) - x)

    def meet(self, x, y) -> np.ndarray:
        return -self.join(-np.asarray(x, dtype=np.float64), -np.asarray(y, dtype=np.float64))

    def abs_value(self, x) -> np.ndarray:
        return self.pos_part(x) + self.neg_part(x)


def pos_part(lat: YoudineLattice, x) -> np.ndarray:
    return lat.pos_part(x)


def join(lat: YoudineLattice, x, y) -> np.ndarray:
    return lat.join(x, y)


def meet(lat: YoudineLattice, x, y) -> np.ndarray:
    return lat.meet(x, y)


def abs_value(lat: YoudineLattice, x) -> np.ndarray:
    return lat.abs_value(x)


def lattice_avn(lat: YoudineLattice | ConeSpec) -> AvnOperator:
    """The positive-part operator as an operator with cone range ``lat.cone``."""
    if isinstance(lat, ConeSpec):
        lat = YoudineLattice(lat)
    return AvnOperator(
        map=lat.pos_part,
        cone_range=lat.cone,
        construction=Lattice(lat),
        claimed_properties=frozenset({"proper", "isotone", "lattice"}),
        null_cone=ConeSpec.negated(lat.cone),
        name=f"lattice positive part on {lat.cone.describe()}",
    )
