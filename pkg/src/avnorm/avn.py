"""The asymmetric vector norm operator value and its construction tags.

An :class:`AvnOperator` is a map ``Q: R^n -> K`` together with its cone
range ``K``, the cone ``K^Q = {x : Qx = 0}`` where known, and the set of
properties its construction claims. Claims are hints for the verification
engine; nothing in the package relies on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .cones import ConeSpec
from .numeric import as_batch, unbatch

PROPERTIES = frozenset({"proper", "isotone", "lattice"})


@dataclass(frozen=True)
class RangeOne:
    norm: Any
    x: np.ndarray
    tag = "range-one"


@dataclass(frozen=True)
class Suspension:
    norm: Any
    tag = "suspension"


@dataclass(frozen=True)
class FromProperCone:
    cone: ConeSpec
    frame: Any
    gauge: Any
    u: Any = None
    tag = "from-cone"


@dataclass(frozen=True)
class Lattice:
    lattice: Any
    tag = "lattice"


@dataclass(frozen=True)
class Projection:
    cone: ConeSpec
    tag = "projection"


@dataclass(frozen=True)
class Complement:
    inner: "AvnOperator"
    tag = "complement"


@dataclass(frozen=True)
class Mix:
    weights: tuple[float, ...]
    operators: tuple["AvnOperator", ...]
    tag = "mix"


@dataclass(frozen=True)
class Custom:
    description: str
    tag = "custom"


@dataclass(frozen=True, eq=False)
class AvnOperator:
    """``map`` acts on ``(N, n)`` batches; :meth:`apply` also takes single vectors."""

    map: Callable[[np.ndarray], np.ndarray]
    cone_range: ConeSpec
    construction: Any
    claimed_properties: frozenset = field(default_factory=frozenset)
    null_cone: ConeSpec | None = None
    name: str = ""

    def __post_init__(self):
        unknown = set(self.claimed_properties) - PROPERTIES
        if unknown:
            raise ValueError(f"unknown claimed properties {sorted(unknown)}")

    @property
    def dim(self) -> int:
        return self.cone_range.dim

    def apply(self, y) -> np.ndarray:
        Y, single = as_batch(y, self.dim)
        return unbatch(self.map(Y), single)

    __call__ = apply

    def describe(self) -> str:
        return self.name or self.construction.tag
