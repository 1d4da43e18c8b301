"""Edge paths in the Cayley graph and their algebra.

A path is a vertex sequence (g_0, ..., g_k) with each g_i^-1 g_{i+1} a
generator letter.  Concatenation translates the second path so that it
continues from the end of the first:

    p q = (g_0, ..., g_k, g_k h_0^-1 h_1, ..., g_k h_0^-1 h_n)

Inversion reverses the vertex sequence, and powers iterate
concatenation (negative powers invert first; the zeroth power is not
defined).  `phi_extrema` reports the exact min and max of the
homogeneous value over every vertex, the endpoints included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ModelMismatchError
from .exact import ExactReal
from .groups import Generator, GroupElement, edge_letter
from .quasimorphisms import Quasimorphism


@dataclass(frozen=True)
class Path:
    vertices: tuple[GroupElement, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a path needs at least one vertex")
        model = self.vertices[0].model
        for v, w in zip(self.vertices, self.vertices[1:]):
            if v.model != model:
                raise ModelMismatchError("path vertices use different models")
            if v.distance(w) != 1:
                raise ValueError(
                    f"consecutive path vertices {v!r}, {w!r} are not adjacent"
                )

    @property
    def model(self):
        return self.vertices[0].model

    @property
    def origin(self) -> GroupElement:
        return self.vertices[0]

    @property
    def terminus(self) -> GroupElement:
        return self.vertices[-1]

    def __len__(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    def edge_letters(self) -> tuple[Generator, ...]:
        return tuple(
            edge_letter(v, w) for v, w in zip(self.vertices, self.vertices[1:])
        )

    def concat(self, other: "Path") -> "Path":
        if other.model != self.model:
            raise ModelMismatchError("cannot concatenate paths from different models")
        shift = self.terminus * other.origin.inverse()
        return Path(self.vertices + tuple(shift * h for h in other.vertices[1:]))

    def invert(self) -> "Path":
        return Path(tuple(reversed(self.vertices)))

    def power(self, n: int) -> "Path":
        if n == 0:
            raise ValueError("the zeroth power of a path is not defined")
        base = self if n > 0 else self.invert()
        out = base
        for _ in range(abs(n) - 1):
            out = out.concat(base)
        return out

    def translate(self, g: GroupElement) -> "Path":
        """The left translate (g_0 -> g g_0, ...)."""
        return Path(tuple(g * v for v in self.vertices))


def path_from_letters(origin: GroupElement, letters: Iterable[Generator]) -> Path:
    vertices = [origin]
    for gen in letters:
        vertices.append(vertices[-1] * origin.model.generator_element(gen))
    return Path(tuple(vertices))


def straight_path(origin: GroupElement, target: GroupElement) -> Path:
    """The path spelling the normal form of origin^-1 * target, letter
    by letter.  In a free group this is the unique geodesic."""
    return path_from_letters(origin, (origin.inverse() * target).letters())


def phi_extrema(qm: Quasimorphism, path: Path) -> tuple[ExactReal, ExactReal]:
    values = [qm.homogeneous_value(v) for v in path.vertices]
    lo = hi = values[0]
    for v in values[1:]:
        if v < lo:
            lo = v
        if v > hi:
            hi = v
    return lo, hi
