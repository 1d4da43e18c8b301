"""Windowed group-ring chains over a Cayley 2-complex.

A full Novikov-style completion keeps formal sums with finitely many
terms below every level of the potential.  At desk scale we work with
the only honest finite shadow of that object: a chain records exact
integer coefficients for every cell whose value is below a window W
and says nothing about higher cells.  Every operation computes the
window on which its output is still exact instead of guessing.

The complex has the group elements as 0-cells, one edge orbit per
positive generator, and one square orbit per commuting generator pair
(free-times-abelian and abelian-abelian; a free group has no squares).
The value of a cell is the minimum of the homogeneous quasimorphism
over its corners.

On top of the chain arithmetic sit the desk-scale homology probes:
`ray_cycle` builds the 1-cycle formed by a connecting path and two
truncated rays along a positive-direction element, `build_zs_cycle`
compares the two standard paths from c^n to s c^n,
`windowed_boundary_solve` decides ∂y ≡ z below the window by exact
integer elimination, and `keep_negative_and_extract_path` turns a
filling into a connecting path through non-negative levels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import CapExceededError, ExtractionError, ModelMismatchError
from .exact import ExactReal, ZERO, exact_min
from .groups import Generator, GroupElement, GroupModel
from .intsolve import (
    UnsatCertificate,
    check_unsat_certificate,
    solve_integer_system,
)
from .paths import Path, path_from_letters
from .quasimorphisms import Quasimorphism
from .rips import components_from_edges

RAY_STEP_CAP = 100_000
DEFAULT_CELL_CAP = 50_000

Cell = tuple


class CayleyComplex:
    """Cells, values and boundaries of the Cayley 2-complex of a model,
    measured by a homogeneous quasimorphism with a known defect bound.

    Cells are tuples: ("v", free, ab), ("e", free, ab, i) for the edge
    from g to g s_i, and ("f", free, ab, t) for the commutation square
    of the t-th commuting pair based at g.
    """

    def __init__(self, qm: Quasimorphism, defect_bound: ExactReal):
        if defect_bound < ZERO:
            raise ValueError("defect bound must be non-negative")
        self.qm = qm
        self.model: GroupModel = qm.model
        self.defect = defect_bound
        self.positive = self.model.positive_generators()
        types = []
        for i in range(len(self.positive)):
            for j in range(i + 1, len(self.positive)):
                both_free = self.model.is_free_index(i) and self.model.is_free_index(j)
                if not both_free:
                    types.append((i, j))
        self.square_types: tuple[tuple[int, int], ...] = tuple(types)
        self._values: dict[Cell, ExactReal] = {}

    # -- cells ---------------------------------------------------------

    def element(self, cell: Cell) -> GroupElement:
        return GroupElement(self.model, cell[1], cell[2])

    def vertex_cell(self, g: GroupElement) -> Cell:
        return ("v", g.free, g.ab)

    def edge_cell(self, g: GroupElement, index: int) -> Cell:
        return ("e", g.free, g.ab, index)

    def face_cell(self, g: GroupElement, type_index: int) -> Cell:
        return ("f", g.free, g.ab, type_index)

    def dimension_of(self, cell: Cell) -> int:
        return {"v": 0, "e": 1, "f": 2}[cell[0]]

    def corners(self, cell: Cell) -> tuple[GroupElement, ...]:
        g = self.element(cell)
        if cell[0] == "v":
            return (g,)
        if cell[0] == "e":
            s = self.model.generator_element(self.positive[cell[3]])
            return (g, g * s)
        i, j = self.square_types[cell[3]]
        x = self.model.generator_element(self.positive[i])
        y = self.model.generator_element(self.positive[j])
        return (g, g * x, g * y, g * x * y)

    def value(self, cell: Cell) -> ExactReal:
        got = self._values.get(cell)
        if got is None:
            got = exact_min(self.qm.homogeneous_value(v) for v in self.corners(cell))
            self._values[cell] = got
        return got

    def cell_sort_key(self, cell: Cell):
        g = self.element(cell)
        index = cell[3] if len(cell) > 3 else -1
        return (self.dimension_of(cell), g.sort_key(), index)

    def describe_cell(self, cell: Cell) -> str:
        g = self.element(cell)
        if cell[0] == "v":
            return g.word_str()
        if cell[0] == "e":
            name = self.model.generator_name(self.positive[cell[3]])
            return f"{g.word_str()} | {name}"
        i, j = self.square_types[cell[3]]
        ni = self.model.generator_name(self.positive[i])
        nj = self.model.generator_name(self.positive[j])
        return f"{g.word_str()} | [{ni},{nj}]"

    # -- boundaries and drops ------------------------------------------

    def boundary_of_cell(self, cell: Cell) -> dict[Cell, int]:
        if cell[0] == "v":
            raise ValueError("0-cells have no boundary")
        g = self.element(cell)
        if cell[0] == "e":
            s = self.model.generator_element(self.positive[cell[3]])
            out: dict[Cell, int] = {}
            _accumulate(out, self.vertex_cell(g * s), 1)
            _accumulate(out, self.vertex_cell(g), -1)
            return out
        i, j = self.square_types[cell[3]]
        x = self.model.generator_element(self.positive[i])
        y = self.model.generator_element(self.positive[j])
        out = {}
        _accumulate(out, self.edge_cell(g, i), 1)
        _accumulate(out, self.edge_cell(g * x, j), 1)
        _accumulate(out, self.edge_cell(g * y, i), -1)
        _accumulate(out, self.edge_cell(g, j), -1)
        return out

    def edge_drop(self) -> ExactReal:
        worst = exact_min(
            -abs(self.qm.homogeneous_value(self.model.generator_element(s)))
            for s in self.positive
        )
        return -worst + self.defect

    def face_drop(self) -> ExactReal:
        if not self.square_types:
            return ZERO
        worst = ZERO
        for i, j in self.square_types:
            x = self.model.generator_element(self.positive[i])
            y = self.model.generator_element(self.positive[j])
            cand = (
                abs(self.qm.homogeneous_value(x))
                + abs(self.qm.homogeneous_value(y))
                + self.defect
                + self.defect
            )
            if cand > worst:
                worst = cand
        return worst

    # -- chain constructors --------------------------------------------

    def zero(self, dimension: int, window: Optional[ExactReal] = None) -> "WindowedChain":
        return WindowedChain(self, dimension, {}, window)

    def chain(
        self, dimension: int, terms: dict[Cell, int], window: Optional[ExactReal]
    ) -> "WindowedChain":
        return WindowedChain(self, dimension, terms, window)

    def chain_from_path(
        self, path: Path, window: Optional[ExactReal] = None
    ) -> "WindowedChain":
        if path.model != self.model:
            raise ModelMismatchError("path uses a different model")
        terms: dict[Cell, int] = {}
        current = path.origin
        for letter in path.edge_letters():
            nxt = current * self.model.generator_element(letter)
            if letter.inverse:
                _accumulate(terms, self.edge_cell(nxt, letter.index), -1)
            else:
                _accumulate(terms, self.edge_cell(current, letter.index), 1)
            current = nxt
        return WindowedChain(self, 1, terms, window)


def _accumulate(terms: dict[Cell, int], cell: Cell, coeff: int) -> None:
    new = terms.get(cell, 0) + coeff
    if new:
        terms[cell] = new
    else:
        terms.pop(cell, None)


def _window_min(a: Optional[ExactReal], b: Optional[ExactReal]) -> Optional[ExactReal]:
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


class WindowedChain:
    """Integer chain exact on cells below `window`; window None means
    exact everywhere (a finite, fully known chain)."""

    def __init__(
        self,
        complex_: CayleyComplex,
        dimension: int,
        terms: dict[Cell, int],
        window: Optional[ExactReal],
    ):
        self.complex = complex_
        self.dimension = dimension
        self.window = window
        kept: dict[Cell, int] = {}
        for cell, coeff in terms.items():
            if coeff == 0:
                continue
            if complex_.dimension_of(cell) != dimension:
                raise ValueError("chain mixes dimensions")
            if window is not None and not complex_.value(cell) < window:
                continue
            kept[cell] = coeff
        self.terms = kept

    def is_zero(self) -> bool:
        return not self.terms

    def support_min(self) -> Optional[ExactReal]:
        if not self.terms:
            return None
        return exact_min(self.complex.value(c) for c in self.terms)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.terms, key=self.complex.cell_sort_key)

    def negate(self) -> "WindowedChain":
        return WindowedChain(
            self.complex, self.dimension, {c: -k for c, k in self.terms.items()}, self.window
        )

    def scale(self, k: int) -> "WindowedChain":
        return WindowedChain(
            self.complex, self.dimension, {c: k * v for c, v in self.terms.items()}, self.window
        )

    def add(self, other: "WindowedChain") -> "WindowedChain":
        if other.complex is not self.complex:
            raise ModelMismatchError("chains over different complexes")
        if other.dimension != self.dimension:
            raise ValueError("chains of different dimensions")
        terms = dict(self.terms)
        for cell, coeff in other.terms.items():
            _accumulate(terms, cell, coeff)
        return WindowedChain(
            self.complex, self.dimension, terms, _window_min(self.window, other.window)
        )

    def subtract(self, other: "WindowedChain") -> "WindowedChain":
        return self.add(other.negate())

    def boundary(self) -> "WindowedChain":
        if self.dimension < 1:
            raise ValueError("boundary needs dimension at least 1")
        drop = (
            self.complex.edge_drop() if self.dimension == 1 else self.complex.face_drop()
        )
        window = None if self.window is None else self.window - drop
        terms: dict[Cell, int] = {}
        for cell, coeff in self.terms.items():
            for bcell, bcoeff in self.complex.boundary_of_cell(cell).items():
                _accumulate(terms, bcell, coeff * bcoeff)
        return WindowedChain(self.complex, self.dimension - 1, terms, window)

    def multiply(self, other: "WindowedChain") -> "WindowedChain":
        """Group-ring product of two 0-chains.  The result window is
        min(W_u + m*_v, m*_u + W_v) - D with m* the minimum of the
        recorded support values and the window: truncation error in one
        factor enters the product shifted up by at least the other
        factor's lowest level, minus the defect."""
        if other.complex is not self.complex:
            raise ModelMismatchError("chains over different complexes")
        if self.dimension != 0 or other.dimension != 0:
            raise ValueError("ring multiplication is defined for 0-chains")
        cx = self.complex

        def mstar(chain: WindowedChain) -> Optional[ExactReal]:
            return _window_min(chain.support_min(), chain.window)

        candidates = []
        if self.window is not None:
            shift = mstar(other)
            candidates.append(None if shift is None else self.window + shift)
        if other.window is not None:
            shift = mstar(self)
            candidates.append(None if shift is None else other.window + shift)
        window: Optional[ExactReal] = None
        for cand in candidates:
            window = _window_min(window, cand)
        if window is not None:
            window = window - cx.defect
            mu, mv = mstar(self), mstar(other)
            if mu is not None and mv is not None and window <= mu + mv - cx.defect:
                raise ValueError("empty result window")
        terms: dict[Cell, int] = {}
        for cu, ku in self.terms.items():
            gu = cx.element(cu)
            for cv, kv in other.terms.items():
                _accumulate(terms, cx.vertex_cell(gu * cx.element(cv)), ku * kv)
        return WindowedChain(cx, 0, terms, window)

    def equal_below(self, other: "WindowedChain", level: ExactReal) -> bool:
        for cell in set(self.terms) | set(other.terms):
            if self.complex.value(cell) < level and self.terms.get(cell, 0) != other.terms.get(
                cell, 0
            ):
                return False
        return True

    def __repr__(self) -> str:
        w = "inf" if self.window is None else str(self.window)
        return f"WindowedChain(dim={self.dimension}, terms={len(self.terms)}, window={w})"


def chain_from_element(cx: CayleyComplex, g: GroupElement, coeff: int = 1) -> WindowedChain:
    return WindowedChain(cx, 0, {cx.vertex_cell(g): coeff}, None)


def geometric_series(
    cx: CayleyComplex, g: GroupElement, window: ExactReal
) -> WindowedChain:
    """1 + g + g^2 + ... truncated below the window; needs
    phi-bar(g) > 0 so the series satisfies the finiteness condition.
    Since phi-bar(g^k) = k phi-bar(g) exactly, the series stops once
    k phi-bar(g) reaches the window."""
    phi = cx.qm.homogeneous_value(g)
    if not phi > ZERO:
        raise ValueError("geometric series needs positive phi-bar direction")
    k_stop = (window / phi).floor() + 1
    if k_stop < 0:
        k_stop = 0
    if k_stop > RAY_STEP_CAP:
        raise CapExceededError("geometric series terms", k_stop, RAY_STEP_CAP)
    terms: dict[Cell, int] = {}
    current = cx.model.identity()
    for _ in range(k_stop):
        cell = cx.vertex_cell(current)
        if cx.value(cell) < window:
            _accumulate(terms, cell, 1)
        current = current * g
    return WindowedChain(cx, 0, terms, window)


# -- ray cycles ----------------------------------------------------------


@dataclass(frozen=True)
class RayCycle:
    chain: WindowedChain
    start: GroupElement
    end: GroupElement
    scaling: GroupElement
    connecting: Path
    window: ExactReal


def _ray_chain(cx: CayleyComplex, x: GroupElement, c: GroupElement, window: ExactReal) -> WindowedChain:
    """Edges x -> xc -> xc^2 -> ... with value below the window.

    For k with phi-bar(x) + k phi-bar(c) - D >= window the vertex
    x c^k already sits at or above the window, so edges past that
    index cannot contribute; scanning up to it is exhaustive."""
    phi_c = cx.qm.homogeneous_value(c)
    letter = c.letters()[0]
    k_stop = ((window - cx.qm.homogeneous_value(x) + cx.defect) / phi_c).floor() + 1
    if k_stop < 0:
        k_stop = 0
    if k_stop > RAY_STEP_CAP:
        raise CapExceededError("ray edges", k_stop, RAY_STEP_CAP)
    terms: dict[Cell, int] = {}
    current = x
    for _ in range(k_stop):
        cell, sign = _step_cell(cx, current, letter)
        if cx.value(cell) < window:
            _accumulate(terms, cell, sign)
        current = current * c
    return WindowedChain(cx, 1, terms, window)


def _step_cell(cx: CayleyComplex, g: GroupElement, letter: Generator) -> tuple[Cell, int]:
    if letter.inverse:
        return cx.edge_cell(g * cx.model.generator_element(letter), letter.index), -1
    return cx.edge_cell(g, letter.index), 1


def ray_cycle(
    cx: CayleyComplex,
    start: GroupElement,
    end: GroupElement,
    connecting: Path,
    scaling: GroupElement,
    window: ExactReal,
) -> RayCycle:
    """The 1-cycle: connecting path from start to end, plus the
    truncated c-ray out of end, minus the one out of start."""
    if scaling.length() != 1:
        raise ValueError("ray direction must be a generator letter")
    if not cx.qm.homogeneous_value(scaling) > ZERO:
        raise ValueError("ray direction must have positive phi-bar")
    if connecting.origin != start or connecting.terminus != end:
        raise ValueError("connecting path endpoints do not match")
    q_chain = cx.chain_from_path(connecting, None)
    for cell in q_chain.terms:
        if not cx.value(cell) < window:
            raise ValueError("window too small to contain the connecting path")
    z = (
        cx.chain(1, q_chain.terms, window)
        .add(_ray_chain(cx, end, scaling, window))
        .subtract(_ray_chain(cx, start, scaling, window))
    )
    bz = z.boundary()
    if not bz.is_zero():
        raise RuntimeError("ray cycle failed its boundary check")
    return RayCycle(z, start, end, scaling, connecting, window)


# -- the z_s cycles ------------------------------------------------------


@dataclass(frozen=True)
class ZsCycle:
    generator: Generator
    depth: int
    chain: WindowedChain
    down_up: Optional[Path]
    high_path: Optional[Path]
    high_min: Optional[ExactReal]


def build_zs_cycle(
    cx: CayleyComplex,
    s: Generator,
    scaling: GroupElement,
    depth: int,
    high_path: Optional[Path],
    k_bound: Optional[ExactReal] = None,
) -> ZsCycle:
    """Compare the two standard paths from c^n to s c^n: the down-up
    path through the identity and a path staying above
    n phi-bar(c) - K.  For s equal to the scaling letter the two
    constructions coincide and the cycle is zero by convention."""
    if scaling.length() != 1:
        raise ValueError("the scaling element must be a generator letter")
    if depth < 1:
        raise ValueError("depth must be positive")
    c_letter = scaling.letters()[0]
    if s == c_letter:
        return ZsCycle(s, depth, cx.zero(1, None), None, None, None)
    top = scaling ** depth
    s_el = cx.model.generator_element(s)
    down_up = path_from_letters(
        top, [c_letter.inverted()] * depth + [s] + [c_letter] * depth
    )
    if high_path is None:
        raise ValueError("a high connecting path is required for s != c")
    if high_path.origin != top or high_path.terminus != s_el * top:
        raise ValueError("high path must connect c^n to s c^n")
    high_min = exact_min(cx.qm.homogeneous_value(v) for v in high_path.vertices)
    if k_bound is not None:
        floor = cx.qm.homogeneous_value(scaling) * depth - k_bound
        if not high_min >= floor:
            raise ValueError(
                f"high path dips to {high_min}, below the required floor {floor}"
            )
    z = cx.chain_from_path(down_up, None).subtract(cx.chain_from_path(high_path, None))
    if not z.boundary().is_zero():
        raise RuntimeError("z_s cycle failed its boundary check")
    return ZsCycle(s, depth, z, down_up, high_path, high_min)


# -- windowed boundary solving -------------------------------------------


@dataclass(frozen=True)
class BoundarySolveResult:
    status: str  # "sat" | "unsat"
    window: ExactReal
    floor: Optional[ExactReal]
    radius: int
    faces: tuple[Cell, ...]
    coefficients: Optional[tuple[int, ...]]
    filling: Optional[WindowedChain]
    certificate: Optional[UnsatCertificate]


def enumerate_faces(
    cx: CayleyComplex,
    floor: Optional[ExactReal],
    ceiling: ExactReal,
    radius: int,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> list[Cell]:
    """All 2-cells based in ball(radius) with value in [floor, ceiling),
    in canonical base-then-type order."""
    faces: list[Cell] = []
    for g in cx.model.ball(radius):
        for t in range(len(cx.square_types)):
            cell = cx.face_cell(g, t)
            v = cx.value(cell)
            if v < ceiling and (floor is None or floor <= v):
                faces.append(cell)
                if len(faces) > cell_cap:
                    raise CapExceededError("solver 2-cells", len(faces), cell_cap)
    return faces


def _trimmed_boundary_column(cx: CayleyComplex, face: Cell, window: ExactReal) -> dict[Cell, int]:
    return {
        cell: coeff
        for cell, coeff in cx.boundary_of_cell(face).items()
        if cx.value(cell) < window
    }


def windowed_boundary_solve(
    cx: CayleyComplex,
    z: WindowedChain,
    window: ExactReal,
    radius: int,
    slack: ExactReal = ZERO,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> BoundarySolveResult:
    """Decide whether some integer 2-chain y supported on faces based
    in ball(radius) has boundary equal to z on every edge below the
    window.  Faces are enumerated with values in
    [min level of z - slack, window); no admissible face can produce an
    edge below that floor, because a face's value is the minimum over
    its corners.
    """
    if z.dimension != 1:
        raise ValueError("the boundary equation needs a 1-chain right-hand side")
    if z.window is not None and z.window < window:
        raise ValueError("right-hand side is not exact on the whole window")
    for cell in z.terms:
        if not cx.value(cell) < window:
            raise ValueError("right-hand side has support at or above the window")
    floor = z.support_min()
    if floor is not None:
        floor = floor - slack
    faces = enumerate_faces(cx, floor, window, radius, cell_cap)
    columns = [_trimmed_boundary_column(cx, f, window) for f in faces]
    rhs = dict(z.terms)
    outcome = solve_integer_system(columns, rhs)
    if isinstance(outcome, UnsatCertificate):
        assert check_unsat_certificate(columns, rhs, outcome)
        return BoundarySolveResult(
            "unsat", window, floor, radius, tuple(faces), None, None, outcome
        )
    y_terms = {f: c for f, c in zip(faces, outcome) if c}
    filling = WindowedChain(cx, 2, y_terms, None)
    if not filling.boundary().equal_below(cx.chain(1, dict(z.terms), window), window):
        raise RuntimeError("solver filling failed the boundary replay")
    return BoundarySolveResult(
        "sat", window, floor, radius, tuple(faces), tuple(outcome), filling, None
    )


# -- keep-negative extraction --------------------------------------------


@dataclass(frozen=True)
class ExtractionResult:
    path: Path
    min_phi: ExactReal
    bound: ExactReal
    meets_bound: bool
    residual_cells: tuple[Cell, ...]


def keep_negative_and_extract_path(
    cx: CayleyComplex, filling: WindowedChain, cycle: RayCycle
) -> ExtractionResult:
    """Drop the filling's cells at negative values; the boundary of the
    rest differs from the ray cycle by a 1-chain supported at values
    >= 0, and that support contains a connecting path between the two
    rays.  The composite start -> start c^m -> ... -> end c^n -> end is
    returned with its exact minimum, to compare against -D."""
    if filling.dimension != 2:
        raise ValueError("extraction needs a 2-chain filling")
    negative = {
        cell: coeff
        for cell, coeff in filling.terms.items()
        if cx.value(cell) < ZERO
    }
    y_minus = WindowedChain(cx, 2, negative, None)
    residual = y_minus.boundary().subtract(
        WindowedChain(cx, 1, dict(cycle.chain.terms), cycle.window)
    )
    bad = [cell for cell in residual.terms if cx.value(cell) < ZERO]
    if bad:
        dump = ", ".join(cx.describe_cell(c) for c in sorted(bad, key=cx.cell_sort_key))
        raise ExtractionError(
            "residual support dips below level zero", support=dump
        )

    support = residual.sorted_cells()
    vertex_set: dict[GroupElement, int] = {}
    edges: list[tuple[int, int]] = []

    def vid(g: GroupElement) -> int:
        got = vertex_set.get(g)
        if got is None:
            got = len(vertex_set)
            vertex_set[g] = got
        return got

    adjacency: dict[GroupElement, list[GroupElement]] = {}
    for cell in support:
        a, b = cx.corners(cell)
        edges.append((vid(a), vid(b)))
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)

    c = cycle.scaling

    def ray_entry(x: GroupElement) -> tuple[int, GroupElement]:
        current = x
        for k in range(RAY_STEP_CAP):
            if current in vertex_set:
                return k, current
            current = current * c
        raise ExtractionError(
            "ray never meets the residual support",
            support=", ".join(cx.describe_cell(s) for s in support),
        )

    if not support:
        if cycle.start == cycle.end:
            trivial = Path((cycle.start,))
            mn = cx.qm.homogeneous_value(cycle.start)
            return ExtractionResult(trivial, mn, -cx.defect, mn >= -cx.defect, ())
        raise ExtractionError("empty residual support cannot connect the rays")

    m_start, entry_start = ray_entry(cycle.start)
    m_end, entry_end = ray_entry(cycle.end)

    ids = components_from_edges(len(vertex_set), edges).component_ids
    if ids[vertex_set[entry_start]] != ids[vertex_set[entry_end]]:
        raise ExtractionError(
            "residual support does not connect the two rays",
            support=", ".join(cx.describe_cell(s) for s in support),
        )

    # canonical shortest path inside the support graph
    for g in adjacency:
        adjacency[g] = sorted(set(adjacency[g]), key=lambda e: e.sort_key())
    parents: dict[GroupElement, Optional[GroupElement]] = {entry_start: None}
    queue = deque([entry_start])
    while queue:
        v = queue.popleft()
        if v == entry_end:
            break
        for w in adjacency[v]:
            if w not in parents:
                parents[w] = v
                queue.append(w)
    middle: list[GroupElement] = []
    cursor: Optional[GroupElement] = entry_end
    while cursor is not None:
        middle.append(cursor)
        cursor = parents[cursor]
    middle.reverse()

    vertices: list[GroupElement] = []
    current = cycle.start
    for _ in range(m_start):
        vertices.append(current)
        current = current * c
    vertices.extend(middle)
    # walk back down the end ray
    down = [cycle.end]
    g = cycle.end
    for _ in range(m_end):
        g = g * c
        down.append(g)
    down.reverse()  # entry_end ... end
    assert down[0] == entry_end
    vertices.extend(down[1:])
    path = Path(tuple(vertices))
    assert path.origin == cycle.start and path.terminus == cycle.end
    mn = exact_min(cx.qm.homogeneous_value(v) for v in path.vertices)
    bound = -cx.defect
    return ExtractionResult(path, mn, bound, mn >= bound, tuple(support))
