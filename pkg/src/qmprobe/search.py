"""Searches and path surgery constrained by quasimorphism level sets.

`bounded_path_search` runs a breadth-first search inside a ball,
restricted to vertices whose homogeneous value stays above a floor
(and, two-sided, below a ceiling).  A positive answer is a replayable
path witness; a negative answer records the (K, R) parameters and is
evidence only -- nothing outside the ball was examined.

On top of that sit the pieces used to push paths out of high levels:

* `compute_constants` evaluates the threshold bundle (descent depth n,
  level guard N, height bound M) from D*, K' and the scaling element.
* `build_q_library` searches, for every ordered generator pair (s, t),
  a replacement path 1 -> st of the sandwich form
  (1, c^-1, ..., c^-n) q' (1, c, ..., c^n) whose interior essential
  vertices sit strictly below -D*.
* `peak_reduction` repeatedly replaces the first highest essential
  vertex with a library path; the pair (height, number of peaks)
  decreases lexicographically at every step.
* `f2z_kernel_path_normalize` rewrites a kernel-to-kernel path in
  F_2 x Z by inserting central corrections c^m after each edge, keeping
  every value inside [-sqrt(2)/2, sqrt(2)/2] up to one edge step.
* `free_group_obstruction_probe` walks the tree geodesic from x to
  c^-n x c^n and certifies per-vertex lower bounds on the distance to
  the approximate kernel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import CapExceededError, LibraryIncompleteError, ModelMismatchError
from .exact import ExactReal, ZERO, exact_max, exact_min
from .groups import Generator, GroupElement, GroupModel
from .paths import Path, path_from_letters, phi_extrema, straight_path
from .quasimorphisms import HomomorphismQM, HomogenizedQM, Quasimorphism


@dataclass(frozen=True)
class PathWitness:
    path: Path
    min_phi: ExactReal
    max_phi: ExactReal
    radius: int
    floor: Optional[ExactReal]
    ceiling: Optional[ExactReal]


@dataclass(frozen=True)
class NotFoundWithinBall:
    """Exhausted the admissible region without reaching the target.
    Evidence at scale (floor, ceiling, radius); never a theorem."""

    start: GroupElement
    target: GroupElement
    radius: int
    floor: Optional[ExactReal]
    ceiling: Optional[ExactReal]
    explored: int
    reason: str


def _admissible(qm, v, radius, lo, hi) -> bool:
    if v.length() > radius:
        return False
    val = qm.homogeneous_value(v)
    if lo is not None and val < lo:
        return False
    if hi is not None and val > hi:
        return False
    return True


def _constrained_bfs(
    qm: Quasimorphism,
    start: GroupElement,
    target: GroupElement,
    radius: int,
    lo: Optional[ExactReal],
    hi: Optional[ExactReal],
) -> Path | NotFoundWithinBall:
    model = qm.model
    if start.model != model or target.model != model:
        raise ModelMismatchError("search endpoints use a different model")
    if radius > model.ball_cap:
        raise CapExceededError("search radius", radius, model.ball_cap)
    if start.length() > radius or target.length() > radius:
        raise ValueError("search endpoints must lie in the ball")
    if not (_admissible(qm, start, radius, lo, hi) and _admissible(qm, target, radius, lo, hi)):
        return NotFoundWithinBall(
            start, target, radius, lo, hi, 0, "an endpoint violates the level constraint"
        )
    steps = [model.generator_element(gen) for gen in model.generators()]
    # distances to the target over the admissible region
    dist: dict[tuple, int] = {(target.free, target.ab): 0}
    frontier = deque([target])
    found = start == target
    while frontier and not found:
        v = frontier.popleft()
        d = dist[(v.free, v.ab)]
        for step in steps:
            w = v * step
            key = (w.free, w.ab)
            if key in dist or not _admissible(qm, w, radius, lo, hi):
                continue
            dist[key] = d + 1
            if w == start:
                found = True
                break
            frontier.append(w)
    if not found:
        return NotFoundWithinBall(
            start, target, radius, lo, hi, len(dist), "admissible region exhausted"
        )
    # walk from the start, taking the canonically first descending step
    vertices = [start]
    current = start
    remaining = dist[(start.free, start.ab)]
    while remaining > 0:
        for step in steps:
            w = current * step
            d = dist.get((w.free, w.ab))
            if d == remaining - 1:
                vertices.append(w)
                current = w
                remaining = d
                break
        else:  # pragma: no cover - BFS guarantees a descending neighbour
            raise RuntimeError("inconsistent BFS distance map")
    return Path(tuple(vertices))


def bounded_path_search(
    qm: Quasimorphism,
    start: GroupElement,
    target: GroupElement,
    k: ExactReal,
    radius: int,
    k_max: Optional[ExactReal] = None,
) -> PathWitness | NotFoundWithinBall:
    """Shortest admissible path from start to target, with phi-bar >= -k
    on every vertex (and <= k_max when given).  Ties are broken towards
    the canonically smallest edge sequence."""
    lo = -k
    hi = k_max
    got = _constrained_bfs(qm, start, target, radius, lo, hi)
    if isinstance(got, NotFoundWithinBall):
        return got
    mn, mx = phi_extrema(qm, got)
    return PathWitness(got, mn, mx, radius, lo, hi)


# -- constants bundle ----------------------------------------------------


@dataclass(frozen=True)
class ConstantsBundle:
    """Exact thresholds steering the level-set machinery.

    descent_depth   n:  how far the library paths dive along c^-1
    level_guard     N:  reduction never sends a vertex below -N
    height_bound    M:  peak reduction stops once the height is <= M
    scaling_distance C: word length of the scaling element
    """

    dstar: ExactReal
    kprime: ExactReal
    descent_depth: int
    level_guard: ExactReal
    height_bound: ExactReal
    scaling_distance: int
    max_pair_value: ExactReal
    max_generator_value: ExactReal


def compute_constants(
    qm: Quasimorphism,
    dstar: ExactReal,
    kprime: ExactReal,
    scaling: GroupElement,
) -> ConstantsBundle:
    if dstar <= ZERO:
        raise ValueError("D* must be positive")
    if not kprime > dstar + dstar:
        raise ValueError("K' must exceed 2 D*")
    value = qm.homogeneous_value(scaling)
    if not (dstar * 4 / ExactReal(5) < value and value <= dstar):
        raise ValueError(
            f"scaling element value {value} must lie in (4 D*/5, D*]"
        )
    model = qm.model
    gens = [model.generator_element(g) for g in model.generators()]
    maxst = exact_max(qm.homogeneous_value(s * t) for s in gens for t in gens)
    maxgen = exact_max(abs(qm.homogeneous_value(s)) for s in gens)
    five_over_4d = ExactReal(Fraction(5, 4)) / dstar
    depth = (five_over_4d * (kprime + maxst + dstar)).floor() + 3
    return ConstantsBundle(
        dstar=dstar,
        kprime=kprime,
        descent_depth=depth,
        level_guard=kprime + dstar + dstar + 1,
        height_bound=dstar * 3 + maxgen,
        scaling_distance=scaling.length(),
        max_pair_value=maxst,
        max_generator_value=maxgen,
    )


def path_bound_from_rips(qm: Quasimorphism, depth: int, dstar: ExactReal) -> ExactReal:
    """The level bound K = n (max_s |phi-bar(s)| + D*) + 2 D* that an
    n-step Rips jump sequence cannot escape."""
    model = qm.model
    maxgen = exact_max(
        abs(qm.homogeneous_value(model.generator_element(g))) for g in model.generators()
    )
    return (maxgen + dstar) * depth + dstar + dstar


# -- q-library -----------------------------------------------------------


def _scaling_letter(model: GroupModel, scaling: GroupElement) -> Generator:
    if scaling.model != model:
        raise ModelMismatchError("scaling element from a different model")
    if scaling.length() != 1:
        raise ValueError(
            "the descent machinery needs the scaling element to be a generator letter"
        )
    return scaling.letters()[0]


def essential_flags(path: Path, scaling: GroupElement) -> tuple[bool, ...]:
    """A vertex is inessential when both incident edges are steps by the
    scaling letter (in either direction); endpoints are always
    essential."""
    c, cinv = scaling, scaling.inverse()
    k = len(path.vertices)
    flags = [True] * k
    for i in range(1, k - 1):
        before = path.vertices[i - 1].inverse() * path.vertices[i]
        after = path.vertices[i].inverse() * path.vertices[i + 1]
        if before in (c, cinv) and after in (c, cinv):
            flags[i] = False
    return tuple(flags)


@dataclass(frozen=True)
class QLibraryEntry:
    pair: tuple[Generator, Generator]
    path: Optional[Path]
    min_phi: Optional[ExactReal]
    failure: Optional[str]


@dataclass(frozen=True)
class QLibrary:
    scaling: GroupElement
    bundle: ConstantsBundle
    radius: int
    depth: int
    entries: tuple[QLibraryEntry, ...]

    @property
    def complete(self) -> bool:
        return all(e.failure is None for e in self.entries)

    def lookup(self, s: Generator, t: Generator) -> Path:
        for e in self.entries:
            if e.pair == (s, t) and e.path is not None and e.failure is None:
                return e.path
        raise LibraryIncompleteError(f"no library path for the pair ({s}, {t})")


def build_q_library(
    qm: Quasimorphism,
    bundle: ConstantsBundle,
    scaling: GroupElement,
    radius: int,
    depth: Optional[int] = None,
) -> QLibrary:
    """Search a replacement path for every ordered generator pair and
    verify the interior essential-vertex condition phi-bar < -D*.

    The level guard N of the returned bundle is raised so that
    -N < min phi-bar(q) over every successful entry.
    """
    model = qm.model
    c_letter = _scaling_letter(model, scaling)
    n = bundle.descent_depth if depth is None else depth
    if n < 1:
        raise ValueError("descent depth must be positive")
    identity = model.identity()
    down = path_from_letters(identity, [c_letter.inverted()] * n)
    up = path_from_letters(identity, [c_letter] * n)
    bottom = down.terminus  # c^-n

    entries: list[QLibraryEntry] = []
    min_values: list[ExactReal] = []
    for s in model.generators():
        s_el = model.generator_element(s)
        for t in model.generators():
            t_el = model.generator_element(t)
            st = s_el * t_el
            a1 = st * bottom
            if bottom.length() > radius or a1.length() > radius:
                entries.append(
                    QLibraryEntry((s, t), None, None, "sandwich endpoints outside the ball")
                )
                continue
            ceiling = (
                exact_max([qm.homogeneous_value(bottom), qm.homogeneous_value(a1)])
                + bundle.kprime
            )
            got = _constrained_bfs(qm, bottom, a1, radius, None, ceiling)
            if isinstance(got, NotFoundWithinBall):
                entries.append(
                    QLibraryEntry(
                        (s, t),
                        None,
                        None,
                        f"no connecting path below {ceiling} within ball({radius})",
                    )
                )
                continue
            q = down.concat(got).concat(up)
            assert q.origin == identity and q.terminus == st
            flags = essential_flags(q, scaling)
            bad = None
            for i, flag in enumerate(flags[1:-1], start=1):
                if flag and not qm.homogeneous_value(q.vertices[i]) < -bundle.dstar:
                    bad = i
                    break
            if bad is not None:
                entries.append(
                    QLibraryEntry(
                        (s, t),
                        q,
                        None,
                        f"essential vertex {q.vertices[bad]!r} not below -D*",
                    )
                )
                continue
            mn, _ = phi_extrema(qm, q)
            min_values.append(mn)
            entries.append(QLibraryEntry((s, t), q, mn, None))

    guard = bundle.level_guard
    if min_values:
        needed = -exact_min(min_values) + 1
        if needed > guard:
            guard = needed
    raised = ConstantsBundle(
        dstar=bundle.dstar,
        kprime=bundle.kprime,
        descent_depth=n,
        level_guard=guard,
        height_bound=bundle.height_bound,
        scaling_distance=bundle.scaling_distance,
        max_pair_value=bundle.max_pair_value,
        max_generator_value=bundle.max_generator_value,
    )
    return QLibrary(scaling, raised, radius, n, tuple(entries))


# -- backtrack removal and peak reduction --------------------------------


def remove_inessential_backtracks(path: Path, scaling: GroupElement) -> Path:
    """Cancel immediate backtracks along the scaling letter:
    (..., u, u c^e, u, ...) collapses to (..., u, ...)."""
    c, cinv = scaling, scaling.inverse()
    out = [path.vertices[0]]
    for v in path.vertices[1:]:
        out.append(v)
        while (
            len(out) >= 3
            and out[-1] == out[-3]
            and out[-3].inverse() * out[-2] in (c, cinv)
        ):
            out.pop()
            out.pop()
    return Path(tuple(out))


@dataclass(frozen=True)
class PeakStep:
    height: int
    peak_count: int
    peak_index: int
    pair: tuple[Generator, Generator]
    min_phi: ExactReal
    path_after: Path


@dataclass(frozen=True)
class PeakReductionTrace:
    initial: Path
    steps: tuple[PeakStep, ...]
    final: Path
    final_height: int
    final_peaks: int
    reduced: Path
    max_reduced_phi: ExactReal
    vertex_bound: ExactReal  # M + 2 D*


def height_and_peaks(
    qm: Quasimorphism, path: Path, scaling: GroupElement
) -> tuple[int, int, int]:
    """(height, number of peaks, index of the first peak) over the
    essential vertices."""
    flags = essential_flags(path, scaling)
    height = None
    count = 0
    first = -1
    floors = []
    for i, flag in enumerate(flags):
        if not flag:
            floors.append(None)
            continue
        f = qm.homogeneous_value(path.vertices[i]).floor()
        floors.append(f)
        if height is None or f > height:
            height = f
    for i, f in enumerate(floors):
        if f == height:
            count += 1
            if first < 0:
                first = i
    assert height is not None
    return height, count, first


def peak_reduction(
    qm: Quasimorphism,
    path: Path,
    library: QLibrary,
    max_iterations: int = 10_000,
) -> PeakReductionTrace:
    """Replace the first highest essential vertex with a library path
    until the height drops to the bundle's height bound M.

    Preconditions: both endpoints lie in Aker(phi, D*).  Each step
    strictly decreases (height, peak count) lexicographically and keeps
    every vertex above -N; violations raise, since they would falsify
    the library's guarantees.
    """
    bundle = library.bundle
    scaling = library.scaling
    two_dstar = bundle.dstar + bundle.dstar
    for endpoint in (path.origin, path.terminus):
        if not abs(qm.homogeneous_value(endpoint)) <= two_dstar:
            raise ValueError("peak reduction expects endpoints in Aker(phi, D*)")
    steps: list[PeakStep] = []
    current = path
    height, peaks, first = height_and_peaks(qm, current, scaling)
    while ExactReal(height) > bundle.height_bound:
        if len(steps) >= max_iterations:
            raise CapExceededError("peak reduction iterations", len(steps) + 1, max_iterations)
        if first <= 0 or first >= len(current.vertices) - 1:
            raise RuntimeError("a path endpoint turned out to be a peak")
        v0 = current.vertices[first - 1]
        s = (v0.inverse() * current.vertices[first]).letters()[0]
        t = (
            current.vertices[first].inverse() * current.vertices[first + 1]
        ).letters()[0]
        q = library.lookup(s, t)
        spliced = (
            current.vertices[: first]
            + tuple(v0 * w for w in q.vertices[1:])
            + current.vertices[first + 2 :]
        )
        new_path = Path(spliced)
        mn, _ = phi_extrema(qm, new_path)
        if not mn > -bundle.level_guard:
            raise RuntimeError(
                f"reduction step dropped below the level guard: {mn} <= -{bundle.level_guard}"
            )
        new_height, new_peaks, new_first = height_and_peaks(qm, new_path, scaling)
        if not (new_height, new_peaks) < (height, peaks):
            raise RuntimeError(
                "peak replacement failed to decrease (height, peak count); "
                "the library does not satisfy its essential-vertex guarantee"
            )
        steps.append(
            PeakStep(
                height=height,
                peak_count=peaks,
                peak_index=first,
                pair=(s, t),
                min_phi=mn,
                path_after=new_path,
            )
        )
        current = new_path
        height, peaks, first = new_height, new_peaks, new_first
    reduced = remove_inessential_backtracks(current, scaling)
    _, mx = phi_extrema(qm, reduced)
    bound = bundle.height_bound + two_dstar
    if not mx <= bound:
        raise RuntimeError(
            f"backtrack removal left a vertex at {mx}, above the bound {bound}"
        )
    return PeakReductionTrace(
        initial=path,
        steps=tuple(steps),
        final=current,
        final_height=height,
        final_peaks=peaks,
        reduced=reduced,
        max_reduced_phi=mx,
        vertex_bound=bound,
    )


# -- the F_2 x Z kernel example ------------------------------------------


@dataclass(frozen=True)
class KernelPathWitness:
    path: Path
    min_phi: ExactReal
    max_phi: ExactReal


def _is_f2z_example(qm: Quasimorphism) -> bool:
    base = qm.base if isinstance(qm, HomogenizedQM) else qm
    if not isinstance(base, HomomorphismQM):
        return False
    model = base.model
    if model.free_rank != 2 or model.abelian_rank != 1:
        return False
    expected = (ExactReal(1), ExactReal(0), ExactReal(0, 1, 2))
    return base.values == expected


def f2z_kernel_path_normalize(qm: Quasimorphism, path: Path) -> KernelPathWitness:
    """Rewrite a kernel-to-kernel path in F_2 x Z = <a, b> x <c> with
    phi = (a -> 1, b -> 0, c -> sqrt(2)): after each original edge a
    central correction c^m recentres the value into
    (-sqrt(2)/2, sqrt(2)/2].  Every vertex of the result then satisfies
    |phi| <= 1 + sqrt(2)/2, which certifies the exact bounds
    -3 <= phi <= 3; the endpoints are untouched.
    """
    if not _is_f2z_example(qm):
        raise ValueError(
            "kernel path normalization is specific to F_2 x Z with "
            "phi = (1, 0, sqrt(2))"
        )
    model = qm.model
    if path.model != model:
        raise ModelMismatchError("path uses a different model")
    for endpoint in (path.origin, path.terminus):
        if qm.homogeneous_value(endpoint) != ZERO:
            raise ValueError("path endpoints must lie in the kernel of phi")
    c = model.generator_element(Generator(2, False))
    cinv = c.inverse()
    sqrt2 = ExactReal(0, 1, 2)
    half = ExactReal(Fraction(1, 2))

    vertices = [path.origin]
    current = path.origin
    for letter in path.edge_letters():
        current = current * model.generator_element(letter)
        vertices.append(current)
        m = -((qm.homogeneous_value(current) / sqrt2 + half).floor())
        step = c if m > 0 else cinv
        for _ in range(abs(m)):
            current = current * step
            vertices.append(current)
    witness = Path(tuple(vertices))
    assert witness.terminus == path.terminus
    mn, mx = phi_extrema(qm, witness)
    if not (-3 <= mn and mx <= 3):
        raise RuntimeError(
            f"normalized kernel path escaped [-3, 3]: min {mn}, max {mx}"
        )
    return KernelPathWitness(witness, mn, mx)


# -- free-group obstruction probe ----------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    """Per-vertex lower bounds d(v, Aker) >= (|phi-bar(v)| - 2D*) / L
    along the tree geodesic from x to c^-n x c^n, with
    L = max_s |phi-bar(s)| + D*.  In a free group every path between
    the endpoints passes through these vertices, so the maximum bound
    is a certified obstruction scale."""

    depth: int
    dstar: ExactReal
    geodesic: Path
    bounds: tuple[ExactReal, ...]
    max_bound: ExactReal


def free_group_obstruction_probe(
    qm: Quasimorphism,
    x: GroupElement,
    scaling: GroupElement,
    depth: int,
    dstar: ExactReal,
) -> ObstructionReport:
    model = qm.model
    if model.abelian_rank != 0:
        raise ValueError("the obstruction probe works in free groups only")
    if x.model != model or scaling.model != model:
        raise ModelMismatchError("probe arguments use a different model")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if dstar < ZERO:
        raise ValueError("D* must be non-negative")
    if not qm.homogeneous_value(scaling) > ZERO:
        raise ValueError("the scaling element must have positive phi-bar")
    if x * scaling == scaling * x:
        raise ValueError("x and the scaling element must not commute")
    denom = (
        exact_max(
            abs(qm.homogeneous_value(model.generator_element(g)))
            for g in model.generators()
        )
        + dstar
    )
    if not denom > ZERO:
        raise ValueError("max_s |phi-bar(s)| + D* must be positive")
    target = (scaling ** -depth) * x * (scaling ** depth)
    geodesic = straight_path(x, target)
    two_dstar = dstar + dstar
    bounds = []
    for v in geodesic.vertices:
        raw = (abs(qm.homogeneous_value(v)) - two_dstar) / denom
        bounds.append(raw if raw > ZERO else ZERO)
    return ObstructionReport(
        depth=depth,
        dstar=dstar,
        geodesic=geodesic,
        bounds=tuple(bounds),
        max_bound=exact_max(bounds),
    )
