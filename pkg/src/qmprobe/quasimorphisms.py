"""Quasimorphisms on the supported group models and the exact
operations the rest of the package relies on.

Variants:

* `HomomorphismQM` -- determined by exact generator values; defect 0.
* `BrooksQM` -- counting quasimorphism of a reduced free word w: the
  number of occurrences of w as a subword of the reduced free part
  (overlaps allowed) minus the number of occurrences of w^-1.
* `CombinationQM` -- exact linear combination of other variants.
* `HomogenizedQM` -- the homogenization of a Brooks quasimorphism or a
  homomorphism, evaluated exactly.

Homogeneous values are available for every variant through
`homogeneous_value`: for a Brooks quasimorphism the value is computed
by cyclically reducing the free part and counting occurrences that
start within one period of the resulting bi-infinite word; for linear
combinations the homogenization is taken term by term (homogenization
is a linear operator, so this is exact).

Defects are never guessed.  `defect_lower_bound` scans a ball for
certified lower bounds; every operation that needs an upper defect
bound takes it as an explicit argument (written D* throughout).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ModelMismatchError
from .exact import ExactReal, ZERO
from .groups import (
    ApproximateSubset,
    Generator,
    GroupElement,
    GroupModel,
    commutator,
)


class Quasimorphism:
    """Base class; concrete variants implement `_value` and
    `_homogeneous_value`, both exact."""

    def __init__(self, model: GroupModel):
        self.model = model
        self._vcache: dict[tuple, ExactReal] = {}
        self._hcache: dict[tuple, ExactReal] = {}

    # subclass hooks ------------------------------------------------

    def _value(self, g: GroupElement) -> ExactReal:
        raise NotImplementedError

    def _homogeneous_value(self, g: GroupElement) -> ExactReal:
        raise NotImplementedError

    @property
    def is_homogeneous(self) -> bool:
        raise NotImplementedError

    def defect_upper(self) -> Optional[ExactReal]:
        """A certified upper bound on the defect, or None if unknown."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    # shared API ----------------------------------------------------

    def _check(self, g: GroupElement) -> None:
        if g.model != self.model:
            raise ModelMismatchError("element and quasimorphism use different models")

    def value(self, g: GroupElement) -> ExactReal:
        self._check(g)
        key = (g.free, g.ab)
        got = self._vcache.get(key)
        if got is None:
            got = self._vcache[key] = self._value(g)
        return got

    def homogeneous_value(self, g: GroupElement) -> ExactReal:
        self._check(g)
        key = (g.free, g.ab)
        got = self._hcache.get(key)
        if got is None:
            got = self._hcache[key] = self._homogeneous_value(g)
        return got


class HomomorphismQM(Quasimorphism):
    def __init__(self, model: GroupModel, values: Sequence[ExactReal]):
        super().__init__(model)
        if len(values) != model.rank:
            raise ValueError(
                f"expected {model.rank} generator values, got {len(values)}"
            )
        self.values = tuple(values)

    def _value(self, g: GroupElement) -> ExactReal:
        total = ZERO
        for x in g.free:
            v = self.values[abs(x) - 1]
            total = total + (v if x > 0 else -v)
        for j, e in enumerate(g.ab):
            if e:
                total = total + self.values[self.model.free_rank + j] * e
        return total

    _homogeneous_value = _value

    @property
    def is_homogeneous(self) -> bool:
        return True

    def defect_upper(self) -> Optional[ExactReal]:
        return ZERO

    def describe(self) -> str:
        pairs = ", ".join(
            f"{n} -> {v}" for n, v in zip(self.model.generator_names, self.values)
        )
        return f"homomorphism({pairs})"


def cyclic_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == -word[j - 1]:
        i += 1
        j -= 1
    return word[i:j]


def count_occurrences(seq: tuple[int, ...], w: tuple[int, ...], starts: range) -> int:
    k = len(w)
    return sum(1 for p in starts if seq[p : p + k] == w)


class BrooksQM(Quasimorphism):
    """Counting quasimorphism of the reduced word `word` (a sequence of
    free generator letters).  The abelian block of a product model is
    invisible to it."""

    def __init__(self, model: GroupModel, word: Sequence[Generator]):
        super().__init__(model)
        if not word:
            raise ValueError("Brooks word must be non-empty")
        letters = []
        for gen in word:
            if not model.is_free_index(gen.index):
                raise ValueError("Brooks word may only use free generators")
            letters.append(-(gen.index + 1) if gen.inverse else gen.index + 1)
        for x, y in zip(letters, letters[1:]):
            if x == -y:
                raise ValueError("Brooks word must be reduced")
        self.word = tuple(letters)
        self.word_inverse = tuple(-x for x in reversed(letters))

    def _value(self, g: GroupElement) -> ExactReal:
        seq = g.free
        starts = range(len(seq) - len(self.word) + 1)
        n = count_occurrences(seq, self.word, starts) - count_occurrences(
            seq, self.word_inverse, starts
        )
        return ExactReal(n)

    def _homogeneous_value(self, g: GroupElement) -> ExactReal:
        cyc = cyclic_reduce(g.free)
        if not cyc:
            return ZERO
        L, k = len(cyc), len(self.word)
        reps = -(-(L - 1 + k) // L)  # enough copies for starts within one period
        big = cyc * reps
        starts = range(L)
        n = count_occurrences(big, self.word, starts) - count_occurrences(
            big, self.word_inverse, starts
        )
        return ExactReal(n)

    @property
    def is_homogeneous(self) -> bool:
        return False

    def defect_upper(self) -> Optional[ExactReal]:
        return None

    def describe(self) -> str:
        letters = " ".join(
            self.model.generator_name(Generator(abs(x) - 1, x < 0)) for x in self.word
        )
        return f"brooks({letters})"


class CombinationQM(Quasimorphism):
    def __init__(self, coefficients: Sequence[ExactReal], parts: Sequence[Quasimorphism]):
        if not parts:
            raise ValueError("combination needs at least one part")
        if len(coefficients) != len(parts):
            raise ValueError("one coefficient per part required")
        model = parts[0].model
        for p in parts[1:]:
            if p.model != model:
                raise ModelMismatchError("combination parts use different models")
        super().__init__(model)
        self.coefficients = tuple(coefficients)
        self.parts = tuple(parts)

    def _value(self, g: GroupElement) -> ExactReal:
        total = ZERO
        for c, p in zip(self.coefficients, self.parts):
            total = total + c * p.value(g)
        return total

    def _homogeneous_value(self, g: GroupElement) -> ExactReal:
        total = ZERO
        for c, p in zip(self.coefficients, self.parts):
            total = total + c * p.homogeneous_value(g)
        return total

    @property
    def is_homogeneous(self) -> bool:
        return all(p.is_homogeneous for p in self.parts)

    def defect_upper(self) -> Optional[ExactReal]:
        total = ZERO
        for c, p in zip(self.coefficients, self.parts):
            ub = p.defect_upper()
            if ub is None:
                return None
            total = total + abs(c) * ub
        return total

    def describe(self) -> str:
        return " + ".join(
            f"{c}*[{p.describe()}]" for c, p in zip(self.coefficients, self.parts)
        )


class HomogenizedQM(Quasimorphism):
    """phi-bar for a Brooks quasimorphism or a homomorphism.

    Combinations are deliberately not accepted here: homogenize the
    parts first and combine those (the result is the same and keeps
    each exact homogenization auditable on its own).
    """

    def __init__(self, base: Quasimorphism):
        if not isinstance(base, (BrooksQM, HomomorphismQM)):
            raise ValueError(
                "homogenization is implemented for Brooks and homomorphism "
                "variants; build combinations out of homogenized parts instead"
            )
        super().__init__(base.model)
        self.base = base

    def _value(self, g: GroupElement) -> ExactReal:
        return self.base.homogeneous_value(g)

    _homogeneous_value = _value

    @property
    def is_homogeneous(self) -> bool:
        return True

    def defect_upper(self) -> Optional[ExactReal]:
        ub = self.base.defect_upper()
        if ub is None:
            return None
        return ub + ub  # D(phi-bar) <= 2 D(phi)

    def describe(self) -> str:
        return f"homogenized[{self.base.describe()}]"


def evaluate(qm: Quasimorphism, g: GroupElement) -> ExactReal:
    return qm.value(g)


def homogenize_exact(qm: Quasimorphism, g: GroupElement) -> ExactReal:
    """The exact homogeneous value phi-bar(g)."""
    return qm.homogeneous_value(g)


@dataclass(frozen=True)
class Interval:
    lo: ExactReal
    hi: ExactReal

    def __contains__(self, x: ExactReal) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> ExactReal:
        return self.hi - self.lo


def homogenize_numeric(
    qm: Quasimorphism,
    g: GroupElement,
    n: int,
    defect_upper: Optional[ExactReal] = None,
) -> Interval:
    """An exact interval containing phi-bar(g), from phi(g^n)/n and an
    upper defect bound: |phi(g^n)/n - phi-bar(g)| <= D/n.

    The bound must be supplied unless the variant knows one.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ub = defect_upper if defect_upper is not None else qm.defect_upper()
    if ub is None:
        raise ValueError(
            "no certified defect upper bound available; pass defect_upper explicitly"
        )
    if ub < ZERO:
        raise ValueError("defect upper bound must be non-negative")
    centre = qm.value(g ** n) / n
    half = ub / n
    return Interval(centre - half, centre + half)


@dataclass(frozen=True)
class DefectEstimate:
    """An exact interval [lower, upper] around the defect, with a
    witness realizing the lower bound.

    upper is None when no finite bound is known.  witness_kind is
    "commutator" (lower = phi-bar([g, h])) or "three-term"
    (lower = |phi(g) + phi(h) - phi(g h)|).
    """

    lower: ExactReal
    upper: Optional[ExactReal]
    radius: int
    provenance: str
    witness_kind: str
    witness: tuple[GroupElement, GroupElement]
    witness_value: ExactReal


def defect_lower_bound(
    qm: Quasimorphism,
    radius: int,
    upper: Optional[ExactReal] = None,
) -> DefectEstimate:
    """Scan ball(radius)^2 for the largest commutator value
    phi([g, h]) and the largest three-term expression
    |phi(g) + phi(h) - phi(g h)|; both are certified lower bounds on
    the defect of a homogeneous quasimorphism."""
    if not qm.is_homogeneous:
        raise ValueError("defect_lower_bound expects a homogeneous quasimorphism")
    ball = qm.model.ball(radius)
    best = ZERO
    best_kind = "commutator"
    best_pair = (qm.model.identity(), qm.model.identity())
    for g in ball:
        vg = qm.value(g)
        for h in ball:
            cval = qm.value(commutator(g, h))
            if cval > best:
                best, best_kind, best_pair = cval, "commutator", (g, h)
            tval = abs(vg + qm.value(h) - qm.value(g * h))
            if tval > best:
                best, best_kind, best_pair = tval, "three-term", (g, h)
    if upper is None:
        upper = qm.defect_upper()
    if upper is not None and upper < best:
        raise ValueError(
            f"claimed upper bound {upper} is below the certified lower bound {best}"
        )
    return DefectEstimate(
        lower=best,
        upper=upper,
        radius=radius,
        provenance=f"commutator and three-term scan over ball({radius})^2",
        witness_kind=best_kind,
        witness=best_pair,
        witness_value=best,
    )


@dataclass(frozen=True)
class LevelSubset:
    """Aker(phi, D*) = {g : |phi-bar(g)| <= 2 D*}, or the positive set
    {g : phi-bar(g) > 0}."""

    qm: Quasimorphism
    mode: str  # "aker" | "positive"
    dstar: Optional[ExactReal] = None

    def __post_init__(self):
        if self.mode not in ("aker", "positive"):
            raise ValueError(f"unknown level subset mode {self.mode!r}")
        if self.mode == "aker":
            if self.dstar is None or self.dstar < ZERO:
                raise ValueError("aker subset needs a non-negative D*")

    def __contains__(self, g: GroupElement) -> bool:
        v = self.qm.homogeneous_value(g)
        if self.mode == "aker":
            return abs(v) <= self.dstar + self.dstar
        return v > ZERO


def membership(subset: LevelSubset, g: GroupElement) -> bool:
    return g in subset


@dataclass(frozen=True)
class ScalingElement:
    """A commutator c = [g, h] with 4 D*/5 < phi-bar(c) <= D*, plus its
    distance C = d(1, c) from the identity."""

    element: GroupElement
    pair: tuple[GroupElement, GroupElement]
    value: ExactReal
    distance: int


def find_scaling_element(
    qm: Quasimorphism, dstar: ExactReal, radius: int
) -> Optional[ScalingElement]:
    """First commutator of ball(radius)^2, in canonical pair order,
    whose homogeneous value lands in (4 D*/5, D*].  Returns None when
    the scan comes up empty (callers must treat that as evidence, not
    as a theorem)."""
    if dstar <= ZERO:
        raise ValueError("find_scaling_element needs D* > 0")
    lo = dstar * 4 / 5
    ball = qm.model.ball(radius)
    for g in ball:
        for h in ball:
            c = commutator(g, h)
            v = qm.homogeneous_value(c)
            if lo < v <= dstar:
                return ScalingElement(
                    element=c, pair=(g, h), value=v, distance=c.length()
                )
    return None


# search order for the correcting exponent m: small magnitudes first
_M_ORDER = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5)


@dataclass(frozen=True)
class AkerCertificate:
    """Checked approximate closure of Aker(phi, D*) inside a ball.

    For members g, h (pairs in canonical product order) the certificate
    stores an exponent m with |phi-bar(g h c^m)| <= 2 D*; X is the
    witness set {c^5, ..., c^-5} (just {1} when D* = 0 and the subset is
    an honest kernel)."""

    subset: ApproximateSubset
    dstar: ExactReal
    radius: int
    scaling: Optional[GroupElement]
    members: tuple[GroupElement, ...]
    exponents: tuple[int, ...]
    passed: bool
    counterexample: Optional[tuple[GroupElement, GroupElement]]


def certify_aker_approximate_subgroup(
    qm: Quasimorphism,
    dstar: ExactReal,
    scaling: Optional[GroupElement],
    radius: int,
) -> AkerCertificate:
    if dstar < ZERO:
        raise ValueError("D* must be non-negative")
    model = qm.model
    subset_pred = LevelSubset(qm, "aker", dstar)
    members = tuple(g for g in model.ball(radius) if g in subset_pred)
    bound = dstar + dstar

    if dstar == ZERO:
        witness = (model.identity(),)
        order: tuple[int, ...] = (0,)
        powers = {0: model.identity()}
    else:
        if scaling is None:
            raise ValueError("D* > 0 certification needs a scaling element c")
        if scaling.model != model:
            raise ModelMismatchError("scaling element from a different model")
        witness = tuple(scaling ** m for m in range(5, -6, -1))
        order = _M_ORDER
        powers = {m: scaling ** m for m in order}

    exponents: list[int] = []
    counterexample = None
    for g in members:
        if counterexample:
            break
        for h in members:
            gh = g * h
            chosen = None
            for m in order:
                if abs(qm.homogeneous_value(gh * powers[m])) <= bound:
                    chosen = m
                    break
            if chosen is None:
                counterexample = (g, h)
                break
            exponents.append(chosen)

    subset = ApproximateSubset(
        description=f"Aker({qm.describe()}, D*={dstar}) within ball({radius})",
        member=lambda g: g in subset_pred,
        witness=witness,
    )
    return AkerCertificate(
        subset=subset,
        dstar=dstar,
        radius=radius,
        scaling=scaling,
        members=members,
        exponents=tuple(exponents),
        passed=counterexample is None,
        counterexample=counterexample,
    )
