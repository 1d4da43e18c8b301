"""Group models with exact word arithmetic.

Two families are supported: free groups F_n and direct products
F_n x Z^k.  Elements are kept in normal form as a reduced free word
together with an integer vector for the abelian block; the word metric
of the standard generating set is then just (free length) + (l1 norm of
the abelian vector), and balls can be enumerated by breadth-first
search.

The canonical order used everywhere (ball listings, tie-breaking in
searches, certificate output) is: generators sorted by index with the
plain letter before its inverse, elements sorted by word length and
then lexicographically on their canonical spelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .errors import CapExceededError, ModelMismatchError

DEFAULT_BALL_CAP = 10
_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Generator:
    """A generator letter: an index into the model's generating set plus
    an inverse flag."""

    index: int
    inverse: bool = False

    def inverted(self) -> "Generator":
        return Generator(self.index, not self.inverse)

    def key(self) -> tuple[int, int]:
        return (self.index, 1 if self.inverse else 0)


@dataclass(frozen=True)
class GroupModel:
    """F_n (abelian_rank == 0) or F_n x Z^k, with named generators.

    Free generators come first, abelian generators after them; the
    global generator index runs over both blocks.  `ball_cap` bounds the
    radius of any ball this model will enumerate.
    """

    free_rank: int
    abelian_rank: int = 0
    generator_names: tuple[str, ...] = ()
    ball_cap: int = DEFAULT_BALL_CAP

    def __post_init__(self):
        if self.free_rank < 0 or self.abelian_rank < 0:
            raise ValueError("ranks must be non-negative")
        if self.rank == 0:
            raise ValueError("need at least one generator")
        if not self.generator_names:
            if self.rank > len(_ALPHABET):
                raise ValueError("too many generators for default names")
            object.__setattr__(
                self, "generator_names", tuple(_ALPHABET[: self.rank])
            )
        if len(self.generator_names) != self.rank:
            raise ValueError(
                f"expected {self.rank} generator names, got {len(self.generator_names)}"
            )
        if len(set(self.generator_names)) != self.rank:
            raise ValueError("generator names must be distinct")
        for name in self.generator_names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ValueError(f"bad generator name {name!r}")
        if self.ball_cap < 0:
            raise ValueError("ball_cap must be non-negative")

    @property
    def rank(self) -> int:
        return self.free_rank + self.abelian_rank

    @property
    def kind(self) -> str:
        return "free" if self.abelian_rank == 0 else "free-times-abelian"

    def is_free_index(self, index: int) -> bool:
        return index < self.free_rank

    def generators(self) -> tuple[Generator, ...]:
        """All 2*rank generator letters in canonical order."""
        out = []
        for i in range(self.rank):
            out.append(Generator(i, False))
            out.append(Generator(i, True))
        return tuple(out)

    def positive_generators(self) -> tuple[Generator, ...]:
        return tuple(Generator(i, False) for i in range(self.rank))

    def identity(self) -> "GroupElement":
        return GroupElement(self, (), (0,) * self.abelian_rank)

    def generator_element(self, gen: Generator) -> "GroupElement":
        if not 0 <= gen.index < self.rank:
            raise ValueError(f"generator index {gen.index} out of range for rank {self.rank}")
        if self.is_free_index(gen.index):
            letter = gen.index + 1
            return GroupElement(
                self, (-letter if gen.inverse else letter,), (0,) * self.abelian_rank
            )
        vec = [0] * self.abelian_rank
        vec[gen.index - self.free_rank] = -1 if gen.inverse else 1
        return GroupElement(self, (), tuple(vec))

    def generator_name(self, gen: Generator) -> str:
        base = self.generator_names[gen.index]
        return base + "^-1" if gen.inverse else base

    # -- word parsing / formatting -----------------------------------

    def parse_word(self, text: str) -> tuple[Generator, ...]:
        """Parse whitespace-separated letter tokens `name`, `name^k`,
        `name^-k` into a generator sequence (exponents are expanded).
        The token `1` spells the empty word."""
        name_to_index = {n: i for i, n in enumerate(self.generator_names)}
        out: list[Generator] = []
        for token in text.split():
            if token == "1":
                continue
            m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?", token)
            if not m:
                raise ValueError(f"bad word token {token!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in name_to_index:
                raise ValueError(f"unknown generator {name!r}")
            idx = name_to_index[name]
            gen = Generator(idx, exp < 0)
            out.extend([gen] * abs(exp))
        return tuple(out)

    def parse_element(self, text: str) -> "GroupElement":
        return reduce_word(self, self.parse_word(text))

    def ball(self, radius: int) -> tuple["GroupElement", ...]:
        """All elements of word length <= radius, canonically sorted."""
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if radius > self.ball_cap:
            raise CapExceededError("ball radius", radius, self.ball_cap)
        return _ball(self, radius)


@dataclass(frozen=True)
class GroupElement:
    """Normal form: reduced free word (signed letters, 1-based index)
    plus an integer vector for the abelian block."""

    model: GroupModel
    free: tuple[int, ...]
    ab: tuple[int, ...]

    def _check(self, other: "GroupElement") -> None:
        if self.model != other.model:
            raise ModelMismatchError("elements belong to different group models")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.model,
            _concat_reduce(self.free, other.free),
            tuple(x + y for x, y in zip(self.ab, other.ab)),
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(
            self.model,
            tuple(-x for x in reversed(self.free)),
            tuple(-x for x in self.ab),
        )

    def __pow__(self, m: int) -> "GroupElement":
        if m == 0:
            return self.model.identity()
        base = self if m > 0 else self.inverse()
        out = base
        for _ in range(abs(m) - 1):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.free and not any(self.ab)

    def length(self) -> int:
        """Word length of the normal form; equals d(1, g)."""
        return len(self.free) + sum(abs(x) for x in self.ab)

    def distance(self, other: "GroupElement") -> int:
        self._check(other)
        return (self.inverse() * other).length()

    def letters(self) -> tuple[Generator, ...]:
        """Canonical spelling: free letters in word order, then each
        abelian generator's run."""
        out = [
            Generator(abs(x) - 1, x < 0)
            for x in self.free
        ]
        for j, v in enumerate(self.ab):
            gen = Generator(self.model.free_rank + j, v < 0)
            out.extend([gen] * abs(v))
        return tuple(out)

    def sort_key(self) -> tuple:
        return (self.length(), tuple(g.key() for g in self.letters()))

    def word_str(self) -> str:
        """Inverse of GroupModel.parse_element for normal forms, with
        adjacent equal letters compressed into exponents."""
        if self.is_identity():
            return ""
        parts: list[str] = []
        run: list[Generator] = []
        for gen in self.letters():
            if run and run[-1] == gen:
                run.append(gen)
            else:
                if run:
                    parts.append(_format_run(self.model, run))
                run = [gen]
        parts.append(_format_run(self.model, run))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<{self.word_str() or '1'}>"


def _format_run(model: GroupModel, run: list[Generator]) -> str:
    gen, n = run[0], len(run)
    name = model.generator_names[gen.index]
    exp = -n if gen.inverse else n
    return name if exp == 1 else f"{name}^{exp}"


def _concat_reduce(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    i, j = len(u), 0
    while i > 0 and j < len(v) and u[i - 1] == -v[j]:
        i -= 1
        j += 1
    return u[:i] + v[j:]


def reduce_word(model: GroupModel, word: Iterable[Generator]) -> GroupElement:
    """Multiply out a letter sequence, cancelling as it goes."""
    free: list[int] = []
    ab = [0] * model.abelian_rank
    for gen in word:
        if not 0 <= gen.index < model.rank:
            raise ValueError(
                f"generator index {gen.index} out of range for rank {model.rank}"
            )
        if model.is_free_index(gen.index):
            letter = gen.index + 1
            if gen.inverse:
                letter = -letter
            if free and free[-1] == -letter:
                free.pop()
            else:
                free.append(letter)
        else:
            ab[gen.index - model.free_rank] += -1 if gen.inverse else 1
    return GroupElement(model, tuple(free), tuple(ab))


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h * g.inverse() * h.inverse()


def edge_letter(g: GroupElement, h: GroupElement) -> Generator:
    """The generator carrying g to h; errors if d(g, h) != 1."""
    step = g.inverse() * h
    if step.length() != 1:
        raise ValueError("vertices are not adjacent in the Cayley graph")
    return step.letters()[0]


@lru_cache(maxsize=64)
def _ball(model: GroupModel, radius: int) -> tuple[GroupElement, ...]:
    letters = [model.generator_element(gen) for gen in model.generators()]
    identity = model.identity()
    seen = {(identity.free, identity.ab)}
    out = [identity]
    frontier = [identity]
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for step in letters:
                h = g * step
                if h.length() != r:
                    continue
                key = (h.free, h.ab)
                if key not in seen:
                    seen.add(key)
                    nxt.append(h)
        frontier = nxt
        out.extend(nxt)
    return tuple(sorted(out, key=GroupElement.sort_key))


@dataclass(frozen=True)
class ApproximateSubset:
    """A subset given by a membership predicate together with a finite
    witness set X certifying approximate closure: for tested pairs
    g, h in the subset, g*h lands in (subset)*X."""

    description: str
    member: Callable[[GroupElement], bool]
    witness: tuple[GroupElement, ...]

    def __contains__(self, g: GroupElement) -> bool:
        return self.member(g)
