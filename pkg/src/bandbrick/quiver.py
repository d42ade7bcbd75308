"""Quivers with monomial relations.

Composition is left to right: the path ``a d`` traverses ``a`` and then
``d``.  A path lies in the ideal exactly when it contains one of the
relations as a contiguous subpath.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    EndpointMismatch,
    ForeignArrow,
    InvalidInput,
    ParseError,
    RelationTooShort,
    UnreducedJunction,
)

_ID = r"[A-Za-z0-9_.']+"
_ID_RE = re.compile(rf"^{_ID}$")


@dataclass(frozen=True, order=True)
class Letter:
    """An arrow or its formal inverse.  Sorts arrows by id, direct first."""

    arrow: str
    inverse: bool = False

    def inv(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    @property
    def direct(self) -> bool:
        return not self.inverse

    def __str__(self) -> str:
        return self.arrow + "-" if self.inverse else self.arrow

    @classmethod
    def parse(cls, token: str) -> "Letter":
        if token.endswith("-"):
            return cls(token[:-1], True)
        return cls(token, False)


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Walk:
    """A reduced walk; ``letters == ()`` is the trivial walk at ``start``."""

    letters: tuple[Letter, ...]
    start: str
    end: str

    @classmethod
    def trivial(cls, vertex: str) -> "Walk":
        return cls((), vertex, vertex)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"@{self.start}"
        return " ".join(str(x) for x in self.letters)

    def is_direct(self) -> bool:
        return all(x.direct for x in self.letters)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateId("duplicate vertex id")
        seen = set()
        vs = set(self.vertices)
        for a in self.arrows:
            if a.id in seen:
                raise DuplicateId(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            for end in (a.source, a.target):
                if end not in vs:
                    raise DanglingEndpoint(f"arrow {a.id!r} names unknown vertex {end!r}")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        """All letters, sorted."""
        return tuple(sorted(Letter(a.id, inv) for a in self.arrows for inv in (False, True)))

    @cached_property
    def code(self) -> dict[Letter, int]:
        """Dense integer codes; ``code[x.inv()] == code[x] ^ 1`` and codes sort like letters."""
        return {x: i for i, x in enumerate(self.letters)}

    @cached_property
    def code_source(self) -> tuple[str, ...]:
        return tuple(self.source(x) for x in self.letters)

    @cached_property
    def code_target(self) -> tuple[str, ...]:
        return tuple(self.target(x) for x in self.letters)

    @cached_property
    def _out_letters(self) -> dict[str, tuple[Letter, ...]]:
        out: dict[str, list[Letter]] = {v: [] for v in self.vertices}
        for x in self.letters:
            out[self.source(x)].append(x)
        return {v: tuple(xs) for v, xs in out.items()}

    def letters_from(self, vertex: str) -> tuple[Letter, ...]:
        return self._out_letters[vertex]

    def _arrow(self, arrow_id: str) -> Arrow:
        try:
            return self.arrow_map[arrow_id]
        except KeyError:
            raise ForeignArrow(f"unknown arrow {arrow_id!r}") from None

    def source(self, x: Letter) -> str:
        a = self._arrow(x.arrow)
        return a.target if x.inverse else a.source

    def target(self, x: Letter) -> str:
        a = self._arrow(x.arrow)
        return a.source if x.inverse else a.target

    def walk(self, letters: Iterable[Letter], start: Optional[str] = None) -> Walk:
        """Validate ``letters`` as a reduced walk."""
        letters = tuple(letters)
        if not letters:
            if start is None or start not in self.vertices:
                raise InvalidInput("trivial walk needs a valid vertex")
            return Walk.trivial(start)
        for i, (x, y) in enumerate(zip(letters, letters[1:])):
            if self.target(x) != self.source(y):
                raise EndpointMismatch(f"letters {x} and {y} at position {i + 1} do not compose")
            if y == x.inv():
                raise UnreducedJunction(f"{x} {y} at position {i + 1} is not reduced")
        s = self.source(letters[0])
        if start is not None and start != s:
            raise EndpointMismatch(f"walk starts at {s}, not {start}")
        return Walk(letters, s, self.target(letters[-1]))

    def parse_walk(self, text: str) -> Walk:
        """Parse the walk literal syntax: ``"c d-"`` or ``"@2"``."""
        text = text.strip()
        if text.startswith("@"):
            v = text[1:]
            if v not in self.vertices:
                raise InvalidInput(f"unknown vertex {v!r}")
            return Walk.trivial(v)
        tokens = text.split()
        if not tokens:
            raise InvalidInput("empty walk literal")
        return self.walk(Letter.parse(t) for t in tokens)

    def underlying_is_forest(self) -> bool:
        """True iff the underlying undirected multigraph has no cycle."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a in self.arrows:
            r, s = find(a.source), find(a.target)
            if r == s:
                return False
            parent[r] = s
        return True


def concat_walks(u: Walk, v: Walk, quiver: Optional[Quiver] = None) -> Walk:
    if u.end != v.start:
        raise EndpointMismatch(f"{u} ends at {u.end} but {v} starts at {v.start}")
    if u.is_trivial:
        return v
    if v.is_trivial:
        return u
    if v.letters[0] == u.letters[-1].inv():
        raise UnreducedJunction(f"junction {u.letters[-1]} {v.letters[0]} is not reduced")
    return Walk(u.letters + v.letters, u.start, v.end)


def invert_walk(w: Walk) -> Walk:
    return Walk(tuple(x.inv() for x in reversed(w.letters)), w.end, w.start)


def invert_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple(x.inv() for x in reversed(letters))


@dataclass(frozen=True)
class Presentation:
    """A quiver together with monomial relations (tuples of arrow ids)."""

    quiver: Quiver
    relations: tuple[tuple[str, ...], ...] = ()
    nilpotency: Optional[int] = None

    def __post_init__(self):
        for rel in self.relations:
            if len(rel) < 2:
                raise RelationTooShort(f"relation {' '.join(rel)!r} has length {len(rel)} < 2")
            for aid in rel:
                if aid not in self.quiver.arrow_map:
                    raise ForeignArrow(f"relation uses unknown arrow {aid!r}")
            arrows = self.quiver.arrow_map
            for x, y in zip(rel, rel[1:]):
                if arrows[x].target != arrows[y].source:
                    raise EndpointMismatch(f"relation {' '.join(rel)!r} is not a path")
        if self.nilpotency is None:
            object.__setattr__(self, "nilpotency", len(self.quiver.arrows) + self.max_relation_length)
        elif self.nilpotency < 1:
            raise InvalidInput("nilpotency bound must be positive")

    @property
    def n(self) -> int:
        """Number of vertices."""
        return len(self.quiver.vertices)

    @cached_property
    def max_relation_length(self) -> int:
        return max((len(r) for r in self.relations), default=0)

    @cached_property
    def relation_set(self) -> frozenset[tuple[str, ...]]:
        return frozenset(self.relations)

    @cached_property
    def relation_lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(r) for r in self.relations}))

    def contains_relation(self, path: Sequence[str]) -> bool:
        """True iff the arrow sequence ``path`` contains a relation."""
        path = tuple(path)
        rels = self.relation_set
        for length in self.relation_lengths:
            if length > len(path):
                break
            for i in range(len(path) - length + 1):
                if path[i:i + length] in rels:
                    return True
        return False

    def relation_ends_at_last(self, path: Sequence[str]) -> bool:
        """True iff some relation is a suffix of ``path``."""
        path = tuple(path)
        rels = self.relation_set
        for length in self.relation_lengths:
            if length > len(path):
                break
            if path[len(path) - length:] in rels:
                return True
        return False

    def relation_starts_at_first(self, path: Sequence[str]) -> bool:
        path = tuple(path)
        rels = self.relation_set
        for length in self.relation_lengths:
            if length > len(path):
                break
            if path[:length] in rels:
                return True
        return False

    def parse_walk(self, text: str) -> Walk:
        return self.quiver.parse_walk(text)

    def to_text(self) -> str:
        """Render back to the presentation DSL."""
        lines = ["vertices: " + " ".join(self.quiver.vertices)]
        lines += [f"arrow {a.id}: {a.source} -> {a.target}" for a in self.quiver.arrows]
        lines += ["relation: " + " ".join(r) for r in self.relations]
        lines.append(f"nilpotency: {self.nilpotency}")
        return "\n".join(lines) + "\n"


def path_in_ideal(p: Walk, pres: Presentation) -> bool:
    if not p.is_direct():
        raise InvalidInput(f"{p} is not a path")
    for x in p.letters:
        if x.arrow not in pres.quiver.arrow_map:
            raise ForeignArrow(f"unknown arrow {x.arrow!r}")
    return pres.contains_relation([x.arrow for x in p.letters])


def nonzero_paths(pres: Presentation, max_len: int) -> Iterator[tuple[str, ...]]:
    """All nonempty paths of length <= ``max_len`` outside the ideal, depth first."""
    q = pres.quiver
    by_source: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        by_source[a.source].append(a)

    def extend(path: tuple[str, ...], end: str):
        yield path
        if len(path) == max_len:
            return
        for a in by_source[end]:
            nxt = path + (a.id,)
            if not pres.relation_ends_at_last(nxt):
                yield from extend(nxt, a.target)

    for a in q.arrows:
        yield from extend((a.id,), a.target)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    bound: int
    violation: Optional[tuple[str, ...]] = None

    def to_json(self) -> dict:
        out = {"admissible": self.admissible, "bound": self.bound}
        if self.violation is not None:
            out["violation"] = " ".join(self.violation)
        return out


def check_admissible(pres: Presentation, bound: Optional[int] = None) -> AdmissibilityReport:
    """Every path of length ``bound`` must lie in the ideal."""
    bound = pres.nilpotency if bound is None else bound
    for path in nonzero_paths(pres, bound):
        if len(path) == bound:
            return AdmissibilityReport(False, bound, path)
    return AdmissibilityReport(True, bound)


@dataclass(frozen=True)
class SBReport:
    special_biserial: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.special_biserial

    def to_json(self) -> dict:
        out: dict = {"special_biserial": self.special_biserial}
        if self.violation is not None:
            out["violation"] = self.violation
        return out


def is_special_biserial(pres: Presentation) -> SBReport:
    q = pres.quiver
    for v in q.vertices:
        starts = [a.id for a in q.arrows if a.source == v]
        ends = [a.id for a in q.arrows if a.target == v]
        if len(starts) > 2:
            return SBReport(False, f"vertex {v} starts {len(starts)} arrows")
        if len(ends) > 2:
            return SBReport(False, f"vertex {v} ends {len(ends)} arrows")
    for a in q.arrows:
        after = [b.id for b in q.arrows if b.source == a.target
                 and (a.id, b.id) not in pres.relation_set]
        if len(after) > 1:
            return SBReport(False, f"arrow {a.id} has non-zero successors {' '.join(after)}")
        before = [c.id for c in q.arrows if c.target == a.source
                  and (c.id, a.id) not in pres.relation_set]
        if len(before) > 1:
            return SBReport(False, f"arrow {a.id} has non-zero predecessors {' '.join(before)}")
    return SBReport(True)


def _check_id(token: str, lineno: int, col: int) -> str:
    if not _ID_RE.match(token):
        raise ParseError(f"invalid identifier {token!r}", lineno, col)
    return token


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented presentation DSL::

        vertices: 1 2 3
        arrow a: 1 -> 2
        relation: a d
        nilpotency: 6
    """
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relations: list[tuple[str, ...]] = []
    nilpotency: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        head, sep, rest = stripped.partition(":")
        if not sep:
            raise ParseError("expected ':'", lineno, indent + 1)
        col = indent + len(head) + 2
        keyword = head.split()
        if keyword == ["vertices"]:
            vertices += [_check_id(t, lineno, col) for t in rest.split()]
        elif len(keyword) == 2 and keyword[0] == "arrow":
            aid = _check_id(keyword[1], lineno, indent + 7)
            m = re.match(rf"^\s*({_ID})\s*->\s*({_ID})\s*$", rest)
            if not m:
                raise ParseError("expected '<vertex> -> <vertex>'", lineno, col)
            arrows.append(Arrow(aid, m.group(1), m.group(2)))
        elif keyword == ["relation"]:
            tokens = rest.split()
            if not tokens:
                raise ParseError("empty relation", lineno, col)
            relations.append(tuple(_check_id(t, lineno, col) for t in tokens))
        elif keyword == ["nilpotency"]:
            try:
                nilpotency = int(rest.strip())
            except ValueError:
                raise ParseError("nilpotency must be an integer", lineno, col) from None
            if nilpotency < 1:
                raise ParseError("nilpotency must be positive", lineno, col)
        else:
            raise ParseError(f"unknown directive {head.strip()!r}", lineno, indent + 1)
    quiver = Quiver(tuple(vertices), tuple(arrows))
    return Presentation(quiver, tuple(relations), nilpotency)
