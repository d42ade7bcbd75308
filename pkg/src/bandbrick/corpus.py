"""Named presentations and a seeded generator of random special biserial ones."""

from __future__ import annotations

import random
from typing import Optional

from .quiver import Arrow, Letter, Presentation, Quiver, check_admissible, parse_presentation
from .words import StringWord, is_string

KRONECKER = """\
vertices: 1 2
arrow a: 1 -> 2
arrow b: 1 -> 2
"""

STACKED_KRONECKER = """\
vertices: 1 2 3
arrow a: 1 -> 2
arrow b: 1 -> 2
arrow c: 2 -> 3
arrow d: 2 -> 3
relation: a d
relation: b c
"""

LOCAL_GENTLE = """\
vertices: 1
arrow x: 1 -> 1
arrow y: 1 -> 1
relation: x x
relation: y y
relation: x y
"""

LINEAR_A2 = """\
vertices: 1 2
arrow a: 1 -> 2
nilpotency: 2
"""

KRONECKER_3 = """\
vertices: 1 2
arrow a: 1 -> 2
arrow b: 1 -> 2
arrow c: 1 -> 2
"""

NAMED = {
    "kronecker": KRONECKER,
    "stacked-kronecker": STACKED_KRONECKER,
    "local-gentle": LOCAL_GENTLE,
    "linear-a2": LINEAR_A2,
    "kronecker-3": KRONECKER_3,
}


def named(name: str) -> Presentation:
    return parse_presentation(NAMED[name])


def random_special_biserial(seed: int, n_vertices: int = 3, n_arrows: int = 5,
                            max_path: int = 4) -> Presentation:
    """A random special biserial, admissible monomial presentation.

    Arrows respect the in/out degree bound of two; at each vertex a random
    partial matching of incoming to outgoing arrows survives and every other
    composable pair becomes a relation; each surviving chain is cut by a
    relation of random length ``2..max_path``.
    """
    rng = random.Random(seed)
    vertices = [str(i + 1) for i in range(n_vertices)]
    out_deg = dict.fromkeys(vertices, 0)
    in_deg = dict.fromkeys(vertices, 0)
    arrows: list[Arrow] = []
    attempts = 0
    while len(arrows) < n_arrows and attempts < 1000:
        attempts += 1
        s, t = rng.choice(vertices), rng.choice(vertices)
        if out_deg[s] < 2 and in_deg[t] < 2:
            arrows.append(Arrow(f"x{len(arrows) + 1}", s, t))
            out_deg[s] += 1
            in_deg[t] += 1
    relations: list[tuple[str, ...]] = []
    successor: dict[str, Optional[str]] = {a.id: None for a in arrows}
    for v in vertices:
        incoming = [a.id for a in arrows if a.target == v]
        outgoing = [a.id for a in arrows if a.source == v]
        rng.shuffle(outgoing)
        keep = {}
        for a, b in zip(incoming, outgoing):
            if rng.random() < 0.75:
                keep[a] = b
        for a in incoming:
            for b in outgoing:
                if keep.get(a) == b:
                    successor[a] = b
                else:
                    relations.append((a, b))
    for a in arrows:
        length = rng.randint(2, max_path)
        path = [a.id]
        while len(path) < length and successor[path[-1]] is not None:
            path.append(successor[path[-1]])
        if len(path) == length:
            relations.append(tuple(path))
    pres = Presentation(Quiver(tuple(vertices), tuple(arrows)), tuple(relations), max_path)
    assert check_admissible(pres).admissible
    return pres


def random_string(pres: Presentation, rng: random.Random, max_len: int) -> StringWord:
    """A random string grown letter by letter until ``max_len`` or a dead end."""
    q = pres.quiver
    start = rng.choice(q.vertices)
    letters: list[Letter] = []
    end = start
    target = rng.randint(0, max_len)
    while len(letters) < target:
        options = [x for x in q.letters_from(end)
                   if not (letters and x == letters[-1].inv())
                   and is_string(q.walk(letters + [x], start), pres)]
        if not options:
            break
        x = rng.choice(options)
        letters.append(x)
        end = q.target(x)
    return StringWord(q.walk(letters, start), pres)


def random_brauer_graph(seed: int, n_vertices: int = 3, n_edges: int = 4, max_mult: int = 2):
    """A random connected Brauer graph: a random spanning tree plus extra
    edges (loops allowed), shuffled cyclic orders and random multiplicities."""
    from .brauer import BrauerGraph, BrauerVertex

    if n_edges < n_vertices - 1:
        raise ValueError("too few edges for a connected graph")
    rng = random.Random(seed)
    ends: list[tuple[int, int]] = []
    for k in range(1, n_vertices):
        ends.append((rng.randrange(k), k))
    while len(ends) < n_edges:
        ends.append((rng.randrange(n_vertices), rng.randrange(n_vertices)))
    edges = tuple(f"e{i + 1}" for i in range(len(ends)))
    halves: list[list[str]] = [[] for _ in range(n_vertices)]
    for e, (k, l) in zip(edges, ends):
        halves[k].append(e)
        halves[l].append(e)
    vertices = []
    for k in range(n_vertices):
        rng.shuffle(halves[k])
        vertices.append(BrauerVertex(f"v{k + 1}", rng.randint(1, max_mult), tuple(halves[k])))
    return BrauerGraph(edges, tuple(vertices))
