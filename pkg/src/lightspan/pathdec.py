"""Path decompositions: validation, smoothing, k-path generation, normalization.

Bag indices are 0-based throughout: bag 0 is the first bag.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError
from .graph import (
    INF,
    Edge,
    WeightedGraph,
    _content_lines,
    edge_key,
    single_source,
)


class PathDecomposition:
    """An ordered sequence of bags (vertex sets)."""

    def __init__(self, bags: Iterable[Iterable[int]]):
        self.bags: tuple[frozenset[int], ...] = tuple(frozenset(b) for b in bags)

    def __len__(self) -> int:
        return len(self.bags)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.bags[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathDecomposition):
            return NotImplemented
        return self.bags == other.bags

    def __hash__(self) -> int:
        return hash(self.bags)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.bags)
        return f"{type(self).__name__}([{inner}])"

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @cached_property
    def span(self) -> dict[int, tuple[int, int]]:
        """First and last bag index of every vertex (ignores gaps)."""
        out: dict[int, tuple[int, int]] = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                lo, _ = out.get(v, (i, i))
                out[v] = (lo, i)
        return out


@dataclass
class DecompositionReport:
    width: int
    missing_vertices: list[int] = field(default_factory=list)
    unknown_vertices: list[tuple[int, int]] = field(default_factory=list)
    uncovered_edges: list[Edge] = field(default_factory=list)
    noncontiguous: list[tuple[int, list[int]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.missing_vertices
            or self.unknown_vertices
            or self.uncovered_edges
            or self.noncontiguous
        )

    def messages(self) -> list[str]:
        out = [f"vertex {v} is in no bag" for v in self.missing_vertices]
        out += [f"bag {i} names unknown vertex {v}" for i, v in self.unknown_vertices]
        out += [f"edge {u}-{v} is in no bag" for u, v in self.uncovered_edges]
        out += [
            f"vertex {v} occupies non-contiguous bags {idx}" for v, idx in self.noncontiguous
        ]
        return out


def validate(g: WeightedGraph, d: PathDecomposition) -> DecompositionReport:
    """Check vertex cover, edge cover and contiguity; every violation is listed."""
    report = DecompositionReport(d.width)
    where: dict[int, list[int]] = {}
    for i, bag in enumerate(d.bags):
        for v in sorted(bag):
            if not (isinstance(v, int) and 0 <= v < g.n):
                report.unknown_vertices.append((i, v))
                continue
            where.setdefault(v, []).append(i)
    report.missing_vertices = [v for v in range(g.n) if v not in where]
    for v in sorted(where):
        idx = where[v]
        if idx[-1] - idx[0] + 1 != len(idx):
            report.noncontiguous.append((v, idx))
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in d.bags):
            report.uncovered_edges.append((u, v))
    return report


def is_smooth(d: PathDecomposition) -> bool:
    if not d.bags:
        return False
    k = d.width
    if any(len(b) != k + 1 for b in d.bags):
        return False
    return all(len(a & b) == k for a, b in zip(d.bags, d.bags[1:]))


class SmoothPathDecomposition(PathDecomposition):
    """Bags of equal size pw+1; neighbouring bags differ by one swap."""

    def __init__(self, bags: Iterable[Iterable[int]]):
        super().__init__(bags)
        if not is_smooth(self):
            raise InputError("decomposition is not smooth")
        self.pw = self.width

    def introduced(self, i: int) -> frozenset[int]:
        """Vertices of bag i absent from bag i-1 (all of bag 0)."""
        if i == 0:
            return self.bags[0]
        return self.bags[i] - self.bags[i - 1]

    def forgotten(self, i: int) -> frozenset[int]:
        """Vertices of bag i absent from bag i+1 (all of the last bag)."""
        if i == len(self.bags) - 1:
            return self.bags[i]
        return self.bags[i] - self.bags[i + 1]

    def introduced_vertex(self, i: int) -> int:
        if i == 0:
            raise ValueError("bag 0 introduces every vertex")
        (u,) = self.introduced(i)
        return u

    def forgotten_vertex(self, i: int) -> int | None:
        """The single vertex leaving after bag i; None for the last bag."""
        if i == len(self.bags) - 1:
            return None
        (v,) = self.forgotten(i)
        return v


@dataclass(frozen=True)
class SmoothingResult:
    decomposition: SmoothPathDecomposition
    runs: tuple[range, ...]
    """runs[j] are the output bags that stand in for input bag j."""


def smooth(g: WeightedGraph, d: PathDecomposition) -> SmoothingResult:
    """Turn a valid decomposition into a smooth one of the same width.

    The input is replayed as a stream of forget and introduce events.  The
    working bag only grows until it is full; afterwards each introduction
    evicts the longest-forgotten vertex still held.
    """
    report = validate(g, d)
    if not report.ok:
        raise InputError("invalid decomposition: " + "; ".join(report.messages()))
    if not d.bags:
        raise InputError("cannot smooth an empty decomposition")
    k = d.width
    bag: set[int] = set()
    pending: deque[int] = deque()
    out: list[frozenset[int]] = []
    runs: list[range] = []
    prev: frozenset[int] = frozenset()
    for cur in d.bags:
        for v in sorted(prev - cur):
            pending.append(v)
        first = len(out)
        for u in sorted(cur - prev):
            if len(bag) < k + 1:
                bag.add(u)
                if len(bag) == k + 1:
                    out.append(frozenset(bag))
            else:
                bag.discard(pending.popleft())
                bag.add(u)
                out.append(frozenset(bag))
        last = max(len(out) - 1, 0)
        runs.append(range(min(first, last), last + 1))
        prev = cur
    return SmoothingResult(SmoothPathDecomposition(out), tuple(runs))


WEIGHT_DISTRIBUTIONS = ("uniform", "constant", "rational")


def _draw_weight(rng: random.Random, dist: str) -> Fraction:
    if dist == "uniform":
        return Fraction(rng.randint(1, 1000))
    if dist == "constant":
        return Fraction(1)
    if dist == "rational":
        return Fraction(rng.randint(1, 1000), rng.randint(1, 10))
    raise InputError(f"unknown weight distribution {dist!r}; expected one of {WEIGHT_DISTRIBUTIONS}")


def generate_kpath(
    n: int, pw: int, seed: int, weight_dist: str = "uniform"
) -> tuple[WeightedGraph, SmoothPathDecomposition]:
    """Random k-path on n vertices: every bag of the returned smooth
    decomposition of width pw induces a clique."""
    if pw < 0:
        raise InputError(f"pathwidth must be non-negative, got {pw}")
    if n < pw + 1:
        raise InputError(f"need n >= pw+1, got n={n}, pw={pw}")
    if weight_dist not in WEIGHT_DISTRIBUTIONS:
        _draw_weight(random.Random(0), weight_dist)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    bag = sorted(order[: pw + 1])
    bags = [frozenset(bag)]
    for u in order[pw + 1 :]:
        bag.remove(rng.choice(bag))
        bag.append(u)
        bag.sort()
        bags.append(frozenset(bag))
    pairs = sorted({edge_key(a, b) for b in bags for a, b in combinations(sorted(b), 2)})
    g = WeightedGraph(n, [(a, b, _draw_weight(rng, weight_dist)) for a, b in pairs])
    return g, SmoothPathDecomposition(bags)


def edge_bag(d: PathDecomposition, u: int, v: int) -> int | None:
    """Lowest bag holding both endpoints with one of them introduced there."""
    span = d.span
    if u not in span or v not in span:
        return None
    i = max(span[u][0], span[v][0])
    return i if i <= min(span[u][1], span[v][1]) else None


@dataclass(frozen=True)
class NormalizedGraph:
    """Per-bag vertex copies; consecutive copies joined by weight-0 glue edges."""

    original: WeightedGraph
    decomposition: SmoothPathDecomposition
    graph: WeightedGraph
    copy_index: dict[tuple[int, int], int]
    back: tuple[int, ...]
    bag_edges: tuple[tuple[Edge, ...], ...]
    edge_bag: dict[Edge, int]
    glue: frozenset[Edge]

    def copy(self, v: int, i: int) -> int:
        return self.copy_index[(v, i)]

    def first_copy(self, v: int) -> int:
        return self.copy_index[(v, self.decomposition.span[v][0])]


def normalize(g: WeightedGraph, d: SmoothPathDecomposition) -> NormalizedGraph:
    report = validate(g, d)
    if not report.ok:
        raise InputError("decomposition does not fit the graph: " + "; ".join(report.messages()))
    copy_index: dict[tuple[int, int], int] = {}
    back: list[int] = []
    for i, bag in enumerate(d.bags):
        for v in sorted(bag):
            copy_index[(v, i)] = len(back)
            back.append(v)
    per_bag: list[list[Edge]] = [[] for _ in d.bags]
    where: dict[Edge, int] = {}
    for u, v in g.edges:
        i = edge_bag(d, u, v)
        if i is None:
            raise InputError(f"edge {u}-{v} cannot be assigned to any bag")
        per_bag[i].append((u, v))
        where[(u, v)] = i
    edges = [
        (copy_index[(u, i)], copy_index[(v, i)], g.weight(u, v))
        for i, es in enumerate(per_bag)
        for u, v in es
    ]
    glue = []
    for i in range(len(d.bags) - 1):
        for v in sorted(d.bags[i] & d.bags[i + 1]):
            glue.append(edge_key(copy_index[(v, i)], copy_index[(v, i + 1)]))
    edges += [(a, b, 0) for a, b in glue]
    return NormalizedGraph(
        original=g,
        decomposition=d,
        graph=WeightedGraph(len(back), edges),
        copy_index=copy_index,
        back=tuple(back),
        bag_edges=tuple(tuple(es) for es in per_bag),
        edge_bag=where,
        glue=frozenset(glue),
    )


@dataclass(frozen=True)
class KPathCompletion:
    graph: WeightedGraph
    virtual: frozenset[Edge]


def complete_to_kpath(g: WeightedGraph, d: SmoothPathDecomposition) -> KPathCompletion:
    """Add every missing intra-bag pair, weighted by its distance in ``g``."""
    report = validate(g, d)
    if not report.ok:
        raise InputError("decomposition does not fit the graph: " + "; ".join(report.messages()))
    dist: dict[int, list] = {}
    extra = []
    seen: set[Edge] = set()
    for bag in d.bags:
        for a, b in combinations(sorted(bag), 2):
            if g.has_edge(a, b) or (a, b) in seen:
                continue
            if a not in dist:
                dist[a] = single_source(g, a)
            w = dist[a][b]
            if w == INF:
                raise InputError(f"bag vertices {a} and {b} are disconnected in the graph")
            seen.add((a, b))
            extra.append((a, b, w))
    return KPathCompletion(g.with_edges(extra), frozenset(seen))


def parse_decomposition(text: str) -> PathDecomposition:
    bags = []
    for lineno, line in _content_lines(text):
        try:
            bags.append([int(t) for t in line.split()])
        except ValueError:
            raise InputError(f"line {lineno}: bag must list integer vertex ids") from None
    return PathDecomposition(bags)


def format_decomposition(d: PathDecomposition) -> str:
    return "".join(" ".join(map(str, sorted(b))) + "\n" for b in d.bags)


def read_decomposition(path: str | Path) -> PathDecomposition:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_decomposition(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def as_smooth(d: PathDecomposition | Sequence) -> SmoothPathDecomposition:
    if isinstance(d, SmoothPathDecomposition):
        return d
    bags = d.bags if isinstance(d, PathDecomposition) else d
    return SmoothPathDecomposition(bags)
