"""Weighted directed graphs and the combinatorial directed Laplacian.

Edges are oriented ``i -> j`` and stored densely: ``adjacency[i, j]`` is the
weight of the edge from ``i`` to ``j``. Vertices are 0-based everywhere,
including the edge-list text format.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    DuplicateEdgeError,
    EdgeListFormatError,
    EdgeWeightError,
    GraphError,
    SelfLoopError,
    VertexIndexError,
)
from .harness.prng import Prng

ROW_SUM_RTOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Digraph:
    """Directed graph on ``n`` vertices with non-negative edge weights."""

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise GraphError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise EdgeWeightError("adjacency contains non-finite weights")
        if np.any(a < 0):
            raise EdgeWeightError("adjacency contains negative weights")
        if np.any(np.diag(a) != 0):
            raise SelfLoopError("adjacency has non-zero diagonal (self-loop)")
        object.__setattr__(self, "adjacency", _frozen(a))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def out_degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def edges(self) -> list[tuple[int, int, float]]:
        """Edges in row-major order as ``(src, dst, weight)``."""
        src, dst = np.nonzero(self.adjacency)
        return [(int(i), int(j), float(self.adjacency[i, j])) for i, j in zip(src, dst)]

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.adjacency.shape == other.adjacency.shape and bool(
            np.array_equal(self.adjacency, other.adjacency)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Laplacian:
    """``L = D_out - A`` together with the graph it was built from."""

    matrix: np.ndarray
    source: Digraph = field(repr=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def row_sum_defect(self) -> float:
        """Largest absolute row sum, which is zero up to rounding."""
        return float(np.max(np.abs(self.matrix.sum(axis=1))))

    def __matmul__(self, x):
        return self.matrix @ x


def from_edge_list(n: int, edges: Iterable[tuple[int, int, float]]) -> Digraph:
    if int(n) != n or n < 1:
        raise GraphError(f"vertex count must be a positive integer, got {n!r}")
    n = int(n)
    a = np.zeros((n, n))
    seen = set()
    for k, (src, dst, weight) in enumerate(edges):
        if not (0 <= src < n and 0 <= dst < n) or int(src) != src or int(dst) != dst:
            raise VertexIndexError(f"edge {k}: ({src}, {dst}) out of range for n={n}")
        src, dst = int(src), int(dst)
        if src == dst:
            raise SelfLoopError(f"edge {k}: self-loop at vertex {src}")
        if (src, dst) in seen:
            raise DuplicateEdgeError(f"edge {k}: duplicate edge {src}->{dst}")
        weight = float(weight)
        if not np.isfinite(weight) or weight <= 0:
            raise EdgeWeightError(f"edge {k}: weight must be positive and finite, got {weight}")
        seen.add((src, dst))
        a[src, dst] = weight
    return Digraph(a)


def directed_cycle(n: int) -> Digraph:
    """Unweighted cycle ``0 -> 1 -> ... -> n-1 -> 0``."""
    if int(n) != n or n < 2:
        raise GraphError(f"directed_cycle needs n >= 2, got {n!r}")
    n = int(n)
    a = np.zeros((n, n))
    idx = np.arange(n)
    a[idx, (idx + 1) % n] = 1.0
    return Digraph(a)


def perturbed_cycle(n: int, p: float, w: float, seed: int) -> Digraph:
    """Directed cycle plus random extra edges.

    Every ordered pair ``(i, j)`` with ``i != j`` that is not a cycle edge is
    visited in row-major order and receives an edge of weight ``w`` when the
    next uniform draw from ``Prng(seed)`` falls below ``p``. One draw is
    consumed per candidate pair, whatever ``p`` is.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    if not (np.isfinite(w) and w > 0):
        raise EdgeWeightError(f"perturbation weight must be positive, got {w}")
    base = directed_cycle(n)
    a = np.array(base.adjacency)
    rng = Prng(seed)
    for i in range(n):
        nxt = (i + 1) % n
        for j in range(n):
            if j == i or j == nxt:
                continue
            if rng.random() < p:
                a[i, j] = w
    return Digraph(a)


def laplacian(g: Digraph) -> Laplacian:
    a = g.adjacency
    mat = np.diag(a.sum(axis=1)) - a
    return Laplacian(_frozen(mat), g)


# edge-list text format


def parse_edge_list(text: str) -> Digraph:
    """Parse the ``n <count>`` / ``src dst weight`` text format.

    Lines starting with ``#`` and blank lines are skipped. Numbers use a
    decimal point regardless of locale.
    """
    n = None
    edges = []
    linenos = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise EdgeListFormatError(f"line {lineno}: expected 'n <count>', got {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise EdgeListFormatError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            continue
        if len(parts) != 3:
            raise EdgeListFormatError(f"line {lineno}: expected 'src dst weight', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
            linenos.append(lineno)
        except ValueError:
            raise EdgeListFormatError(f"line {lineno}: cannot parse {raw!r}") from None
    if n is None:
        raise EdgeListFormatError("missing 'n <count>' header")
    try:
        return from_edge_list(n, edges)
    except GraphError as exc:
        # from_edge_list reports "edge <k>: ..."; translate k back to the source line
        msg = str(exc)
        head, sep, rest = msg.partition(": ")
        if sep and head.startswith("edge ") and head[5:].isdigit():
            msg = f"line {linenos[int(head[5:])]}: {rest}"
        raise type(exc)(f"edge list: {msg}") from None


def read_edge_list(path: str | os.PathLike) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Digraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{i} {j} {w!r}" for i, j, w in g.edges()]
    return "\n".join(lines) + "\n"
