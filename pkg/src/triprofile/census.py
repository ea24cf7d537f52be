"""Exact 3-vertex subgraph censuses of finite graphs and step graphons.

A triple census counts, over all C(n,3) vertex triples of a graph, how many
induce 0, 1, 2 or 3 edges (co-triangle, co-cherry, cherry, triangle).  The
fast path reduces the whole census to a triangle count through exact integer
identities; a brute-force enumerator serves as an independent oracle.  Step
graphons (blockwise-constant symmetric kernels) get the same profile exactly,
as the limit of sampling three independent points.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputFormatError

__all__ = [
    "Graph",
    "TripleCensus",
    "DensityVector",
    "StepGraphon",
    "census_fast",
    "census_brute",
    "densities",
    "graphon_densities",
    "sample_w_random_graph",
    "read_edge_list",
    "write_edge_list",
    "read_step_graphon",
    "write_step_graphon",
]

_SUM_TOL = 1e-12


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Stored in compressed sparse rows: ``neighbors(v)`` is a sorted int64
    array.  Instances are immutable; build them with :meth:`from_edges`.
    """

    __slots__ = ("n", "_indptr", "_nbrs")

    def __init__(self, n: int, indptr: np.ndarray, nbrs: np.ndarray):
        self.n = int(n)
        self._indptr = indptr
        self._nbrs = nbrs

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs.

        Rejects self-loops, out-of-range endpoints and duplicate edges.
        """
        if n < 0:
            raise DomainError("vertex count must be nonnegative")
        arr = np.asarray(list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DomainError("edges must be (u, v) pairs")
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise DomainError("edge endpoint out of range")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            if np.any(lo == hi):
                raise DomainError("self-loops are not allowed")
            keys = lo * np.int64(n) + hi
            if np.unique(keys).size != keys.size:
                raise DomainError("duplicate edges are not allowed")
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
            order = np.lexsort((dst, src))
            src, dst = src[order], dst[order]
        else:
            src = dst = np.empty(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        iu, ju = np.triu_indices(n, 1)
        return cls.from_edges(n, np.column_stack([iu, ju]))

    @property
    def m(self) -> int:
        """Edge count."""
        return int(self._nbrs.size) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self._nbrs[self._indptr[v]:self._indptr[v + 1]]

    @property
    def adjacency(self) -> list:
        """Per-vertex sorted neighbor lists."""
        return [self.neighbors(v) for v in range(self.n)]

    def directed_edges(self) -> tuple:
        """Both orientations of every edge as (sources, destinations)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        return src, self._nbrs

    def edges(self):
        """Iterate undirected edges (u, v) with u < v, sorted."""
        src, dst = self.directed_edges()
        keep = src < dst
        return zip(src[keep].tolist(), dst[keep].tolist())

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return i < nb.size and nb[i] == v

    def complement(self) -> "Graph":
        n = self.n
        rows = []
        full = np.arange(n, dtype=np.int64)
        for v in range(n):
            mask = np.ones(n, dtype=bool)
            mask[v] = False
            mask[self.neighbors(v)] = False
            rows.append(full[mask])
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum([r.size for r in rows], out=indptr[1:])
        nbrs = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
        return Graph(n, indptr, nbrs)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._nbrs, other._nbrs)
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class TripleCensus:
    """Counts of induced 0/1/2/3-edge triples among all C(n,3) triples."""

    n: int
    c0: int
    c1: int
    c2: int
    c3: int

    def __post_init__(self):
        if min(self.c0, self.c1, self.c2, self.c3) < 0:
            raise DomainError("census counts must be nonnegative")
        if self.c0 + self.c1 + self.c2 + self.c3 != math.comb(self.n, 3):
            raise DomainError("census counts must sum to C(n,3)")

    @property
    def counts(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def reversed(self) -> "TripleCensus":
        """Census of the complement graph."""
        return TripleCensus(self.n, self.c3, self.c2, self.c1, self.c0)


@dataclass(frozen=True)
class DensityVector:
    """Induced triple densities (d0..d3) together with the edge density."""

    d0: float
    d1: float
    d2: float
    d3: float
    d_e: float

    def __post_init__(self):
        vals = (self.d0, self.d1, self.d2, self.d3, self.d_e)
        if not all(math.isfinite(v) and -_SUM_TOL <= v <= 1 + _SUM_TOL for v in vals):
            raise DomainError("densities must lie in [0, 1]")
        if abs(self.d0 + self.d1 + self.d2 + self.d3 - 1.0) > _SUM_TOL:
            raise DomainError("triple densities must sum to 1")
        if abs(self.d_e - (self.d1 + 2 * self.d2 + 3 * self.d3) / 3.0) > _SUM_TOL:
            raise DomainError("edge density inconsistent with triple densities")

    @property
    def profile(self) -> tuple:
        return (self.d0, self.d1, self.d2, self.d3)


class StepGraphon:
    """Blockwise-constant symmetric kernel: block weights + density matrix.

    ``sizes`` are positive block weights summing to one; ``probs`` is the
    symmetric matrix of pair densities in [0, 1].
    """

    __slots__ = ("sizes", "probs")

    def __init__(self, sizes, probs):
        s = np.asarray(sizes, dtype=float).reshape(-1)
        P = np.asarray(probs, dtype=float)
        if s.size == 0:
            raise DomainError("a step graphon needs at least one block")
        if np.any(s <= 0) or not np.all(np.isfinite(s)):
            raise DomainError("block sizes must be positive reals")
        if abs(float(s.sum()) - 1.0) > _SUM_TOL:
            raise DomainError(f"block sizes must sum to 1 (got {float(s.sum())!r})")
        if P.shape != (s.size, s.size):
            raise DomainError("probs must be a square matrix matching sizes")
        if not np.all(np.isfinite(P)) or np.any(P < 0) or np.any(P > 1):
            raise DomainError("block densities must lie in [0, 1]")
        if not np.array_equal(P, P.T):
            raise DomainError("probs must be exactly symmetric")
        s = s.copy()
        P = P.copy()
        s.setflags(write=False)
        P.setflags(write=False)
        self.sizes = s
        self.probs = P

    @property
    def num_blocks(self) -> int:
        return int(self.sizes.size)

    def complement(self) -> "StepGraphon":
        return StepGraphon(self.sizes, 1.0 - self.probs)

    def block_degrees(self) -> np.ndarray:
        """Degree of a point in each block: D_i = sum_j s_j P_ij."""
        return self.probs @ self.sizes

    def __repr__(self):
        return f"StepGraphon(blocks={self.num_blocks})"


def _count_triangles(g: Graph) -> int:
    """Exact triangle count by forward-neighbor intersection.

    Vertices are ranked by (degree, id); each edge is oriented toward the
    higher rank and every triangle is counted once, at its lowest-ranked
    edge, via bitset intersection of forward neighborhoods.
    """
    n = g.n
    deg = g.degrees
    order = np.lexsort((np.arange(n), deg))
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    src, dst = g.directed_edges()
    fwd = pos[dst] > pos[src]
    u, v = src[fwd], dst[fwd]
    if u.size == 0:
        return 0
    words = (n + 63) >> 6
    rows = np.zeros((n, words), dtype=np.uint64)
    flat = rows.reshape(-1)
    bits = np.uint64(1) << (v & 63).astype(np.uint64)
    np.bitwise_or.at(flat, u * words + (v >> 6), bits)
    total = 0
    chunk = max(1, (1 << 22) // words)
    for s in range(0, u.size, chunk):
        a = rows[u[s:s + chunk]]
        b = rows[v[s:s + chunk]]
        total += int(np.bitwise_count(a & b).sum())
    return total


def census_fast(g: Graph) -> TripleCensus:
    """Exact triple census via counting identities.

    With t triangles, p2 = sum_v C(deg v, 2) cherry-or-triangle centers and
    m edges: c3 = t, c2 = p2 - 3t, c1 = m(n-2) - 2 p2 + 3t, and c0 is the
    remainder to C(n,3).  All arithmetic is exact.
    """
    n = g.n
    if n < 3:
        raise DomainError("graph too small for triple census")
    deg = [int(d) for d in g.degrees]
    m = sum(deg) // 2
    p2 = sum(d * (d - 1) // 2 for d in deg)
    t = _count_triangles(g)
    c3 = t
    c2 = p2 - 3 * t
    c1 = m * (n - 2) - 2 * p2 + 3 * t
    c0 = math.comb(n, 3) - c1 - c2 - c3
    return TripleCensus(n=n, c0=c0, c1=c1, c2=c2, c3=c3)


def census_brute(g: Graph) -> TripleCensus:
    """Oracle census: enumerate every triple and classify by edge count."""
    n = g.n
    if n < 3:
        raise DomainError("graph too small for triple census")
    adj = [set(g.neighbors(v).tolist()) for v in range(n)]
    counts = [0, 0, 0, 0]
    for u in range(n):
        au = adj[u]
        for v in range(u + 1, n):
            av = adj[v]
            uv = v in au
            for w in range(v + 1, n):
                counts[uv + (w in au) + (w in av)] += 1
    return TripleCensus(n=n, c0=counts[0], c1=counts[1], c2=counts[2], c3=counts[3])


def densities(c: TripleCensus) -> DensityVector:
    """Normalize a census to densities; edge density via the triple identity.

    d_e = (d1 + 2 d2 + 3 d3) / 3, cross-checked against m / C(n,2); the two
    agree exactly because every edge lies in n-2 triples.
    """
    total = math.comb(c.n, 3)
    d0, d1, d2, d3 = (x / total for x in c.counts)
    d_e = (d1 + 2 * d2 + 3 * d3) / 3.0
    weighted = c.c1 + 2 * c.c2 + 3 * c.c3
    m, rem = divmod(weighted, c.n - 2)
    if rem != 0:
        raise DomainError("census violates the edge-count identity")
    if abs(d_e - m / math.comb(c.n, 2)) > _SUM_TOL:
        raise DomainError("edge density cross-check failed")
    return DensityVector(d0=d0, d1=d1, d2=d2, d3=d3, d_e=d_e)


def graphon_densities(w: StepGraphon) -> DensityVector:
    """Exact triple densities of a step graphon.

    Sums over ordered block triples (i, j, k) with weight s_i s_j s_k the
    probability that the three independent pair indicators (P_ij, P_ik,
    P_jk) produce exactly 0, 1, 2 or 3 edges.  O(B^3) in the block count.
    """
    s = w.sizes
    P = w.probs
    p1 = P[:, :, None]
    p2 = P[:, None, :]
    p3 = P[None, :, :]
    q1, q2, q3 = 1.0 - p1, 1.0 - p2, 1.0 - p3
    wt = s[:, None, None] * s[None, :, None] * s[None, None, :]
    d0 = float((wt * q1 * q2 * q3).sum())
    d1 = float((wt * (p1 * q2 * q3 + q1 * p2 * q3 + q1 * q2 * p3)).sum())
    d2 = float((wt * (p1 * p2 * q3 + p1 * q2 * p3 + q1 * p2 * p3)).sum())
    d3 = float((wt * p1 * p2 * p3).sum())
    d_e = float(s @ P @ s)
    return DensityVector(d0=d0, d1=d1, d2=d2, d3=d3, d_e=d_e)


def sample_w_random_graph(w: StepGraphon, n: int, seed: int) -> Graph:
    """Sample an n-vertex graph from a step graphon, reproducibly.

    Uses numpy's default generator (PCG64) seeded with ``seed``: first n
    uniforms assign vertices to blocks by the cumulative size distribution,
    then one uniform per unordered pair (row-major order) decides each edge.
    The output is deterministic given (w, n, seed).
    """
    if n < 1:
        raise DomainError("sample size must be at least 1")
    rng = np.random.default_rng(seed)
    cum = np.cumsum(w.sizes)
    blocks = np.minimum(np.searchsorted(cum, rng.random(n), side="right"),
                        w.num_blocks - 1)
    P = w.probs
    us = []
    vs = []
    for i in range(n - 1):
        r = rng.random(n - 1 - i)
        hit = np.nonzero(r < P[blocks[i], blocks[i + 1:]])[0]
        if hit.size:
            us.append(np.full(hit.size, i, dtype=np.int64))
            vs.append(hit.astype(np.int64) + i + 1)
    if us:
        edges = np.column_stack([np.concatenate(us), np.concatenate(vs)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    """Parse the edge-list file format.

    Lines starting with '#' are comments; an optional leading directive
    "n <N>" fixes the vertex count; every other non-empty line is "<u> <v>"
    with 0-based ids and u != v.  Duplicate edges, self-loops and malformed
    lines are rejected with the offending line number.
    """
    n_directive = None
    edges = []
    seen = set()
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            toks = s.split()
            if toks[0] == "n":
                if n_directive is not None:
                    raise InputFormatError(f"line {lineno}: duplicate 'n' directive")
                if edges:
                    raise InputFormatError(
                        f"line {lineno}: 'n' directive must precede all edges")
                if len(toks) != 2:
                    raise InputFormatError(f"line {lineno}: malformed 'n' directive")
                try:
                    n_directive = int(toks[1])
                except ValueError:
                    raise InputFormatError(
                        f"line {lineno}: vertex count is not an integer") from None
                if n_directive < 0:
                    raise InputFormatError(f"line {lineno}: negative vertex count")
                continue
            if len(toks) != 2:
                raise InputFormatError(f"line {lineno}: expected '<u> <v>'")
            try:
                u, v = int(toks[0]), int(toks[1])
            except ValueError:
                raise InputFormatError(
                    f"line {lineno}: endpoints are not integers") from None
            if u == v:
                raise InputFormatError(f"line {lineno}: self-loop {u} {v}")
            if u < 0 or v < 0:
                raise InputFormatError(f"line {lineno}: negative vertex id")
            if n_directive is not None and max(u, v) >= n_directive:
                raise InputFormatError(
                    f"line {lineno}: vertex id exceeds declared count {n_directive}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputFormatError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(key)
            edges.append(key)
    n = n_directive if n_directive is not None else (
        1 + max((max(e) for e in edges), default=-1))
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph, path) -> None:
    """Write a graph in the edge-list format, with the "n <N>" directive."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"n {g.n}\n")
        for u, v in g.edges():
            f.write(f"{u} {v}\n")


def read_step_graphon(path) -> StepGraphon:
    """Parse a step-graphon document: JSON with keys "sizes" and "probs"."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"not a valid step-graphon document: {e}") from None
    if not isinstance(doc, dict) or set(doc) - {"sizes", "probs"}:
        raise InputFormatError(
            'step-graphon document must be an object with keys "sizes" and "probs"')
    if "sizes" not in doc or "probs" not in doc:
        raise InputFormatError('missing key: "sizes" and "probs" are both required')
    try:
        return StepGraphon(doc["sizes"], doc["probs"])
    except (DomainError, TypeError) as e:
        raise InputFormatError(f"invalid step graphon: {e}") from None


def write_step_graphon(w: StepGraphon, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump({"sizes": w.sizes.tolist(), "probs": w.probs.tolist()}, f, indent=1)
        f.write("\n")
