"""The non-commuting graph of a group and its invariants.

Vertices are the non-central elements; two vertices are adjacent when they
fail to commute.  These graphs are dense (the complement is a union of
centralizer cliques), so adjacency is stored as a dense boolean matrix.
Degrees, centralizer multisets, exact clique number, a color-refinement
fingerprint, and desk-scale exact isomorphism live here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .groups import Group

ISO_VERTEX_LIMIT = 64
CLIQUE_VERTEX_LIMIT = 1000


class CliqueBudgetError(RuntimeError):
    """Exact search ran out of time; carries the best clique found so far."""

    def __init__(self, best: list[int]):
        super().__init__(
            f"clique budget exhausted; best clique found so far has size {len(best)}"
        )
        self.best_size = len(best)
        self.best_witness = list(best)


@dataclass(eq=False)
class NCGraph:
    group: Group
    vertices: np.ndarray  # element index per vertex
    adjacency: np.ndarray  # symmetric bool, no self-loops
    label: str

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def element_key(self, v: int) -> str:
        return self.group.key_str(int(self.vertices[v]))

    def relabel(self, perm) -> "NCGraph":
        """Same graph with vertices renamed by the permutation."""
        p = np.asarray(perm, dtype=np.int64)
        n = self.n_vertices
        if p.shape != (n,) or not np.array_equal(np.sort(p), np.arange(n)):
            raise ValueError("relabeling must be a permutation of the vertices")
        return NCGraph(
            group=self.group,
            vertices=self.vertices[p],
            adjacency=self.adjacency[np.ix_(p, p)],
            label=self.label,
        )

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.n_vertices} {self.n_edges}"]
        adj = self.adjacency
        for u in range(self.n_vertices):
            for v in range(u + 1, self.n_vertices):
                if adj[u, v]:
                    lines.append(f"e {u + 1} {v + 1}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return {
            "label": self.label,
            "group": self.group.label,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "elements": [self.element_key(v) for v in range(self.n_vertices)],
            "edges": [[int(u), int(v)] for u, v in zip(us.tolist(), vs.tolist())],
        }


def build_graph(g: Group) -> NCGraph:
    cm = g.commute_matrix
    central = cm.all(axis=1)
    if central.all():
        raise ValueError("graph undefined for abelian groups")
    vertices = np.flatnonzero(~central)
    adjacency = ~cm[np.ix_(vertices, vertices)]
    np.fill_diagonal(adjacency, False)

    # degree identity: deg(x) = |G| - |C(x)|, exhaustively per build
    csizes = cm[vertices].sum(axis=1)
    if not (adjacency.sum(axis=1) == g.order - csizes).all():
        raise AssertionError("degree identity violated")
    return NCGraph(group=g, vertices=vertices, adjacency=adjacency, label=f"A({g.label})")


# -- centralizer multisets ---------------------------------------------------


@dataclass(frozen=True)
class CentralizerProfile:
    """W over elements, W' = W/|Z|, and per-size distinct-centralizer counts."""

    group_order: int
    center_order: int
    W: dict
    W_prime: dict
    distinct_centralizer_counts: dict

    @property
    def distinct_values(self) -> tuple:
        return tuple(sorted(self.W))

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "center_order": self.center_order,
            "W": {str(k): v for k, v in sorted(self.W.items())},
            "W_prime": {str(k): v for k, v in sorted(self.W_prime.items())},
            "distinct_centralizer_counts": {
                str(k): v for k, v in sorted(self.distinct_centralizer_counts.items())
            },
        }


def centralizer_profile(g: Group) -> CentralizerProfile:
    cm = g.commute_matrix
    central = cm.all(axis=1)
    if central.all():
        raise ValueError("graph undefined for abelian groups")
    z = int(central.sum())
    noncentral = np.flatnonzero(~central)
    sizes = cm[noncentral].sum(axis=1)
    w = Counter(int(s) for s in sizes)
    wp = Counter()
    for s, mult in w.items():
        if s % z:
            raise AssertionError("centralizer size not divisible by the center order")
        wp[s // z] += mult
    distinct = {}
    seen = set()
    for x, s in zip(noncentral, sizes):
        key = cm[x].tobytes()
        if key in seen:
            continue
        seen.add(key)
        distinct[int(s)] = distinct.get(int(s), 0) + 1
    return CentralizerProfile(
        group_order=g.order,
        center_order=z,
        W=dict(w),
        W_prime=dict(wp),
        distinct_centralizer_counts=distinct,
    )


# -- exact clique number -------------------------------------------------------


def clique_number(graph: NCGraph, time_budget: float | None = None) -> tuple[int, list[int]]:
    """Exact maximum clique size with a verified witness (vertex ids)."""
    if graph.n_vertices > CLIQUE_VERTEX_LIMIT:
        raise ValueError(f"graph too large for exact search (> {CLIQUE_VERTEX_LIMIT} vertices)")
    clique, completed = kernels.max_clique(graph.adjacency, budget_s=time_budget)
    if not completed:
        raise CliqueBudgetError(clique)
    _verify_clique(graph, clique)
    return len(clique), clique


def _verify_clique(graph: NCGraph, clique: list[int]) -> None:
    cm = graph.group.commute_matrix
    for i, u in enumerate(clique):
        for v in clique[i + 1 :]:
            if not graph.adjacency[u, v]:
                raise AssertionError("witness is not a clique")
            eu, ev = int(graph.vertices[u]), int(graph.vertices[v])
            if cm[eu, ev]:
                raise AssertionError("witness elements commute")


# -- fingerprints ---------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Relabeling-invariant summary; omega is informational, not compared."""

    n_vertices: int
    degree_multiset: tuple
    refinement_histogram: tuple
    omega: int | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "degree_multiset": [list(p) for p in self.degree_multiset],
            "refinement_histogram": [list(p) for p in self.refinement_histogram],
            "omega": self.omega,
        }


def _refine_colors(adj: np.ndarray) -> np.ndarray:
    """Iterated neighborhood-color refinement with canonical color ids.

    Ids are assigned by sorting signatures, so two isomorphic graphs get
    identical color histograms no matter how their vertices are numbered.
    """
    n = len(adj)
    colors = np.zeros(n, dtype=np.int64)
    sig = [(int(adj[v].sum()),) for v in range(n)]
    order = sorted(range(n), key=lambda v: sig[v])
    rank = {}
    for v in order:
        rank.setdefault(sig[v], len(rank))
        colors[v] = rank[sig[v]]
    while True:
        sig = [
            (int(colors[v]), tuple(sorted(Counter(colors[adj[v]].tolist()).items())))
            for v in range(n)
        ]
        rank = {}
        for s in sorted(set(sig)):
            rank[s] = len(rank)
        new = np.array([rank[sig[v]] for v in range(n)], dtype=np.int64)
        if len(rank) == len(set(colors.tolist())):
            return new
        colors = new


def fingerprint(graph: NCGraph, omega: int | None = None) -> Fingerprint:
    degs = Counter(int(d) for d in graph.degrees)
    colors = _refine_colors(graph.adjacency)
    hist = Counter(int(c) for c in colors)
    return Fingerprint(
        n_vertices=graph.n_vertices,
        degree_multiset=tuple(sorted(degs.items())),
        refinement_histogram=tuple(sorted(hist.items())),
        omega=omega,
    )


# -- exact isomorphism ----------------------------------------------------------


def graphs_isomorphic(g1: NCGraph, g2: NCGraph) -> np.ndarray | None:
    """Exact vertex bijection carrying g1's edges onto g2's, or None.

    Backtracking over refinement color classes; only sensible at desk scale,
    larger inputs should compare fingerprints.
    """
    n = g1.n_vertices
    if n > ISO_VERTEX_LIMIT or g2.n_vertices > ISO_VERTEX_LIMIT:
        raise ValueError("iso bound exceeded; compare fingerprints instead")
    if g2.n_vertices != n:
        return None
    a1, a2 = g1.adjacency, g2.adjacency
    if np.array_equal(a1, a2):
        return np.arange(n, dtype=np.int64)
    if fingerprint(g1) != fingerprint(g2):
        return None

    c1, c2 = _refine_colors(a1), _refine_colors(a2)
    cands = [np.flatnonzero(c2 == c1[v]) for v in range(n)]
    # most constrained vertices first
    order = sorted(range(n), key=lambda v: len(cands[v]))
    mapping = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for w in cands[v]:
            if used[w]:
                continue
            ok = True
            for prev in order[:pos]:
                if a1[v, prev] != a2[w, mapping[prev]]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(pos + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    if not extend(0):
        return None
    if not np.array_equal(a1, a2[np.ix_(mapping, mapping)]):
        raise AssertionError("isomorphism verification failed")
    return mapping
