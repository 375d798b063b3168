"""Plumbing graphs, their intersection lattice and characteristic vectors.

Vectors are plain integer tuples indexed by vertex id. A lattice vector
``x`` holds coefficients in the basis ``{b_j}`` of ``L``; a dual vector holds
the values ``l(b_j)`` (the dual basis of ``L'``). Characteristic vectors and
the canonical class are dual vectors.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadRange,
    DuplicateEdge,
    InvalidVertex,
    IterationCapExceeded,
    NotATree,
    NotCoprime,
    ParseError,
)
from .linalg import determinant, leading_minors, rational_inverse

LatticeVector = tuple[int, ...]
CharVector = tuple[int, ...]

DEFAULT_FC_CAP = 10**6


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted tree in canonical vertex order with a distinguished base vertex.

    Construct through :func:`build_graph`, which validates and canonicalizes;
    the constructor itself only checks the tree invariant. ``input_ids[j]`` is
    the caller's id of canonical vertex ``j``.
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    base: int = 0
    input_ids: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    neighbors: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    matrix: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    inverse: tuple[tuple[Fraction, ...], ...] | None = field(
        init=False, compare=False, repr=False)

    def __post_init__(self):
        s = len(self.weights)
        adj = _adjacency(s, self.edges)
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(a)) for a in adj))
        if not 0 <= self.base < s:
            raise InvalidVertex(f"base {self.base} out of range")
        m = [[0] * s for _ in range(s)]
        for j, w in enumerate(self.weights):
            m[j][j] = w
        for i, j in self.edges:
            m[i][j] = m[j][i] = 1
        matrix = tuple(tuple(row) for row in m)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "inverse", rational_inverse(matrix))

    @property
    def size(self) -> int:
        return len(self.weights)

    def valency(self, j: int) -> int:
        return len(self.neighbors[j])

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Intersection number ``(x, y)`` of two lattice vectors."""
        total = sum(w * a * b for w, a, b in zip(self.weights, x, y))
        for i, j in self.edges:
            total += x[i] * y[j] + x[j] * y[i]
        return total

    def pairing_with_vertex(self, x: Sequence[int], j: int) -> int:
        """``(x, b_j)`` in O(valency)."""
        return self.weights[j] * x[j] + sum(x[n] for n in self.neighbors[j])

    def id_mapping(self) -> dict[int, int]:
        """Caller id -> canonical id."""
        ids = self.input_ids or tuple(range(self.size))
        return {orig: j for j, orig in enumerate(ids)}


def _adjacency(s: int, edges: Iterable[tuple[int, int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(s)]
    count = 0
    for e in edges:
        i, j = e
        if not (0 <= i < s and 0 <= j < s):
            raise InvalidVertex(f"edge {e} references a missing vertex")
        if i == j:
            raise NotATree(f"self-loop at vertex {i}")
        if j in adj[i]:
            raise DuplicateEdge(f"edge {e} listed twice")
        adj[i].add(j)
        adj[j].add(i)
        count += 1
    if s == 0:
        raise NotATree("empty graph")
    if count != s - 1:
        raise NotATree(f"{s} vertices but {count} edges")
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for n in adj[v]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    if len(seen) != s:
        raise NotATree("graph is disconnected")
    return adj


# --- canonical ordering ------------------------------------------------------

def _encoding(weights, adj, base):
    order = _canonical_order(weights, adj, base)
    new = {v: i for i, v in enumerate(order)}
    return (tuple(weights[v] for v in order),
            tuple(sorted(tuple(sorted((new[v], new[u]))) for v in order for u in adj[v] if v < u)))


def _default_base(weights: Sequence[int], adj: list[set[int]]) -> int:
    """Highest-valency node (a chain end for chains); ties go to the candidate
    with the smallest canonical encoding, so the choice is label-independent."""
    s = len(weights)
    if s == 1:
        return 0
    top = max(len(a) for a in adj)
    if top < 3:
        top = 1
    cands = [v for v in range(s) if len(adj[v]) == top]
    return min(cands, key=lambda v: (_encoding(weights, adj, v), v))


def _canonical_order(weights: Sequence[int], adj: list[set[int]], base: int) -> list[int]:
    s = len(weights)
    if all(len(adj[v]) <= 2 for v in range(s) if v != base):
        legs = []
        for start in sorted(adj[base]):
            leg, prev, v = [start], base, start
            while True:
                nxt = [n for n in adj[v] if n != prev]
                if not nxt:
                    break
                prev, v = v, nxt[0]
                leg.append(v)
            legs.append(leg)
        legs.sort(key=lambda leg: (len(leg), tuple(weights[v] for v in leg), leg[0]))
        return [base] + [v for leg in legs for v in leg]

    # General tree: breadth-first, children by (subtree size, weight sequence),
    # then by the nested rooted-tree form so that ties are true isomorphisms.
    parent = {base: None}
    post, stack = [], [base]
    while stack:
        v = stack.pop()
        post.append(v)
        for c in adj[v]:
            if c != parent[v]:
                parent[c] = v
                stack.append(c)
    sig: dict[int, tuple] = {}
    for v in reversed(post):
        kids = sorted(sig[c] for c in adj[v] if c != parent[v])
        size = 1 + sum(k[0] for k in kids)
        seq = (weights[v],) + tuple(x for k in kids for x in k[1])
        sig[v] = (size, seq, (weights[v], tuple(k[2] for k in kids)))

    order, queue = [], deque([base])
    while queue:
        v = queue.popleft()
        order.append(v)
        kids = sorted((c for c in adj[v] if c != parent[v]), key=lambda c: sig[c] + (c,))
        queue.extend(kids)
    return order


def build_graph(vertex_weights: Sequence[int] | Mapping[int, int],
                edges: Iterable[Sequence[int]],
                base: int | None = None) -> PlumbingGraph:
    """Validate a weighted tree and return it in canonical vertex order.

    ``vertex_weights`` is either a sequence indexed by id or an ``{id: weight}``
    mapping whose ids are ``0..s-1``.
    """
    if isinstance(vertex_weights, Mapping):
        ids = sorted(vertex_weights)
        if ids != list(range(len(ids))):
            raise InvalidVertex("vertex ids must be 0..s-1")
        weights = [vertex_weights[i] for i in ids]
    else:
        weights = list(vertex_weights)
    if not all(isinstance(w, int) and not isinstance(w, bool) for w in weights):
        raise ParseError("weights must be integers")
    edge_list = [tuple(e) for e in edges]
    if any(len(e) != 2 for e in edge_list):
        raise ParseError("edges must be pairs")
    adj = _adjacency(len(weights), edge_list)
    if base is None:
        base = _default_base(weights, adj)
    elif not 0 <= base < len(weights):
        raise InvalidVertex(f"base {base} out of range")
    order = _canonical_order(weights, adj, base)
    new_id = {old: new for new, old in enumerate(order)}
    new_edges = sorted(tuple(sorted((new_id[i], new_id[j]))) for i, j in edge_list)
    return PlumbingGraph(
        weights=tuple(weights[v] for v in order),
        edges=tuple(new_edges),
        base=0,
        input_ids=tuple(order),
    )


# --- lattice operations ------------------------------------------------------

def is_negative_definite(graph: PlumbingGraph) -> bool:
    """Leading principal minors alternate in sign, starting negative."""
    minors = leading_minors(graph.matrix)
    if len(minors) < graph.size:
        return False
    return all((-1) ** (k + 1) * d > 0 for k, d in enumerate(minors))


def det(graph: PlumbingGraph) -> int:
    return determinant(graph.matrix)


def canonical_class(graph: PlumbingGraph) -> CharVector:
    return tuple(-e - 2 for e in graph.weights)


def is_characteristic(graph: PlumbingGraph, k: Sequence[int]) -> bool:
    return len(k) == graph.size and all((a + e) % 2 == 0 for a, e in zip(k, graph.weights))


def evaluate(k: Sequence[int], x: Sequence[int]) -> int:
    """Value ``k(x)`` of a dual vector on a lattice vector."""
    return sum(a * b for a, b in zip(k, x))


def chi(graph: PlumbingGraph, k: Sequence[int], x: Sequence[int]) -> int:
    """``chi_k(x) = -(k(x) + (x, x)) / 2``; exact for characteristic ``k``."""
    num = -(evaluate(k, x) + graph.pairing(x, x))
    assert num % 2 == 0, "chi needs a characteristic vector"
    return num // 2


def pd(graph: PlumbingGraph, x: Sequence[int]) -> tuple[int, ...]:
    """Dual vector ``(x, .)``."""
    return tuple(graph.pairing_with_vertex(x, j) for j in range(graph.size))


def pd_inverse(graph: PlumbingGraph, dual: Sequence) -> tuple[Fraction, ...]:
    """Solve ``M x = dual`` over the rationals."""
    if graph.inverse is None:
        raise ValueError("intersection form is singular")
    return tuple(sum((a * Fraction(b) for a, b in zip(row, dual)), Fraction(0))
                 for row in graph.inverse)


def k_squared(graph: PlumbingGraph) -> Fraction:
    """``K^2 = K(PD^{-1} K)`` as an exact rational."""
    K = canonical_class(graph)
    return sum((Fraction(a) * b for a, b in zip(K, pd_inverse(graph, K))), Fraction(0))


def bad_vertices(graph: PlumbingGraph) -> list[int]:
    """Vertices with ``-e_j < valency``."""
    return [j for j, e in enumerate(graph.weights) if -e < graph.valency(j)]


def _fundamental_cycle(weights, neighbors, max_iter=DEFAULT_FC_CAP, rng=None):
    s = len(weights)
    z = [1] * s

    def positive(j):
        return weights[j] * z[j] + sum(z[n] for n in neighbors[j]) > 0

    for _ in range(max_iter):
        cand = [j for j in range(s) if positive(j)]
        if not cand:
            return tuple(z)
        j = rng.choice(cand) if rng is not None else cand[0]
        z[j] += 1
    raise IterationCapExceeded(f"fundamental cycle not reached within {max_iter} additions")


def fundamental_cycle(graph: PlumbingGraph, max_iter: int = DEFAULT_FC_CAP,
                      rng: random.Random | None = None) -> LatticeVector:
    """Artin's fundamental cycle by Laufer's iteration.

    Starts at ``sum b_j`` and adds ``b_j`` while ``(z, b_j) > 0``. ``rng``
    randomizes which qualifying vertex is added; the result does not depend on it.
    """
    return _fundamental_cycle(graph.weights, graph.neighbors, max_iter, rng)


def _chi_canonical(weights, edges, x) -> int:
    k_x = sum((-e - 2) * a for e, a in zip(weights, x))
    xx = sum(e * a * a for e, a in zip(weights, x)) + 2 * sum(x[i] * x[j] for i, j in edges)
    return -(k_x + xx) // 2


def _is_rational(weights, neighbors, edges, quick=True, max_iter=DEFAULT_FC_CAP) -> bool:
    if quick and all(-e >= len(n) for e, n in zip(weights, neighbors)):
        return True
    z = _fundamental_cycle(weights, neighbors, max_iter)
    return _chi_canonical(weights, edges, z) == 1


def is_rational(graph: PlumbingGraph, quick: bool = True,
                max_iter: int = DEFAULT_FC_CAP) -> bool:
    """Artin's criterion ``chi(Z) = 1`` on the fundamental cycle.

    With ``quick`` a graph without bad vertices returns ``True`` immediately.
    """
    return _is_rational(graph.weights, graph.neighbors, graph.edges, quick, max_iter)


def default_ar_bound(graph: PlumbingGraph) -> int:
    return 1 + sum(abs(e) for e in graph.weights) + max(graph.valency(j) for j in range(graph.size))


def ar_certificate(graph: PlumbingGraph, bound: int | None = None) -> dict[int, int]:
    """``{vertex: least d}`` such that lowering that weight by ``d`` gives a rational graph.

    Rationality survives further decreases, so each vertex is tested once at
    ``d = bound`` and the least ``d`` is then found by bisection.
    """
    bound = default_ar_bound(graph) if bound is None else bound
    if bound < 1:
        raise BadRange("AR bound must be >= 1")
    w = list(graph.weights)

    def rational_at(j, d):
        w2 = w.copy()
        w2[j] -= d
        return _is_rational(w2, graph.neighbors, graph.edges)

    cert = {}
    for j in range(graph.size):
        if not rational_at(j, bound):
            continue
        lo, hi = 1, bound
        while lo < hi:
            mid = (lo + hi) // 2
            if rational_at(j, mid):
                hi = mid
            else:
                lo = mid + 1
        cert[j] = lo
    return cert


def is_almost_rational(graph: PlumbingGraph, bound: int | None = None) -> list[int]:
    """Admissible base vertices found within the bound (empty: not detected)."""
    return sorted(ar_certificate(graph, bound))


# --- Brieskorn spheres -------------------------------------------------------

def negative_continued_fraction(p: int, q: int) -> list[int]:
    """``p/q = x1 - 1/(x2 - 1/(...))`` with all ``x_i >= 2`` (needs ``p > q > 0``)."""
    out = []
    while q:
        x = -(-p // q)
        out.append(x)
        p, q = q, x * q - p
    return out


def brieskorn_graph(p: int, q: int, r: int) -> PlumbingGraph:
    """Star-shaped negative definite plumbing of the Brieskorn sphere ``Sigma(p, q, r)``."""
    triple = (p, q, r)
    if min(triple) < 2:
        raise BadRange(f"Brieskorn exponents must be >= 2, got {triple}")
    if math.gcd(p, q) != 1 or math.gcd(p, r) != 1 or math.gcd(q, r) != 1:
        raise NotCoprime(f"{triple} is not pairwise coprime")
    prod = p * q * r
    weights = [0]
    edges = []
    total = 0
    for a in triple:
        alpha = prod // a
        omega = (-pow(alpha, -1, a)) % a
        total += omega * alpha
        if omega == 0:
            continue
        prev = 0
        for x in negative_continued_fraction(a, omega):
            weights.append(-x)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    e0, rem = divmod(-1 - total, prod)
    assert rem == 0
    weights[0] = e0
    return build_graph(weights, edges, base=0)


def legs(graph: PlumbingGraph) -> list[list[int]]:
    """Legs of a star graph about its base, in canonical order, center outward."""
    out = []
    for start in graph.neighbors[graph.base]:
        leg, prev, v = [start], graph.base, start
        while True:
            nxt = [n for n in graph.neighbors[v] if n != prev]
            if len(nxt) != 1:
                if nxt:
                    raise ValueError("not a star graph about its base")
                break
            prev, v = v, nxt[0]
            leg.append(v)
        out.append(leg)
    return sorted(out, key=lambda leg: leg[0])


# --- JSON --------------------------------------------------------------------

def graph_to_dict(graph: PlumbingGraph) -> dict:
    return {
        "vertices": [{"id": j, "weight": w} for j, w in enumerate(graph.weights)],
        "edges": [list(e) for e in graph.edges],
        "base": graph.base,
    }


def graph_from_dict(data) -> PlumbingGraph:
    """Parse the graph JSON object; ids in any order are re-canonicalized."""
    try:
        verts = data["vertices"]
        weights = {int(v["id"]): v["weight"] for v in verts}
        if len(weights) != len(verts):
            raise InvalidVertex("duplicate vertex id")
        edges = [(int(a), int(b)) for a, b in data["edges"]]
        base = data.get("base")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidVertex):
            raise
        raise ParseError(f"malformed graph JSON: {exc}") from exc
    return build_graph(weights, edges, None if base is None else int(base))
