"""The graded F[U]-module of a graded root, and HF+ of an AR plumbing.

A homogeneous element of degree ``d`` assigns to each vertex ``v`` either 0
or the unique nonzero element of degree ``d - 2 chi(v)`` in ``T+_0``; that is
possible only when ``chi(v) <= d/2``. So a degree-``d`` element is a bitset over
the admissible vertices ``V_d``. The edge rule ``U phi(u) = phi(v)`` forces
equal bits along every edge with both ends in ``V_d`` and is vacuous otherwise.
``U`` acts by restriction from ``V_{d+2}`` to ``V_d``.

Degrees in :class:`DegreeSlice` and :func:`u_map` are pre-shift integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .laufer import GradedRoot, LauferTrace, graded_root, laufer_trace
from .linalg import gf2_nullspace, gf2_rank, gf2_solve
from .plumbing import PlumbingGraph, k_squared

INFINITY = math.inf


@dataclass(frozen=True)
class DegreeSlice:
    degree: int
    vertices: tuple[int, ...]  # admissible vertices, bit i <-> vertices[i]
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bits(self, support) -> int:
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = 0
        for v in support:
            out |= 1 << pos[v]
        return out

    def support(self, bits: int) -> list[int]:
        return [v for i, v in enumerate(self.vertices) if bits >> i & 1]

    def coordinates(self, bits: int) -> int:
        """Coordinates of an element in ``basis`` (raises if not in the slice)."""
        c = gf2_solve(self.basis, bits, len(self.vertices))
        if c is None:
            raise ValueError("element does not satisfy the edge relations")
        return c


@dataclass(frozen=True)
class UMap:
    source: DegreeSlice
    target: DegreeSlice
    columns: tuple[int, ...]  # image of source basis i in target coordinates

    @property
    def rank(self) -> int:
        return gf2_rank(self.columns, self.target.dim)


def admissible(root: GradedRoot, d: int) -> tuple[int, ...]:
    if d % 2:
        return ()
    return tuple(v for v, g in enumerate(root.grades) if 2 * g <= d)


def slice(root: GradedRoot, d: int) -> DegreeSlice:  # noqa: A001 - mirrors the maths
    verts = admissible(root, d)
    pos = {v: i for i, v in enumerate(verts)}
    rows = [1 << pos[u] | 1 << pos[v] for u, v in root.edges if u in pos and v in pos]
    return DegreeSlice(d, verts, tuple(gf2_nullspace(rows, len(verts))))


def restrict(bits: int, source: DegreeSlice, target: DegreeSlice) -> int:
    """Restriction of a bitset on ``source.vertices`` to ``target.vertices``."""
    pos = {v: i for i, v in enumerate(source.vertices)}
    out = 0
    for i, v in enumerate(target.vertices):
        if bits >> pos[v] & 1:
            out |= 1 << i
    return out


def u_map(root: GradedRoot, d: int, cache: dict | None = None) -> UMap:
    """Matrix of ``U`` from degree ``d + 2`` to degree ``d``."""
    get = (lambda e: _cached_slice(root, e, cache)) if cache is not None else (lambda e: slice(root, e))
    src, tgt = get(d + 2), get(d)
    cols = tuple(tgt.coordinates(restrict(b, src, tgt)) for b in src.basis)
    return UMap(src, tgt, cols)


def _cached_slice(root, d, cache):
    if d not in cache:
        cache[d] = slice(root, d)
    return cache[d]


@dataclass(frozen=True)
class GradedFUModule:
    """``T+_{tower_bottom}`` plus finitely many reduced ranks per degree.

    ``shift`` is added to every pre-shift degree of the underlying root.
    """

    tower_bottom: Fraction
    reduced: tuple[tuple[Fraction, int], ...]
    shift: Fraction
    root: GradedRoot = field(compare=False, repr=False)
    slices: dict = field(compare=False, repr=False, default_factory=dict)

    @property
    def stable_degree(self) -> int:
        """Pre-shift degree from which every slice is the one-dimensional tower."""
        if self.reduced:
            return int(max(d for d, _ in self.reduced) - self.shift) + 2
        return int(self.tower_bottom - self.shift)

    def dim(self, degree) -> int:
        """Dimension in a (shifted) degree."""
        pre = Fraction(degree) - self.shift
        if pre.denominator != 1:
            return 0
        return _cached_slice(self.root, int(pre), self.slices).dim

    def to_dict(self) -> dict:
        return {
            "shift": _q(self.shift),
            "tower": _q(self.tower_bottom),
            "tower_bottom": _q(self.tower_bottom),
            "reduced": [{"deg": _q(d), "rank": r} for d, r in self.reduced],
        }


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def homology(root: GradedRoot, shift=Fraction(0)) -> GradedFUModule:
    """``H(R)`` with all degrees moved by ``shift``."""
    shift = Fraction(shift)
    cache: dict[int, DegreeSlice] = {}
    bottom = 2 * root.min_grade
    top_deg = 2 * max(root.grades) + 2
    reduced = []
    for d in range(bottom, top_deg + 1, 2):
        dim = _cached_slice(root, d, cache).dim
        assert dim >= 1, "tower must be present in every degree above the bottom"
        if dim > 1:
            reduced.append((d + shift, dim - 1))
    return GradedFUModule(bottom + shift, tuple(reduced), shift, root, cache)


def grading_shift(graph: PlumbingGraph) -> Fraction:
    """``-(K^2 + s) / 4``: pre-shift root degree ``2m`` lands at ``2m + shift``."""
    return -(k_squared(graph) + graph.size) / 4


def hf_plus(graph: PlumbingGraph, base: int | None = None,
            trace: LauferTrace | None = None, **trace_kwargs) -> GradedFUModule:
    """``HF+(-M(graph))`` in the canonical spin^c structure (graph must be AR at ``base``)."""
    if trace is None:
        trace = laufer_trace(graph, base, **trace_kwargs)
    return homology(graded_root(trace), grading_shift(graph))


def d_invariant(module: GradedFUModule) -> Fraction:
    return module.tower_bottom


def vertex_element(root: GradedRoot, v: int) -> tuple[DegreeSlice, int]:
    """Dual indicator of a vertex: degree-``2 chi(v)`` element that is 1 on the
    component of ``v`` among admissible vertices and 0 elsewhere.

    For a leaf this is supported on the leaf alone.
    """
    sl = slice(root, 2 * root.grades[v])
    allowed = set(sl.vertices)
    comp, stack = {v}, [v]
    while stack:
        x = stack.pop()
        nbrs = list(root.children[x])
        if root.parent[x] >= 0:
            nbrs.append(root.parent[x])
        for y in nbrs:
            if y in allowed and y not in comp:
                comp.add(y)
                stack.append(y)
    return sl, sl.bits(comp)


def divisibility(root: GradedRoot, sl: DegreeSlice, element: int,
                 stable_degree: int | None = None):
    """Largest ``D`` with ``element`` in the image of ``U^D``, or ``INFINITY``.

    Each ``D`` is decided by an exact GF(2) preimage solve against the slice
    ``D`` steps up. Once that slice lies at or beyond the stable degree (where
    only the tower survives and ``U`` is an isomorphism) divisibility persists.
    """
    if element == 0:
        return INFINITY
    if stable_degree is None:
        stable_degree = homology(root).stable_degree
    D = 0
    while True:
        if sl.degree + 2 * D >= stable_degree:
            return INFINITY
        up = slice(root, sl.degree + 2 * (D + 1))
        images = [restrict(b, up, sl) for b in up.basis]
        if gf2_solve(images, element, len(sl.vertices)) is None:
            return D
        D += 1


def u_depth(root: GradedRoot, leaf: int, stable_degree: int | None = None):
    """U-divisibility depth of the indicator element of a leaf."""
    from .errors import NotALeaf

    if not 0 <= leaf < root.size or not root.is_leaf(leaf):
        raise NotALeaf(f"vertex {leaf} is not a leaf of the graded root")
    sl, element = vertex_element(root, leaf)
    return divisibility(root, sl, element, stable_degree)


def kernel_dimension(root: GradedRoot) -> int:
    """Total dimension of ``Ker U`` over all degrees."""
    cache: dict[int, DegreeSlice] = {}
    bottom = 2 * root.min_grade
    total = _cached_slice(root, bottom, cache).dim
    for d in range(bottom + 2, 2 * max(root.grades) + 3, 2):
        m = u_map(root, d - 2, cache)
        total += m.source.dim - m.rank
    return total
