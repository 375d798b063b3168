"""Laufer sequences, the tau function and the graded root ``R_tau``.

The sequence starts at the canonical class ``k(0) = K``. Each step adds
``2 PD(b0)`` and then ``2 PD(b_j)`` for every other vertex whose value hits
``-e_j``, until none does. ``tau(n)`` sums ``chi_{k(i)}(b0)`` over ``i < n``.
"""

from __future__ import annotations

import heapq
import os
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidVertex, IterationCapExceeded
from .plumbing import CharVector, PlumbingGraph, canonical_class

DEFAULT_MAX_ITER = 10**6


def default_max_iter() -> int:
    return int(os.environ.get("GRADED_ROOTS_MAX_ITER", DEFAULT_MAX_ITER))


@dataclass(frozen=True)
class LauferStep:
    k: CharVector
    chi0: int
    added: tuple[int, ...] | None  # None for the terminal vector k(N)


@dataclass(frozen=True)
class LauferTrace:
    graph: PlumbingGraph
    base: int
    steps: tuple[LauferStep, ...]
    tau: tuple[int, ...]
    N: int

    def k(self, i: int) -> CharVector:
        return self.steps[i].k

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "tau": list(self.tau),
            "steps": [{"k": list(st.k), "chi0": st.chi0} for st in self.steps],
            "N": self.N,
        }


def chi_at(graph: PlumbingGraph, k: Sequence[int], j: int) -> int:
    """``chi_k(b_j) = -(k(b_j) + e_j) / 2``."""
    return -(k[j] + graph.weights[j]) // 2


def laufer_step(graph: PlumbingGraph, base: int, k: Sequence[int],
                max_inner: int | None = None,
                rng: random.Random | None = None):
    """One Laufer step from ``k``.

    Returns ``(k_next, added, chi)`` where ``added`` lists the vertices ``j != base``
    added during the computation sequence and ``chi = chi_k(b0)``. Ties go to
    the smallest id unless ``rng`` is given, in which case a random qualifying
    vertex is chosen (the result is the same either way).
    """
    if not 0 <= base < graph.size:
        raise InvalidVertex(f"base {base} out of range")
    cap = default_max_iter() if max_inner is None else max_inner
    w = graph.weights
    nb = graph.neighbors
    z = list(k)
    z[base] += 2 * w[base]
    for n in nb[base]:
        z[n] += 2
    added: list[int] = []

    def qualifies(j):
        return j != base and z[j] == -w[j]

    def add(j):
        z[j] += 2 * w[j]
        for n in nb[j]:
            z[n] += 2
        added.append(j)
        if len(added) > cap:
            raise IterationCapExceeded(f"Laufer step exceeded {cap} additions")

    if rng is None:
        heap = [j for j in range(graph.size) if qualifies(j)]
        heapq.heapify(heap)
        while heap:
            j = heapq.heappop(heap)
            if not qualifies(j):
                continue
            add(j)
            for n in nb[j] + (j,):
                if qualifies(n):
                    heapq.heappush(heap, n)
    else:
        while True:
            cand = [j for j in range(graph.size) if qualifies(j)]
            if not cand:
                break
            add(rng.choice(cand))
    return tuple(z), tuple(added), chi_at(graph, k, base)


def laufer_trace(graph: PlumbingGraph, base: int | None = None,
                 max_steps: int | None = None, max_inner: int | None = None,
                 min_length: int = 0) -> LauferTrace:
    """Run the Laufer sequence until ``tau`` first reaches 2.

    ``min_length`` forces the trace to continue at least to that index (used
    when a characteristic vector beyond the stopping index must be located).
    """
    base = graph.base if base is None else base
    cap = default_max_iter() if max_steps is None else max_steps
    k = canonical_class(graph)
    tau = [0]
    steps = []
    while tau[-1] < 2 or len(tau) - 1 < min_length:
        if len(steps) >= cap:
            raise IterationCapExceeded(f"tau did not reach 2 within {cap} Laufer steps")
        k_next, added, c = laufer_step(graph, base, k, max_inner)
        steps.append(LauferStep(k, c, added))
        tau.append(tau[-1] + c)
        k = k_next
    steps.append(LauferStep(k, chi_at(graph, k, base), None))
    return LauferTrace(graph, base, tuple(steps), tuple(tau), len(tau) - 1)


def tau_plateaus(tau) -> list[tuple[int, int, int, str]]:
    """Extremal plateaus as ``(first, last, value, kind)``, kind "min"/"max"/"end".

    The first plateau is classified by its successor; the final one is "end".
    """
    if isinstance(tau, LauferTrace):
        tau = tau.tau
    runs: list[list[int]] = []
    for i, t in enumerate(tau):
        if runs and runs[-1][2] == t:
            runs[-1][1] = i
        else:
            runs.append([i, i, t])
    out = []
    for r, (a, b, t) in enumerate(runs):
        if r == len(runs) - 1:
            out.append((a, b, t, "end"))
            continue
        after = runs[r + 1][2]
        if r == 0:
            out.append((a, b, t, "max" if t > after else "min"))
            continue
        before = runs[r - 1][2]
        if (t > before) == (t > after):
            out.append((a, b, t, "max" if t > after else "min"))
    return out


def tau_extrema(tau) -> list[tuple[int, int]]:
    """Alternating local extrema of ``tau`` (a sequence or a trace).

    Plateaus collapse to their first index; the first and last plateaus are
    always kept.
    """
    return [(first, value) for first, _, value, _ in tau_plateaus(tau)]


# --- graded roots ------------------------------------------------------------

@dataclass(frozen=True)
class GradedRoot:
    """Finite truncation of a graded root.

    Vertices are ``0..V-1`` ordered by (grade, first Laufer index).
    ``parent[v]`` is the unique neighbour one grade up (``-1`` at ``top``,
    where the infinite trunk continues). When built from ``tau``,
    ``runs[v] = (a, b)`` means ``v`` is the class of ``v_i^m`` exactly for
    ``a <= i <= b``, and ``vertex_of_index[i]`` is the class of ``v_i^{tau(i)}``.
    """

    grades: tuple[int, ...]
    parent: tuple[int, ...]
    runs: tuple[tuple[int, int], ...] | None = None
    vertex_of_index: tuple[int, ...] | None = None
    children: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        kids: list[list[int]] = [[] for _ in self.grades]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        object.__setattr__(self, "children", tuple(tuple(k) for k in kids))

    @property
    def size(self) -> int:
        return len(self.grades)

    @property
    def top(self) -> int:
        return self.parent.index(-1)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edges as (lower, upper) pairs."""
        return [(v, p) for v, p in enumerate(self.parent) if p >= 0]

    @property
    def min_grade(self) -> int:
        return min(self.grades)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def leaves(self) -> list[int]:
        return [v for v in range(self.size) if not self.children[v]]

    def provenance(self, v: int) -> range:
        """Laufer indices ``i`` whose ``v_i`` at this grade is ``v``."""
        if self.runs is None:
            raise ValueError("root was not built from a tau sequence")
        a, b = self.runs[v]
        return range(a, b + 1)

    def leaf_of_index(self, i: int) -> int:
        return self.vertex_of_index[i]

    def branch_length(self, leaf: int) -> int:
        """Edges climbed from a leaf before reaching a vertex with another child."""
        length, v = 0, leaf
        while self.parent[v] >= 0:
            p = self.parent[v]
            length += 1
            if len(self.children[p]) > 1:
                return length
            v = p
        return length

    def validate(self) -> None:
        tops = [v for v, p in enumerate(self.parent) if p < 0]
        assert len(tops) == 1, "exactly one top vertex"
        top = tops[0]
        assert self.grades[top] == max(self.grades)
        assert sum(1 for g in self.grades if g == self.grades[top]) == 1
        for v, p in self.edges:
            assert self.grades[p] == self.grades[v] + 1

    def extend_trunk(self, extra: int) -> "GradedRoot":
        """Copy with ``extra`` more trunk vertices above the top."""
        grades = list(self.grades)
        parent = list(self.parent)
        prev = self.top
        for _ in range(extra):
            grades.append(grades[prev] + 1)
            parent.append(-1)
            parent[prev] = len(grades) - 1
            prev = len(grades) - 1
        runs = None
        if self.runs is not None:
            span = (min(a for a, _ in self.runs), max(b for _, b in self.runs))
            runs = self.runs + (span,) * extra
        return GradedRoot(tuple(grades), tuple(parent), runs, self.vertex_of_index)

    def canonical_form(self):
        """Isomorphism-invariant nested tuple (grade, sorted child forms)."""
        def form(v):
            return (self.grades[v], tuple(sorted(form(c) for c in self.children[v])))
        return form(self.top)

    def to_dot(self) -> str:
        lines = ["graph graded_root {", "  node [shape=circle];"]
        top = self.top
        for v, g in enumerate(self.grades):
            shape = ", shape=doublecircle" if v == top else ""
            lines.append(f'  v{v} [label="χ={g}"{shape}];')
        for v, p in self.edges:
            lines.append(f"  v{v} -- v{p};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "grades": list(self.grades),
            "edges": [list(e) for e in self.edges],
            "top": self.top,
        }


def graded_root_from_tau(tau: Sequence[int]) -> GradedRoot:
    """Truncation of ``R_tau`` up to grade ``max(tau)``.

    ``v_i^m`` and ``v_j^m`` are identified iff ``tau(l) <= m`` for every ``l``
    between ``i`` and ``j``; so at grade ``m`` the vertices are the maximal runs
    of consecutive indices with ``tau <= m``.
    """
    tau = list(tau)
    if not tau:
        raise ValueError("empty tau sequence")
    top = max(tau)
    if tau[-1] != top:
        raise ValueError("the last tau value must be the maximum")
    grades: list[int] = []
    runs: list[tuple[int, int]] = []
    by_grade: list[list[int]] = []
    for m in range(min(tau), top + 1):
        ids = []
        i = 0
        while i < len(tau):
            if tau[i] > m:
                i += 1
                continue
            j = i
            while j + 1 < len(tau) and tau[j + 1] <= m:
                j += 1
            ids.append(len(grades))
            grades.append(m)
            runs.append((i, j))
            i = j + 1
        by_grade.append(ids)
    parent = [-1] * len(grades)
    for lower, upper in zip(by_grade, by_grade[1:]):
        u = 0
        for v in lower:
            start = runs[v][0]
            while runs[upper[u]][1] < start:
                u += 1
            parent[v] = upper[u]
    vertex_of_index = [0] * len(tau)
    lo = min(tau)
    for i, t in enumerate(tau):
        for v in by_grade[t - lo]:
            a, b = runs[v]
            if a <= i <= b:
                vertex_of_index[i] = v
                break
    return GradedRoot(tuple(grades), tuple(parent), tuple(runs), tuple(vertex_of_index))


def graded_root(trace: LauferTrace) -> GradedRoot:
    return graded_root_from_tau(trace.tau)
