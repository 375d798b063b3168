"""Locating contact invariants in the graded root, and the sigma invariant.

For a contact structure filled by a Stein structure on the plumbing, the
contact class corresponds to the dual of the Chern class ``c1(J)``. When that
vector lies in the box ``e_j + 2 <= k_j <= -e_j - 2`` it is a Laufer vector
``k(i0)`` whose index is the ``b0`` coordinate of ``PD^{-1}((k - K)/2)``, and
it sits at the bottom of a branch of the graded root. ``sigma`` is minus the
U-divisibility of that element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadRange,
    LauferMismatch,
    NonIntegralIndex,
    NotCharacteristic,
    NotCoprime,
    NotNegativeDefinite,
    OutsideBox,
)
from .laufer import GradedRoot, LauferTrace, graded_root, laufer_trace
from .plumbing import (
    CharVector,
    PlumbingGraph,
    ar_certificate,
    brieskorn_graph,
    canonical_class,
    is_characteristic,
    is_negative_definite,
    is_rational,
    legs,
    pd_inverse,
)
from .umodule import divisibility, homology, vertex_element

MINUS_INFINITY = -math.inf


def in_box(graph: PlumbingGraph, k: Sequence[int]) -> bool:
    return all(e + 2 <= a <= -e - 2 for a, e in zip(k, graph.weights))


def lattice_preimage(graph: PlumbingGraph, k: Sequence[int]) -> tuple[Fraction, ...]:
    """``x`` with ``k = K + 2 PD(x)``."""
    K = canonical_class(graph)
    return pd_inverse(graph, [Fraction(a - b, 2) for a, b in zip(k, K)])


def laufer_index(graph: PlumbingGraph, k: Sequence[int], base: int | None = None) -> int:
    """Index read off the dual lattice, without consulting a trace.

    Negative values are returned as is; such vectors are not in the sequence.
    """
    base = graph.base if base is None else base
    if not is_characteristic(graph, k):
        raise NotCharacteristic(f"{tuple(k)} is not characteristic")
    x = lattice_preimage(graph, k)
    if any(c.denominator != 1 for c in x):
        raise NonIntegralIndex("k is not in the canonical spin^c orbit")
    return int(x[base])


def detect_in_laufer(graph: PlumbingGraph, k: Sequence[int], base: int | None = None,
                     trace: LauferTrace | None = None, require_box: bool = True,
                     **trace_kwargs) -> int:
    """Laufer index ``i0`` with ``k = k(i0)``, cross-checked against the trace.

    With ``require_box`` the vector must satisfy the box inequalities, which
    guarantee membership in the sequence. Without it, membership is checked
    directly and a miss raises :class:`OutsideBox`.
    """
    base = graph.base if base is None else base
    k = tuple(k)
    if not is_characteristic(graph, k):
        raise NotCharacteristic(f"{k} is not characteristic")
    boxed = in_box(graph, k)
    if require_box and not boxed:
        raise OutsideBox(f"{k} violates e_j + 2 <= k_j <= -e_j - 2")
    i0 = laufer_index(graph, k, base)
    if i0 < 0:
        if boxed:
            raise LauferMismatch(f"box vector {k} has negative index {i0}")
        raise OutsideBox(f"{k} has negative index {i0}")
    if trace is None or trace.N < i0:
        trace = laufer_trace(graph, base, min_length=i0, **trace_kwargs)
    if trace.k(i0) != k:
        if boxed:
            raise LauferMismatch(f"k({i0}) = {trace.k(i0)} but expected {k}")
        raise OutsideBox(f"{k} is not a Laufer vector (k({i0}) = {trace.k(i0)})")
    return i0


@dataclass(frozen=True)
class ContactLocation:
    k: CharVector
    laufer_index: int
    vertex: int
    leaf_grade: int
    is_leaf: bool
    sigma: float | int  # integer <= 0, or MINUS_INFINITY

    def to_dict(self) -> dict:
        return {
            "k": list(self.k),
            "laufer_index": self.laufer_index,
            "leaf_grade": self.leaf_grade,
            "sigma": "-inf" if self.sigma == MINUS_INFINITY else self.sigma,
        }


def locate_contact(graph: PlumbingGraph, k: Sequence[int], base: int | None = None,
                   trace: LauferTrace | None = None, **trace_kwargs) -> ContactLocation:
    """Laufer index, graded-root vertex and sigma of the element dual to ``k``."""
    base = graph.base if base is None else base
    k = tuple(k)
    if trace is None:
        trace = laufer_trace(graph, base, **trace_kwargs)
    if k == canonical_class(graph):
        i0 = 0  # k(0) = K by definition, even when the box is empty
    else:
        i0 = detect_in_laufer(graph, k, base, trace, require_box=False, **trace_kwargs)
    if trace.N < i0:
        trace = laufer_trace(graph, base, min_length=i0, **trace_kwargs)
    root = graded_root(trace)
    return _locate(root, k, i0)


def _locate(root: GradedRoot, k, i0) -> ContactLocation:
    v = root.vertex_of_index[i0]
    sl, element = vertex_element(root, v)
    depth = divisibility(root, sl, element, homology(root).stable_degree)
    return ContactLocation(k, i0, v, root.grades[v], root.is_leaf(v), -depth)


def sigma_of_char(graph: PlumbingGraph, k: Sequence[int], base: int | None = None,
                  **kwargs):
    """``sigma`` of the contact structure whose filling has Chern class ``k``."""
    return locate_contact(graph, k, base, **kwargs).sigma


# --- the Stein family on Sigma(3, 3n+1, 9n+2) -------------------------------

def family_graph(n: int) -> PlumbingGraph:
    if n < 1:
        raise BadRange(f"n must be >= 1, got {n}")
    return brieskorn_graph(3, 3 * n + 1, 9 * n + 2)


def stein_family_chern(n: int, m: int) -> tuple[PlumbingGraph, CharVector]:
    """Graph of ``Sigma(3, 3n+1, 9n+2)`` and the Chern class of ``J_m``.

    Equal to ``K`` except at the outer end of the length-3 leg (weight
    ``-(n+1)``), where it is ``n - 2m - 1``.
    """
    if n < 1 or not 0 <= m <= n - 1:
        raise BadRange(f"need n >= 1 and 0 <= m <= n-1, got n={n}, m={m}")
    graph = family_graph(n)
    leg = next(leg for leg in legs(graph) if len(leg) == 3)
    end = leg[-1]
    assert graph.weights[end] == -(n + 1)
    k = list(canonical_class(graph))
    k[end] = n - 2 * m - 1
    return graph, tuple(k)


# --- semigroup description of tau on Sigma(p, q, pq-1) ----------------------

# The counting parameter in the two cardinalities is t + offset; offset 0 is
# the value that reproduces direct Laufer traces (see tests).
SEMIGROUP_COUNT_OFFSET = 0


def semigroup_members(p: int, q: int, upto: int) -> set[int]:
    return {a * p + b * q for a in range(upto // p + 1) for b in range(upto // q + 1)
            if a * p + b * q <= upto}


@dataclass(frozen=True)
class SemigroupTau:
    p: int
    q: int
    delta: int
    gaps: tuple[int, ...]
    minima: tuple[tuple[int, int], ...]  # (a_t, tau(a_t))
    maxima: tuple[tuple[int, int], ...]  # (A_t, tau(A_t))
    rises: tuple[int, ...]  # tau(A_t) - tau(a_t)
    drops: tuple[int, ...]  # tau(A_t) - tau(a_{t+1})

    def to_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "delta": self.delta, "gaps": list(self.gaps),
            "minima": [list(x) for x in self.minima],
            "maxima": [list(x) for x in self.maxima],
        }


def semigroup_tau(p: int, q: int, offset: int = SEMIGROUP_COUNT_OFFSET) -> SemigroupTau:
    """Extrema of ``tau`` for ``Sigma(p, q, pq - 1)`` from the semigroup ``<p, q>``."""
    if p < 2 or q < 2:
        raise BadRange("p, q must be >= 2")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"({p}, {q}) not coprime")
    delta = (p - 1) * (q - 1) // 2
    frob = 2 * delta - 1
    members = semigroup_members(p, q, frob + 1)
    gaps = tuple(s for s in range(frob + 1) if s not in members)
    minima = [(0, 0)]
    maxima = []
    rises, drops = [], []
    for t in range(2 * delta - 2):
        n = t + offset
        rise = sum(1 for s in members if s <= n)
        drop = sum(1 for s in gaps if s >= n + 2)
        top = minima[-1][1] + rise
        maxima.append((t * p * q + 1, top))
        minima.append(((t + 1) * (p * q - 1), top - drop))
        rises.append(rise)
        drops.append(drop)
    return SemigroupTau(p, q, delta, gaps, tuple(minima), tuple(maxima),
                        tuple(rises), tuple(drops))


# --- classification ----------------------------------------------------------

@dataclass(frozen=True)
class LinkClassification:
    kind: str  # "rational" | "proper_ar" | "not_detected"
    admissible: dict[int, int]  # base vertex -> least weight decrease
    base: int | None = None
    sigma_K: float | int | None = None
    root: GradedRoot | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind,
               "admissible": [{"vertex": v, "decrease": d} for v, d in sorted(self.admissible.items())]}
        if self.base is not None:
            out["base"] = self.base
            out["sigma_K"] = "-inf" if self.sigma_K == MINUS_INFINITY else self.sigma_K
            out["root"] = self.root.to_dict()
        return out


def classify_link(graph: PlumbingGraph, bound: int | None = None,
                  **trace_kwargs) -> LinkClassification:
    """Rational / proper AR (with a sigma(K) certificate) / not detected."""
    if not is_negative_definite(graph):
        raise NotNegativeDefinite("intersection form is not negative definite")
    cert = ar_certificate(graph, bound)
    if is_rational(graph):
        kind = "rational"
    elif cert:
        kind = "proper_ar"
    else:
        return LinkClassification("not_detected", cert)
    base = graph.base if graph.base in cert else min(cert)
    trace = laufer_trace(graph, base, **trace_kwargs)
    root = graded_root(trace)
    loc = _locate(root, canonical_class(graph), 0)
    return LinkClassification(kind, cert, base, loc.sigma, root)
