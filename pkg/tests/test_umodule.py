import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

import oracles as O
from graded_roots.errors import NotALeaf
from graded_roots.laufer import graded_root, graded_root_from_tau, laufer_trace
from graded_roots.plumbing import brieskorn_graph, build_graph
from graded_roots.umodule import (
    INFINITY,
    d_invariant,
    divisibility,
    grading_shift,
    hf_plus,
    homology,
    kernel_dimension,
    slice,
    u_depth,
    u_map,
    vertex_element,
)
from graded_roots.corpus import random_tau
from strategies import tau_sequences


def _reduced(module):
    return [(str(d), r) for d, r in module.reduced]


def test_sigma_2_3_11():
    m = hf_plus(brieskorn_graph(2, 3, 11))
    assert m.shift == -2
    assert d_invariant(m) == -2
    assert _reduced(m) == [("-2", 1)]
    assert m.to_dict()["tower"] == "-2"


def test_poincare_sphere_is_tower_only():
    m = hf_plus(brieskorn_graph(2, 3, 5))
    assert m.reduced == ()
    # a negative definite filling with K = 0 forces d(Sigma(2,3,5)) = 2
    assert d_invariant(m) == -2


def test_sigma_2_3_7():
    m = hf_plus(brieskorn_graph(2, 3, 7))
    assert d_invariant(m) == 0
    assert _reduced(m) == [("0", 1)]


def test_sigma_3_4_11():
    m = hf_plus(brieskorn_graph(3, 4, 11))
    assert d_invariant(m) == -2
    assert _reduced(m) == [("-2", 2), ("0", 2)]


def _torus_knot_data(p, q):
    """(V_0, Delta''(1)/2) of the (p, q) torus knot from its semigroup."""
    delta = (p - 1) * (q - 1) // 2
    S = {a * p + b * q for a in range(2 * delta + 1) for b in range(2 * delta + 1)}
    gaps = [s for s in range(2 * delta) if s not in S]
    v0 = sum(1 for s in gaps if s >= delta)
    coeff = [int(s in S) - int(s - 1 in S) for s in range(2 * delta + 1)]
    second = sum(j * j * coeff[delta + j] for j in range(-delta, delta + 1)) // 2
    return v0, second


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (2, 9), (3, 7), (4, 5)])
def test_brieskorn_pq_pq_minus_1_against_knot_invariants(p, q):
    # Sigma(p,q,pq-1) is -1 surgery on a torus knot: d = -2 V_0 on -M, and
    # chi(HF_red) = lambda + d/2 with lambda the Casson invariant.
    v0, second = _torus_knot_data(p, q)
    m = hf_plus(brieskorn_graph(p, q, p * q - 1))
    assert d_invariant(m) == -2 * v0
    assert all(Fraction(d).denominator == 1 and d % 2 == 0 for d, _ in m.reduced)
    assert sum(r for _, r in m.reduced) == second - v0


def test_grading_shift_formula():
    g = brieskorn_graph(2, 3, 11)
    assert grading_shift(g) == -(Fraction(-1) + 9) / 4


# --- slices against the explicit T+ model -------------------------------------------

def _roots_upto(max_vertices, count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        tau = random_tau(rng, rng.randint(1, 9))
        root = graded_root_from_tau(tau)
        if root.size <= max_vertices:
            out.append(root)
    return out


@given(tau_sequences(max_len=8))
@settings(max_examples=40)
def test_slice_dimensions_match_tplus_model(tau):
    root = graded_root_from_tau(tau)
    if root.size > 12:
        return
    lo = 2 * root.min_grade
    for d in range(lo - 2, 2 * max(root.grades) + 4):
        assert slice(root, d).dim == O.brute_slice_dim(root.grades, root.parent, d)


@given(tau_sequences(max_len=8))
@settings(max_examples=40)
def test_u_ranks_match_tplus_model(tau):
    root = graded_root_from_tau(tau)
    if root.size > 12:
        return
    for d in range(2 * root.min_grade, 2 * max(root.grades) + 2, 2):
        assert u_map(root, d).rank == O.brute_u_rank(root.grades, root.parent, d)


@given(tau_sequences(max_len=10))
def test_kernel_dimension_counts_leaves(tau):
    root = graded_root_from_tau(tau)
    assert kernel_dimension(root) == len(root.leaves())


@given(tau_sequences(max_len=10))
def test_tower_has_rank_one_above_the_top(tau):
    root = graded_root_from_tau(tau)
    m = homology(root)
    assert m.tower_bottom == 2 * min(tau)
    for d in range(m.stable_degree, m.stable_degree + 6, 2):
        assert slice(root, d).dim == 1
    assert sum(r for _, r in m.reduced) == sum(
        slice(root, d).dim - 1 for d in range(2 * min(tau), 2 * max(tau) + 2, 2))


def test_monotone_tau_gives_a_bare_tower():
    m = homology(graded_root_from_tau([0, 0, 1, 2]))
    assert m.reduced == () and m.tower_bottom == 0


@pytest.mark.parametrize("root", _roots_upto(9, 25, seed=4), ids=lambda r: str(r.grades))
def test_leaf_depth_matches_brute_force(root):
    m = homology(root)
    for leaf in root.leaves():
        depth = u_depth(root, leaf)
        sl, bits = vertex_element(root, leaf)
        phi = tuple(0 if v in sl.support(bits) else None for v in range(root.size))
        limit = (m.stable_degree - sl.degree) // 2 + 1
        brute = O.brute_divisibility(root.grades, root.parent, phi, sl.degree, limit)
        if brute >= limit:
            assert depth == INFINITY
        else:
            assert depth == brute


def test_sigma_2_3_11_leaves_have_depth_zero():
    root = graded_root(laufer_trace(brieskorn_graph(2, 3, 11)))
    assert [u_depth(root, v) for v in root.leaves()] == [0, 0]


def test_single_leaf_is_infinitely_divisible():
    root = graded_root_from_tau([0, 1, 2])
    assert u_depth(root, root.leaves()[0]) == INFINITY


def test_depth_of_long_branch():
    # the grade -1 leaf carries the tower; the grade 0 leaf meets it at grade 2
    root = graded_root_from_tau([0, 2, -1, 3])
    depths = {root.grades[v]: u_depth(root, v) for v in root.leaves()}
    assert depths == {-1: INFINITY, 0: 1}


def test_non_leaf_rejected():
    root = graded_root_from_tau([0, 1, 0, 2])
    with pytest.raises(NotALeaf):
        u_depth(root, root.top)
    with pytest.raises(NotALeaf):
        u_depth(root, 99)


def test_zero_element_is_infinitely_divisible():
    root = graded_root_from_tau([0, 1, 0, 2])
    assert divisibility(root, slice(root, 0), 0) == INFINITY


def test_module_dim_in_shifted_degrees():
    m = hf_plus(brieskorn_graph(2, 3, 11))
    assert m.dim(-2) == 2
    assert m.dim(0) == 1
    assert m.dim(-4) == 0
    assert m.dim(Fraction(1, 2)) == 0


def test_non_unimodular_shift_is_rational():
    g = build_graph([-2, -3], [(0, 1)])
    m = hf_plus(g)
    assert m.reduced == ()
    assert m.tower_bottom == grading_shift(g)
    assert not math.isclose(float(m.tower_bottom), round(float(m.tower_bottom)))
