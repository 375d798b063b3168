import pytest
from hypothesis import given

from graded_roots.contact import (
    MINUS_INFINITY,
    classify_link,
    detect_in_laufer,
    family_graph,
    in_box,
    laufer_index,
    locate_contact,
    semigroup_tau,
    sigma_of_char,
    stein_family_chern,
)
from graded_roots.corpus import ar_star_graphs
from graded_roots.errors import (
    BadRange,
    NonIntegralIndex,
    NotCharacteristic,
    NotCoprime,
    NotNegativeDefinite,
    OutsideBox,
)
from graded_roots.laufer import graded_root, laufer_trace, tau_plateaus
from graded_roots.plumbing import (
    brieskorn_graph,
    build_graph,
    canonical_class,
    is_rational,
)
from strategies import negative_definite_graphs

K_PLUS = (0,) * 8 + (1,)
K_MINUS = (0,) * 8 + (-1,)


@pytest.fixture(scope="module")
def g2311():
    return brieskorn_graph(2, 3, 11)


def test_detect_sigma_2_3_11(g2311):
    assert detect_in_laufer(g2311, K_MINUS) == 6
    assert detect_in_laufer(g2311, K_PLUS) == 0


def test_sigma_values_on_sigma_2_3_11(g2311):
    assert sigma_of_char(g2311, K_PLUS) == 0
    assert sigma_of_char(g2311, K_MINUS) == 0
    loc = locate_contact(g2311, K_MINUS)
    assert loc.is_leaf and loc.leaf_grade == 0 and loc.laufer_index == 6


def test_detect_errors(g2311):
    with pytest.raises(NotCharacteristic):
        detect_in_laufer(g2311, (0,) * 8 + (2,))
    with pytest.raises(OutsideBox):
        detect_in_laufer(g2311, (0,) * 8 + (3,))
    # characteristic but not a Laufer vector
    with pytest.raises(OutsideBox):
        detect_in_laufer(g2311, (2,) + (0,) * 7 + (1,), require_box=False)


def test_non_integral_index():
    g = build_graph([-2, -3], [(0, 1)])  # det 5: five spin^c structures
    with pytest.raises(NonIntegralIndex):
        laufer_index(g, (1, 2))


def test_rational_sigma_is_minus_infinity():
    g = brieskorn_graph(2, 3, 5)
    assert sigma_of_char(g, canonical_class(g)) == MINUS_INFINITY
    assert locate_contact(g, canonical_class(g)).to_dict()["sigma"] == "-inf"


def test_canonical_class_outside_box():
    g = brieskorn_graph(2, 3, 7)
    K = canonical_class(g)
    assert not in_box(g, K)
    assert sigma_of_char(g, K) == 0


# --- the Stein family --------------------------------------------------------------

FAMILY = [(n, m) for n in range(1, 5) for m in range(n)]


@pytest.mark.parametrize("n,m", FAMILY)
def test_family_index_and_sigma(n, m):
    graph, k = stein_family_chern(n, m)
    assert graph.size == 9 * n + 6
    assert detect_in_laufer(graph, k) == 3 * m * (9 * n + 2)
    assert sigma_of_char(graph, k) == -m


def test_family_chern_vector_positions():
    graph, k = stein_family_chern(2, 1)
    assert k[:5] == (0, 1, 0, 0, -1) and set(k[5:]) == {0}
    assert graph.weights[1] == -3 and graph.weights[4] == -3
    graph, k = stein_family_chern(1, 0)
    assert k[:5] == (0, 1, 0, 0, 0)


@pytest.mark.parametrize("n,m", [(0, 0), (2, 2), (3, -1)])
def test_family_range(n, m):
    with pytest.raises(BadRange):
        stein_family_chern(n, m)


def test_family_graph_is_brieskorn():
    assert family_graph(2) == brieskorn_graph(3, 7, 20)


# --- semigroup description ---------------------------------------------------------

def test_semigroup_tau_3_4():
    st = semigroup_tau(3, 4)
    assert st.gaps == (1, 2, 5)
    assert st.minima == ((0, 0), (11, -1), (22, -1), (33, -1), (44, 0))
    assert st.maxima == ((1, 1), (13, 0), (25, 0), (37, 1))


@pytest.mark.parametrize("p,q", [(2, 5), (3, 4), (3, 5), (2, 7), (4, 5), (2, 9)])
def test_semigroup_tau_matches_trace(p, q):
    st = semigroup_tau(p, q)
    last = st.minima[-1][0]
    tr = laufer_trace(brieskorn_graph(p, q, p * q - 1), min_length=last + 1)
    plateaus = [pl for pl in tau_plateaus(tr.tau[:last + 2]) if pl[3] != "end"]
    mins = [pl for pl in plateaus if pl[3] == "min"]
    maxs = [pl for pl in plateaus if pl[3] == "max"]
    assert len(mins) == len(st.minima) and len(maxs) == len(st.maxima)
    for (a, v), (lo, hi, val, _) in zip(st.minima, mins):
        assert lo <= a <= hi and tr.tau[a] == v == val
    for (A, v), (lo, _, val, _) in zip(st.maxima, maxs):
        assert A == lo and tr.tau[A] == v == val
    assert all(r > 0 for r in st.rises) and all(d > 0 for d in st.drops)


def test_semigroup_errors():
    with pytest.raises(NotCoprime):
        semigroup_tau(4, 6)
    with pytest.raises(BadRange):
        semigroup_tau(1, 5)


def test_alternative_offset_disagrees_with_trace():
    st = semigroup_tau(3, 4, offset=1)
    tr = laufer_trace(brieskorn_graph(3, 4, 11), min_length=45)
    assert any(tr.tau[a] != v for a, v in st.minima)


# --- classification ----------------------------------------------------------------

def test_classify_examples():
    assert classify_link(brieskorn_graph(2, 3, 5)).kind == "rational"
    res = classify_link(brieskorn_graph(2, 3, 11))
    assert res.kind == "proper_ar" and res.sigma_K == 0


def test_classify_not_detected():
    w = [-1, -7, -3, -2, -1, -7, -3, -2, -3]
    e = [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7), (1, 8), (5, 8)]
    res = classify_link(build_graph(w, e))
    assert res.kind == "not_detected" and res.admissible == {}
    assert res.to_dict() == {"kind": "not_detected", "admissible": []}


def test_classify_rejects_indefinite():
    with pytest.raises(NotNegativeDefinite):
        classify_link(build_graph([-1, -1], [(0, 1)]))


@pytest.mark.parametrize("g", ar_star_graphs(2024, 30), ids=lambda g: str(g.weights))
def test_box_vectors_detect_their_index(g):
    tr = laufer_trace(g)
    for i in range(tr.N + 1):
        if in_box(g, tr.k(i)):
            assert detect_in_laufer(g, tr.k(i), trace=tr) == i


@given(negative_definite_graphs(max_size=6))
def test_sigma_of_canonical_class_dichotomy(g):
    res = classify_link(g)
    if res.kind == "rational":
        assert res.sigma_K == MINUS_INFINITY
    elif res.kind == "proper_ar":
        assert res.sigma_K == 0
        root = res.root
        leaf = root.vertex_of_index[0]
        assert root.is_leaf(leaf) and root.branch_length(leaf) == 1
    assert (res.kind == "rational") == is_rational(g)


def test_root_of_classification_matches_trace(g2311):
    res = classify_link(g2311)
    assert res.root == graded_root(laufer_trace(g2311, res.base))
