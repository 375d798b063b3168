"""Check the E8 fundamental cycle and tau against brute-force searches."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import oracles as O  # noqa: E402
from graded_roots.laufer import laufer_trace  # noqa: E402
from graded_roots.plumbing import build_graph, fundamental_cycle, is_rational  # noqa: E402
from graded_roots.umodule import hf_plus  # noqa: E402

E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (5, 7)]


def main() -> None:
    g = build_graph([-2] * 8, E8_EDGES)
    z = fundamental_cycle(g)
    brute = O.brute_fundamental_cycle(g.weights, g.edges, box=6)
    print("canonical edges ", g.edges)
    print("fundamental cycle", z, "brute force", brute, "agree", z == brute)
    print("rational        ", is_rational(g))
    tr = laufer_trace(g)
    oracle = O.tau_from_cycles(g.weights, g.edges, g.base, tr.N)
    print("tau             ", tr.tau, "oracle agree", list(tr.tau) == oracle)
    print("HF+             ", hf_plus(g, trace=tr).to_dict())


if __name__ == "__main__":
    main()
