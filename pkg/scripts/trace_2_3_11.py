"""Print the Laufer trace, graded root and HF+ of Sigma(2,3,11)."""

from graded_roots.contact import locate_contact
from graded_roots.laufer import graded_root, laufer_trace
from graded_roots.plumbing import brieskorn_graph
from graded_roots.umodule import hf_plus


def main() -> None:
    g = brieskorn_graph(2, 3, 11)
    tr = laufer_trace(g)
    print("weights", g.weights)
    print("edges  ", g.edges)
    for i in range(tr.N + 1):
        print(f"k({i:2d}) = {tr.k(i)}  tau = {tr.tau[i]}")
    root = graded_root(tr)
    print("root   ", root.canonical_form())
    m = hf_plus(g, trace=tr)
    print("HF+    ", m.to_dict())
    for k in (tr.k(0), tr.k(6)):
        print("contact", locate_contact(g, k, trace=tr).to_dict())


if __name__ == "__main__":
    main()
