"""Tabulate the Laufer index and sigma of the Stein family on Sigma(3, 3n+1, 9n+2)."""

import argparse
import time

from graded_roots.contact import detect_in_laufer, sigma_of_char, stein_family_chern
from graded_roots.laufer import laufer_trace


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    print(f"{'n':>3} {'m':>3} {'|V|':>4} {'index':>7} {'3m(9n+2)':>9} {'sigma':>6} {'secs':>6}")
    for n in range(1, args.max_n + 1):
        for m in range(n):
            t0 = time.perf_counter()
            graph, k = stein_family_chern(n, m)
            tr = laufer_trace(graph, min_length=3 * m * (9 * n + 2))
            idx = detect_in_laufer(graph, k, trace=tr)
            sig = sigma_of_char(graph, k, trace=tr)
            dt = time.perf_counter() - t0
            print(f"{n:>3} {m:>3} {graph.size:>4} {idx:>7} {3 * m * (9 * n + 2):>9} {sig:>6} {dt:>6.2f}")


if __name__ == "__main__":
    main()
