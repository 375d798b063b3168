"""Compare the semigroup description of tau with the Laufer trace on Sigma(p,q,pq-1)."""

import argparse

from graded_roots.contact import semigroup_tau
from graded_roots.laufer import laufer_trace, tau_extrema
from graded_roots.plumbing import brieskorn_graph


def check(p: int, q: int) -> bool:
    st = semigroup_tau(p, q)
    last = st.minima[-1][0]
    tr = laufer_trace(brieskorn_graph(p, q, p * q - 1), min_length=last + 1)
    ok = all(tr.tau[a] == v for a, v in st.minima + st.maxima)
    ok = ok and all(r > 0 for r in st.rises) and all(d > 0 for d in st.drops)
    print(f"({p},{q}) delta={st.delta} gaps={st.gaps}")
    print(f"  minima {st.minima}")
    print(f"  maxima {st.maxima}")
    print(f"  trace extrema {tau_extrema(tr)[:2 * len(st.minima)]}")
    print(f"  agree: {ok}")
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pairs", nargs="*", default=["2,5", "3,4", "3,5", "2,7"])
    args = ap.parse_args()
    results = [check(*map(int, s.split(","))) for s in args.pairs]
    raise SystemExit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
