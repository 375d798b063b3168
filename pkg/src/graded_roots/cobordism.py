"""Word-level Stein cobordism planner for open-book monodromies.

A monodromy on the genus-``g`` surface with one boundary component is a word
in Dehn twists. The planner turns any such word into the normal form
``phi_{g,n} = (t_{a_1} ... t_{a_2g}) t_delta^n`` by inserting right-handed
twists only:

* a negative letter ``t_c^{-1}`` is cancelled by inserting ``t_c`` right before it;
* a positive letter ``t_c`` is traded for ``t_delta`` by inserting the rest of
  a cyclic rotation of the chain relation that ends in ``c`` (conjugated
  symbolically when ``c`` is not a chain curve);
* the chain ``t_{a_1} ... t_{a_2g}`` is appended, then one full chain relation
  for each extra boundary twist.

The chain relation reads ``(t_{a_1} ... t_{a_2g})^{4g+2} = t_delta``.
:func:`homology_action` checks plans on first homology.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import BadRange, NLessThanN0, OpaqueCurve, ParseError, SeparatingCurve


@dataclass(frozen=True, order=True)
class Chain:
    index: int  # 1..2g

    def __str__(self):
        return f"a{self.index}"


@dataclass(frozen=True, order=True)
class Boundary:
    def __str__(self):
        return "d"


@dataclass(frozen=True, order=True)
class Opaque:
    name: str
    nonseparating: bool = True

    def __str__(self):
        return f"X({self.name})" if self.nonseparating else f"Xs({self.name})"


Curve = Union[Chain, Boundary, Opaque]


@dataclass(frozen=True)
class Letter:
    curve: Curve
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __str__(self):
        return str(self.curve) + ("" if self.sign == 1 else "^-1")


@dataclass(frozen=True)
class MonodromyWord:
    genus: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise BadRange(f"genus must be >= 1, got {self.genus}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for lt in self.letters:
            if isinstance(lt.curve, Chain) and not 1 <= lt.curve.index <= 2 * self.genus:
                raise BadRange(f"chain curve a{lt.curve.index} outside 1..{2 * self.genus}")

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "MonodromyWord") -> "MonodromyWord":
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        return MonodromyWord(self.genus, self.letters + other.letters)

    @property
    def is_pure_chain(self) -> bool:
        return all(isinstance(lt.curve, Chain) for lt in self.letters)

    def __str__(self):
        return format_word(self)


# --- text format -------------------------------------------------------------

_TOKEN = re.compile(r"^(?:a(\d+)|d|X\(([^()\s]+)\)|Xs\(([^()\s]+)\))(?:\^(-?\d+))?$")


def parse_word(text: str) -> MonodromyWord:
    """Parse ``g=2; a1 a2^-1 X(foo) Xs(bar) d``.

    ``X(name)`` is an opaque nonseparating curve, ``Xs(name)`` an opaque
    separating one, ``d`` the boundary curve. ``^k`` repeats a letter ``|k|``
    times with the sign of ``k``.
    """
    head, sep, body = text.strip().partition(";")
    m = re.fullmatch(r"\s*g\s*=\s*(\d+)\s*", head)
    if not sep or not m:
        raise ParseError(f"expected 'g=<genus>; <letters>', got {text!r}")
    g = int(m.group(1))
    letters: list[Letter] = []
    for tok in body.split():
        t = _TOKEN.match(tok)
        if not t:
            raise ParseError(f"bad letter {tok!r}")
        idx, name, sname, power = t.groups()
        if idx is not None:
            curve: Curve = Chain(int(idx))
        elif name is not None:
            curve = Opaque(name, True)
        elif sname is not None:
            curve = Opaque(sname, False)
        else:
            curve = Boundary()
        p = 1 if power is None else int(power)
        if p == 0:
            raise ParseError(f"zero exponent in {tok!r}")
        letters.extend([Letter(curve, 1 if p > 0 else -1)] * abs(p))
    try:
        return MonodromyWord(g, tuple(letters))
    except BadRange as exc:
        raise ParseError(str(exc)) from exc


def format_word(word: MonodromyWord) -> str:
    return f"g={word.genus}; " + " ".join(str(lt) for lt in word.letters)


# --- words -------------------------------------------------------------------

def chain_word(g: int) -> MonodromyWord:
    """``t_{a_1} ... t_{a_2g}``."""
    return MonodromyWord(g, tuple(Letter(Chain(i)) for i in range(1, 2 * g + 1)))


def chain_relation_length(g: int) -> int:
    return (4 * g + 2) * 2 * g


def chain_relation_word(g: int) -> MonodromyWord:
    """``(t_{a_1} ... t_{a_2g})^{4g+2}``, which equals ``t_delta``."""
    if g < 1:
        raise BadRange(f"genus must be >= 1, got {g}")
    return MonodromyWord(g, chain_word(g).letters * (4 * g + 2))


def trade_insertion(g: int, i: int) -> MonodromyWord:
    """Positive word ``u`` with ``u t_{a_i} = t_delta``.

    A cyclic rotation of the chain relation is conjugate to ``t_delta``, hence
    equal to it (``t_delta`` is central); take the rotation ending in ``a_i``
    and drop its last letter.
    """
    full = chain_relation_word(g).letters
    # full[i-1] is a_i; rotate so that it is last
    rotated = full[i:] + full[:i]
    assert rotated[-1].curve == Chain(i)
    return MonodromyWord(g, rotated[:-1])


def phi_word(g: int, n: int) -> MonodromyWord:
    """Normal form ``(t_{a_1} ... t_{a_2g}) t_delta^n``."""
    return MonodromyWord(g, chain_word(g).letters + (Letter(Boundary()),) * n)


def target_brieskorn(g: int, n: int) -> tuple[int, int, int]:
    """Brieskorn triple whose canonical contact structure ``phi_{g,n}`` supports."""
    if g < 1 or n < 1:
        raise BadRange(f"need g, n >= 1, got g={g}, n={n}")
    return (2, 2 * g + 1, (4 * g + 2) * n + 1)


# --- planning ----------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    kind: str  # CancelNegative | TradePositive | AppendChain | AppendDelta
    position: int | None = None  # index of the letter in the input word
    count: int = 1
    twists: int = 0

    def to_dict(self) -> dict:
        out = {"type": self.kind, "twists": self.twists}
        if self.position is not None:
            out["position"] = self.position
        if self.kind == "AppendDelta":
            out["count"] = self.count
        return out


@dataclass(frozen=True)
class CobordismPlan:
    word: MonodromyWord
    n: int
    n0: int
    moves: tuple[Move, ...]

    @property
    def genus(self) -> int:
        return self.word.genus

    @property
    def total_twists(self) -> int:
        return sum(m.twists for m in self.moves)

    @property
    def target(self) -> tuple[int, int, int]:
        return target_brieskorn(self.genus, self.n)

    def normal_form(self) -> MonodromyWord:
        return phi_word(self.genus, self.n)

    def to_dict(self) -> dict:
        return {
            "input": format_word(self.word),
            "g": self.genus,
            "n": self.n,
            "n0": self.n0,
            "moves": [m.to_dict() for m in self.moves],
            "total_twists": self.total_twists,
            "target": list(self.target),
            "normal_form": format_word(self.normal_form()),
        }


def expected_twists(g: int, negatives: int, n0: int, n: int) -> int:
    L = chain_relation_length(g)
    return negatives + n0 * (L - 1) + 2 * g + (n - n0) * L


def plan_stein_cobordism(word: MonodromyWord, n: int | None = None) -> CobordismPlan:
    """Right-twist-only rewriting of ``word`` into ``phi_{g,n}``.

    Letters are processed left to right. ``n`` defaults to ``max(n0, 1)``
    where ``n0`` counts the positive letters.
    """
    g = word.genus
    L = chain_relation_length(g)
    for lt in word.letters:
        if isinstance(lt.curve, Boundary) or (isinstance(lt.curve, Opaque) and not lt.curve.nonseparating):
            raise SeparatingCurve(f"{lt.curve} is separating; planning needs nonseparating curves")
    moves: list[Move] = []
    n0 = 0
    for pos, lt in enumerate(word.letters):
        if lt.sign < 0:
            moves.append(Move("CancelNegative", pos, twists=1))
        else:
            n0 += 1
            moves.append(Move("TradePositive", pos, twists=L - 1))
    if n is None:
        n = max(n0, 1)
    if n < n0:
        raise NLessThanN0(f"n={n} is smaller than n0={n0}")
    if n < 1:
        raise BadRange("n must be >= 1")
    moves.append(Move("AppendChain", twists=2 * g))
    if n > n0:
        moves.append(Move("AppendDelta", count=n - n0, twists=(n - n0) * L))
    return CobordismPlan(word, n, n0, tuple(moves))


def _completion(plan: CobordismPlan) -> list[tuple[Letter, bool]]:
    """Letters of the carried-out plan, each flagged True if inserted."""
    word = plan.word
    if not word.is_pure_chain:
        raise OpaqueCurve("explicit completion needs chain-curve letters")
    g = word.genus
    by_pos = {m.position: m for m in plan.moves if m.position is not None}
    out: list[tuple[Letter, bool]] = []
    for pos, lt in enumerate(word.letters):
        if by_pos[pos].kind == "CancelNegative":
            out.append((Letter(lt.curve, 1), True))
        else:
            out.extend((x, True) for x in trade_insertion(g, lt.curve.index).letters)
        out.append((lt, False))
    for m in plan.moves:
        if m.kind == "AppendChain":
            out.extend((x, True) for x in chain_word(g).letters)
        elif m.kind == "AppendDelta":
            out.extend((x, True) for x in chain_relation_word(g).letters * m.count)
    return out


def completed_word(plan: CobordismPlan) -> MonodromyWord:
    """Explicit word obtained by carrying out the plan (chain-curve input only).

    Every inserted letter is a positive chain twist; the result equals
    ``phi_{g,n}`` in the mapping class group.
    """
    return MonodromyWord(plan.genus, tuple(lt for lt, _ in _completion(plan)))


def inserted_letters(plan: CobordismPlan) -> list[Letter]:
    """Letters added by the plan, in the order of :func:`completed_word`."""
    return [lt for lt, added in _completion(plan) if added]


# --- first homology ----------------------------------------------------------

Matrix = list[list[int]]


def intersection_form(g: int) -> Matrix:
    """Algebraic intersections of the chain curves: ``a_i . a_{i+1} = 1``."""
    n = 2 * g
    J = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        J[i][i + 1] = 1
        J[i + 1][i] = -1
    return J


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transvection(g: int, i: int, sign: int = 1) -> Matrix:
    """Matrix of ``x -> x + sign <x, a_i> a_i`` in the chain basis."""
    J = intersection_form(g)
    n = 2 * g
    c = [int(j == i - 1) for j in range(n)]
    Jc = [sum(J[r][s] * c[s] for s in range(n)) for r in range(n)]
    # <x, c> = x^T J c
    return [[int(r == s) + sign * c[r] * Jc[s] for s in range(n)] for r in range(n)]


def homology_action(word: MonodromyWord) -> Matrix:
    """Action on ``H_1`` of the surface, composing letters left to right."""
    g = word.genus
    out = _identity(2 * g)
    for lt in word.letters:
        if isinstance(lt.curve, Opaque):
            raise OpaqueCurve(f"homology class of {lt.curve} is unknown")
        if isinstance(lt.curve, Boundary):
            continue
        out = _matmul(out, transvection(g, lt.curve.index, lt.sign))
    return out


def is_symplectic(A: Matrix, g: int) -> bool:
    J = intersection_form(g)
    At = [list(r) for r in zip(*A)]
    return _matmul(_matmul(At, J), A) == J


def pairwise_coprime(triple) -> bool:
    a, b, c = triple
    return math.gcd(a, b) == math.gcd(a, c) == math.gcd(b, c) == 1
