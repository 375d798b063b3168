"""Seeded random inputs: star-shaped plumbings, tau sequences, monodromy words."""

from __future__ import annotations

import random

from .cobordism import Chain, Letter, MonodromyWord, Opaque
from .plumbing import PlumbingGraph, ar_certificate, build_graph, is_negative_definite


def random_star_graph(rng: random.Random, max_legs: int = 3, max_leg_length: int = 3,
                      max_weight: int = 7,
                      center_weights: tuple[int, ...] = (-1, -1, -1, -2, -3)) -> PlumbingGraph:
    """Star-shaped tree; leg weights in [-max_weight, -2], center drawn from
    ``center_weights`` (the -1 bias keeps non-rational graphs common)."""
    n_legs = rng.choice(list(range(1, max_legs + 1)) + [max_legs] * 2)
    weights = [rng.choice(center_weights)]
    edges = []
    for _ in range(n_legs):
        prev = 0
        for _ in range(rng.randint(1, max_leg_length)):
            weights.append(rng.randint(-max_weight, -2))
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return build_graph(weights, edges)


def ar_star_graphs(seed: int, count: int, **kwargs) -> list[PlumbingGraph]:
    """``count`` distinct negative-definite star graphs that are AR at the center."""
    rng = random.Random(seed)
    out: list[PlumbingGraph] = []
    seen = set()
    while len(out) < count:
        g = random_star_graph(rng, **kwargs)
        if g in seen or not is_negative_definite(g):
            continue
        seen.add(g)
        if g.base in ar_certificate(g):
            out.append(g)
    return out


def random_tau(rng: random.Random, length: int, step: int = 2) -> tuple[int, ...]:
    """Integer walk starting at 0 whose last value is its strict maximum."""
    tau = [0]
    for _ in range(length - 1):
        tau.append(tau[-1] + rng.randint(-step, step))
    tau.append(max(tau) + rng.randint(1, step))
    return tuple(tau)


def random_chain_word(rng: random.Random, g: int, length: int) -> MonodromyWord:
    return MonodromyWord(g, tuple(
        Letter(Chain(rng.randint(1, 2 * g)), rng.choice((1, -1))) for _ in range(length)))


def random_word(rng: random.Random, g: int, length: int, opaque_rate: float = 0.2) -> MonodromyWord:
    letters = []
    for _ in range(length):
        curve = (Opaque(f"c{rng.randint(1, 5)}") if rng.random() < opaque_rate
                 else Chain(rng.randint(1, 2 * g)))
        letters.append(Letter(curve, rng.choice((1, -1))))
    return MonodromyWord(g, tuple(letters))
