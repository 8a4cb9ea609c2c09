"""Named cubic graphs with documented, stable labelings.

petersen
    Outer 5-cycle on 0..4 (edge i = (i, i+1 mod 5)), spokes (edge 5+i =
    (i, 5+i)), inner pentagram (edge 10+i = (5+i, 5+(i+2 mod 5))).
    Equal to ``generalized_petersen(5, 2)``.
generalized_petersen(n, k)
    Same scheme: outer edges 0..n-1, spokes n..2n-1, inner edges 2n..3n-1.
prism(k)
    Cycles 0..k-1 (edges 0..k-1) and k..2k-1 (edges k..2k-1), spokes
    (i, k+i) with ids 2k..3k-1.
cube
    Vertices are 3-bit words, edges (v, v ^ 2^b) for v < v ^ 2^b in
    lexicographic order.
flower_snark(k)
    For i in 0..k-1: a_i = 4i, b_i = 4i+1, c_i = 4i+2, d_i = 4i+3.  Edges:
    the claws a_i b_i, a_i c_i, a_i d_i (ids 3i..3i+2), the b-cycle
    b_i b_{i+1}, then the 2k-cycle c_0 .. c_{k-1} d_0 .. d_{k-1} c_0.
k4, heawood, dodecahedron (= generalized_petersen(10, 2))
"""

from __future__ import annotations

import re
from typing import Iterable

from .errors import PreconditionError
from .graph import SignedGraph


def _make(n: int, pairs: list[tuple[int, int]], negatives: Iterable[int] = ()) -> SignedGraph:
    neg = set(negatives)
    for e in neg:
        if not 0 <= e < len(pairs):
            raise PreconditionError(f"edge id {e} out of range 0..{len(pairs) - 1}")
    return SignedGraph.build(n, [(u, v, -1 if i in neg else 1) for i, (u, v) in enumerate(pairs)])


def generalized_petersen(n: int, k: int, negatives: Iterable[int] = ()) -> SignedGraph:
    if n < 3 or not 1 <= k < n / 2:
        raise PreconditionError("generalized_petersen needs n >= 3 and 1 <= k < n/2")
    pairs = [(i, (i + 1) % n) for i in range(n)]
    pairs += [(i, n + i) for i in range(n)]
    pairs += [(n + i, n + (i + k) % n) for i in range(n)]
    return _make(2 * n, pairs, negatives)


def petersen(negatives: Iterable[int] = ()) -> SignedGraph:
    return generalized_petersen(5, 2, negatives)


def prism(k: int, negatives: Iterable[int] = ()) -> SignedGraph:
    if k < 3:
        raise PreconditionError("prism needs k >= 3")
    pairs = [(i, (i + 1) % k) for i in range(k)]
    pairs += [(k + i, k + (i + 1) % k) for i in range(k)]
    pairs += [(i, k + i) for i in range(k)]
    return _make(2 * k, pairs, negatives)


def cube(negatives: Iterable[int] = ()) -> SignedGraph:
    pairs = sorted((v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b))
    return _make(8, pairs, negatives)


def k4(negatives: Iterable[int] = ()) -> SignedGraph:
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return _make(4, pairs, negatives)


def heawood(negatives: Iterable[int] = ()) -> SignedGraph:
    pairs = [(i, (i + 1) % 14) for i in range(14)]
    pairs += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return _make(14, pairs, negatives)


def dodecahedron(negatives: Iterable[int] = ()) -> SignedGraph:
    return generalized_petersen(10, 2, negatives)


def flower_snark(k: int, negatives: Iterable[int] = ()) -> SignedGraph:
    if k < 3 or k % 2 == 0:
        raise PreconditionError("flower_snark needs an odd k >= 3")
    a = lambda i: 4 * (i % k)  # noqa: E731
    b = lambda i: 4 * (i % k) + 1  # noqa: E731
    c = lambda i: 4 * (i % k) + 2  # noqa: E731
    d = lambda i: 4 * (i % k) + 3  # noqa: E731
    pairs = []
    for i in range(k):
        pairs += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i))]
    pairs += [(b(i), b(i + 1)) for i in range(k)]
    pairs += [(c(i), c(i + 1)) for i in range(k - 1)] + [(c(k - 1), d(0))]
    pairs += [(d(i), d(i + 1)) for i in range(k - 1)] + [(d(k - 1), c(0))]
    return _make(4 * k, pairs, negatives)


_NAMED = {
    "petersen": (petersen, 0),
    "cube": (cube, 0),
    "k4": (k4, 0),
    "heawood": (heawood, 0),
    "dodecahedron": (dodecahedron, 0),
    "prism": (prism, 1),
    "flower_snark": (flower_snark, 1),
    "generalized_petersen": (generalized_petersen, 2),
}

_NAME_RE = re.compile(r"^([a-z_0-9]+?)(?:\(([\d,\s]*)\))?$")


def generator_names() -> list[str]:
    return sorted(_NAMED)


def generate(name: str, negatives: Iterable[int] = (), params: Iterable[int] = ()) -> SignedGraph:
    """Build a named graph; parameters may be inline, e.g. ``"prism(4)"``."""
    match = _NAME_RE.match(name.strip())
    if not match or match.group(1) not in _NAMED:
        raise PreconditionError(
            f"unknown generator {name!r}; choose from {', '.join(generator_names())}"
        )
    fn, arity = _NAMED[match.group(1)]
    args = list(params)
    if match.group(2):
        args = [int(x) for x in match.group(2).split(",") if x.strip()] + args
    if len(args) != arity:
        raise PreconditionError(f"{match.group(1)} takes {arity} integer parameter(s)")
    return fn(*args, negatives=negatives)
