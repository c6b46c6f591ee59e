"""Small library of verified algebras, tensors and deterministic searches.

Everything here is a fixture: the tests re-verify each entry rather than
trusting this module.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from . import linalg
from .core_algebra import BilinearOp, OneOneTensor, classify_tensor, NEITHER, NIJENHUIS, WEAK_NIJENHUIS
from .courant_fd import CourantStructure, LieBialgebra, drinfeld_double

__all__ = [
    "abelian",
    "ax_plus_b",
    "heisenberg",
    "sl2",
    "so3",
    "non_lie_leibniz",
    "non_lie_leibniz_3",
    "direct_sum",
    "leibniz_library",
    "axb_bialgebra",
    "axb_double",
    "corrupted_axb_bialgebra",
    "incompatible_heisenberg_bialgebra",
    "random_leibniz",
    "random_tensor",
    "sparse_tensors",
    "find_tensor",
]


def abelian(dim: int) -> BilinearOp:
    return BilinearOp.abelian(dim)


def ax_plus_b() -> BilinearOp:
    """``[e1, e2] = e2``."""
    return BilinearOp.from_products(2, {(0, 1): {1: 1}}, skew=True)


def heisenberg() -> BilinearOp:
    """``[e1, e2] = e3``."""
    return BilinearOp.from_products(3, {(0, 1): {2: 1}}, skew=True)


def sl2() -> BilinearOp:
    """Basis ``h, e, f`` with ``[h,e] = 2e``, ``[h,f] = -2f``, ``[e,f] = h``."""
    return BilinearOp.from_products(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, skew=True)


def so3() -> BilinearOp:
    return BilinearOp.from_products(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}, skew=True)


def non_lie_leibniz() -> BilinearOp:
    """``e1 o e1 = e2``, all other products zero: Leibniz but not skew."""
    return BilinearOp.from_products(2, {(0, 0): {1: 1}})


def non_lie_leibniz_3() -> BilinearOp:
    """``e1 o e1 = e3``, ``e2 o e2 = e3``: a 3-dim Leibniz algebra that is not Lie."""
    return BilinearOp.from_products(3, {(0, 0): {2: 1}, (1, 1): {2: 1}})


def direct_sum(a: BilinearOp, b: BilinearOp) -> BilinearOp:
    d = a.dim + b.dim
    c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        c[i][j][k] = a.c[i][j][k]
    o = a.dim
    for i, j, k in itertools.product(range(b.dim), repeat=3):
        c[o + i][o + j][o + k] = b.c[i][j][k]
    return BilinearOp(d, c)


def leibniz_library() -> dict[int, list[tuple[str, BilinearOp]]]:
    """Named Leibniz algebras of dimensions 2, 3 and 4."""
    return {
        2: [("abelian2", abelian(2)), ("ax+b", ax_plus_b()), ("nonlie2", non_lie_leibniz())],
        3: [("heisenberg", heisenberg()), ("sl2", sl2()), ("so3", so3()),
            ("nonlie3", non_lie_leibniz_3()), ("ax+b+R", direct_sum(ax_plus_b(), abelian(1)))],
        4: [("axb_double", axb_double().op), ("ax+b+ax+b", direct_sum(ax_plus_b(), ax_plus_b())),
            ("heisenberg+R", direct_sum(heisenberg(), abelian(1))),
            ("nonlie2+ax+b", direct_sum(non_lie_leibniz(), ax_plus_b()))],
    }


def axb_bialgebra() -> LieBialgebra:
    return LieBialgebra(2, ax_plus_b(), abelian(2))


def axb_double() -> CourantStructure:
    """Double of the ax+b Lie algebra with the zero cobracket."""
    return drinfeld_double(axb_bialgebra())


def corrupted_axb_bialgebra() -> LieBialgebra:
    """ax+b with the non-skew dual product ``eps2 o eps2 = eps2``; its double is not Leibniz.

    Every skew dual bracket on 2-dim ax+b gives a valid double, so the
    corruption has to break skew-symmetry.
    """
    return LieBialgebra(2, ax_plus_b(), BilinearOp.from_products(2, {(1, 1): {1: 1}}))


def incompatible_heisenberg_bialgebra() -> LieBialgebra:
    """Heisenberg algebra with the Lie dual bracket ``[eps1, eps2] = eps1``: both Lie, not a bialgebra."""
    return LieBialgebra(3, heisenberg(), BilinearOp.from_products(3, {(0, 1): {0: 1}}, skew=True))


def _random_invertible(rng: random.Random, dim: int, bound: int = 2) -> list[list[int]]:
    while True:
        p = [[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim)]
        if linalg.determinant(p) != 0:
            return p


def random_leibniz(rng: random.Random, dim: int) -> tuple[str, BilinearOp]:
    """A library algebra of the given dimension in a random integer basis."""
    name, op = rng.choice(leibniz_library()[dim])
    return name, op.change_basis(_random_invertible(rng, dim))


def random_tensor(rng: random.Random, dim: int, bound: int = 2) -> OneOneTensor:
    return OneOneTensor(dim, [[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim)])


def sparse_tensors(dim: int, max_entries: int = 2, values=(1, -1)) -> Iterator[OneOneTensor]:
    """Tensors with up to ``max_entries`` nonzero entries from ``values``, in a fixed order."""
    cells = list(itertools.product(range(dim), repeat=2))
    for k in range(1, max_entries + 1):
        for chosen in itertools.combinations(cells, k):
            for vals in itertools.product(values, repeat=k):
                m = [[0] * dim for _ in range(dim)]
                for (i, j), v in zip(chosen, vals):
                    m[i][j] = v
                yield OneOneTensor(dim, m)


def find_tensor(op: BilinearOp, kind: str, candidates=None) -> OneOneTensor | None:
    """First candidate tensor whose classification on ``op`` is ``kind``."""
    if kind not in (NIJENHUIS, WEAK_NIJENHUIS, NEITHER):
        raise ValueError(f"unknown classification {kind!r}")
    for n in candidates if candidates is not None else sparse_tensors(op.dim):
        if classify_tensor(op, n)[0] == kind:
            return n
    return None
