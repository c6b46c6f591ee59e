"""Finite-dimensional Leibniz algebras given by structure constants.

A product is stored as ``c[i][j][k]`` with ``e_i o e_j = sum_k c[i][j][k] e_k``
(0-based indices).  A (1,1)-tensor ``N`` is a square matrix acting on column
coordinates, ``N(e_j) = sum_i m[i][j] e_i``.

Every identity here is multilinear, so checking it on all basis tuples is a
proof rather than a sample.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionError, PreconditionError
from .exact_poly import format_scalar, to_scalar
from .reports import CheckReport

__all__ = [
    "Vec",
    "BilinearOp",
    "OneOneTensor",
    "MultilinearMap",
    "TrilinearMap",
    "apply",
    "jacobi_defect",
    "is_leibniz",
    "contract",
    "torsion",
    "nijenhuis_torsion",
    "compatibility_defect",
    "leibniz_coboundary_on_torsion",
    "torsion_coboundary",
    "classify_tensor",
    "NIJENHUIS",
    "WEAK_NIJENHUIS",
    "NEITHER",
]

NIJENHUIS = "nijenhuis"
WEAK_NIJENHUIS = "weak_nijenhuis"
NEITHER = "neither"


class Vec:
    """An element of Q^dim."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(to_scalar(c) for c in coords)

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls._raw((Fraction(0),) * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "Vec":
        if not 0 <= i < dim:
            raise DimensionError(f"basis index {i} out of range for dimension {dim}")
        return cls._raw(tuple(Fraction(int(k == i)) for k in range(dim)))

    @classmethod
    def _raw(cls, coords: tuple) -> "Vec":
        v = cls.__new__(cls)
        v.coords = coords
        return v

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "Vec"):
        if other.dim != self.dim:
            raise DimensionError(f"vectors of dimension {self.dim} and {other.dim}")

    def __add__(self, other: "Vec") -> "Vec":
        self._check(other)
        return Vec._raw(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check(other)
        return Vec._raw(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vec":
        return Vec._raw(tuple(-a for a in self.coords))

    def __mul__(self, s) -> "Vec":
        s = to_scalar(s)
        return Vec._raw(tuple(a * s for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def to_json(self) -> list[str]:
        return [format_scalar(c) for c in self.coords]

    def __str__(self):
        return "(" + ", ".join(format_scalar(c) for c in self.coords) + ")"

    __repr__ = __str__


def _as_vec(x, dim: int) -> Vec:
    v = x if isinstance(x, Vec) else Vec(x)
    if v.dim != dim:
        raise DimensionError(f"expected a vector of dimension {dim}, got {v.dim}")
    return v


class BilinearOp:
    """Bilinear product on Q^dim with structure constants ``c[i][j][k]``."""

    __slots__ = ("dim", "c", "_table")

    def __init__(self, dim: int, c: Sequence[Sequence[Sequence]] | None = None):
        if dim < 0:
            raise DimensionError("dimension must be non-negative")
        if c is None:
            c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        if len(c) != dim or any(len(row) != dim or any(len(v) != dim for v in row) for row in c):
            raise DimensionError(f"structure constants must have shape {dim}x{dim}x{dim}")
        self.dim = dim
        self.c = tuple(tuple(tuple(to_scalar(x) for x in v) for v in row) for row in c)
        self._table = [[Vec._raw(self.c[i][j]) for j in range(dim)] for i in range(dim)]

    @classmethod
    def from_products(cls, dim: int, products: dict, skew: bool = False) -> "BilinearOp":
        """Build from ``{(i, j): {k: coeff}}`` (0-based); ``skew`` adds ``e_j o e_i = -e_i o e_j``."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in products.items():
            for k, v in out.items():
                c[i][j][k] += to_scalar(v)
                if skew:
                    c[j][i][k] -= to_scalar(v)
        return cls(dim, c)

    @classmethod
    def abelian(cls, dim: int) -> "BilinearOp":
        return cls(dim)

    def basis_product(self, i: int, j: int) -> Vec:
        return self._table[i][j]

    def __call__(self, x: Vec, y: Vec) -> Vec:
        return apply(self, x, y)

    def __add__(self, other: "BilinearOp") -> "BilinearOp":
        if other.dim != self.dim:
            raise DimensionError("products on spaces of different dimension")
        return BilinearOp(self.dim, [[[a + b for a, b in zip(u, v)] for u, v in zip(r, s)]
                                     for r, s in zip(self.c, other.c)])

    def scale(self, s) -> "BilinearOp":
        s = to_scalar(s)
        return BilinearOp(self.dim, [[[a * s for a in v] for v in row] for row in self.c])

    def change_basis(self, p: Sequence[Sequence]) -> "BilinearOp":
        """Structure constants in the basis given by the columns of ``p``."""
        p = [[to_scalar(x) for x in row] for row in p]
        pinv = linalg.inverse(p)
        cols = [Vec(col) for col in linalg.transpose(p)]
        c = [[linalg.matvec(pinv, apply(self, cols[i], cols[j]).coords) for j in range(self.dim)]
             for i in range(self.dim)]
        return BilinearOp(self.dim, c)

    def is_skew(self) -> bool:
        return all(self.c[i][j][k] == -self.c[j][i][k]
                   for i in range(self.dim) for j in range(self.dim) for k in range(self.dim))

    def __eq__(self, other):
        if not isinstance(other, BilinearOp):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "c": [[[format_scalar(x) for x in v] for v in row] for row in self.c]}

    def __repr__(self):
        nz = {(i, j): self._table[i][j] for i in range(self.dim) for j in range(self.dim)
              if not self._table[i][j].is_zero()}
        return f"BilinearOp(dim={self.dim}, nonzero={nz})"


class OneOneTensor:
    """Linear endomorphism of Q^dim; column ``j`` of ``m`` is ``N(e_j)``."""

    __slots__ = ("dim", "m")

    def __init__(self, dim: int, m: Sequence[Sequence]):
        if len(m) != dim or any(len(row) != dim for row in m):
            raise DimensionError(f"tensor matrix must be {dim}x{dim}")
        self.dim = dim
        self.m = tuple(tuple(to_scalar(x) for x in row) for row in m)

    @classmethod
    def identity(cls, dim: int, scale=1) -> "OneOneTensor":
        return cls(dim, linalg.identity(dim, scale))

    @classmethod
    def zero(cls, dim: int) -> "OneOneTensor":
        return cls(dim, linalg.zeros(dim))

    @classmethod
    def diag(cls, *entries) -> "OneOneTensor":
        n = len(entries)
        return cls(n, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __call__(self, x: Vec) -> Vec:
        x = _as_vec(x, self.dim)
        return Vec._raw(tuple(linalg.matvec(self.m, x.coords)))

    def matrix(self) -> list[list[Fraction]]:
        return [list(r) for r in self.m]

    def __matmul__(self, other: "OneOneTensor") -> "OneOneTensor":
        return OneOneTensor(self.dim, linalg.matmul(self.m, other.m))

    def __add__(self, other: "OneOneTensor") -> "OneOneTensor":
        return OneOneTensor(self.dim, linalg.madd(self.m, other.m))

    def __sub__(self, other: "OneOneTensor") -> "OneOneTensor":
        return OneOneTensor(self.dim, linalg.madd(self.m, other.m, -1))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "OneOneTensor":
        s = to_scalar(s)
        return OneOneTensor(self.dim, [[x * s for x in row] for row in self.m])

    def transpose(self) -> "OneOneTensor":
        return OneOneTensor(self.dim, linalg.transpose(self.m))

    def scalar_value(self) -> Fraction | None:
        """``lam`` when this tensor is ``lam * I``."""
        return linalg.scalar_multiple_of_identity(self.m)

    def __eq__(self, other):
        if not isinstance(other, OneOneTensor):
            return NotImplemented
        return self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def to_json(self) -> dict:
        return {"dim": self.dim, "m": [[format_scalar(x) for x in row] for row in self.m]}

    def __repr__(self):
        rows = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.m)
        return f"OneOneTensor([{rows}])"


class MultilinearMap:
    """A multilinear map (Q^dim)^arity -> Q^dim stored by its values on basis tuples."""

    def __init__(self, dim: int, arity: int, values: dict[tuple[int, ...], Vec]):
        self.dim = dim
        self.arity = arity
        self.values = values

    def __getitem__(self, idx: tuple[int, ...]) -> Vec:
        return self.values[idx]

    def __call__(self, *args: Vec) -> Vec:
        if len(args) != self.arity:
            raise DimensionError(f"expected {self.arity} arguments")
        args = [_as_vec(a, self.dim) for a in args]
        supports = [[(i, c) for i, c in enumerate(a.coords) if c] for a in args]
        acc = [Fraction(0)] * self.dim
        for combo in itertools.product(*supports):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            v = self.values[tuple(i for i, _ in combo)]
            for k, x in enumerate(v.coords):
                if x:
                    acc[k] += coeff * x
        return Vec._raw(tuple(acc))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def first_nonzero(self) -> tuple[tuple[int, ...], Vec] | None:
        for idx in sorted(self.values):
            if not self.values[idx].is_zero():
                return idx, self.values[idx]
        return None

    def __eq__(self, other):
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        return (self.dim, self.arity, self.values) == (other.dim, other.arity, other.values)


TrilinearMap = MultilinearMap


def _check_dims(op: BilinearOp, *items):
    for it in items:
        d = it.dim
        if d != op.dim:
            raise DimensionError(f"dimension {d} does not match the product's dimension {op.dim}")


def apply(op: BilinearOp, x: Vec, y: Vec) -> Vec:
    """Bilinear evaluation ``x o y``."""
    x = _as_vec(x, op.dim)
    y = _as_vec(y, op.dim)
    acc = [Fraction(0)] * op.dim
    c = op.c
    for i, xi in enumerate(x.coords):
        if not xi:
            continue
        ci = c[i]
        for j, yj in enumerate(y.coords):
            if not yj:
                continue
            s = xi * yj
            for k, ck in enumerate(ci[j]):
                if ck:
                    acc[k] += s * ck
    return Vec._raw(tuple(acc))


def jacobi_defect(op: BilinearOp, x: Vec, y: Vec, z: Vec) -> Vec:
    """``(x o y) o z - x o (y o z) + y o (x o z)``; zero iff the Leibniz identity holds here."""
    return apply(op, apply(op, x, y), z) - apply(op, x, apply(op, y, z)) + apply(op, y, apply(op, x, z))


def _basis(dim: int) -> list[Vec]:
    return [Vec.basis(dim, i) for i in range(dim)]


def is_leibniz(op: BilinearOp) -> CheckReport:
    """Exhaustive Leibniz (left Jacobi) check over all basis triples."""
    e = _basis(op.dim)
    for i, j, k in itertools.product(range(op.dim), repeat=3):
        d = jacobi_defect(op, e[i], e[j], e[k])
        if not d.is_zero():
            lhs = apply(op, apply(op, e[i], e[j]), e[k])
            rhs = apply(op, e[i], apply(op, e[j], e[k])) - apply(op, e[j], apply(op, e[i], e[k]))
            return CheckReport.failed(
                "leibniz", f"Jacobi identity fails on basis triple {(i, j, k)}",
                {"triple": (i, j, k), "lhs": lhs, "rhs": rhs, "defect": d},
            )
    return CheckReport.ok("leibniz", f"Jacobi identity holds on all {op.dim ** 3} basis triples")


def contract(op: BilinearOp, n: OneOneTensor) -> BilinearOp:
    """Structure constants of ``x o_N y = Nx o y + x o Ny - N(x o y)``."""
    _check_dims(op, n)
    return _contract(op, n)


@functools.lru_cache(maxsize=256)
def _contract(op: BilinearOp, n: OneOneTensor) -> BilinearOp:
    # pointwise identities call this once per triple
    e = _basis(op.dim)
    ne = [n(v) for v in e]
    c = [[(apply(op, ne[i], e[j]) + apply(op, e[i], ne[j]) - n(op.basis_product(i, j))).coords
          for j in range(op.dim)] for i in range(op.dim)]
    return BilinearOp(op.dim, c)


def torsion(op: BilinearOp, n: OneOneTensor, x: Vec, y: Vec) -> Vec:
    """``T_N(x, y) = Nx o Ny - N(x o_N y)`` evaluated directly."""
    _check_dims(op, n)
    nx, ny = n(x), n(y)
    contracted = apply(op, nx, y) + apply(op, x, ny) - n(apply(op, x, y))
    return apply(op, nx, ny) - n(contracted)


def nijenhuis_torsion(op: BilinearOp, n: OneOneTensor) -> MultilinearMap:
    """Table of ``T_N(e_i, e_j)`` for all basis pairs."""
    e = _basis(op.dim)
    values = {(i, j): torsion(op, n, e[i], e[j])
              for i in range(op.dim) for j in range(op.dim)}
    return MultilinearMap(op.dim, 2, values)


def compatibility_defect(op: BilinearOp, n: OneOneTensor, x: Vec, y: Vec, z: Vec) -> Vec:
    """Six-term mixed Jacobi expression of ``o`` and ``o_N``; vanishes when ``o`` is Leibniz."""
    on = contract(op, n)
    a = lambda u, v: apply(op, u, v)  # noqa: E731
    b = lambda u, v: apply(on, u, v)  # noqa: E731
    return (a(b(x, y), z) - b(x, a(y, z)) + b(y, a(x, z))
            + b(a(x, y), z) - a(x, b(y, z)) + a(y, b(x, z)))


def _coboundary(op: BilinearOp, t, x: Vec, y: Vec, z: Vec) -> Vec:
    a = lambda u, v: apply(op, u, v)  # noqa: E731
    return (t(x, a(y, z)) - t(a(x, y), z) - t(y, a(x, z))
            - a(t(x, y), z) + a(x, t(y, z)) - a(y, t(x, z)))


def leibniz_coboundary_on_torsion(op: BilinearOp, n: OneOneTensor, x: Vec, y: Vec, z: Vec) -> Vec:
    """``(delta T_N)(x, y, z)`` for the Leibniz 2-cochain ``T_N``."""
    _check_dims(op, n)
    x, y, z = (_as_vec(v, op.dim) for v in (x, y, z))
    t = _torsion_table(op, n)
    return _coboundary(op, t, x, y, z)


@functools.lru_cache(maxsize=256)
def _torsion_table(op: BilinearOp, n: OneOneTensor) -> MultilinearMap:
    return nijenhuis_torsion(op, n)


def torsion_coboundary(op: BilinearOp, n: OneOneTensor) -> MultilinearMap:
    t = nijenhuis_torsion(op, n)
    e = _basis(op.dim)
    values = {(i, j, k): _coboundary(op, t, e[i], e[j], e[k])
              for i, j, k in itertools.product(range(op.dim), repeat=3)}
    return MultilinearMap(op.dim, 3, values)


def classify_tensor(op: BilinearOp, n: OneOneTensor) -> tuple[str, CheckReport]:
    """Nijenhuis (zero torsion), weak Nijenhuis (torsion is a 2-cocycle) or neither."""
    _check_dims(op, n)
    leib = is_leibniz(op)
    if not leib.passed:
        raise PreconditionError(f"product is not Leibniz: {leib.certificate}")
    t = nijenhuis_torsion(op, n)
    hit = t.first_nonzero()
    if hit is None:
        return NIJENHUIS, CheckReport.ok(
            "classify_tensor", f"torsion vanishes on all {op.dim ** 2} basis pairs",
            classification=NIJENHUIS)
    torsion_witness = {"pair": hit[0], "torsion": hit[1]}
    dt = torsion_coboundary(op, n)
    bad = dt.first_nonzero()
    if bad is None:
        return WEAK_NIJENHUIS, CheckReport.ok(
            "classify_tensor",
            f"torsion nonzero at {hit[0]} but its coboundary vanishes on all {op.dim ** 3} basis triples",
            classification=WEAK_NIJENHUIS, torsion_witness=torsion_witness)
    return NEITHER, CheckReport.failed(
        "classify_tensor", f"coboundary of the torsion is nonzero on basis triple {bad[0]}",
        {"triple": bad[0], "coboundary": bad[1], **torsion_witness},
        classification=NEITHER)
