"""Cartan calculus on R^n with polynomial coefficients.

Conventions, fixed once:

* a k-form is stored by its components ``w_I = w(d_{i1}, ..., d_{ik})`` on
  strictly increasing index tuples ``I``; wedge uses the determinant
  convention (no factorial factors);
* interior products contract the first slot;
* the Lie derivative of forms is defined by the Cartan formula
  ``L_X = i_X d + d i_X``;
* a bivector ``P`` acts on 1-forms through its first slot,
  ``(P xi)^j = sum_i P^{ij} xi_i``; a 2-form acts on vector fields the same way,
  ``(W X)_j = sum_i X^i W_{ij}``.

All indices are 0-based in code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DegreeError, DimensionError
from .exact_poly import MultiPoly, to_scalar
from .reports import CheckReport

__all__ = [
    "PolyVectorField",
    "PolyForm",
    "PolyBivector",
    "PolyOneOne",
    "lie_bracket",
    "exterior_derivative",
    "interior_product",
    "lie_derivative",
    "wedge",
    "pair",
    "contracted_bracket",
    "nijenhuis_torsion_vf",
    "i_derivation",
    "d_n0",
    "poisson_bracket",
    "schouten_square",
    "is_poisson",
    "apply_function",
]


def _poly(n: int, value) -> MultiPoly:
    if isinstance(value, MultiPoly):
        if value.nvars != n:
            raise DimensionError(f"polynomial in {value.nvars} variables, expected {n}")
        return value
    if isinstance(value, str):
        return MultiPoly.parse(value, n)
    return MultiPoly.constant(n, to_scalar(value))


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class PolyVectorField:
    """``X = sum_i X^i d_i`` with polynomial components."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Sequence):
        if len(components) != n:
            raise DimensionError(f"vector field on R^{n} needs {n} components")
        self.n = n
        self.components = tuple(_poly(n, c) for c in components)

    @classmethod
    def zero(cls, n: int) -> "PolyVectorField":
        return cls(n, [MultiPoly.zero(n)] * n)

    @classmethod
    def coordinate(cls, n: int, i: int, coeff: MultiPoly | None = None) -> "PolyVectorField":
        """``coeff * d_i`` (``d_i`` itself by default)."""
        comps = [MultiPoly.zero(n)] * n
        comps[i] = coeff if coeff is not None else MultiPoly.constant(n, 1)
        return cls(n, comps)

    def __getitem__(self, i) -> MultiPoly:
        return self.components[i]

    def _check(self, other):
        if other.n != self.n:
            raise DimensionError(f"fields on R^{self.n} and R^{other.n}")

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(self.n, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(self.n, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return PolyVectorField(self.n, [-a for a in self.components])

    def __mul__(self, f) -> "PolyVectorField":
        f = _poly(self.n, f) if not isinstance(f, (int, Fraction)) else f
        return PolyVectorField(self.n, [a * f for a in self.components])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def to_json(self) -> dict:
        return {"n": self.n, "type": "vector", "components": [str(c) for c in self.components]}

    def __str__(self):
        parts = [f"({c})*d{i + 1}" for i, c in enumerate(self.components) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class PolyForm:
    """A k-form ``sum_I w_I dx^I`` over strictly increasing ``I``."""

    __slots__ = ("n", "degree", "components")

    def __init__(self, n: int, degree: int, components: Mapping | None = None):
        if degree < 0:
            raise DegreeError("negative degree")
        self.n = n
        self.degree = degree
        comps: dict[tuple[int, ...], MultiPoly] = {}
        for idx, val in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < n for i in idx):
                raise DimensionError(f"bad index {idx} for a {degree}-form on R^{n}")
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            p = _poly(n, val)
            acc = comps.get(key, MultiPoly.zero(n)) + (p if sign > 0 else -p)
            if acc:
                comps[key] = acc
            else:
                comps.pop(key, None)
        self.components = comps

    @classmethod
    def _raw(cls, n: int, degree: int, comps: dict) -> "PolyForm":
        obj = cls.__new__(cls)
        obj.n, obj.degree = n, degree
        obj.components = {k: v for k, v in comps.items() if v}
        return obj

    @classmethod
    def zero(cls, n: int, degree: int) -> "PolyForm":
        return cls._raw(n, degree, {})

    @classmethod
    def function(cls, f: MultiPoly) -> "PolyForm":
        return cls._raw(f.nvars, 0, {(): f})

    @classmethod
    def one_form(cls, n: int, components: Sequence) -> "PolyForm":
        return cls(n, 1, {(i,): c for i, c in enumerate(components)})

    @classmethod
    def coordinate(cls, n: int, idx: Sequence[int], coeff: MultiPoly | None = None) -> "PolyForm":
        """``coeff * dx^{i1} ^ ... ^ dx^{ik}``."""
        return cls(n, len(idx), {tuple(idx): coeff if coeff is not None else MultiPoly.constant(n, 1)})

    def component(self, idx: Sequence[int]) -> MultiPoly:
        """``w(d_{i1}, ..., d_{ik})`` for any (not necessarily sorted) index tuple."""
        sign, key = _sort_sign(idx)
        if not sign:
            return MultiPoly.zero(self.n)
        p = self.components.get(key)
        if p is None:
            return MultiPoly.zero(self.n)
        return p if sign > 0 else -p

    def as_function(self) -> MultiPoly:
        if self.degree:
            raise DegreeError("not a 0-form")
        return self.components.get((), MultiPoly.zero(self.n))

    def one_form_components(self) -> list[MultiPoly]:
        if self.degree != 1:
            raise DegreeError("not a 1-form")
        z = MultiPoly.zero(self.n)
        return [self.components.get((i,), z) for i in range(self.n)]

    def _check(self, other: "PolyForm"):
        if other.n != self.n or other.degree != self.degree:
            raise DimensionError("forms of different degree or dimension")

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._check(other)
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = out[k] + v if k in out else v
        return PolyForm._raw(self.n, self.degree, out)

    def __neg__(self):
        return PolyForm._raw(self.n, self.degree, {k: -v for k, v in self.components.items()})

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-other)

    def __mul__(self, f) -> "PolyForm":
        if not isinstance(f, (int, Fraction)):
            f = _poly(self.n, f)
        return PolyForm._raw(self.n, self.degree, {k: v * f for k, v in self.components.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.components

    def __call__(self, *fields: PolyVectorField) -> MultiPoly:
        """Evaluate on ``k`` vector fields (determinant convention)."""
        if len(fields) != self.degree:
            raise DegreeError(f"a {self.degree}-form takes {self.degree} arguments")
        total = MultiPoly.zero(self.n)
        for idx, w in self.components.items():
            for perm in itertools.permutations(range(self.degree)):
                sign, _ = _sort_sign(perm)
                term = w
                for a, b in enumerate(perm):
                    term = term * fields[a][idx[b]]
                    if not term:
                        break
                if term:
                    total = total + (term if sign > 0 else -term)
        return total

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.n, self.degree, self.components) == (other.n, other.degree, other.components)

    def __hash__(self):
        return hash((self.n, self.degree, frozenset(self.components.items())))

    def to_json(self) -> dict:
        return {"n": self.n, "type": "form", "degree": self.degree,
                "components": {"[" + ",".join(str(i + 1) for i in k) + "]": str(v)
                               for k, v in sorted(self.components.items())}}

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for k, v in sorted(self.components.items()):
            basis = "^".join(f"dx{i + 1}" for i in k)
            parts.append(f"({v})*{basis}" if basis else f"({v})")
        return " + ".join(parts)

    __repr__ = __str__


class PolyBivector:
    """``P = sum_{i<j} P^{ij} d_i ^ d_j``."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Mapping | None = None):
        self.n = n
        comps: dict[tuple[int, int], MultiPoly] = {}
        for idx, val in (components or {}).items():
            i, j = idx
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"bad index {idx} for a bivector on R^{n}")
            if i == j:
                continue
            p = _poly(n, val)
            key, p = ((i, j), p) if i < j else ((j, i), -p)
            acc = comps.get(key, MultiPoly.zero(n)) + p
            if acc:
                comps[key] = acc
            else:
                comps.pop(key, None)
        self.components = comps

    @classmethod
    def zero(cls, n: int) -> "PolyBivector":
        return cls(n)

    def entry(self, i: int, j: int) -> MultiPoly:
        """``P^{ij} = P(dx^i, dx^j)``, skew in ``i, j``."""
        if i == j:
            return MultiPoly.zero(self.n)
        if i < j:
            return self.components.get((i, j), MultiPoly.zero(self.n))
        p = self.components.get((j, i))
        return -p if p is not None else MultiPoly.zero(self.n)

    def matrix(self) -> "PolyOneOne":
        """Matrix of the map ``xi -> P xi`` acting on 1-form components."""
        return PolyOneOne(self.n, [[self.entry(i, j) for i in range(self.n)] for j in range(self.n)])

    def sharp(self, xi: PolyForm) -> PolyVectorField:
        comps = xi.one_form_components()
        n = self.n
        out = []
        for j in range(n):
            acc = MultiPoly.zero(n)
            for i in range(n):
                if comps[i]:
                    e = self.entry(i, j)
                    if e:
                        acc = acc + e * comps[i]
            out.append(acc)
        return PolyVectorField(n, out)

    def __call__(self, alpha: PolyForm, beta: PolyForm) -> MultiPoly:
        a, b = alpha.one_form_components(), beta.one_form_components()
        total = MultiPoly.zero(self.n)
        for (i, j), p in self.components.items():
            total = total + p * (a[i] * b[j] - a[j] * b[i])
        return total

    def __eq__(self, other):
        if not isinstance(other, PolyBivector):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash((self.n, frozenset(self.components.items())))

    def to_json(self) -> dict:
        return {"n": self.n, "type": "bivector",
                "components": {f"[{i + 1},{j + 1}]": str(v)
                               for (i, j), v in sorted(self.components.items())}}

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({v})*d{i + 1}^d{j + 1}" for (i, j), v in sorted(self.components.items()))

    __repr__ = __str__


class PolyOneOne:
    """``n x n`` polynomial matrix acting on component columns: ``(N X)^i = sum_j m[i][j] X^j``."""

    __slots__ = ("n", "m")

    def __init__(self, n: int, m: Sequence[Sequence]):
        if len(m) != n or any(len(row) != n for row in m):
            raise DimensionError(f"matrix must be {n}x{n}")
        self.n = n
        self.m = tuple(tuple(_poly(n, x) for x in row) for row in m)

    @classmethod
    def identity(cls, n: int, scale=1) -> "PolyOneOne":
        return cls(n, [[scale if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "PolyOneOne":
        return cls(n, [[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, *entries, n: int | None = None) -> "PolyOneOne":
        n = n or len(entries)
        return cls(n, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def _mv(self, comps: Sequence[MultiPoly]) -> list[MultiPoly]:
        out = []
        for row in self.m:
            acc = MultiPoly.zero(self.n)
            for a, x in zip(row, comps):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __call__(self, x: PolyVectorField) -> PolyVectorField:
        return PolyVectorField(self.n, self._mv(x.components))

    def apply_components(self, comps: Sequence[MultiPoly]) -> list[MultiPoly]:
        return self._mv(comps)

    def transpose(self) -> "PolyOneOne":
        return PolyOneOne(self.n, [list(c) for c in zip(*self.m)])

    def dual(self, xi: PolyForm) -> PolyForm:
        """``tN xi``, defined by ``<X, tN xi> = <N X, xi>``."""
        return PolyForm.one_form(self.n, self.transpose()._mv(xi.one_form_components()))

    def __matmul__(self, other: "PolyOneOne") -> "PolyOneOne":
        cols = list(zip(*other.m))
        return PolyOneOne(self.n, [self._mv(col) for col in cols]).transpose()

    def __add__(self, other: "PolyOneOne") -> "PolyOneOne":
        return PolyOneOne(self.n, [[a + b for a, b in zip(r, s)] for r, s in zip(self.m, other.m)])

    def __sub__(self, other: "PolyOneOne") -> "PolyOneOne":
        return PolyOneOne(self.n, [[a - b for a, b in zip(r, s)] for r, s in zip(self.m, other.m)])

    def __neg__(self):
        return PolyOneOne(self.n, [[-a for a in r] for r in self.m])

    def scale(self, s) -> "PolyOneOne":
        return PolyOneOne(self.n, [[a * to_scalar(s) for a in r] for r in self.m])

    def is_zero(self) -> bool:
        return all(not a for r in self.m for a in r)

    def scalar_value(self) -> Fraction | None:
        """``lam`` when the matrix is the constant ``lam * I``."""
        lam = self.m[0][0] if self.n else MultiPoly.zero(0)
        if not lam.is_constant():
            return None
        for i in range(self.n):
            for j in range(self.n):
                if self.m[i][j] != (lam if i == j else 0):
                    return None
        return lam.constant_value() if self.n else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, PolyOneOne):
            return NotImplemented
        return self.n == other.n and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def to_json(self) -> dict:
        return {"n": self.n, "type": "oneone", "m": [[str(a) for a in r] for r in self.m]}

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.m) + "]"

    __repr__ = __str__


def apply_function(x: PolyVectorField, f: MultiPoly) -> MultiPoly:
    """Directional derivative ``X(f)``."""
    acc = MultiPoly.zero(x.n)
    for i, xi in enumerate(x.components):
        if xi:
            df = f.diff(i)
            if df:
                acc = acc + xi * df
    return acc


def pair(x: PolyVectorField, xi: PolyForm) -> MultiPoly:
    """``<X, xi> = xi(X)`` for a 1-form."""
    acc = MultiPoly.zero(x.n)
    for a, b in zip(x.components, xi.one_form_components()):
        if a and b:
            acc = acc + a * b
    return acc


def lie_bracket(x: PolyVectorField, y: PolyVectorField) -> PolyVectorField:
    """``[X, Y]^i = sum_j X^j d_j Y^i - Y^j d_j X^i``."""
    if x.n != y.n:
        raise DimensionError(f"fields on R^{x.n} and R^{y.n}")
    return PolyVectorField(x.n, [apply_function(x, y[i]) - apply_function(y, x[i]) for i in range(x.n)])


def exterior_derivative(w: PolyForm) -> PolyForm:
    n, k = w.n, w.degree
    out: dict[tuple[int, ...], MultiPoly] = {}
    for idx, p in w.components.items():
        for j in range(n):
            if j in idx:
                continue
            dp = p.diff(j)
            if not dp:
                continue
            # dx^j ^ dx^I: position of j in the merged index
            pos = sum(1 for i in idx if i < j)
            key = idx[:pos] + (j,) + idx[pos:]
            term = dp if pos % 2 == 0 else -dp
            out[key] = out[key] + term if key in out else term
    return PolyForm._raw(n, k + 1, out)


def interior_product(x: PolyVectorField, w: PolyForm) -> PolyForm:
    """``i_X w``, contracting the first slot."""
    if w.degree == 0:
        raise DegreeError("interior product of a 0-form")
    if x.n != w.n:
        raise DimensionError("field and form on different R^n")
    out: dict[tuple[int, ...], MultiPoly] = {}
    for idx, p in w.components.items():
        for pos, a in enumerate(idx):
            xa = x[a]
            if not xa:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = xa * p
            if pos % 2:
                term = -term
            out[rest] = out[rest] + term if rest in out else term
    return PolyForm._raw(w.n, w.degree - 1, out)


def lie_derivative(x: PolyVectorField, w: PolyForm) -> PolyForm:
    """``L_X w = i_X dw + d i_X w``."""
    first = interior_product(x, exterior_derivative(w))
    if w.degree == 0:
        return first
    return first + exterior_derivative(interior_product(x, w))


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    if a.n != b.n:
        raise DimensionError("forms on different R^n")
    out: dict[tuple[int, ...], MultiPoly] = {}
    for i, p in a.components.items():
        for j, q in b.components.items():
            sign, key = _sort_sign(i + j)
            if not sign:
                continue
            term = p * q
            if sign < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return PolyForm._raw(a.n, a.degree + b.degree, out)


def contracted_bracket(n0: PolyOneOne, x: PolyVectorField, y: PolyVectorField) -> PolyVectorField:
    """``[X, Y]_N = [NX, Y] + [X, NY] - N[X, Y]``."""
    return lie_bracket(n0(x), y) + lie_bracket(x, n0(y)) - n0(lie_bracket(x, y))


def nijenhuis_torsion_vf(n0: PolyOneOne, x: PolyVectorField, y: PolyVectorField) -> PolyVectorField:
    if n0.n != x.n or x.n != y.n:
        raise DimensionError("tensor and fields on different R^n")
    return lie_bracket(n0(x), n0(y)) - n0(contracted_bracket(n0, x, y))


def i_derivation(n0: PolyOneOne, w: PolyForm) -> PolyForm:
    """Degree-0 derivation ``(i_N w)(X1..Xk) = sum_s w(X1, .., N Xs, .., Xk)``."""
    n, k = w.n, w.degree
    if k == 0:
        return PolyForm.zero(n, 0)
    out: dict[tuple[int, ...], MultiPoly] = {}
    for idx in itertools.combinations(range(n), k):
        acc = MultiPoly.zero(n)
        for s in range(k):
            col = idx[s]
            for i in range(n):
                coeff = n0.m[i][col]
                if not coeff:
                    continue
                val = w.component(idx[:s] + (i,) + idx[s + 1:])
                if val:
                    acc = acc + coeff * val
        if acc:
            out[idx] = acc
    return PolyForm._raw(n, k, out)


def d_n0(n0: PolyOneOne, w: PolyForm) -> PolyForm:
    """``d^N = i_N d - d i_N``."""
    return i_derivation(n0, exterior_derivative(w)) - exterior_derivative(i_derivation(n0, w))


def poisson_bracket(p: PolyBivector, f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """``{f, g} = P(df, dg)``."""
    n = p.n
    total = MultiPoly.zero(n)
    for (i, j), c in p.components.items():
        term = f.diff(i) * g.diff(j) - f.diff(j) * g.diff(i)
        if term:
            total = total + c * term
    return total


def _jacobiator(p: PolyBivector, f, g, h) -> MultiPoly:
    pb = lambda a, b: poisson_bracket(p, a, b)  # noqa: E731
    return pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g))


def schouten_square(p: PolyBivector) -> dict[tuple[int, int, int], MultiPoly]:
    """Jacobiator of ``{f, g} = P(df, dg)`` on coordinate triples ``i < j < k``.

    The Jacobiator of a skew biderivation is a triderivation, so these values
    determine it completely (they are the components of ``[P, P]`` up to a
    convention-dependent factor).
    """
    n = p.n
    xs = [MultiPoly.variable(n, i) for i in range(n)]
    out = {}
    for i, j, k in itertools.combinations(range(n), 3):
        v = _jacobiator(p, xs[i], xs[j], xs[k])
        if v:
            out[(i, j, k)] = v
    return out


def is_poisson(p: PolyBivector, extra: Iterable[MultiPoly] = ()) -> CheckReport:
    """Poisson check via the Jacobiator on coordinates, plus any extra polynomial triples."""
    sq = schouten_square(p)
    if sq:
        idx = min(sq)
        n = p.n
        xs = [MultiPoly.variable(n, i) for i in idx]
        return CheckReport.failed("poisson", "Jacobi identity of the bracket fails",
                                  {"functions": xs, "jacobiator": sq[idx]})
    extra = list(extra)
    for f, g, h in itertools.combinations(extra, 3):
        v = _jacobiator(p, f, g, h)
        if v:
            return CheckReport.failed("poisson", "Jacobi identity fails on test polynomials",
                                      {"functions": [f, g, h], "jacobiator": v})
    n = p.n
    return CheckReport.ok(
        "poisson",
        f"Jacobiator vanishes on all {len(list(itertools.combinations(range(n), 3)))} coordinate triples"
        + (f" and {len(list(itertools.combinations(extra, 3)))} extra triples" if extra else ""))
