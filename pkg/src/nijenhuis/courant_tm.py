"""The standard Courant algebroid ``TM + T*M`` on R^n with polynomial sections.

Product (Leibniz version)::

    (X + xi) o (Y + eta) = [X, Y] + (L_X eta - i_Y d xi)

with anchor ``X + xi -> X`` and pairing ``<X + xi, Y + eta> = xi(Y) + eta(X)``.

"For all sections" statements are checked on a finite :class:`TestFamily`
of monomial sections.  Every identity checked here is a multidifferential
operator of order at most one in each argument, so its values on
``x^a * (basis section)`` with ``|a| <= 1`` already determine it; the default
degree 2 leaves a margin.  Witnesses are always the first failing tuple in
the family's enumeration order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DimensionError, PreconditionError
from .exact_poly import MultiPoly
from .poly_cartan import (
    PolyBivector,
    PolyForm,
    PolyOneOne,
    PolyVectorField,
    apply_function,
    contracted_bracket,
    d_n0,
    exterior_derivative,
    interior_product,
    is_poisson,
    lie_bracket,
    lie_derivative,
    nijenhuis_torsion_vf,
    pair,
)
from .reports import CheckReport, combine

__all__ = [
    "CourantSection",
    "CourantTensor",
    "DiracGraph",
    "TestFamily",
    "courant_product",
    "courant_pairing",
    "deformed_product",
    "courant_torsion",
    "form_bracket",
    "deformed_form_bracket",
    "map_differential",
    "verify_theorem2",
    "courant_nijenhuis_test",
    "verify_lemma2",
    "dirac_graph_sections",
    "check_graph_dirac",
    "check_presymplectic_nijenhuis",
    "check_lambda_omega",
    "check_poisson_nijenhuis_weak",
    "check_trivial_bialgebroid_nijenhuis",
    "compatibility_defect_tm",
    "coboundary_on_torsion_tm",
    "jacobi_defect_tm",
]


class CourantSection:
    """A section ``X + xi`` of ``TM + T*M``."""

    __slots__ = ("vf", "form")

    def __init__(self, vf: PolyVectorField, form: PolyForm):
        if form.degree != 1:
            raise DimensionError("the cotangent part must be a 1-form")
        if vf.n != form.n:
            raise DimensionError(f"vector part on R^{vf.n}, form part on R^{form.n}")
        self.vf = vf
        self.form = form

    @property
    def n(self) -> int:
        return self.vf.n

    @classmethod
    def zero(cls, n: int) -> "CourantSection":
        return cls(PolyVectorField.zero(n), PolyForm.zero(n, 1))

    @classmethod
    def from_vf(cls, x: PolyVectorField) -> "CourantSection":
        return cls(x, PolyForm.zero(x.n, 1))

    @classmethod
    def from_form(cls, xi: PolyForm) -> "CourantSection":
        return cls(PolyVectorField.zero(xi.n), xi)

    def __add__(self, other: "CourantSection") -> "CourantSection":
        return CourantSection(self.vf + other.vf, self.form + other.form)

    def __sub__(self, other: "CourantSection") -> "CourantSection":
        return CourantSection(self.vf - other.vf, self.form - other.form)

    def __neg__(self):
        return CourantSection(-self.vf, -self.form)

    def __mul__(self, f) -> "CourantSection":
        return CourantSection(self.vf * f, self.form * f)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.vf.is_zero() and self.form.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CourantSection):
            return NotImplemented
        return self.vf == other.vf and self.form == other.form

    def __hash__(self):
        return hash((self.vf, self.form))

    def to_json(self) -> dict:
        return {"vf": self.vf.to_json(), "form": self.form.to_json()}

    def __str__(self):
        if self.form.is_zero():
            return str(self.vf)
        if self.vf.is_zero():
            return str(self.form)
        return f"{self.vf} + {self.form}"

    __repr__ = __str__


def courant_pairing(s: CourantSection, t: CourantSection) -> MultiPoly:
    return pair(t.vf, s.form) + pair(s.vf, t.form)


def courant_product(s: CourantSection, t: CourantSection) -> CourantSection:
    """``[X, Y] + (L_X eta - i_Y d xi)``."""
    if s.n != t.n:
        raise DimensionError(f"sections on R^{s.n} and R^{t.n}")
    n = s.n
    form = PolyForm.zero(n, 1)
    if not t.form.is_zero() and not s.vf.is_zero():
        form = form + lie_derivative(s.vf, t.form)
    if not s.form.is_zero() and not t.vf.is_zero():
        form = form - interior_product(t.vf, exterior_derivative(s.form))
    return CourantSection(lie_bracket(s.vf, t.vf), form)


def _omega_map(omega: PolyForm) -> Callable[[PolyVectorField], PolyForm]:
    def w(x: PolyVectorField) -> PolyForm:
        return interior_product(x, omega)
    return w


class CourantTensor:
    """A (1,1)-tensor on ``TM + T*M`` given by four blocks::

        N(X + xi) = (N0 X + Lambda xi) + (Omega X + N1 xi)

    ``Omega X = i_X Omega`` and ``Lambda xi`` contract the first slot.  The
    cotangent block ``N1`` is stored through the matrix ``M1`` with
    ``N1 = tM1``, i.e. as a tensor acting on TM.
    """

    __slots__ = ("n", "n0", "lam", "omega", "m1")

    def __init__(self, n: int, n0: PolyOneOne | None = None, lam: PolyBivector | None = None,
                 omega: PolyForm | None = None, m1: PolyOneOne | None = None):
        self.n = n
        self.n0 = n0 if n0 is not None else PolyOneOne.zero(n)
        self.lam = lam if lam is not None else PolyBivector.zero(n)
        self.omega = omega if omega is not None else PolyForm.zero(n, 2)
        self.m1 = m1 if m1 is not None else PolyOneOne.zero(n)
        if self.omega.degree != 2:
            raise DimensionError("Omega must be a 2-form")
        for block in (self.n0, self.lam, self.omega, self.m1):
            if block.n != n:
                raise DimensionError(f"block on R^{block.n} in a tensor on R^{n}")

    @classmethod
    def diagonal(cls, n0: PolyOneOne) -> "CourantTensor":
        """``N(X + xi) = N0 X - tN0 xi``."""
        return cls(n0.n, n0=n0, m1=-n0)

    @classmethod
    def tangent_only(cls, n0: PolyOneOne) -> "CourantTensor":
        """``N(X + xi) = N0 X``."""
        return cls(n0.n, n0=n0)

    @classmethod
    def triangular(cls, lam: PolyBivector, diagonal=0) -> "CourantTensor":
        """``N(X + xi) = Lambda xi`` plus an optional constant multiple of the identity."""
        n = lam.n
        d = PolyOneOne.identity(n, diagonal)
        return cls(n, n0=d, lam=lam, m1=d)

    @classmethod
    def scalar_split(cls, lam_value, n0: PolyOneOne, lam: PolyBivector | None = None,
                     omega: PolyForm | None = None) -> "CourantTensor":
        """Blocks ``(l/2) I + N0``, ``Lambda``, ``Omega``, ``(l/2) I - tN0``."""
        n = n0.n
        half = PolyOneOne.identity(n, Fraction(lam_value) / 2)
        return cls(n, n0=half + n0, lam=lam, omega=omega, m1=half - n0)

    def apply_vf(self, x: PolyVectorField) -> CourantSection:
        return CourantSection(self.n0(x), interior_product(x, self.omega))

    def apply_form(self, xi: PolyForm) -> CourantSection:
        return CourantSection(self.lam.sharp(xi), self.m1.dual(xi))

    def __call__(self, s: CourantSection) -> CourantSection:
        return self.apply_vf(s.vf) + self.apply_form(s.form)

    def __eq__(self, other):
        if not isinstance(other, CourantTensor):
            return NotImplemented
        return (self.n, self.n0, self.lam, self.omega, self.m1) == (
            other.n, other.n0, other.lam, other.omega, other.m1)

    def __hash__(self):
        return hash((self.n, self.n0, self.lam, self.omega, self.m1))

    def to_json(self) -> dict:
        return {"n": self.n, "N0": self.n0.to_json()["m"], "Lambda": self.lam.to_json()["components"],
                "Omega": self.omega.to_json()["components"], "N1": self.m1.to_json()["m"]}

    def __repr__(self):
        return f"CourantTensor(n={self.n}, N0={self.n0}, Lambda={self.lam}, Omega={self.omega}, N1={self.m1})"


def deformed_product(s: CourantSection, t: CourantSection, N: CourantTensor) -> CourantSection:
    """``Ns o t + s o Nt - N(s o t)``."""
    return courant_product(N(s), t) + courant_product(s, N(t)) - N(courant_product(s, t))


def courant_torsion(s: CourantSection, t: CourantSection, N: CourantTensor) -> CourantSection:
    return courant_product(N(s), N(t)) - N(deformed_product(s, t, N))


def jacobi_defect_tm(prod, s, t, u) -> CourantSection:
    """``(s o t) o u - s o (t o u) + t o (s o u)`` for a product callable."""
    return prod(prod(s, t), u) - prod(s, prod(t, u)) + prod(t, prod(s, u))


def compatibility_defect_tm(s, t, u, N: CourantTensor) -> CourantSection:
    """The six-term compatibility expression of the contracted and original products."""
    p = courant_product

    def q(a, b):
        return deformed_product(a, b, N)

    return (q(p(s, t), u) - q(s, p(t, u)) + q(t, p(s, u))
            + p(q(s, t), u) - p(s, q(t, u)) + p(t, q(s, u)))


def coboundary_on_torsion_tm(s, t, u, N: CourantTensor) -> CourantSection:
    """Leibniz coboundary of the torsion, evaluated on ``(s, t, u)``."""
    p = courant_product

    def T(a, b):
        return courant_torsion(a, b, N)

    return (T(s, p(t, u)) - T(p(s, t), u) - T(t, p(s, u))
            - p(T(s, t), u) + p(s, T(t, u)) - p(t, T(s, u)))


class TestFamily:
    """Sections ``x^a d_i`` and ``x^a dx^i`` with ``|a| <= D``.

    Enumeration: monomials by ascending degree (x1 before x2 within a
    degree), then the index ``i``; vector fields before 1-forms.
    """

    __test__ = False  # not a pytest class

    def __init__(self, n: int, max_degree: int = 2):
        if n < 1 or max_degree < 0:
            raise DimensionError("need n >= 1 and a non-negative degree")
        self.n = n
        self.max_degree = max_degree
        monos = []
        for deg in range(max_degree + 1):
            exps = [e for e in itertools.product(range(deg + 1), repeat=n) if sum(e) == deg]
            exps.sort(key=lambda e: tuple(-a for a in e))
            monos.extend(MultiPoly.monomial(e) for e in exps)
        self.monomials: list[MultiPoly] = monos
        self.vector_fields: list[PolyVectorField] = [
            PolyVectorField.coordinate(n, i, m) for m in monos for i in range(n)]
        self.one_forms: list[PolyForm] = [
            PolyForm.coordinate(n, (i,), m) for m in monos for i in range(n)]
        self.sections: list[CourantSection] = (
            [CourantSection.from_vf(x) for x in self.vector_fields]
            + [CourantSection.from_form(a) for a in self.one_forms])

    def __len__(self):
        return len(self.sections)

    def to_json(self) -> dict:
        return {"n": self.n, "max_degree": self.max_degree, "size": len(self.sections)}

    def __repr__(self):
        return f"TestFamily(n={self.n}, max_degree={self.max_degree})"


def _nonzero(v) -> bool:
    if isinstance(v, MultiPoly):
        return bool(v)
    return not v.is_zero()


def _scan(name: str, cert: str, items: Sequence, fn, arity: int = 2, labels=None) -> CheckReport:
    """Evaluate ``fn`` on all ``arity``-tuples; the first nonzero value is the witness."""
    count = 0
    for idx in itertools.product(range(len(items)), repeat=arity):
        args = [items[i] for i in idx]
        value = fn(*args)
        count += 1
        if _nonzero(value):
            names = labels or [f"arg{k + 1}" for k in range(arity)]
            witness = {k: a for k, a in zip(names, args)}
            witness["index"] = list(idx)
            witness["value"] = value
            return CheckReport.failed(name, cert, witness)
    return CheckReport.ok(name, f"{cert} on all {count} family tuples")


def _scan_pairs(name, cert, xs, ys, fn, labels=("first", "second")) -> CheckReport:
    count = 0
    for i, a in enumerate(xs):
        for j, b in enumerate(ys):
            value = fn(a, b)
            count += 1
            if _nonzero(value):
                return CheckReport.failed(name, cert, {labels[0]: a, labels[1]: b,
                                                       "index": [i, j], "value": value})
    return CheckReport.ok(name, f"{cert} on all {count} family pairs")


def _matrix_zero(name: str, cert: str, m: PolyOneOne) -> CheckReport:
    for i in range(m.n):
        for j in range(m.n):
            if m.m[i][j]:
                return CheckReport.failed(name, cert, {"entry": [i + 1, j + 1], "value": m.m[i][j],
                                                       "matrix": m})
    return CheckReport.ok(name, cert)


def form_bracket(P: Callable[[PolyForm], PolyVectorField], xi: PolyForm, eta: PolyForm) -> PolyForm:
    """``[xi, eta]^P = P xi o eta + xi o P eta`` for a map ``P: T*M -> TM``."""
    a = courant_product(CourantSection.from_vf(P(xi)), CourantSection.from_form(eta))
    b = courant_product(CourantSection.from_form(xi), CourantSection.from_vf(P(eta)))
    return a.form + b.form


def deformed_form_bracket(P, T: Callable[[PolyForm], PolyForm], xi: PolyForm, eta: PolyForm) -> PolyForm:
    """Contraction of ``[., .]^P`` by a map ``T`` on 1-forms."""
    return (form_bracket(P, T(xi), eta) + form_bracket(P, xi, T(eta))
            - T(form_bracket(P, xi, eta)))


def map_differential(W: Callable[[PolyVectorField], PolyForm], x: PolyVectorField,
                     y: PolyVectorField) -> PolyForm:
    """``dW(X, Y, .) = WX o Y + X o WY - W[X, Y]`` for a (not necessarily skew) map ``W: TM -> T*M``."""
    a = courant_product(CourantSection.from_form(W(x)), CourantSection.from_vf(y))
    b = courant_product(CourantSection.from_vf(x), CourantSection.from_form(W(y)))
    return a.form + b.form - W(lie_bracket(x, y))


def _map_skew(name: str, W, n: int) -> CheckReport:
    """``<W d_i, d_j> + <W d_j, d_i> = 0`` for all coordinate fields."""
    basis = [PolyVectorField.coordinate(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = pair(basis[j], W(basis[i])) + pair(basis[i], W(basis[j]))
            if s:
                return CheckReport.failed(name, "map is not skew-symmetric",
                                          {"entry": [i + 1, j + 1], "symmetric_part": s})
    return CheckReport.ok(name, "map is skew-symmetric")


# -- theorems on the diagonal tensor ---------------------------------------

def lie_derivative_n0(n0: PolyOneOne, x: PolyVectorField, eta: PolyForm) -> PolyForm:
    """``<L^N_X eta, Y> = (N X)<eta, Y> - <eta, [X, Y]_N>``, read off on coordinate fields."""
    n = n0.n
    nx = n0(x)
    comps = []
    for j in range(n):
        dj = PolyVectorField.coordinate(n, j)
        comps.append(apply_function(nx, pair(dj, eta)) - pair(contracted_bracket(n0, x, dj), eta))
    return PolyForm.one_form(n, comps)


def theorem2_rhs(n0: PolyOneOne, s: CourantSection, t: CourantSection) -> CourantSection:
    """``[X, Y]_N + (L^N_X eta - i_Y d^N xi)``, built without the deformed product."""
    form = lie_derivative_n0(n0, s.vf, t.form)
    if not t.vf.is_zero():
        form = form - interior_product(t.vf, d_n0(n0, s.form))
    return CourantSection(contracted_bracket(n0, s.vf, t.vf), form)


def verify_theorem2(n0: PolyOneOne, family: TestFamily) -> CheckReport:
    N = CourantTensor.diagonal(n0)
    rep = _scan_pairs(
        "theorem2", "deformed product equals the contracted-bracket formula",
        family.sections, family.sections,
        lambda s, t: deformed_product(s, t, N) - theorem2_rhs(n0, s, t))
    rep.info["family"] = family.to_json()
    return rep


def _tn0_form(n0: PolyOneOne):
    return n0.dual


def _h1(n0: PolyOneOne, x: PolyVectorField, eta: PolyForm) -> PolyForm:
    t = _tn0_form(n0)
    return t(lie_derivative_n0(n0, x, eta)) - lie_derivative(n0(x), t(eta))


def _h2(n0: PolyOneOne, xi: PolyForm, y: PolyVectorField) -> PolyForm:
    t = _tn0_form(n0)
    return (t(interior_product(y, d_n0(n0, xi)))
            - interior_product(n0(y), exterior_derivative(t(xi))))


def check_vf_nijenhuis(n0: PolyOneOne, family: TestFamily, name: str = "nijenhuis") -> CheckReport:
    return _scan_pairs(name, "Nijenhuis torsion of the tangent tensor vanishes",
                       family.vector_fields, family.vector_fields,
                       lambda x, y: nijenhuis_torsion_vf(n0, x, y), labels=("X", "Y"))


def courant_nijenhuis_test(n0: PolyOneOne, family: TestFamily) -> CheckReport:
    """Torsion of ``N0 + (-tN0)`` on the family, cross-checked against ``N0^2 = lam I``.

    Requires ``N0`` to be Nijenhuis (on the family).  Three verdicts are
    computed independently: the torsion sweep, the two reduced identities
    ``tN0 L^N_X eta = L_{N X}(tN0 eta)`` and
    ``tN0 i_Y d^N xi = i_{N Y} d(tN0 xi)``, and the matrix test.
    """
    pre = check_vf_nijenhuis(n0, family)
    if not pre.passed:
        raise PreconditionError(f"N0 is not a Nijenhuis tensor: {pre}")
    N = CourantTensor.diagonal(n0)
    torsion = _scan_pairs("torsion", "Courant torsion vanishes", family.sections, family.sections,
                          lambda s, t: courant_torsion(s, t, N))
    h1 = _scan_pairs("h1", "tN0 L^N_X eta = L_(N0 X) tN0 eta", family.vector_fields,
                     family.one_forms, lambda x, e: _h1(n0, x, e), labels=("X", "eta"))
    h2 = _scan_pairs("h2", "tN0 i_Y d^N xi = i_(N0 Y) d tN0 xi", family.one_forms,
                     family.vector_fields, lambda xi, y: _h2(n0, xi, y), labels=("xi", "Y"))
    square = n0 @ n0
    lam = square.scalar_value()
    identities = h1.passed and h2.passed
    agree = torsion.passed == identities == (lam is not None)
    info = {
        "identities_verdict": "pass" if identities else "fail",
        "square_is_scalar": lam is not None,
        "lambda": lam,
        "n0_squared": square,
        "verdicts_agree": agree,
        "family": family.to_json(),
    }
    if torsion.passed:
        cert = "Courant torsion vanishes on the family"
        if lam is not None:
            cert += f"; N0^2 = {lam} I"
        return CheckReport.ok("courant_nijenhuis", cert, **info)
    return CheckReport("courant_nijenhuis", "fail", torsion.certificate, dict(torsion.witness), info)


def verify_lemma2(K: PolyOneOne, family: TestFamily) -> CheckReport:
    """``K[X, Y] = [X, KY]`` on the family; when it holds ``K`` must be a constant multiple of I."""
    rep = _scan_pairs("lemma2", "K commutes with the adjoint action",
                      family.vector_fields, family.vector_fields,
                      lambda x, y: K(lie_bracket(x, y)) - lie_bracket(x, K(y)), labels=("X", "Y"))
    lam = K.scalar_value()
    rep.info.update({"is_scalar": lam is not None, "lambda": lam,
                     "implication_holds": (not rep.passed) or lam is not None})
    if rep.passed:
        rep.certificate += f"; K = {lam} I" if lam is not None else "; K is not scalar"
    return rep


# -- Dirac graphs ---------------------------------------------------------

@dataclass(frozen=True)
class DiracGraph:
    """Graph of a 2-form (sections ``X + Omega X``) or of a bivector (``Lambda xi + xi``)."""

    kind: str
    generator: object

    def __post_init__(self):
        if self.kind == "graph_of_form":
            if not isinstance(self.generator, PolyForm) or self.generator.degree != 2:
                raise DimensionError("graph_of_form needs a 2-form")
        elif self.kind == "graph_of_bivector":
            if not isinstance(self.generator, PolyBivector):
                raise DimensionError("graph_of_bivector needs a bivector")
        else:
            raise ValueError(f"unknown graph kind {self.kind!r}")

    @classmethod
    def of_form(cls, omega: PolyForm) -> "DiracGraph":
        return cls("graph_of_form", omega)

    @classmethod
    def of_bivector(cls, lam: PolyBivector) -> "DiracGraph":
        return cls("graph_of_bivector", lam)

    @property
    def n(self) -> int:
        return self.generator.n

    def lift_vf(self, x: PolyVectorField) -> CourantSection:
        return CourantSection(x, interior_product(x, self.generator))

    def lift_form(self, xi: PolyForm) -> CourantSection:
        return CourantSection(self.generator.sharp(xi), xi)

    def contains(self, s: CourantSection) -> bool:
        if self.kind == "graph_of_form":
            return s.form == interior_product(s.vf, self.generator)
        return s.vf == self.generator.sharp(s.form)

    def defect(self, s: CourantSection):
        """How far ``s`` is from the graph (zero exactly when it lies on it)."""
        if self.kind == "graph_of_form":
            return s.form - interior_product(s.vf, self.generator)
        return s.vf - self.generator.sharp(s.form)

    def to_json(self) -> dict:
        return {"kind": self.kind, "generator": self.generator.to_json()}


def dirac_graph_sections(L: DiracGraph, family: TestFamily) -> list[CourantSection]:
    if L.kind == "graph_of_form":
        return [L.lift_vf(x) for x in family.vector_fields]
    return [L.lift_form(a) for a in family.one_forms]


def check_graph_dirac(L: DiracGraph, family: TestFamily) -> CheckReport:
    """Isotropy and closure under the Courant product on graph sections."""
    secs = dirac_graph_sections(L, family)
    iso = _scan("isotropic", "pairing vanishes", secs, courant_pairing)
    closed = _scan("closed", "product stays in the graph", secs,
                   lambda s, t: L.defect(courant_product(s, t)))
    checks = [iso, closed]
    if L.kind == "graph_of_form":
        omega = L.generator
        W = _omega_map(omega)
        d_omega = exterior_derivative(omega)
        checks.append(_scan_pairs(
            "closure_identity", "X o WY + WX o Y - W[X,Y] = i_Y i_X dOmega",
            family.vector_fields, family.vector_fields,
            lambda x, y: map_differential(W, x, y) - interior_product(y, interior_product(x, d_omega))))
    else:
        lam = L.generator
        checks.append(_scan(
            "bracket_matches", "graph product has cotangent part [xi, eta]^Lambda", family.one_forms,
            lambda a, b: courant_product(L.lift_form(a), L.lift_form(b)).form - form_bracket(lam.sharp, a, b)))
    return combine("dirac_graph", checks, graph=L.kind)


def _dirac_nijenhuis_on_graph(L: DiracGraph, N: CourantTensor, family: TestFamily) -> CheckReport:
    """Definition-level check: L Dirac, deformed product closed and skew on L, torsion zero on L."""
    secs = dirac_graph_sections(L, family)
    dirac = check_graph_dirac(L, family)
    closed = _scan("deformed_closed", "deformed product stays in L", secs,
                   lambda s, t: L.defect(deformed_product(s, t, N)))
    skew = _scan("deformed_skew", "deformed product is skew on L", secs,
                 lambda s, t: deformed_product(s, t, N) + deformed_product(t, s, N))
    torsion = _scan("torsion_on_L", "Courant torsion vanishes on L", secs,
                    lambda s, t: courant_torsion(s, t, N))
    return combine("dirac_nijenhuis", [dirac, closed, skew, torsion])


def _attach_semantics(rep: CheckReport, semantic: CheckReport) -> CheckReport:
    rep.info["semantic_verdict"] = semantic.verdict
    rep.info["agrees_with_semantics"] = semantic.verdict == rep.verdict
    if not semantic.passed:
        rep.info["semantic_failed_check"] = semantic.witness.get("failed_check")
    return rep


def check_presymplectic_nijenhuis(omega: PolyForm, n0: PolyOneOne, family: TestFamily) -> CheckReport:
    """Conditions ``dOmega = 0``, ``Omega N0`` skew, ``d(Omega N0) = 0``, ``T_N0 = 0``.

    Cross-checked against the Dirac-Nijenhuis property of the graph of Omega
    for ``N(X + xi) = N0 X``.
    """
    W = _omega_map(omega)

    def WN(x):
        return interior_product(n0(x), omega)

    vfs = family.vector_fields
    conds = [
        _scan_pairs("omega_closed", "X o OmegaY + OmegaX o Y - Omega[X,Y] = 0", vfs, vfs,
                    lambda x, y: map_differential(W, x, y), labels=("X", "Y")),
        _map_skew("omega_n0_skew", WN, omega.n),
        _scan_pairs("d_omega_n0", "d(Omega N0) = 0", vfs, vfs,
                    lambda x, y: map_differential(WN, x, y), labels=("X", "Y")),
        check_vf_nijenhuis(n0, family, "n0_nijenhuis"),
    ]
    rep = combine("presymplectic_nijenhuis", conds)
    semantic = _dirac_nijenhuis_on_graph(DiracGraph.of_form(omega), CourantTensor.tangent_only(n0), family)
    return _attach_semantics(rep, semantic)


def check_lambda_omega(omega: PolyForm, lam: PolyBivector, family: TestFamily) -> CheckReport:
    """With ``N0 = Lambda Omega``: N0 Nijenhuis, ``Omega Lambda Omega`` skew and closed."""
    n = omega.n

    def n0_apply(x):
        return lam.sharp(interior_product(x, omega))

    basis = [PolyVectorField.coordinate(n, j) for j in range(n)]
    cols = [n0_apply(b).components for b in basis]
    n0 = PolyOneOne(n, [[cols[j][i] for j in range(n)] for i in range(n)])

    def WLW(x):
        return interior_product(n0(x), omega)

    vfs = family.vector_fields
    conds = [
        check_vf_nijenhuis(n0, family, "lambda_omega_nijenhuis"),
        _map_skew("omega_lambda_omega_skew", WLW, n),
        _scan_pairs("d_omega_lambda_omega", "d(Omega Lambda Omega) = 0", vfs, vfs,
                    lambda x, y: map_differential(WLW, x, y), labels=("X", "Y")),
    ]
    rep = combine("lambda_omega", conds, n0=n0)
    semantic = _dirac_nijenhuis_on_graph(DiracGraph.of_form(omega), CourantTensor.triangular(lam), family)
    return _attach_semantics(rep, semantic)


def check_poisson_nijenhuis_weak(lam: PolyBivector, n0: PolyOneOne, family: TestFamily) -> CheckReport:
    """Weak Poisson-Nijenhuis conditions, with the strong verdict reported alongside.

    Weak: ``N0 Lambda = Lambda tN0``, ``Lambda([xi,eta]^Lambda_tN0 - [xi,eta]^(N0 Lambda)) = 0``
    and the torsion of N0 vanishing on the image of Lambda.  Strong: the same
    without the outer Lambda, and N0 Nijenhuis everywhere.
    """
    pre = is_poisson(lam)
    if not pre.passed:
        raise PreconditionError(f"Lambda is not Poisson: {pre}")
    n = lam.n
    L = lam.matrix()
    pn0 = _matrix_zero("pn0", "N0 Lambda = Lambda tN0", (n0 @ L) - (L @ n0.transpose()))

    def n0_lam(xi):
        return n0(lam.sharp(xi))

    def gap(a, b):
        return (deformed_form_bracket(lam.sharp, n0.dual, a, b) - form_bracket(n0_lam, a, b))

    forms = family.one_forms
    pn = _scan_pairs("pn", "Lambda([xi,eta]^Lambda_tN0 - [xi,eta]^(N0 Lambda)) = 0", forms, forms,
                     lambda a, b: lam.sharp(gap(a, b)), labels=("xi", "eta"))
    np_ = _scan_pairs("np", "torsion of N0 vanishes on the image of Lambda", forms, forms,
                      lambda a, b: nijenhuis_torsion_vf(n0, lam.sharp(a), lam.sharp(b)),
                      labels=("xi", "eta"))
    weak = combine("poisson_nijenhuis_weak", [pn0, pn, np_])
    strong = combine("poisson_nijenhuis_strong", [
        pn0,
        check_vf_nijenhuis(n0, family, "n0_nijenhuis"),
        _scan_pairs("pn_strong", "[xi,eta]^Lambda_tN0 = [xi,eta]^(N0 Lambda)", forms, forms,
                    gap, labels=("xi", "eta")),
    ])
    weak.info["strong_verdict"] = strong.verdict
    weak.info["weak_only"] = weak.passed and not strong.passed
    if not strong.passed:
        weak.info["strong_failed_check"] = strong.witness.get("failed_check")
    semantic = _dirac_nijenhuis_on_graph(DiracGraph.of_bivector(lam), CourantTensor.tangent_only(n0), family)
    return _attach_semantics(weak, semantic)


def extract_scalar_split(N: CourantTensor) -> tuple[Fraction, PolyOneOne]:
    """Read ``(lam, N0)`` off a tensor with diagonal blocks ``(l/2)I + N0`` and ``(l/2)I - tN0``."""
    n = N.n
    total = N.n0 + N.m1
    lam = total.scalar_value()
    if lam is None:
        raise PreconditionError(
            "diagonal blocks are not (l/2)I + N0 and (l/2)I - tN0: "
            f"N0-block plus stored N1-block is {total}, not a constant multiple of I")
    return lam, N.n0 - PolyOneOne.identity(n, lam / 2)


def check_trivial_bialgebroid_nijenhuis(N: CourantTensor, family: TestFamily) -> CheckReport:
    """Conditions (Omega closed, w1..w4) for a tensor of the shape ``[[l/2 I + N0, Lambda], [Omega, l/2 I - tN0]]``."""
    lam_value, n0 = extract_scalar_split(N)
    omega, lam = N.omega, N.lam
    W = _omega_map(omega)

    def WN(x):
        return interior_product(n0(x), omega)

    def lam_tn0(xi):
        return lam.sharp(n0.dual(xi))

    vfs, forms = family.vector_fields, family.one_forms
    checks = [
        _scan_pairs("omega_closed", "Omega is closed", vfs, vfs,
                    lambda x, y: map_differential(W, x, y), labels=("X", "Y")),
        check_vf_nijenhuis(n0, family, "w1"),
        _scan_pairs("w2", "d(Omega N0) = 0", vfs, vfs,
                    lambda x, y: map_differential(WN, x, y), labels=("X", "Y")),
        _map_skew("w2_skew", WN, N.n),
        _scan_pairs("w3", "[eta,xi]^Lambda_tN0 - [eta,xi]^(Lambda tN0) = 0", forms, forms,
                    lambda a, b: deformed_form_bracket(lam.sharp, n0.dual, a, b) - form_bracket(lam_tn0, a, b),
                    labels=("eta", "xi")),
        _scan_pairs("w4", "[Lambda eta, Lambda xi] - Lambda([eta,xi]^Lambda) = 0", forms, forms,
                    lambda a, b: lie_bracket(lam.sharp(a), lam.sharp(b)) - lam.sharp(form_bracket(lam.sharp, a, b)),
                    labels=("eta", "xi")),
    ]
    return combine("trivial_bialgebroid_nijenhuis", checks, **{"lambda": lam_value, "n0": n0})
