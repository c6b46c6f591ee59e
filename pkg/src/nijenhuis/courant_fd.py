"""Courant structures over a point: quadratic Leibniz algebras and Lie bialgebra doubles.

Over a point the anchor is zero, so axiom ``rho(X)<Y,Y> = 2<X, Y o Y>`` reads
``<X, Y o Y> = 0`` and the pairing must be invariant under left multiplication.
Carrier coordinates of ``E + E*`` list the ``E`` basis first, then the dual basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import linalg
from .core_algebra import (
    BilinearOp,
    OneOneTensor,
    Vec,
    apply,
    contract,
    is_leibniz,
    jacobi_defect,
    nijenhuis_torsion,
    torsion,
)
from .errors import DimensionError, InvariantError, PreconditionError
from .exact_poly import format_scalar, to_scalar
from .reports import CheckReport, combine

__all__ = [
    "Pairing",
    "CourantStructure",
    "LieBialgebra",
    "Subspace",
    "BlockTensor",
    "adjoint",
    "is_paired",
    "check_courant_axioms",
    "check_delta_conditions",
    "check_n_squared",
    "drinfeld_double",
    "is_dirac",
    "is_dirac_nijenhuis",
    "bialgebroid_nijenhuis_conditions",
    "restrict_to_e",
    "restrict_to_estar",
]


class Pairing:
    """Nondegenerate symmetric bilinear form with Gram matrix ``g``."""

    __slots__ = ("dim", "g", "_ginv")

    def __init__(self, dim: int, g: Sequence[Sequence]):
        if len(g) != dim or any(len(r) != dim for r in g):
            raise DimensionError(f"Gram matrix must be {dim}x{dim}")
        g = [[to_scalar(x) for x in row] for row in g]
        if any(g[i][j] != g[j][i] for i in range(dim) for j in range(dim)):
            raise InvariantError("pairing is not symmetric")
        if linalg.determinant(g) == 0:
            raise InvariantError("pairing is degenerate")
        self.dim = dim
        self.g = tuple(tuple(r) for r in g)
        self._ginv = linalg.inverse(g)

    @classmethod
    def hyperbolic(cls, n_e: int) -> "Pairing":
        """``<X + xi, Y + eta> = <xi, Y> + <eta, X>`` on ``E + E*``."""
        d = 2 * n_e
        g = [[1 if abs(i - j) == n_e else 0 for j in range(d)] for i in range(d)]
        return cls(d, g)

    def __call__(self, x: Vec, y: Vec) -> Fraction:
        return sum((x[i] * self.g[i][j] * y[j]
                    for i in range(self.dim) if x[i] for j in range(self.dim) if y[j]),
                   Fraction(0))

    def to_json(self) -> dict:
        return {"dim": self.dim, "g": [[format_scalar(x) for x in r] for r in self.g]}


@dataclass(frozen=True)
class CourantStructure:
    """A Leibniz product with an invariant pairing; the anchor is identically zero."""

    op: BilinearOp
    pairing: Pairing

    def __post_init__(self):
        if self.op.dim != self.pairing.dim:
            raise DimensionError("product and pairing dimensions differ")

    @property
    def dim(self) -> int:
        return self.op.dim

    def to_json(self) -> dict:
        return {"op": self.op.to_json(), "pairing": self.pairing.to_json()}


@dataclass(frozen=True)
class LieBialgebra:
    """Brackets on ``E`` and on ``E*`` (both in their own bases, ``E*`` in the dual basis)."""

    dim_e: int
    bracket_e: BilinearOp
    bracket_estar: BilinearOp

    def __post_init__(self):
        if self.bracket_e.dim != self.dim_e or self.bracket_estar.dim != self.dim_e:
            raise DimensionError("both brackets must live in dimension dim_e")

    def to_json(self) -> dict:
        return {"dim_e": self.dim_e, "bracket_e": self.bracket_e.to_json(),
                "bracket_estar": self.bracket_estar.to_json()}


class Subspace:
    """Span of linearly independent vectors in Q^ambient_dim."""

    def __init__(self, ambient_dim: int, basis: Sequence):
        vecs = [b if isinstance(b, Vec) else Vec(b) for b in basis]
        if any(v.dim != ambient_dim for v in vecs):
            raise DimensionError("basis vectors must live in the ambient space")
        if linalg.rank([list(v.coords) for v in vecs]) != len(vecs):
            raise InvariantError("basis vectors are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = tuple(vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        return linalg.in_span([list(b.coords) for b in self.basis], list(v.coords))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Sequence[int]) -> "Subspace":
        return cls(ambient_dim, [Vec.basis(ambient_dim, i) for i in indices])

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [v.to_json() for v in self.basis]}


@dataclass(frozen=True)
class BlockTensor:
    """``N = [[N_E, Lambda], [Omega, N_E*]]`` acting on ``E + E*``.

    Each block is an ``n_e x n_e`` matrix acting on coordinates: ``Lambda``
    maps ``E* -> E`` and ``Omega`` maps ``E -> E*``.
    """

    n_e: int
    n_e_block: tuple
    lam: tuple
    omega: tuple
    n_estar_block: tuple

    @classmethod
    def from_blocks(cls, n_e_block, lam, omega, n_estar_block) -> "BlockTensor":
        blocks = [tuple(tuple(to_scalar(x) for x in row) for row in b)
                  for b in (n_e_block, lam, omega, n_estar_block)]
        n = len(blocks[0])
        if any(len(b) != n or any(len(r) != n for r in b) for b in blocks):
            raise DimensionError("all blocks must be n_e x n_e")
        return cls(n, *blocks)

    def assemble(self) -> OneOneTensor:
        n = self.n_e
        m = [list(self.n_e_block[i]) + list(self.lam[i]) for i in range(n)]
        m += [list(self.omega[i]) + list(self.n_estar_block[i]) for i in range(n)]
        return OneOneTensor(2 * n, m)

    @classmethod
    def split(cls, t: OneOneTensor) -> "BlockTensor":
        if t.dim % 2:
            raise DimensionError("tensor on E + E* must have even dimension")
        n = t.dim // 2
        m = t.m
        return cls(n, tuple(r[:n] for r in m[:n]), tuple(r[n:] for r in m[:n]),
                   tuple(r[:n] for r in m[n:]), tuple(r[n:] for r in m[n:]))

    def to_json(self) -> dict:
        f = lambda b: [[format_scalar(x) for x in r] for r in b]  # noqa: E731
        return {"n_e": self.n_e, "N_E": f(self.n_e_block), "Lambda": f(self.lam),
                "Omega": f(self.omega), "N_Estar": f(self.n_estar_block)}


def _basis(dim: int) -> list[Vec]:
    return [Vec.basis(dim, i) for i in range(dim)]


def adjoint(n: OneOneTensor, pairing: Pairing) -> OneOneTensor:
    """The unique ``N*`` with ``<NX, Y> = <X, N*Y>``, i.e. ``g^-1 N^T g``."""
    if n.dim != pairing.dim:
        raise DimensionError("tensor and pairing dimensions differ")
    g = [list(r) for r in pairing.g]
    return OneOneTensor(n.dim, linalg.matmul(pairing._ginv, linalg.matmul(linalg.transpose(n.m), g)))


def is_paired(n: OneOneTensor, pairing: Pairing) -> Fraction | None:
    """``lam`` when ``N + N* = lam I``, otherwise None."""
    return (n + adjoint(n, pairing)).scalar_value()


def _pairing_axioms(op: BilinearOp, pairing: Pairing, label: str) -> list[CheckReport]:
    """Leibniz identity, isotropy of squares and invariance of the pairing (zero anchor), on all basis tuples."""
    d = op.dim
    e = _basis(d)
    p = pairing
    reports = []

    def scan(name, cert, arity, fn):
        for idx in itertools.product(range(d), repeat=arity):
            val = fn(*[e[i] for i in idx])
            if val:
                return CheckReport.failed(f"{label}{name}", cert, {"basis": idx, "value": val})
        return CheckReport.ok(f"{label}{name}", f"{cert} on all {d ** arity} basis tuples")

    reports.append(scan("square_isotropic", "<X, Y o Y> = 0", 2, lambda x, y: p(x, apply(op, y, y))))
    reports.append(scan("symmetrised_square", "<X, Y o Z + Z o Y> = 0", 3,
                        lambda x, y, z: p(x, apply(op, y, z) + apply(op, z, y))))
    reports.append(scan("product_pairing", "<X o Y, Y> = 0", 2, lambda x, y: p(apply(op, x, y), y)))
    reports.append(scan("invariance", "<X o Y, Z> + <Y, X o Z> = 0", 3,
                        lambda x, y, z: p(apply(op, x, y), z) + p(y, apply(op, x, z))))
    return reports


def check_courant_axioms(cs: CourantStructure) -> CheckReport:
    """Leibniz identity plus the pairing axioms, exhaustively on basis tuples."""
    reports = [is_leibniz(cs.op)] + _pairing_axioms(cs.op, cs.pairing, "")
    return combine("courant_axioms", reports)


def check_delta_conditions(cs: CourantStructure, n: OneOneTensor) -> CheckReport:
    """``Delta = N + N*`` commutes with left multiplication and ``Delta(Y o Y) = Delta Y o Y``.

    The equivalent statement, that the contracted product again satisfies the
    pairing axioms, is evaluated independently and must agree.
    """
    op = cs.op
    delta = n + adjoint(n, cs.pairing)
    e = _basis(op.dim)
    d = op.dim

    def first_bad(arity, fn):
        for idx in itertools.product(range(d), repeat=arity):
            lhs, rhs = fn(*[e[i] for i in idx])
            if lhs != rhs:
                return {"basis": idx, "lhs": lhs, "rhs": rhs}
        return None

    w_comm = first_bad(2, lambda x, z: (apply(op, x, delta(z)), delta(apply(op, x, z))))
    r_comm = (CheckReport.ok("delta_commutes", f"X o DZ = D(X o Z) on all {d * d} basis pairs")
          if w_comm is None else CheckReport.failed("delta_commutes", "X o DZ != D(X o Z)", w_comm))
    # polarised form of D(Y o Y) = DY o Y
    w_sq = first_bad(2, lambda y, z: (delta(apply(op, y, z) + apply(op, z, y)),
                                     apply(op, delta(y), z) + apply(op, delta(z), y)))
    r_sq = (CheckReport.ok("delta_square", f"D(Y o Y) = DY o Y on all {d * d} polarised pairs")
           if w_sq is None else CheckReport.failed("delta_square", "D(Y o Y) != DY o Y", w_sq))
    direct = combine("contracted_pairing_axioms",
                     _pairing_axioms(contract(op, n), cs.pairing, "contracted_"))
    report = combine("delta_conditions", [r_comm, r_sq])
    report.info["contracted_axioms"] = direct.verdict
    report.info["agrees_with_contracted_axioms"] = direct.passed == report.passed
    report.info["delta"] = delta.to_json()
    return report


def check_n_squared(cs: CourantStructure, n: OneOneTensor) -> CheckReport:
    """For a skew-adjoint Nijenhuis ``N``, ``N^2`` commutes with left multiplication."""
    if adjoint(n, cs.pairing) != -n:
        raise PreconditionError("N is not skew-adjoint (N* != -N)")
    t = nijenhuis_torsion(cs.op, n)
    if not t.is_zero():
        idx, v = t.first_nonzero()
        raise PreconditionError(f"N has nonzero torsion {v} on basis pair {idx}")
    op = cs.op
    n2 = n @ n
    e = _basis(op.dim)
    d = op.dim
    for i, j in itertools.product(range(d), repeat=2):
        lhs, rhs = apply(op, e[i], n2(e[j])), n2(apply(op, e[i], e[j]))
        if lhs != rhs:
            return CheckReport.failed("n_squared", "X o N^2 Y != N^2 (X o Y)",
                                      {"basis": (i, j), "lhs": lhs, "rhs": rhs})
    for i, j in itertools.product(range(d), repeat=2):
        lhs = n2(apply(op, e[i], e[j]) + apply(op, e[j], e[i]))
        rhs = apply(op, n2(e[i]), e[j]) + apply(op, n2(e[j]), e[i])
        if lhs != rhs:
            return CheckReport.failed("n_squared", "N^2 (Y o Y) != N^2 Y o Y (polarised)",
                                      {"basis": (i, j), "lhs": lhs, "rhs": rhs})
    return CheckReport.ok("n_squared", f"N^2 commutes with left multiplication on {d * d} basis pairs",
                          n_squared_paired=is_paired(n2, cs.pairing))


def drinfeld_double(b: LieBialgebra) -> CourantStructure:
    """Courant product on ``E + E*`` assembled from the two brackets.

    Mixed products come from the duality relations with zero anchors:
    ``<X o eta, Y> = -<eta, X o Y>`` and ``<X o eta, xi> = <X, eta o xi>``, and
    symmetrically for ``xi o Y``.
    """
    n = b.dim_e
    ce, cs = b.bracket_e.c, b.bracket_estar.c
    d = 2 * n
    c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i, j, k in itertools.product(range(n), repeat=3):
        c[i][j][k] = ce[i][j][k]
        c[n + i][n + j][n + k] = cs[i][j][k]
    for i, a in itertools.product(range(n), repeat=2):
        for k in range(n):
            # e_i o eps^a
            c[i][n + a][n + k] = -ce[i][k][a]
            c[i][n + a][k] = cs[a][k][i]
            # eps^a o e_i
            c[n + a][i][n + k] = ce[i][k][a]
            c[n + a][i][k] = -cs[a][k][i]
    return CourantStructure(BilinearOp(d, c), Pairing.hyperbolic(n))


def restrict_to_e(op: BilinearOp) -> BilinearOp:
    """The ``E``-block of a product on ``E + E*`` (ignores any ``E*`` component)."""
    n = op.dim // 2
    return BilinearOp(n, [[list(op.c[i][j][:n]) for j in range(n)] for i in range(n)])


def restrict_to_estar(op: BilinearOp) -> BilinearOp:
    n = op.dim // 2
    return BilinearOp(n, [[list(op.c[n + i][n + j][n:]) for j in range(n)] for i in range(n)])


def is_dirac(cs: CourantStructure, sub: Subspace) -> CheckReport:
    """Maximal isotropic and closed under the product."""
    if sub.ambient_dim != cs.dim:
        raise DimensionError("subspace does not live in the Courant carrier")
    basis = sub.basis
    for (a, u), (b, v) in itertools.product(enumerate(basis), repeat=2):
        val = cs.pairing(u, v)
        if val:
            return CheckReport.failed("dirac", "not isotropic", {"basis": (a, b), "pairing": val})
    if 2 * sub.dim != cs.dim:
        return CheckReport.failed("dirac", "isotropic but not maximal",
                                  {"dim": sub.dim, "ambient_dim": cs.dim})
    for (a, u), (b, v) in itertools.product(enumerate(basis), repeat=2):
        w = apply(cs.op, u, v)
        if not sub.contains(w):
            return CheckReport.failed("dirac", "not closed under the product",
                                      {"basis": (a, b), "product": w})
    return CheckReport.ok("dirac", f"maximal isotropic ({sub.dim} of {cs.dim}) and closed")


def is_dirac_nijenhuis(cs: CourantStructure, sub: Subspace, n: OneOneTensor) -> CheckReport:
    """``o_N`` closed and skew on ``L`` and ``T_N`` vanishing on ``L``.

    A passing structure is additionally checked to make ``L`` a Lie algebra
    under ``o_N`` with ``N(u o_N v) = Nu o Nv``.
    """
    pre = is_dirac(cs, sub)
    if not pre.passed:
        raise PreconditionError(f"subspace is not Dirac: {pre.certificate}")
    op_n = contract(cs.op, n)
    basis = sub.basis
    pairs = list(itertools.product(enumerate(basis), repeat=2))

    def scan(name, cert, fn):
        for (a, u), (b, v) in pairs:
            bad = fn(u, v)
            if bad is not None:
                return CheckReport.failed(name, cert, {"basis": (a, b), **bad})
        return CheckReport.ok(name, f"{cert} on all {len(pairs)} basis pairs of L")

    closed = scan("closed", "u o_N v in L",
                  lambda u, v: None if sub.contains(apply(op_n, u, v))
                  else {"product": apply(op_n, u, v)})
    skew = scan("skew", "u o_N v + v o_N u = 0",
                lambda u, v: None if (apply(op_n, u, v) + apply(op_n, v, u)).is_zero()
                else {"sum": apply(op_n, u, v) + apply(op_n, v, u)})
    tors = scan("torsion", "T_N(u, v) = 0",
                lambda u, v: None if torsion(cs.op, n, u, v).is_zero()
                else {"torsion": torsion(cs.op, n, u, v)})
    report = combine("dirac_nijenhuis", [closed, skew, tors])
    if report.passed:
        jac = None
        for (a, u), (b, v), (c, w) in itertools.product(enumerate(basis), repeat=3):
            dfc = jacobi_defect(op_n, u, v, w)
            if not dfc.is_zero():
                jac = {"basis": (a, b, c), "defect": dfc}
                break
        hom = scan("homomorphism", "N(u o_N v) = Nu o Nv",
                   lambda u, v: None if n(apply(op_n, u, v)) == apply(cs.op, n(u), n(v))
                   else {"lhs": n(apply(op_n, u, v)), "rhs": apply(cs.op, n(u), n(v))})
        lie = (CheckReport.ok("lie_on_L", "o_N satisfies Jacobi on L") if jac is None
               else CheckReport.failed("lie_on_L", "o_N violates Jacobi on L", jac))
        consequences = combine("dirac_nijenhuis_consequences", [lie, hom])
        report.info["consequences"] = consequences.verdict
        if not consequences.passed:
            # a Dirac-Nijenhuis pair must satisfy these; surface the contradiction
            return CheckReport.failed("dirac_nijenhuis", "consequence check failed",
                                      consequences.witness, consequences="fail")
    return report


def _blocks_matrix(b):
    return [list(r) for r in b]


def bialgebroid_nijenhuis_conditions(b: LieBialgebra, bt: BlockTensor) -> CheckReport:
    """Condition list for ``(E, E*, N)`` to be a Lie bialgebra-Nijenhuis structure.

    Conditions are checked in order: pairedness, skewness and closedness of
    ``Omega`` and ``Lambda``, then the four deformation identities.  The first
    failing condition is reported.
    """
    if bt.n_e != b.dim_e:
        raise DimensionError("block tensor and bialgebra dimensions differ")
    n = b.dim_e
    cs = drinfeld_double(b)
    op = cs.op
    big = bt.assemble()
    ne, lam_b, om_b, nes = (_blocks_matrix(x) for x in
                            (bt.n_e_block, bt.lam, bt.omega, bt.n_estar_block))
    d = 2 * n

    def emb_e(v: Vec) -> Vec:
        return Vec(list(v.coords) + [0] * n)

    def emb_s(v: Vec) -> Vec:
        return Vec([0] * n + list(v.coords))

    def part_e(v: Vec) -> Vec:
        return Vec(v.coords[:n])

    def part_s(v: Vec) -> Vec:
        return Vec(v.coords[n:])

    def mat(m):
        return lambda v: Vec(linalg.matvec(m, v.coords))

    N_E, N_S, OM, LA = mat(ne), mat(nes), mat(om_b), mat(lam_b)
    prod = lambda u, v: apply(op, u, v)  # noqa: E731
    br_e = lambda x, y: part_e(prod(emb_e(x), emb_e(y)))  # noqa: E731
    br_s = lambda a, c: part_s(prod(emb_s(a), emb_s(c)))  # noqa: E731

    def omega_bracket(W, x, y):
        # [X, Y]^W = (WX o Y + X o WY)_E for any map W: E -> E*
        return part_e(prod(emb_s(W(x)), emb_e(y)) + prod(emb_e(x), emb_s(W(y))))

    def omega_d(W, x, y):
        # (WX o Y + X o WY - W(X o Y))_E*, the map-level differential
        return part_s(prod(emb_s(W(x)), emb_e(y)) + prod(emb_e(x), emb_s(W(y)))) - W(br_e(x, y))

    def lambda_bracket(P, a, c):
        return part_s(prod(emb_e(P(a)), emb_s(c)) + prod(emb_s(a), emb_e(P(c))))

    def lambda_d(P, a, c):
        return part_e(prod(emb_e(P(a)), emb_s(c)) + prod(emb_s(a), emb_e(P(c)))) - P(br_s(a, c))

    def contracted(br, T, x, y):
        return br(T(x), y) + br(x, T(y)) - T(br(x, y))

    def lie_torsion(br, T, x, y):
        return br(T(x), T(y)) - T(contracted(br, T, x, y))

    e = [Vec.basis(n, i) for i in range(n)]
    reports = []

    lam_sum = linalg.madd(ne, linalg.transpose(nes))
    lam = linalg.scalar_multiple_of_identity(lam_sum)
    if lam is None:
        reports.append(CheckReport.failed("paired", "N_E + tN_E* is not a multiple of I",
                                          {"N_E+tN_Estar": lam_sum}))
    else:
        reports.append(CheckReport.ok("paired", f"N_E + tN_E* = {format_scalar(lam)} I"))

    def skew_check(name, m):
        for i, j in itertools.product(range(n), repeat=2):
            if m[i][j] != -m[j][i]:
                return CheckReport.failed(name, "block is not skew-symmetric",
                                          {"entry": (i, j), "value": m[i][j], "transposed": m[j][i]})
        return CheckReport.ok(name, "block is skew-symmetric")

    reports.append(skew_check("omega_skew", om_b))
    reports.append(skew_check("lambda_skew", lam_b))

    def pair_scan(name, cert, fn):
        for i, j in itertools.product(range(n), repeat=2):
            v = fn(e[i], e[j])
            if not v.is_zero():
                return CheckReport.failed(name, cert, {"basis": (i, j), "value": v})
        return CheckReport.ok(name, f"{cert} on all {n * n} basis pairs")

    reports.append(pair_scan("omega_closed_d7", "d_E Omega = 0", lambda x, y: omega_d(OM, x, y)))
    reports.append(pair_scan("lambda_closed", "d_E* Lambda = 0", lambda a, c: lambda_d(LA, a, c)))

    om_ne = lambda x: OM(N_E(x))  # noqa: E731
    la_ns = lambda a: LA(N_S(a))  # noqa: E731
    br_om = lambda x, y: omega_bracket(OM, x, y)  # noqa: E731
    br_la = lambda a, c: lambda_bracket(LA, a, c)  # noqa: E731

    reports.append(pair_scan(
        "identity_E", "T_NE + [,]^Omega_NE - [,]^(Omega NE) = 0",
        lambda x, y: lie_torsion(br_e, N_E, x, y) + contracted(br_om, N_E, x, y)
        - omega_bracket(om_ne, x, y)))
    reports.append(pair_scan(
        "identity_v2", "[OX, OY]_E* - O([X,Y]^O) - d_E(O NE) = 0",
        lambda x, y: br_s(OM(x), OM(y)) - OM(br_om(x, y)) - omega_d(om_ne, x, y)))
    reports.append(pair_scan(
        "identity_v3", "T_NE* + [,]^Lambda_NE* - [,]^(Lambda NE*) = 0",
        lambda a, c: lie_torsion(br_s, N_S, a, c) + contracted(br_la, N_S, a, c)
        - lambda_bracket(la_ns, a, c)))
    reports.append(pair_scan(
        "identity_E*", "[La, Lc]_E - L([a,c]^L) - d_E*(L NE*) = 0",
        lambda a, c: br_e(LA(a), LA(c)) - LA(br_la(a, c)) - lambda_d(la_ns, a, c)))

    report = combine("bialgebroid_nijenhuis", reports, **({"lambda": lam} if lam is not None else {}))

    # the defining semantics: paired, and E, E* each Dirac-Nijenhuis for N
    sem = []
    paired = is_paired(big, cs.pairing)
    sem.append(CheckReport.ok("paired", "N + N* = lam I") if paired is not None
               else CheckReport.failed("paired", "N + N* is not scalar", {"N": big}))
    for name, idx in (("E", range(n)), ("E*", range(n, d))):
        r = is_dirac_nijenhuis(cs, Subspace.coordinate(d, list(idx)), big)
        sem.append(replace(r, name=f"dirac_nijenhuis_{name}"))
    semantic = combine("outer_nijenhuis_on_E_and_Estar", sem)
    report.info["semantic_verdict"] = semantic.verdict
    report.info["agrees_with_semantics"] = semantic.passed == report.passed
    return report
