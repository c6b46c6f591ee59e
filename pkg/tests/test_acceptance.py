"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (visible with
``pytest -s`` or by running this file directly) and then asserts.
"""

import itertools
import random
import time

from nijenhuis import catalogue
from nijenhuis.core_algebra import (
    NEITHER,
    NIJENHUIS,
    WEAK_NIJENHUIS,
    OneOneTensor,
    Vec,
    classify_tensor,
    compatibility_defect,
    contract,
    is_leibniz,
    jacobi_defect,
    leibniz_coboundary_on_torsion,
    torsion_coboundary,
)
from nijenhuis.courant_fd import check_courant_axioms, drinfeld_double
from nijenhuis.courant_tm import (
    CourantSection,
    CourantTensor,
    DiracGraph,
    TestFamily,
    check_graph_dirac,
    check_poisson_nijenhuis_weak,
    check_presymplectic_nijenhuis,
    check_trivial_bialgebroid_nijenhuis,
    courant_nijenhuis_test,
    deformed_product,
    form_bracket,
    verify_lemma2,
    verify_theorem2,
)
from nijenhuis.exact_poly import MultiPoly
from nijenhuis.poly_cartan import PolyBivector, PolyForm, PolyOneOne

SEED = 20240601
PENCIL = ("-2", "-1", "1/2", "1", "3")


def _report(k: int, ok: bool, detail: str) -> None:
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def _pairs(count: int = 120):
    rng = random.Random(SEED)
    out = []
    for k in range(count):
        dim = 2 + k % 3
        name, op = catalogue.random_leibniz(rng, dim)
        out.append((name, op, catalogue.random_tensor(rng, dim)))
    return out


def _basis(dim):
    return [Vec.basis(dim, i) for i in range(dim)]


def P(s, n=2):
    return MultiPoly.parse(s, n)


def criterion_1():
    start = time.perf_counter()
    pairs = _pairs()
    bad = None
    for name, op, n in pairs:
        e = _basis(op.dim)
        for x, y, z in itertools.product(e, repeat=3):
            if not compatibility_defect(op, n, x, y, z).is_zero():
                bad = (name, n)
                break
        if bad:
            break
    elapsed = time.perf_counter() - start
    ok = bad is None and len(pairs) >= 100 and elapsed < 10
    return ok, f"compatibility defect zero on {len(pairs)} pairs, dims 2-4, {elapsed:.1f}s" + (f"; {bad}" if bad else "")


def criterion_2():
    pairs = _pairs()
    checked = 0
    for name, op, n in pairs:
        on = contract(op, n)
        dt = torsion_coboundary(op, n)
        e = _basis(op.dim)
        for (i, x), (j, y), (k, z) in itertools.product(enumerate(e), repeat=3):
            if jacobi_defect(on, x, y, z) != dt[(i, j, k)]:
                return False, f"mismatch for {name} at {(i, j, k)}"
            checked += 1
        # pointwise form on a generic triple
        x, y, z = Vec(range(1, op.dim + 1)), Vec([1] * op.dim), Vec([(-1) ** i for i in range(op.dim)])
        if jacobi_defect(on, x, y, z) != leibniz_coboundary_on_torsion(op, n, x, y, z):
            return False, f"mismatch for {name} on a generic triple"
    return True, f"Jacobiator of the contraction equals the torsion coboundary on {checked} basis triples of {len(pairs)} pairs"


def criterion_3():
    kinds = {NIJENHUIS: 0, WEAK_NIJENHUIS: 0, NEITHER: 0}
    double = catalogue.axb_double().op
    instances = [(op, n) for _, op, n in _pairs(60)]
    instances += [(double, n) for n in itertools.islice(catalogue.sparse_tensors(4, 1), 0, 16)]
    from fractions import Fraction
    for op, n in instances:
        kind, _ = classify_tensor(op, n)
        kinds[kind] += 1
        leibniz = is_leibniz(contract(op, n)).passed
        if leibniz != (kind != NEITHER):
            return False, f"biconditional broken for {n}"
        if kind != NEITHER:
            for lam in PENCIL:
                if not is_leibniz(contract(op, n) + op.scale(Fraction(lam))).passed:
                    return False, f"pencil fails at lambda={lam} for {n}"
    neither = catalogue.find_tensor(double, NEITHER)
    kind, rep = classify_tensor(double, neither)
    witness = is_leibniz(contract(double, neither))
    ok = (kinds[NEITHER] > 0 and kinds[WEAK_NIJENHUIS] > 0 and kinds[NIJENHUIS] > 0
          and kind == NEITHER and not witness.passed)
    return ok, (f"{len(instances)} instances {kinds}; non-Leibniz contraction at triple "
                f"{witness.witness['triple']} for coboundary triple {rep.witness['triple']}; pencil {', '.join(PENCIL)}")


def criterion_4():
    good = check_courant_axioms(catalogue.axb_double())
    bad = check_courant_axioms(drinfeld_double(catalogue.corrupted_axb_bialgebra()))
    ok = good.passed and not bad.passed and bad.witness is not None
    return ok, (f"ax+b double: {good.verdict} ({', '.join(good.info['subchecks'])}); corrupted cobracket: "
                f"{bad.verdict} at {bad.witness['failed_check']} triple {bad.witness.get('triple')}")


def criterion_5():
    start = time.perf_counter()
    fam = TestFamily(2, 2)
    tensors = {"I": PolyOneOne.identity(2), "J": PolyOneOne(2, [[0, -1], [1, 0]]),
               "[[0,1],[0,0]]": PolyOneOne(2, [[0, 1], [0, 0]]), "diag(1,2)": PolyOneOne.diag(1, 2),
               "diag(x1,x2)": PolyOneOne.diag(P("x1"), P("x2"))}
    failed = [k for k, n0 in tensors.items() if not verify_theorem2(n0, fam).passed]
    elapsed = time.perf_counter() - start
    return not failed and elapsed < 30, f"contracted-bracket formula on {len(tensors)} tensors, degree 2, {elapsed:.1f}s; failed {failed}"


def criterion_6():
    fam = TestFamily(2, 2)
    cases = [("J", PolyOneOne(2, [[0, -1], [1, 0]]), True), ("diag(1,-1)", PolyOneOne.diag(1, -1), True),
             ("[[0,1],[0,0]]", PolyOneOne(2, [[0, 1], [0, 0]]), True), ("diag(1,2)", PolyOneOne.diag(1, 2), False)]
    parts = []
    ok = True
    for name, n0, expect in cases:
        rep = courant_nijenhuis_test(n0, fam)
        agree = rep.info["verdicts_agree"] and rep.info["square_is_scalar"] == rep.passed
        ok &= rep.passed == expect and agree
        if not rep.passed:
            ok &= rep.witness is not None
            parts.append(f"{name} fails at {rep.witness['first']}, {rep.witness['second']}")
        else:
            parts.append(f"{name} passes (lambda={rep.info['lambda']})")
    return ok, "; ".join(parts)


def criterion_7():
    fam = TestFamily(2, 2)
    three = verify_lemma2(PolyOneOne.identity(2, 3), fam)
    ok = three.passed and three.info["lambda"] == 3
    parts = [f"3I passes, lambda={three.info['lambda']}"]
    for name, K in (("diag(1,2)", PolyOneOne.diag(1, 2)), ("x1*I", PolyOneOne.identity(2, P("x1")))):
        rep = verify_lemma2(K, fam)
        ok &= not rep.passed and rep.info["implication_holds"]
        parts.append(f"{name} fails at X={rep.witness['X']}, Y={rep.witness['Y']}")
    return ok, "; ".join(parts)


def criterion_8():
    fam = TestFamily(2, 2)
    form = check_graph_dirac(DiracGraph.of_form(PolyForm.coordinate(2, (0, 1))), fam)
    biv = check_graph_dirac(DiracGraph.of_bivector(PolyBivector(2, {(0, 1): 1})), fam)
    ok = form.passed and biv.passed
    return ok, f"graph of dx^dy: {form.info['subchecks']}; graph of d1^d2: {biv.info['subchecks']}"


def criterion_9():
    fam = TestFamily(2, 1)
    omegas = [PolyForm.coordinate(2, (0, 1), P(s)) for s in ("1", "x1", "1 + x2")]
    n0s = [PolyOneOne.identity(2), PolyOneOne.identity(2, 2), PolyOneOne(2, [[0, -1], [1, 0]]),
           PolyOneOne.diag(1, 2), PolyOneOne.diag(P("x1"), P("x1")), PolyOneOne.diag(P("x1"), P("x2")),
           PolyOneOne(2, [[0, 1], [0, 0]])]
    verdicts = []
    for omega, n0 in itertools.product(omegas, n0s):
        rep = check_presymplectic_nijenhuis(omega, n0, fam)
        if not rep.info["agrees_with_semantics"]:
            return False, f"verdict paths disagree for {omega}, {n0}"
        verdicts.append(rep.passed)
    rep3 = check_presymplectic_nijenhuis(PolyForm.coordinate(3, (1, 2), P("x1", 3)), PolyOneOne.identity(3),
                                         TestFamily(3, 1))
    verdicts.append(rep3.passed)
    weak = check_poisson_nijenhuis_weak(PolyBivector(3, {(0, 1): 1}), PolyOneOne.diag(1, 1, P("x1", 3)),
                                        TestFamily(3, 1))
    ok = (rep3.info["agrees_with_semantics"] and len(verdicts) >= 20 and any(verdicts)
          and not all(verdicts) and weak.info["weak_only"])
    return ok, (f"{len(verdicts)} (Omega, N0) instances agree, {sum(verdicts)} pass, "
                f"{len(verdicts) - sum(verdicts)} fail; weak-only PN instance Lambda=d1^d2, N0=diag(1,1,x1) on R^3 "
                f"(strong fails at {weak.info.get('strong_failed_check')})")


def criterion_10():
    fam = TestFamily(2, 2)
    lam = PolyBivector(2, {(0, 1): 1})
    N = CourantTensor.triangular(lam, diagonal=1)
    tri = check_trivial_bialgebroid_nijenhuis(N, fam)
    brackets = all(
        deformed_product(CourantSection.from_form(a), CourantSection.from_form(b), N).form
        == form_bracket(lam.sharp, a, b)
        for a, b in itertools.product(fam.one_forms, repeat=2))
    bad = check_trivial_bialgebroid_nijenhuis(
        CourantTensor.scalar_split(0, PolyOneOne.diag(1, 2), omega=PolyForm.coordinate(2, (0, 1))), fam)
    at_w2 = not bad.passed and bad.witness["failed_check"] == "w2"
    ok = tri.passed and brackets and at_w2
    return ok, (f"triangular tensor {tri.verdict} (lambda={tri.info['lambda']}), contracted T*M bracket "
                f"{'equals' if brackets else 'differs from'} [xi,eta]^Lambda; violating tensor fails at "
                f"{bad.witness['failed_check']} with X={bad.witness['X']}, Y={bad.witness['Y']}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def test_criterion_1():
    _report(1, *criterion_1())


def test_criterion_2():
    _report(2, *criterion_2())


def test_criterion_3():
    _report(3, *criterion_3())


def test_criterion_4():
    _report(4, *criterion_4())


def test_criterion_5():
    _report(5, *criterion_5())


def test_criterion_6():
    _report(6, *criterion_6())


def test_criterion_7():
    _report(7, *criterion_7())


def test_criterion_8():
    _report(8, *criterion_8())


def test_criterion_9():
    _report(9, *criterion_9())


def test_criterion_10():
    _report(10, *criterion_10())


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
