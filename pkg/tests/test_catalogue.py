import random

from nijenhuis import catalogue
from nijenhuis.core_algebra import NEITHER, NIJENHUIS, WEAK_NIJENHUIS, classify_tensor, is_leibniz


def test_library_is_leibniz():
    for dim, entries in catalogue.leibniz_library().items():
        for name, op in entries:
            assert op.dim == dim
            assert is_leibniz(op).passed, name


def test_non_lie_entries_are_not_skew():
    assert not catalogue.non_lie_leibniz().is_skew()
    assert not catalogue.non_lie_leibniz_3().is_skew()
    assert catalogue.sl2().is_skew()


def test_random_leibniz_is_seeded_and_leibniz():
    a = [catalogue.random_leibniz(random.Random(7), d) for d in (2, 3, 4)]
    b = [catalogue.random_leibniz(random.Random(7), d) for d in (2, 3, 4)]
    assert a == b
    for _, op in a:
        assert is_leibniz(op).passed


def test_sparse_tensors_count():
    # 16 cells: 16*2 singles plus C(16,2)*4 pairs
    assert sum(1 for _ in catalogue.sparse_tensors(4)) == 32 + 120 * 4


def test_find_tensor_on_double():
    op = catalogue.axb_double().op
    weak = catalogue.find_tensor(op, WEAK_NIJENHUIS)
    assert weak.m[2][2] == 1 and sum(abs(x) for r in weak.m for x in r) == 1
    assert classify_tensor(op, weak)[0] == WEAK_NIJENHUIS
    neither = catalogue.find_tensor(op, NEITHER)
    assert neither.m[1][2] == 1
    assert catalogue.find_tensor(op, NIJENHUIS) is not None
