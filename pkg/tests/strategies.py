"""Hypothesis strategies for exact objects."""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from nijenhuis.core_algebra import OneOneTensor, Vec
from nijenhuis.exact_poly import MultiPoly
from nijenhuis.poly_cartan import PolyForm, PolyOneOne, PolyVectorField

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(min_value=-3, max_value=3)


def polys(n: int, max_deg: int = 2, max_terms: int = 3):
    exps = st.tuples(*[st.integers(0, max_deg)] * n).filter(lambda e: sum(e) <= max_deg)
    return st.dictionaries(exps, rationals, max_size=max_terms).map(lambda d: MultiPoly(n, d))


def vector_fields(n: int, max_deg: int = 2):
    return st.lists(polys(n, max_deg), min_size=n, max_size=n).map(lambda c: PolyVectorField(n, c))


def forms(n: int, degree: int, max_deg: int = 2):
    keys = list(itertools.combinations(range(n), degree))
    return st.lists(polys(n, max_deg, 2), min_size=len(keys), max_size=len(keys)).map(
        lambda cs: PolyForm(n, degree, dict(zip(keys, cs))))


def poly_tensors(n: int, max_deg: int = 1):
    return st.lists(st.lists(polys(n, max_deg, 2), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(lambda m: PolyOneOne(n, m))


def vecs(dim: int):
    return st.lists(small_ints, min_size=dim, max_size=dim).map(Vec)


def tensors(dim: int):
    return st.lists(st.lists(small_ints, min_size=dim, max_size=dim),
                    min_size=dim, max_size=dim).map(lambda m: OneOneTensor(dim, m))


__all__ = ["Fraction", "rationals", "small_ints", "polys", "vector_fields", "forms",
           "poly_tensors", "vecs", "tensors"]
