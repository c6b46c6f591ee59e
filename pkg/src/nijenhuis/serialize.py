"""JSON readers for every input object; writers are the objects' ``to_json`` methods."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .core_algebra import BilinearOp, OneOneTensor
from .courant_fd import BlockTensor, CourantStructure, LieBialgebra, Pairing, Subspace, drinfeld_double
from .courant_tm import CourantTensor
from .errors import DimensionError, ParseError
from .exact_poly import MultiPoly
from .poly_cartan import PolyBivector, PolyForm, PolyOneOne, PolyVectorField

__all__ = [
    "load_json",
    "read_op",
    "read_tensor",
    "read_pairing",
    "read_courant",
    "read_bialgebra",
    "read_subspace",
    "read_block_tensor",
    "read_oneone",
    "read_form",
    "read_bivector",
    "read_vector_field",
    "read_courant_tensor",
]


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _need(doc: Any, *keys: str, what: str) -> None:
    if not isinstance(doc, dict):
        raise ParseError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"{what}: missing key(s) {', '.join(missing)}")


def read_op(doc: dict) -> BilinearOp:
    if isinstance(doc, dict) and "c" not in doc and isinstance(doc.get("op"), dict):
        doc = doc["op"]  # a Courant structure stands for its product
    _need(doc, "dim", "c", what="bilinear operation")
    return BilinearOp(doc["dim"], doc["c"])


def read_tensor(doc: dict) -> OneOneTensor:
    _need(doc, "dim", "m", what="tensor")
    return OneOneTensor(doc["dim"], doc["m"])


def read_pairing(doc: dict) -> Pairing:
    _need(doc, "dim", "g", what="pairing")
    return Pairing(doc["dim"], doc["g"])


def read_bialgebra(doc: dict) -> LieBialgebra:
    _need(doc, "dim_e", "bracket_e", "bracket_estar", what="bialgebra")
    return LieBialgebra(doc["dim_e"], read_op(doc["bracket_e"]), read_op(doc["bracket_estar"]))


def read_courant(doc: dict) -> CourantStructure:
    """A Courant structure, given either directly or as a bialgebra to double."""
    if isinstance(doc, dict) and "dim_e" in doc:
        return drinfeld_double(read_bialgebra(doc))
    _need(doc, "op", "pairing", what="Courant structure")
    return CourantStructure(read_op(doc["op"]), read_pairing(doc["pairing"]))


def read_subspace(doc: dict) -> Subspace:
    _need(doc, "ambient_dim", "basis", what="subspace")
    return Subspace(doc["ambient_dim"], doc["basis"])


def read_block_tensor(doc: dict) -> BlockTensor:
    _need(doc, "N_E", "Lambda", "Omega", "N_Estar", what="block tensor")
    bt = BlockTensor.from_blocks(doc["N_E"], doc["Lambda"], doc["Omega"], doc["N_Estar"])
    if "n_e" in doc and doc["n_e"] != bt.n_e:
        raise DimensionError(f"block tensor: n_e = {doc['n_e']} but blocks are {bt.n_e}x{bt.n_e}")
    return bt


def _poly(n: int, s, where: str) -> MultiPoly:
    if isinstance(s, int):
        return MultiPoly.constant(n, s)
    if not isinstance(s, str):
        raise ParseError(f"{where}: polynomial entries must be strings")
    try:
        return MultiPoly.parse(s, n)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _poly_matrix(n: int, m, where: str) -> list[list[MultiPoly]]:
    if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
        raise DimensionError(f"{where}: expected an {n}x{n} matrix")
    return [[_poly(n, x, f"{where}[{i + 1}][{j + 1}]") for j, x in enumerate(r)] for i, r in enumerate(m)]


_INDEX = re.compile(r"^\s*\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]\s*$")


def _index(key: str, n: int, where: str) -> tuple[int, ...]:
    m = _INDEX.match(key)
    if not m:
        raise ParseError(f"{where}: bad index key {key!r} (expected e.g. \"[1,2]\")")
    idx = tuple(int(t) - 1 for t in m.group(1).split(",")) if m.group(1) else ()
    if any(not 0 <= i < n for i in idx):
        raise DimensionError(f"{where}: index {key} out of range for n = {n}")
    return idx


def _components(n: int, comps, where: str) -> dict[tuple[int, ...], MultiPoly]:
    if not isinstance(comps, dict):
        raise ParseError(f"{where}: components must be an object")
    return {_index(k, n, where): _poly(n, v, f"{where}{k}") for k, v in comps.items()}


def read_oneone(doc: dict) -> PolyOneOne:
    _need(doc, "n", "m", what="polynomial tensor")
    return PolyOneOne(doc["n"], _poly_matrix(doc["n"], doc["m"], "m"))


def read_form(doc: dict) -> PolyForm:
    _need(doc, "n", "degree", "components", what="form")
    n = doc["n"]
    comps = _components(n, doc["components"], "form")
    if any(len(k) != doc["degree"] for k in comps):
        raise DimensionError(f"form: every index must have length {doc['degree']}")
    return PolyForm(n, doc["degree"], comps)


def read_bivector(doc: dict) -> PolyBivector:
    _need(doc, "n", "components", what="bivector")
    comps = _components(doc["n"], doc["components"], "bivector")
    if any(len(k) != 2 for k in comps):
        raise DimensionError("bivector: every index must have length 2")
    return PolyBivector(doc["n"], comps)


def read_vector_field(doc: dict) -> PolyVectorField:
    _need(doc, "n", "components", what="vector field")
    n = doc["n"]
    return PolyVectorField(n, [_poly(n, c, f"vector[{i + 1}]") for i, c in enumerate(doc["components"])])


def read_courant_tensor(doc: dict) -> CourantTensor:
    _need(doc, "n", what="Courant tensor")
    n = doc["n"]
    n0 = PolyOneOne(n, _poly_matrix(n, doc["N0"], "N0")) if "N0" in doc else None
    m1 = PolyOneOne(n, _poly_matrix(n, doc["N1"], "N1")) if "N1" in doc else None
    lam = PolyBivector(n, _components(n, doc.get("Lambda", {}), "Lambda"))
    omega = PolyForm(n, 2, _components(n, doc.get("Omega", {}), "Omega"))
    return CourantTensor(n, n0=n0, lam=lam, omega=omega, m1=m1)
