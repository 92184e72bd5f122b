"""Load presentation files (JSON) into kernel objects.

Every file has a ``kind`` and a ``base_field`` (``{"type": "Q"}`` or
``{"type": "Fp", "p": 5}``); structure constants are 0-based ``[i, j, k, value]``
quadruples, with values given as integers or strings such as ``"3/2"``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from essalg.errors import InputError
from essalg.homology import Bimodule, FinDimAlgebra
from essalg.lie_env import LieAlgebra, LieModule
from essalg.nc_algebra import AlgebraMorphism, NCPresentation
from essalg.ring_core import QQ, CommPresentation, MonomialOrder, field_from_json

KINDS = ("nc_presentation", "comm_presentation", "findim_algebra", "lie_algebra", "bimodule", "morphism")


def read_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _require(data: dict, key: str, kind: str) -> Any:
    if key not in data:
        raise InputError(f"{kind} file is missing {key!r}")
    return data[key]


def _field(data: dict):
    return field_from_json(data["base_field"]) if "base_field" in data else QQ


def _string_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InputError(f"{what} must be a list of strings")
    return value


def _quadruples(value, what: str) -> list[tuple]:
    if not isinstance(value, list):
        raise InputError(f"{what} must be a list of [i, j, k, value] quadruples")
    out = []
    for q in value:
        if not (isinstance(q, list) and len(q) == 4 and all(isinstance(t, int) for t in q[:3])):
            raise InputError(f"bad quadruple {q!r} in {what}")
        out.append(tuple(q))
    return out


def load_object(data: dict, expect: str | tuple[str, ...] | None = None):
    kind = data.get("kind")
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if expect is not None:
        allowed = (expect,) if isinstance(expect, str) else expect
        if kind not in allowed:
            raise InputError(f"expected a {' or '.join(allowed)} file, got {kind}")
    F = _field(data)
    if kind == "nc_presentation":
        gens = _string_list(_require(data, "generators", kind), "generators")
        rels = _string_list(data.get("relations", []), "relations")
        return NCPresentation(gens, rels, bool(data.get("unital", True)), F)
    if kind == "comm_presentation":
        variables = _string_list(_require(data, "variables", kind), "variables")
        rels = _string_list(data.get("relations", []), "relations")
        order = MonomialOrder.parse(data.get("order", "grevlex"))
        return CommPresentation(variables, rels, F, order)
    if kind == "findim_algebra":
        dim = _require(data, "dimension", kind)
        quads = _quadruples(_require(data, "structure_constants", kind), "structure_constants")
        unit = _require(data, "unit", kind)
        return FinDimAlgebra(dim, quads, unit, F, data.get("names"))
    if kind == "lie_algebra":
        return _load_lie(data, F)
    if kind == "bimodule":
        algebra = load_object(_require(data, "algebra", kind), "findim_algebra")
        return Bimodule(algebra, _require(data, "left", kind), _require(data, "right", kind),
                        data.get("name", "M"))
    return _load_morphism(data)


def _load_lie(data: dict, F) -> LieAlgebra:
    kind = "lie_algebra"
    names = _string_list(_require(data, "basis", kind), "basis")
    if "dimension" in data and data["dimension"] != len(names):
        raise InputError(f"dimension {data['dimension']} does not match {len(names)} basis names")
    quads = _quadruples(data.get("structure_constants", []), "structure_constants")
    # fill [x_j, x_i] = -[x_i, x_j] only for pairs given in a single orientation
    pairs = {(q[0], q[1]) for q in quads}
    filled = list(quads)
    for i, j, k, v in quads:
        if (j, i) not in pairs:
            filled.append((j, i, k, F.neg(F(v))))
    return LieAlgebra(names, filled, F)


def load_lie_module(data: dict, g: LieAlgebra) -> LieModule:
    return LieModule(g, _require(data, "matrices", "module"))


def _load_morphism(data: dict) -> AlgebraMorphism:
    kind = "morphism"
    src = load_object(_require(data, "source", kind), ("nc_presentation", "comm_presentation"))
    tgt = load_object(_require(data, "target", kind), ("nc_presentation", "comm_presentation"))
    images = _require(data, "images", kind)
    if not isinstance(images, dict):
        raise InputError("images must map generator names to expressions")
    return AlgebraMorphism.from_strings(src, tgt, images)


def load_file(path: str | Path, expect: str | tuple[str, ...] | None = None):
    return load_object(read_json(path), expect)
