"""Reading the JSON documents consumed by the command line."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .core import LambdaGraphSystem
from .dyck import MarkovDyck
from .errors import StructuralError
from .finite_group import FiniteGroup, load_group
from .sms import SymbolicMatrixSystem, lgs_to_sms, sms_to_lgs
from .subshift import EdgeSFT, ForbiddenWords, PresentedLanguage, SkewProduct, SubshiftSpec


def load_json(path: str | Path):
    """Parse a file; syntax errors become :class:`StructuralError` located at ``file:line:column``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StructuralError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _field(doc: Mapping, key: str, where: str = "$"):
    if not isinstance(doc, Mapping):
        raise StructuralError("expected an object", where)
    if key not in doc:
        raise StructuralError(f"missing field {key!r}", where)
    return doc[key]


def spec_from_dict(doc: Mapping, where: str = "$") -> SubshiftSpec:
    kind = _field(doc, "kind", where)
    if kind == "edge_sft":
        return EdgeSFT(tuple(_field(doc, "vertices", where)), tuple(tuple(e) for e in _field(doc, "edges", where)))
    if kind == "forbidden":
        return ForbiddenWords(tuple(_field(doc, "alphabet", where)), tuple(tuple(w) for w in _field(doc, "forbidden", where)))
    if kind == "markov_dyck":
        return MarkovDyck(_field(doc, "matrix", where))
    if kind == "skew":
        base = spec_from_dict(_field(doc, "base", where), f"{where}.base")
        group = load_group(_field(doc, "group", where))
        return SkewProduct(base, group, labeling_from_dict(_field(doc, "labeling", where)))
    if kind == "lgs":
        return PresentedLanguage(LambdaGraphSystem.from_dict(_field(doc, "lgs", where)))
    raise StructuralError(f"unknown spec kind {kind!r}", f"{where}.kind")


def labeling_from_dict(doc) -> dict[str, str]:
    if not isinstance(doc, Mapping):
        raise StructuralError("labeling must be an object mapping symbols to group elements", "labeling")
    return {str(k): str(v) for k, v in doc.items()}


def group_from_arg(value: str) -> FiniteGroup:
    """``Z3``, ``S3`` or a path to a group document."""
    if value[:1] in "ZS" and value[1:].isdigit():
        return load_group({"cyclic" if value[0] == "Z" else "symmetric": int(value[1:])})
    return load_group(load_json(value))


def is_sms_document(doc) -> bool:
    return isinstance(doc, Mapping) and "M" in doc


def lgs_from_document(doc) -> LambdaGraphSystem:
    """Accept a λ-graph system document or a symbolic matrix system document."""
    if is_sms_document(doc):
        return sms_to_lgs(SymbolicMatrixSystem.from_dict(doc))
    return LambdaGraphSystem.from_dict(doc)


def sms_from_document(doc) -> SymbolicMatrixSystem:
    if is_sms_document(doc):
        return SymbolicMatrixSystem.from_dict(doc)
    return lgs_to_sms(LambdaGraphSystem.from_dict(doc))
