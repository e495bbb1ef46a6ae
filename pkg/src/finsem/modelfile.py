"""Model files: one JSON document holding a model, a lexicon, and named terms.

Schema (all blocks except "entities" may be omitted):

    {
      "entities": ["s1", "b1"],
      "frames": [
        {"label": "W", "elements": ["w0", "w1"],
         "pairs": [["w0", "w1"]], "designated": "w0"}
      ],
      "constants": [
        {"name": "student", "type": "rel(e)",
         "table": [{"index": ["w0"], "value": [["s1"]]},
                   {"index": ["w1"], "value": [["s1"]]}]}
      ],
      "lexicon": {
        "the": {"cat": "D", "sem": "iota"},
        "student": {"cat": "N", "pred": "student"},
        "might": {"cat": "Mod", "frame": "W"}
      },
      "terms": {"example": "(pred student (iota x (pred student x)))"}
    }

A table row's "index" lists one element per frame, in frame order. Values are
encoded by the constant's type: entities and index elements as id strings,
truth values as 0/1, pairs as 2-lists, sets as lists of member encodings,
relations as lists of tuples (lists), finite functions as lists of
[key, value] 2-lists.

The loader collects every schema problem and every model validation
violation before failing, so one pass reports all defects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from .denote import Term, parse_term, render_term
from .fragment import LexEntry
from .kripke import Frame
from .relalg import FinSet, Relation
from .semmodel import (
    Constant,
    EntType,
    Entity,
    FnType,
    FnV,
    IdxType,
    Index,
    IndexElem,
    Model,
    PairType,
    RelType,
    SemType,
    SetType,
    SetV,
    Truth,
    TruthType,
    TupleV,
    Value,
    index_space,
    parse_type,
    render_type,
    validate,
    value_key,
)

TOP_KEYS = ("entities", "frames", "constants", "lexicon", "terms")
LEXICAL_KEYS = {"cat", "pred", "frame", "sem"}


class ModelFileError(Exception):
    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("\n".join(self.problems))


@dataclass(frozen=True)
class ModelFile:
    model: Model
    lexicon: dict[str, LexEntry]
    terms: dict[str, Term]


def load_model_file(path: str) -> ModelFile:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ModelFileError([f"not valid JSON: {err}"]) from None
    return model_file_from_doc(doc)


def model_file_from_doc(doc: Any) -> ModelFile:
    errs: list[str] = []
    if not isinstance(doc, dict):
        raise ModelFileError(["top level must be a JSON object"])
    for key in doc:
        if key not in TOP_KEYS:
            errs.append(f"unknown top-level key {key!r}")

    entities = _str_list(doc.get("entities"), "entities", errs, required=True)
    frames, designated = _load_frames(doc.get("frames", []), errs)
    constants = _load_constants(doc.get("constants", []), frames, errs)

    model: Optional[Model] = None
    if entities is not None:
        try:
            model = Model(
                FinSet("E", tuple(entities)),
                tuple(frames),
                tuple(constants),
                tuple(designated),
            )
        except ValueError as err:
            errs.append(f"model: {err}")
    if model is not None:
        for v in validate(model):
            where = f"constant {v.constant!r}: " if v.constant else ""
            errs.append(f"validation: {where}{v.kind} ({v.detail})")

    lexicon = _load_lexicon(doc.get("lexicon", {}), frames, errs)
    terms = _load_terms(doc.get("terms", {}), constants, errs)

    if errs or model is None:
        raise ModelFileError(errs or ["no model could be built"])
    return ModelFile(model, lexicon, terms)


def _str_list(
    j: Any, where: str, errs: list[str], required: bool = False
) -> Optional[list[str]]:
    if j is None:
        if required:
            errs.append(f"missing required key {where!r}")
        return None
    if not isinstance(j, list) or not all(isinstance(x, str) for x in j):
        errs.append(f"{where} must be a list of strings")
        return None
    return j


def _load_frames(j: Any, errs: list[str]) -> tuple[list[Frame], list[tuple[str, str]]]:
    frames: list[Frame] = []
    designated: list[tuple[str, str]] = []
    if not isinstance(j, list):
        errs.append("frames must be a list")
        return frames, designated
    for i, fj in enumerate(j):
        where = f"frames[{i}]"
        if not isinstance(fj, dict):
            errs.append(f"{where} must be an object")
            continue
        for key in fj:
            if key not in ("label", "elements", "pairs", "designated"):
                errs.append(f"{where}: unknown key {key!r}")
        label = fj.get("label")
        if not isinstance(label, str):
            errs.append(f"{where}: label must be a string")
            continue
        elements = _str_list(fj.get("elements"), f"{where}.elements", errs, True)
        if elements is None:
            continue
        pairs_j = fj.get("pairs", [])
        ok_pairs = True
        if not isinstance(pairs_j, list):
            errs.append(f"{where}.pairs must be a list")
            continue
        pairs = set()
        for pj in pairs_j:
            if (
                not isinstance(pj, list)
                or len(pj) != 2
                or not all(isinstance(x, str) for x in pj)
            ):
                errs.append(f"{where}.pairs entries must be 2-lists of strings")
                ok_pairs = False
                break
            pairs.add((pj[0], pj[1]))
        if not ok_pairs:
            continue
        try:
            carrier = FinSet(label, tuple(elements))
            frame = Frame(label, carrier, Relation(carrier, carrier, frozenset(pairs)))
        except ValueError as err:
            errs.append(f"{where}: {err}")
            continue
        frames.append(frame)
        d = fj.get("designated")
        if d is not None:
            if not isinstance(d, str) or d not in carrier:
                errs.append(f"{where}: designated must name one of the elements")
            else:
                designated.append((label, d))
    return frames, designated


def _load_constants(
    j: Any, frames: list[Frame], errs: list[str]
) -> list[Constant]:
    out: list[Constant] = []
    if not isinstance(j, list):
        errs.append("constants must be a list")
        return out
    labels = [f.label for f in frames]
    for i, cj in enumerate(j):
        where = f"constants[{i}]"
        if not isinstance(cj, dict):
            errs.append(f"{where} must be an object")
            continue
        for key in cj:
            if key not in ("name", "type", "table"):
                errs.append(f"{where}: unknown key {key!r}")
        name = cj.get("name")
        if not isinstance(name, str):
            errs.append(f"{where}: name must be a string")
            continue
        where = f"constant {name!r}"
        try:
            semtype = parse_type(cj.get("type", ""))
        except ValueError as err:
            errs.append(f"{where}: {err}")
            continue
        table: list[tuple[Index, Value]] = []
        rows = cj.get("table", [])
        if not isinstance(rows, list):
            errs.append(f"{where}: table must be a list")
            continue
        for k, row in enumerate(rows):
            rw = f"{where} table[{k}]"
            if not isinstance(row, dict) or set(row) - {"index", "value"}:
                errs.append(f"{rw}: rows are objects with index and value")
                continue
            idx_j = _str_list(row.get("index"), f"{rw}.index", errs, True)
            if idx_j is None:
                continue
            if len(idx_j) != len(labels):
                errs.append(
                    f"{rw}: index has {len(idx_j)} components, model has "
                    f"{len(labels)} frames"
                )
                continue
            idx = Index(tuple(zip(labels, idx_j)))
            val = decode_value(row.get("value"), semtype, errs, f"{rw}.value")
            if val is None:
                continue
            table.append((idx, val))
        out.append(Constant(name, semtype, tuple(table)))
    return out


def _load_lexicon(
    j: Any, frames: list[Frame], errs: list[str]
) -> dict[str, LexEntry]:
    out: dict[str, LexEntry] = {}
    if not isinstance(j, dict):
        errs.append("lexicon must be an object")
        return out
    for word, ej in j.items():
        where = f"lexicon[{word!r}]"
        if not isinstance(ej, dict):
            errs.append(f"{where} must be an object")
            continue
        for key in ej:
            if key not in LEXICAL_KEYS:
                errs.append(f"{where}: unknown key {key!r}")
        cat = ej.get("cat")
        if cat not in ("D", "N", "V", "Mod"):
            errs.append(f"{where}: cat must be one of D, N, V, Mod")
            continue
        if cat in ("N", "V") and not isinstance(ej.get("pred"), str):
            errs.append(f"{where}: {cat} entries need a pred")
            continue
        if cat == "Mod":
            frame = ej.get("frame")
            if not isinstance(frame, str) or all(f.label != frame for f in frames):
                errs.append(f"{where}: Mod entries need a frame the model declares")
                continue
        if cat == "D" and ej.get("sem") != "iota":
            errs.append(f"{where}: D entries need sem \"iota\"")
            continue
        out[word] = LexEntry(
            word=word,
            cat=cat,
            pred=ej.get("pred"),
            frame=ej.get("frame"),
            sem=ej.get("sem"),
        )
    return out


def _load_terms(
    j: Any, constants: list[Constant], errs: list[str]
) -> dict[str, Term]:
    out: dict[str, Term] = {}
    if not isinstance(j, dict):
        errs.append("terms must be an object")
        return out
    names = frozenset(c.name for c in constants)
    for name, tj in j.items():
        if not isinstance(tj, str):
            errs.append(f"terms[{name!r}] must be a string")
            continue
        try:
            out[name] = parse_term(tj, names)
        except ValueError as err:
            errs.append(f"terms[{name!r}]: {err}")
    return out


# ---------------------------------------------------------------------------
# value coding


def decode_value(
    j: Any, t: SemType, errs: list[str], where: str
) -> Optional[Value]:
    match t:
        case EntType():
            if isinstance(j, str):
                return Entity(j)
            errs.append(f"{where}: expected an entity id string")
        case TruthType():
            if isinstance(j, int) and not isinstance(j, bool) and j in (0, 1):
                return Truth(j)
            errs.append(f"{where}: expected 0 or 1")
        case IdxType(label):
            if isinstance(j, str):
                return IndexElem(label, j)
            errs.append(f"{where}: expected an element id string")
        case PairType(a, b):
            if isinstance(j, list) and len(j) == 2:
                first = decode_value(j[0], a, errs, f"{where}[0]")
                second = decode_value(j[1], b, errs, f"{where}[1]")
                if first is not None and second is not None:
                    return TupleV((first, second))
            else:
                errs.append(f"{where}: expected a 2-list")
        case SetType(member):
            if isinstance(j, list):
                vals = [
                    decode_value(x, member, errs, f"{where}[{i}]")
                    for i, x in enumerate(j)
                ]
                if all(v is not None for v in vals):
                    if len(set(vals)) != len(vals):
                        errs.append(f"{where}: duplicate set member")
                        return None
                    return SetV(frozenset(vals))
            else:
                errs.append(f"{where}: expected a list of members")
        case RelType(components):
            if isinstance(j, list):
                rows: list[Value] = []
                ok = True
                for i, row in enumerate(j):
                    if not isinstance(row, list) or len(row) != len(components):
                        errs.append(f"{where}[{i}]: expected a {len(components)}-list")
                        ok = False
                        continue
                    items = [
                        decode_value(x, c, errs, f"{where}[{i}][{k}]")
                        for k, (x, c) in enumerate(zip(row, components))
                    ]
                    if any(v is None for v in items):
                        ok = False
                        continue
                    rows.append(TupleV(tuple(items)))
                if ok:
                    if len(set(rows)) != len(rows):
                        errs.append(f"{where}: duplicate tuple")
                        return None
                    return SetV(frozenset(rows))
            else:
                errs.append(f"{where}: expected a list of tuples")
        case FnType(domain, codomain):
            if isinstance(j, list):
                entries: list[tuple[Value, Value]] = []
                ok = True
                for i, row in enumerate(j):
                    if not isinstance(row, list) or len(row) != 2:
                        errs.append(f"{where}[{i}]: expected a [key, value] 2-list")
                        ok = False
                        continue
                    k = decode_value(row[0], domain, errs, f"{where}[{i}][0]")
                    v = decode_value(row[1], codomain, errs, f"{where}[{i}][1]")
                    if k is None or v is None:
                        ok = False
                        continue
                    entries.append((k, v))
                if ok:
                    try:
                        return FnV(tuple(entries))
                    except ValueError as err:
                        errs.append(f"{where}: {err}")
            else:
                errs.append(f"{where}: expected a list of [key, value] 2-lists")
        case _:
            errs.append(f"{where}: cannot decode type {render_type(t)}")
    return None


def encode_value(v: Value, t: SemType) -> Any:
    match (t, v):
        case (EntType(), Entity(ident)):
            return ident
        case (TruthType(), Truth(flag)):
            return flag
        case (IdxType(_), IndexElem(_, ident)):
            return ident
        case (PairType(a, b), TupleV(items)):
            return [encode_value(items[0], a), encode_value(items[1], b)]
        case (SetType(member), SetV(members)):
            return [
                encode_value(w, member) for w in sorted(members, key=value_key)
            ]
        case (RelType(components), SetV(members)):
            return [
                [encode_value(x, c) for x, c in zip(row.items, components)]
                for row in sorted(members, key=value_key)
            ]
        case (FnType(domain, codomain), FnV(entries)):
            return [
                [encode_value(k, domain), encode_value(w, codomain)]
                for k, w in entries
            ]
    raise ValueError(f"value {v!r} does not fit type {render_type(t)}")


def dump_model_file(mf: ModelFile) -> str:
    """Canonical JSON text: fixed key order, canonical table and pair order."""
    m = mf.model
    designated = dict(m.designated)
    doc: dict[str, Any] = {"entities": list(m.entity_domain.elements)}
    if m.frames:
        doc["frames"] = []
        for f in m.frames:
            fj: dict[str, Any] = {
                "label": f.label,
                "elements": list(f.domain.elements),
                "pairs": [list(p) for p in f.rel.sorted_pairs()],
            }
            if f.label in designated:
                fj["designated"] = designated[f.label]
            doc["frames"].append(fj)
    if m.constants:
        space_order = {idx: i for i, idx in enumerate(index_space(m))}
        doc["constants"] = [
            {
                "name": c.name,
                "type": render_type(c.semtype),
                "table": [
                    {
                        "index": [e for _, e in idx.components],
                        "value": encode_value(v, c.semtype),
                    }
                    for idx, v in sorted(
                        c.table, key=lambda r: space_order.get(r[0], len(space_order))
                    )
                ],
            }
            for c in m.constants
        ]
    if mf.lexicon:
        doc["lexicon"] = {}
        for word in sorted(mf.lexicon):
            e = mf.lexicon[word]
            ej: dict[str, Any] = {"cat": e.cat}
            if e.pred is not None:
                ej["pred"] = e.pred
            if e.frame is not None:
                ej["frame"] = e.frame
            if e.sem is not None:
                ej["sem"] = e.sem
            doc["lexicon"][word] = ej
    if mf.terms:
        doc["terms"] = {name: render_term(mf.terms[name]) for name in sorted(mf.terms)}
    return json.dumps(doc, indent=2) + "\n"
