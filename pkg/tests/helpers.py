"""Shared builders for the test suite: the two worked models and the lexicon."""

from __future__ import annotations

import pathlib

from finsem.fragment import LexEntry
from finsem.kripke import Frame
from finsem.relalg import FinSet, Relation
from finsem.semmodel import (
    EMPTY_INDEX,
    Constant,
    EntType,
    Entity,
    Index,
    Model,
    RelType,
    SetV,
    TupleV,
)

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
MODELS_DIR = REPO_ROOT / "models"
GOLDEN_DIR = REPO_ROOT / "tests" / "golden"

ENTITIES = FinSet("E", ("s1", "b1"))

UNARY = RelType((EntType(),))
BINARY = RelType((EntType(), EntType()))


def rel_value(*rows: tuple[str, ...]) -> SetV:
    return SetV(frozenset(TupleV(tuple(Entity(e) for e in row)) for row in rows))


def build_extensional() -> Model:
    """One student s1, one book b1, s1 read b1."""
    return Model(
        ENTITIES,
        (),
        (
            Constant("student", UNARY, ((EMPTY_INDEX, rel_value(("s1",))),)),
            Constant("book", UNARY, ((EMPTY_INDEX, rel_value(("b1",))),)),
            Constant("read", BINARY, ((EMPTY_INDEX, rel_value(("s1", "b1"))),)),
        ),
    )


def w_index(w: str) -> Index:
    return Index((("W", w),))


def build_modal() -> Model:
    """Two worlds, w0 sees w1; the reading only happened at w1."""
    carrier = FinSet("W", ("w0", "w1"))
    frame = Frame("W", carrier, Relation(carrier, carrier, frozenset({("w0", "w1")})))
    per_world = lambda v: ((w_index("w0"), v), (w_index("w1"), v))  # noqa: E731
    return Model(
        ENTITIES,
        (frame,),
        (
            Constant("student", UNARY, per_world(rel_value(("s1",)))),
            Constant("book", UNARY, per_world(rel_value(("b1",)))),
            Constant(
                "read",
                BINARY,
                ((w_index("w0"), rel_value()), (w_index("w1"), rel_value(("s1", "b1")))),
            ),
        ),
        (("W", "w0"),),
    )


LEXICON = {
    "the": LexEntry("the", "D", sem="iota"),
    "student": LexEntry("student", "N", pred="student"),
    "book": LexEntry("book", "N", pred="book"),
    "read": LexEntry("read", "V", pred="read"),
    "might": LexEntry("might", "Mod", frame="W"),
}

SENTENCE_1 = "the student read the book"
SENTENCE_2 = "the student might read the book"
