"""Terms: typechecking paths, evaluation clauses, and the text syntax.

Expected values come from hand evaluation against the two worked models in
helpers. In the modal model the reading happened only at w1 and w0 sees w1,
so the bare clause is false at w0 while the possibility claim is true there.
"""

from __future__ import annotations

import pytest

from finsem.denote import (
    And,
    App,
    Const,
    Diamond,
    Eq,
    FuncApp,
    Iota,
    Lam,
    ModeError,
    Not,
    PredApp,
    PresuppositionFailure,
    TermTypeError,
    UnboundVariable,
    Var,
    eval_all_indices,
    eval_ext,
    eval_int,
    has_modal,
    parse_term,
    render_term,
    typecheck,
)
from finsem.kripke import Frame
from finsem.morphisms import trivialize_all
from finsem.relalg import FinSet, Relation
from finsem.semmodel import (
    EMPTY_INDEX,
    Assignment,
    Constant,
    EntType,
    Entity,
    FnType,
    FnV,
    Index,
    Model,
    RelType,
    SetV,
    Truth,
    TruthType,
    TupleV,
    UngroundedType,
    UnknownEntity,
    UnknownIndex,
    fn_type,
    index_space,
)

from helpers import build_extensional, build_modal, rel_value, w_index

EXT = build_extensional()
MODAL = build_modal()

THE_STUDENT = Iota("x", PredApp("student", (Var("x"),)))
THE_BOOK = Iota("y", PredApp("book", (Var("y"),)))
READS = PredApp("read", (THE_STUDENT, THE_BOOK))
MIGHT_READ = Diamond("W", READS)


def ext_with_functions() -> Model:
    ents = FinSet("E", ("s1", "b1"))
    mentor = FnV(((Entity("s1"), Entity("b1")), (Entity("b1"), Entity("s1"))))
    keys = [
        TupleV((Entity(a), Entity(b)))
        for a in ("s1", "b1")
        for b in ("s1", "b1")
    ]
    first = FnV(tuple((k, k.items[0]) for k in keys))
    return Model(
        ents,
        (),
        (
            Constant("alice", EntType(), ((EMPTY_INDEX, Entity("s1")),)),
            Constant("mentor", FnType(EntType(), EntType()), ((EMPTY_INDEX, mentor),)),
            Constant("pick", fn_type([EntType(), EntType()], EntType()), ((EMPTY_INDEX, first),)),
            Constant("student", RelType((EntType(),)), ((EMPTY_INDEX, rel_value(("s1",))),)),
        ),
    )


# ---------------------------------------------------------------------------
# typechecking


def test_typecheck_sentence_terms() -> None:
    assert typecheck(READS, EXT) == TruthType()
    assert typecheck(THE_STUDENT, EXT) == EntType()
    assert typecheck(MIGHT_READ, MODAL) == TruthType()
    lam = Lam("x", EntType(), PredApp("student", (Var("x"),)))
    assert typecheck(lam, EXT) == FnType(EntType(), TruthType())


def test_typecheck_uses_assignment_types() -> None:
    assert typecheck(Var("x"), EXT, {"x": EntType()}) == EntType()
    with pytest.raises(UnboundVariable):
        typecheck(Var("x"), EXT)


def test_typecheck_arity_mismatch() -> None:
    with pytest.raises(TermTypeError) as e:
        typecheck(PredApp("read", (THE_STUDENT,)), EXT)
    assert e.value.path == "root"
    assert "2 arguments" in e.value.expected


def test_typecheck_argument_position_is_located() -> None:
    bad = PredApp("read", (THE_STUDENT, PredApp("book", (THE_BOOK,))))
    with pytest.raises(TermTypeError) as e:
        typecheck(bad, EXT)
    assert e.value.path == "root.args[1]"
    assert (e.value.expected, e.value.found) == ("e", "t")


def test_typecheck_unknown_names() -> None:
    with pytest.raises(UnboundVariable):
        typecheck(Const("zz"), EXT)
    with pytest.raises(UnboundVariable):
        typecheck(PredApp("zz", ()), EXT)


def test_typecheck_pred_must_be_relation_typed() -> None:
    m = ext_with_functions()
    with pytest.raises(TermTypeError):
        typecheck(PredApp("alice", ()), m)
    with pytest.raises(TermTypeError):
        typecheck(FuncApp("student", (Const("alice"),)), m)


def test_typecheck_lambda_binds_entities_only() -> None:
    with pytest.raises(TermTypeError) as e:
        typecheck(Lam("x", TruthType(), Var("x")), EXT)
    assert "entity-typed" in e.value.expected


def test_typecheck_app() -> None:
    lam = Lam("x", EntType(), PredApp("student", (Var("x"),)))
    assert typecheck(App(lam, THE_STUDENT), EXT) == TruthType()
    with pytest.raises(TermTypeError) as e:
        typecheck(App(THE_STUDENT, THE_BOOK), EXT)
    assert e.value.path == "root.func"
    with pytest.raises(TermTypeError) as e:
        typecheck(App(lam, READS), EXT)
    assert e.value.path == "root.arg"


def test_typecheck_iota_body_must_be_truth() -> None:
    with pytest.raises(TermTypeError) as e:
        typecheck(Iota("x", Var("x")), EXT)
    assert (e.value.path, e.value.expected, e.value.found) == ("root.body", "t", "e")


def test_typecheck_connectives() -> None:
    assert typecheck(And(READS, Not(READS)), EXT) == TruthType()
    assert typecheck(Eq(THE_STUDENT, THE_BOOK), EXT) == TruthType()
    with pytest.raises(TermTypeError) as e:
        typecheck(Eq(THE_STUDENT, READS), EXT)
    assert e.value.path == "root.right"
    with pytest.raises(TermTypeError) as e:
        typecheck(And(THE_STUDENT, READS), EXT)
    assert e.value.path == "root.left"


def test_typecheck_modal_needs_a_frame() -> None:
    with pytest.raises(UngroundedType):
        typecheck(MIGHT_READ, EXT)
    with pytest.raises(TermTypeError):
        typecheck(Diamond("W", THE_STUDENT), MODAL)


def test_has_modal() -> None:
    assert has_modal(MIGHT_READ)
    assert has_modal(Not(And(READS, MIGHT_READ)))
    assert has_modal(Lam("x", EntType(), Diamond("W", PredApp("student", (Var("x"),)))))
    assert not has_modal(READS)


# ---------------------------------------------------------------------------
# extensional evaluation


def test_eval_sentence_one() -> None:
    assert eval_ext(READS, EXT) == Truth(1)
    assert eval_ext(Not(READS), EXT) == Truth(0)
    assert eval_ext(And(READS, Not(READS)), EXT) == Truth(0)
    assert eval_ext(Eq(THE_STUDENT, THE_BOOK), EXT) == Truth(0)
    assert eval_ext(Eq(THE_STUDENT, THE_STUDENT), EXT) == Truth(1)


def test_eval_iota_picks_the_witness() -> None:
    assert eval_ext(THE_STUDENT, EXT) == Entity("s1")
    assert eval_ext(THE_BOOK, EXT) == Entity("b1")


def test_eval_iota_presupposition_failures() -> None:
    nobody = Iota("x", PredApp("read", (Var("x"), Var("x"))))
    with pytest.raises(PresuppositionFailure) as e:
        eval_ext(nobody, EXT)
    assert "found 0" in str(e.value)
    anybody = Iota("x", Eq(Var("x"), Var("x")))
    with pytest.raises(PresuppositionFailure) as e:
        eval_ext(anybody, EXT)
    assert "found 2" in str(e.value)


def test_eval_lambda_materializes_graph() -> None:
    got = eval_ext(Lam("x", EntType(), PredApp("student", (Var("x"),))), EXT)
    assert got == FnV(((Entity("b1"), Truth(0)), (Entity("s1"), Truth(1))))


def test_eval_app_is_beta() -> None:
    lam_reads = Lam("x", EntType(), PredApp("read", (Var("x"), THE_BOOK)))
    assert eval_ext(App(lam_reads, THE_STUDENT), EXT) == Truth(1)
    body = PredApp("read", (Var("x"), THE_BOOK))
    for k in EXT.entity_domain.elements:
        direct = eval_ext(body, EXT, Assignment((("x", k),)))
        via_app = eval_ext(App(Lam("x", EntType(), body), Var("y")), EXT, Assignment((("y", k),)))
        assert direct == via_app


def test_eval_function_application() -> None:
    m = ext_with_functions()
    assert eval_ext(FuncApp("mentor", (Const("alice"),)), m) == Entity("b1")
    nested = FuncApp("mentor", (FuncApp("mentor", (Const("alice"),)),))
    assert eval_ext(nested, m) == Entity("s1")
    two = FuncApp("pick", (FuncApp("mentor", (Const("alice"),)), Const("alice")))
    assert eval_ext(two, m) == Entity("b1")


def test_eval_variables_come_from_assignment() -> None:
    g = Assignment((("x", "b1"),))
    assert eval_ext(PredApp("book", (Var("x"),)), EXT, g) == Truth(1)
    with pytest.raises(UnknownEntity):
        eval_ext(Var("x"), EXT, Assignment((("x", "zz"),)))


def test_eval_rejects_invalid_models() -> None:
    gappy = Model(
        EXT.entity_domain,
        (),
        (Constant("p", RelType((EntType(),)), ()),),
    )
    with pytest.raises(ValueError, match="fails validation"):
        eval_ext(PredApp("p", (Var("x"),)), gappy, Assignment((("x", "s1"),)))


# ---------------------------------------------------------------------------
# modal evaluation


def test_eval_ext_refuses_modal_models() -> None:
    with pytest.raises(ModeError):
        eval_ext(READS, MODAL)


def test_eval_int_needs_a_known_index() -> None:
    with pytest.raises(UnknownIndex):
        eval_int(READS, MODAL)
    with pytest.raises(UnknownIndex):
        eval_int(READS, MODAL, s=Index((("W", "w9"),)))
    with pytest.raises(UnknownIndex):
        eval_int(READS, MODAL, s=EMPTY_INDEX)


def test_eval_modal_displacement() -> None:
    w0, w1 = w_index("w0"), w_index("w1")
    assert eval_int(READS, MODAL, s=w0) == Truth(0)
    assert eval_int(READS, MODAL, s=w1) == Truth(1)
    assert eval_int(MIGHT_READ, MODAL, s=w0) == Truth(1)
    assert eval_int(MIGHT_READ, MODAL, s=w1) == Truth(0)


def test_eval_all_indices_in_space_order() -> None:
    got = eval_all_indices(MIGHT_READ, MODAL)
    assert [(s.render(), v) for s, v in got.items()] == [
        ("w0", Truth(1)),
        ("w1", Truth(0)),
    ]


def test_modal_operator_has_no_extensional_clause() -> None:
    flat = trivialize_all(MODAL)
    with pytest.raises(ModeError):
        eval_ext(Diamond("W", PredApp("student", (THE_STUDENT,))), flat)


def test_diamond_rebinds_only_its_own_frame() -> None:
    # p holds of s1 exactly at (w1, t0); W looks from w0 to w1, T from t0 to t1
    ents = FinSet("E", ("s1",))
    wdom = FinSet("W", ("w0", "w1"))
    tdom = FinSet("T", ("t0", "t1"))
    frames = (
        Frame("W", wdom, Relation(wdom, wdom, frozenset({("w0", "w1")}))),
        Frame("T", tdom, Relation(tdom, tdom, frozenset({("t0", "t1")}))),
    )
    skeleton = Model(ents, frames, ())
    rows = []
    for idx in index_space(skeleton):
        hit = idx.component("W") == "w1" and idx.component("T") == "t0"
        rows.append((idx, rel_value(("s1",)) if hit else rel_value()))
    m = Model(ents, frames, (Constant("p", RelType((EntType(),)), tuple(rows)),))
    claim = Diamond("W", PredApp("p", (Iota("x", Eq(Var("x"), Var("x"))),)))
    at = lambda w, t: Index((("W", w), ("T", t)))  # noqa: E731
    assert eval_int(claim, m, s=at("w0", "t0")) == Truth(1)
    assert eval_int(claim, m, s=at("w0", "t1")) == Truth(0)
    nested_wt = Diamond("W", Diamond("T", PredApp("p", (Iota("x", Eq(Var("x"), Var("x"))),))))
    assert eval_int(nested_wt, m, s=at("w0", "t0")) == Truth(0)


# ---------------------------------------------------------------------------
# text syntax

SYNTAX_CASES = [
    ("(pred read (iota x (pred student x)) (iota y (pred book y)))", READS),
    ("(might W (pred read (iota x (pred student x)) (iota y (pred book y))))", MIGHT_READ),
    ("(lam x e (pred student x))", Lam("x", EntType(), PredApp("student", (Var("x"),)))),
    ("(app (lam x e (pred student x)) (iota y (pred book y)))",
     App(Lam("x", EntType(), PredApp("student", (Var("x"),))), THE_BOOK)),
    ("(and (not (pred student z)) (eq z z))",
     And(Not(PredApp("student", (Var("z"),))), Eq(Var("z"), Var("z")))),
    ("(func mentor alice)", FuncApp("mentor", (Const("alice"),))),
]


@pytest.mark.parametrize("text,term", SYNTAX_CASES)
def test_term_syntax_round_trip(text: str, term) -> None:
    assert parse_term(text, frozenset({"alice"})) == term
    assert render_term(term) == text
    assert parse_term(render_term(term), frozenset({"alice"})) == term


def test_bare_names_resolve_against_declared_constants() -> None:
    assert parse_term("alice", frozenset({"alice"})) == Const("alice")
    assert parse_term("alice") == Var("alice")
    # binding wins over the constant declaration
    shadowed = parse_term("(iota alice (pred student alice))", frozenset({"alice"}))
    assert shadowed == Iota("alice", PredApp("student", (Var("alice"),)))


@pytest.mark.parametrize(
    "bad",
    ["", "(", ")", "(pred)", "(pred p", "(lam x e)", "(quux x)", "(pred p x) y", "(and x)"],
)
def test_term_syntax_rejects(bad: str) -> None:
    with pytest.raises(ValueError):
        parse_term(bad)
