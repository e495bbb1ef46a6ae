"""Term language with a typechecker and two evaluators.

eval_ext interprets a term against an extensional-mode model (no frames, or
every frame collapsed); eval_int interprets against an arbitrary model at an
index. Both share one clause table; the only divergence is that the modal
operator has no extensional clause and that constants are looked up at the
supplied index rather than the unique one.

Lambda abstraction evaluates by extending the environment over the bound
variable's finite domain; no textual substitution ever happens, so capture
is a non-issue and every result is a finite first-class value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .semmodel import (
    Assignment,
    EntType,
    Entity,
    FnType,
    FnV,
    Index,
    Model,
    RelType,
    SemType,
    SetV,
    Truth,
    TruthType,
    TupleV,
    UngroundedType,
    UnknownEntity,
    UnknownIndex,
    Value,
    arg_types,
    cached_validate,
    index_space,
    parse_type,
    render_type,
    the_index,
    type_domain,
)


class TermTypeError(Exception):
    def __init__(self, path: str, expected: str, found: str):
        self.path = path
        self.expected = expected
        self.found = found
        super().__init__(f"at {path}: expected {expected}, found {found}")


class UnboundVariable(Exception):
    pass


class PresuppositionFailure(Exception):
    pass


class ModeError(Exception):
    pass


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class PredApp(Term):
    pred: str
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class FuncApp(Term):
    fn: str
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Lam(Term):
    var: str
    var_type: SemType
    body: Term


@dataclass(frozen=True)
class App(Term):
    func: Term
    arg: Term


@dataclass(frozen=True)
class Iota(Term):
    var: str
    body: Term


@dataclass(frozen=True)
class Diamond(Term):
    label: str
    body: Term


@dataclass(frozen=True)
class And(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Term):
    body: Term


@dataclass(frozen=True)
class Eq(Term):
    left: Term
    right: Term


def has_modal(term: Term) -> bool:
    match term:
        case Diamond(_, _):
            return True
        case PredApp(_, args) | FuncApp(_, args):
            return any(has_modal(a) for a in args)
        case Lam(_, _, body) | Iota(_, body) | Not(body):
            return has_modal(body)
        case App(f, a):
            return has_modal(f) or has_modal(a)
        case And(left, right) | Eq(left, right):
            return has_modal(left) or has_modal(right)
    return False


# ---------------------------------------------------------------------------
# typechecking


def typecheck(
    term: Term, m: Model, gtypes: Optional[Mapping[str, SemType]] = None
) -> SemType:
    """Type of a term, or a located TermTypeError / UnboundVariable."""
    return _type_of(term, m, dict(gtypes or {}), "root")


def _type_of(term: Term, m: Model, env: dict[str, SemType], path: str) -> SemType:
    match term:
        case Const(name):
            c = m.constant(name)
            if c is None:
                raise UnboundVariable(f"at {path}: unknown constant {name!r}")
            return c.semtype
        case Var(name):
            if name not in env:
                raise UnboundVariable(f"at {path}: variable {name!r} is not in scope")
            return env[name]
        case PredApp(pred, args):
            c = m.constant(pred)
            if c is None:
                raise UnboundVariable(f"at {path}: unknown predicate {pred!r}")
            if not isinstance(c.semtype, RelType):
                raise TermTypeError(
                    path, "a relation-typed constant", render_type(c.semtype)
                )
            comps = c.semtype.components
            if len(args) != len(comps):
                raise TermTypeError(
                    path, f"{len(comps)} arguments to {pred!r}", f"{len(args)} arguments"
                )
            for i, (a, want) in enumerate(zip(args, comps)):
                got = _type_of(a, m, env, f"{path}.args[{i}]")
                if got != want:
                    raise TermTypeError(
                        f"{path}.args[{i}]", render_type(want), render_type(got)
                    )
            return TruthType()
        case FuncApp(fn, args):
            c = m.constant(fn)
            if c is None:
                raise UnboundVariable(f"at {path}: unknown function {fn!r}")
            if not isinstance(c.semtype, FnType):
                raise TermTypeError(
                    path, "a function-typed constant", render_type(c.semtype)
                )
            try:
                wants = arg_types(c.semtype, len(args))
            except ValueError:
                raise TermTypeError(
                    path,
                    f"arguments matching {render_type(c.semtype)}",
                    f"{len(args)} arguments",
                ) from None
            for i, (a, want) in enumerate(zip(args, wants)):
                got = _type_of(a, m, env, f"{path}.args[{i}]")
                if got != want:
                    raise TermTypeError(
                        f"{path}.args[{i}]", render_type(want), render_type(got)
                    )
            return c.semtype.codomain
        case Lam(var, var_type, body):
            if var_type != EntType():
                raise TermTypeError(
                    path, "e (bound variables are entity-typed)", render_type(var_type)
                )
            inner = dict(env)
            inner[var] = var_type
            return FnType(var_type, _type_of(body, m, inner, f"{path}.body"))
        case App(func, arg):
            ft = _type_of(func, m, env, f"{path}.func")
            if not isinstance(ft, FnType):
                raise TermTypeError(f"{path}.func", "a function type", render_type(ft))
            at = _type_of(arg, m, env, f"{path}.arg")
            if at != ft.domain:
                raise TermTypeError(
                    f"{path}.arg", render_type(ft.domain), render_type(at)
                )
            return ft.codomain
        case Iota(var, body):
            inner = dict(env)
            inner[var] = EntType()
            bt = _type_of(body, m, inner, f"{path}.body")
            if bt != TruthType():
                raise TermTypeError(f"{path}.body", "t", render_type(bt))
            return EntType()
        case Diamond(label, body):
            if m.frame(label) is None:
                raise UngroundedType(f"at {path}: no frame {label!r} in this model")
            bt = _type_of(body, m, env, f"{path}.body")
            if bt != TruthType():
                raise TermTypeError(f"{path}.body", "t", render_type(bt))
            return TruthType()
        case And(left, right):
            for side, sub in (("left", left), ("right", right)):
                st = _type_of(sub, m, env, f"{path}.{side}")
                if st != TruthType():
                    raise TermTypeError(f"{path}.{side}", "t", render_type(st))
            return TruthType()
        case Not(body):
            bt = _type_of(body, m, env, f"{path}.body")
            if bt != TruthType():
                raise TermTypeError(f"{path}.body", "t", render_type(bt))
            return TruthType()
        case Eq(left, right):
            lt = _type_of(left, m, env, f"{path}.left")
            rt = _type_of(right, m, env, f"{path}.right")
            if lt != rt:
                raise TermTypeError(f"{path}.right", render_type(lt), render_type(rt))
            return TruthType()
    raise ValueError(f"unknown term {term!r}")


# ---------------------------------------------------------------------------
# evaluation


def eval_ext(term: Term, m: Model, g: Optional[Assignment] = None) -> Value:
    """Evaluate against an extensional-mode model."""
    g = g if g is not None else Assignment()
    if not m.is_extensional:
        raise ModeError("model has a nontrivial frame; evaluate at an index instead")
    _require_valid(m)
    typecheck(term, m, assignment_types(g))
    return _eval(term, m, _env_of(g, m), the_index(m), modal=False)


def eval_int(
    term: Term, m: Model, g: Optional[Assignment] = None, s: Optional[Index] = None
) -> Value:
    """Evaluate at an index of the model's index space."""
    g = g if g is not None else Assignment()
    if s is None:
        raise UnknownIndex("eval_int needs an index")
    if s not in index_space(m):
        raise UnknownIndex(f"{s.render()} is not in the index space")
    _require_valid(m)
    typecheck(term, m, assignment_types(g))
    return _eval(term, m, _env_of(g, m), s, modal=True)


def eval_all_indices(
    term: Term, m: Model, g: Optional[Assignment] = None
) -> dict[Index, Value]:
    """Evaluate at every index, keyed in canonical index order."""
    g = g if g is not None else Assignment()
    _require_valid(m)
    typecheck(term, m, assignment_types(g))
    env = _env_of(g, m)
    return {s: _eval(term, m, env, s, modal=True) for s in index_space(m)}


def assignment_types(g: Assignment) -> dict[str, SemType]:
    return {x: EntType() for x, _ in g.bindings}


def _env_of(g: Assignment, m: Model) -> dict[str, Value]:
    env: dict[str, Value] = {}
    for x, k in g.bindings:
        if k not in m.entity_domain:
            raise UnknownEntity(f"assignment sends {x!r} to unknown entity {k!r}")
        env[x] = Entity(k)
    return env


def _require_valid(m: Model) -> None:
    violations = cached_validate(m)
    if violations:
        first = violations[0]
        raise ValueError(
            f"model fails validation ({len(violations)} violations; first: "
            f"{first.kind} {first.constant} {first.detail})"
        )


def _nest_tuple(values: list[Value]) -> Value:
    if len(values) == 2:
        return TupleV((values[0], values[1]))
    return TupleV((values[0], _nest_tuple(values[1:])))


def _eval(
    term: Term, m: Model, env: dict[str, Value], s: Index, modal: bool
) -> Value:
    match term:
        case Const(name):
            return m.constant(name).value_at(s)
        case Var(name):
            return env[name]
        case PredApp(pred, args):
            table = m.constant(pred).value_at(s)
            assert isinstance(table, SetV)
            got = TupleV(tuple(_eval(a, m, env, s, modal) for a in args))
            return Truth(1 if got in table.members else 0)
        case FuncApp(fn, args):
            f = m.constant(fn).value_at(s)
            assert isinstance(f, FnV)
            vals = [_eval(a, m, env, s, modal) for a in args]
            key = vals[0] if len(vals) == 1 else _nest_tuple(vals)
            return f.apply(key)
        case Lam(var, var_type, body):
            rows = []
            for dv in type_domain(m, var_type):
                inner = dict(env)
                inner[var] = dv
                rows.append((dv, _eval(body, m, inner, s, modal)))
            return FnV(tuple(rows))
        case App(func, arg):
            fv = _eval(func, m, env, s, modal)
            av = _eval(arg, m, env, s, modal)
            assert isinstance(fv, FnV)
            return fv.apply(av)
        case Iota(var, body):
            hits = []
            for k in m.entity_domain.elements:
                inner = dict(env)
                inner[var] = Entity(k)
                if _eval(body, m, inner, s, modal) == Truth(1):
                    hits.append(k)
            if len(hits) != 1:
                raise PresuppositionFailure(
                    f"iota over {var!r} needs exactly one witness, found {len(hits)}"
                )
            return Entity(hits[0])
        case Diamond(label, body):
            if not modal:
                raise ModeError("modal operator has no extensional clause")
            frame = m.frame(label)
            here = s.component(label)
            hit = False
            for succ in frame.successors(here):
                if _eval(body, m, env, s.replace(label, succ), modal) == Truth(1):
                    hit = True
            return Truth(1 if hit else 0)
        case And(left, right):
            lv = _eval(left, m, env, s, modal)
            rv = _eval(right, m, env, s, modal)
            return Truth(1 if (lv, rv) == (Truth(1), Truth(1)) else 0)
        case Not(body):
            bv = _eval(body, m, env, s, modal)
            return Truth(1 if bv == Truth(0) else 0)
        case Eq(left, right):
            lv = _eval(left, m, env, s, modal)
            rv = _eval(right, m, env, s, modal)
            return Truth(1 if lv == rv else 0)
    raise ValueError(f"unknown term {term!r}")


# ---------------------------------------------------------------------------
# surface syntax


def render_term(term: Term) -> str:
    match term:
        case Const(name) | Var(name):
            return name
        case PredApp(pred, args):
            return "(pred " + " ".join([pred] + [render_term(a) for a in args]) + ")"
        case FuncApp(fn, args):
            return "(func " + " ".join([fn] + [render_term(a) for a in args]) + ")"
        case Lam(var, var_type, body):
            return f"(lam {var} {render_type(var_type)} {render_term(body)})"
        case App(func, arg):
            return f"(app {render_term(func)} {render_term(arg)})"
        case Iota(var, body):
            return f"(iota {var} {render_term(body)})"
        case Diamond(label, body):
            return f"(might {label} {render_term(body)})"
        case And(left, right):
            return f"(and {render_term(left)} {render_term(right)})"
        case Not(body):
            return f"(not {render_term(body)})"
        case Eq(left, right):
            return f"(eq {render_term(left)} {render_term(right)})"
    raise ValueError(f"unrenderable term {term!r}")


def parse_term(text: str, constant_names: frozenset[str] = frozenset()) -> Term:
    """Parse the s-expression term syntax.

    A bare name is a Var when bound by an enclosing lam/iota or when it is
    not a declared constant; declared constant names parse as Const.
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    term, rest = _term_at(tokens, 0, constant_names, frozenset())
    if rest != len(tokens):
        raise ValueError(f"trailing input after term in {text!r}")
    return term


def _tok(tokens: list[str], i: int) -> str:
    if i >= len(tokens):
        raise ValueError("unexpected end of term")
    return tokens[i]


def _term_at(
    tokens: list[str], i: int, constants: frozenset[str], bound: frozenset[str]
) -> tuple[Term, int]:
    tok = _tok(tokens, i)
    if tok == ")":
        raise ValueError("unexpected ')'")
    if tok != "(":
        return _name_term(tok, constants, bound), i + 1
    head = _tok(tokens, i + 1)
    i += 2
    match head:
        case "pred" | "func":
            name = _tok(tokens, i)
            i += 1
            args = []
            while _tok(tokens, i) != ")":
                arg, i = _term_at(tokens, i, constants, bound)
                args.append(arg)
            ctor = PredApp if head == "pred" else FuncApp
            return ctor(name, tuple(args)), i + 1
        case "lam":
            var, tyname = _tok(tokens, i), _tok(tokens, i + 1)
            body, i = _term_at(tokens, i + 2, constants, bound | {var})
            return Lam(var, parse_type(tyname), body), _close(tokens, i)
        case "iota":
            var = _tok(tokens, i)
            body, i = _term_at(tokens, i + 1, constants, bound | {var})
            return Iota(var, body), _close(tokens, i)
        case "might":
            label = _tok(tokens, i)
            body, i = _term_at(tokens, i + 1, constants, bound)
            return Diamond(label, body), _close(tokens, i)
        case "app":
            func, i = _term_at(tokens, i, constants, bound)
            arg, i = _term_at(tokens, i, constants, bound)
            return App(func, arg), _close(tokens, i)
        case "and":
            left, i = _term_at(tokens, i, constants, bound)
            right, i = _term_at(tokens, i, constants, bound)
            return And(left, right), _close(tokens, i)
        case "not":
            body, i = _term_at(tokens, i, constants, bound)
            return Not(body), _close(tokens, i)
        case "eq":
            left, i = _term_at(tokens, i, constants, bound)
            right, i = _term_at(tokens, i, constants, bound)
            return Eq(left, right), _close(tokens, i)
        case _:
            raise ValueError(f"unknown term form {head!r}")


def _close(tokens: list[str], i: int) -> int:
    if i >= len(tokens) or tokens[i] != ")":
        raise ValueError("expected ')'")
    return i + 1


def _name_term(name: str, constants: frozenset[str], bound: frozenset[str]) -> Term:
    if name in bound:
        return Var(name)
    if name in constants:
        return Const(name)
    return Var(name)
