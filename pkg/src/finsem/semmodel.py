"""Typed interpretation models over finite entity and index domains.

A model fixes one entity carrier, an ordered family of labelled frames, and
an interpretation table per constant. Tables are total maps from the index
space (the product of the frame domains) to values of the constant's type.
Everything is finite and enumerable, so validation and evaluation are
exhaustive rather than symbolic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .kripke import Frame
from .relalg import FinSet


class UnknownEntity(Exception):
    pass


class UnknownIndex(Exception):
    pass


class UnknownFrame(Exception):
    pass


class DomainTooLarge(Exception):
    pass


class UngroundedType(Exception):
    pass


MAX_DOMAIN_SIZE = 10**6


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class SemType:
    pass


@dataclass(frozen=True)
class EntType(SemType):
    pass


@dataclass(frozen=True)
class TruthType(SemType):
    pass


@dataclass(frozen=True)
class IdxType(SemType):
    label: str


@dataclass(frozen=True)
class PairType(SemType):
    first: SemType
    second: SemType


@dataclass(frozen=True)
class SetType(SemType):
    member: SemType


@dataclass(frozen=True)
class RelType(SemType):
    components: tuple[SemType, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("relation type needs at least one component")


@dataclass(frozen=True)
class FnType(SemType):
    domain: SemType
    codomain: SemType


def fn_type(arg_types: Iterable[SemType], result: SemType) -> FnType:
    """Function type over an argument list; multiple arguments nest as pairs."""
    args = list(arg_types)
    if not args:
        raise ValueError("function type needs at least one argument")
    return FnType(_nest_pairs(args), result)


def _nest_pairs(types: list[SemType]) -> SemType:
    if len(types) == 1:
        return types[0]
    return PairType(types[0], _nest_pairs(types[1:]))


def _flatten_pairs(t: SemType) -> list[SemType]:
    if isinstance(t, PairType):
        return [t.first] + _flatten_pairs(t.second)
    return [t]


def arg_types(fn: FnType, arity: int) -> list[SemType]:
    """Split a function domain into an argument list of the requested arity."""
    if arity == 1:
        return [fn.domain]
    flat = _flatten_pairs(fn.domain)
    if len(flat) != arity:
        raise ValueError(f"function domain has {len(flat)} components, not {arity}")
    return flat


def fn_arity(fn: FnType) -> int:
    """Argument count of a function type, reading nested pairs as a list."""
    return len(_flatten_pairs(fn.domain))


def render_type(t: SemType) -> str:
    match t:
        case EntType():
            return "e"
        case TruthType():
            return "t"
        case IdxType(label):
            return f"s({label})"
        case PairType(a, b):
            return f"pair({render_type(a)},{render_type(b)})"
        case SetType(member):
            return f"set({render_type(member)})"
        case RelType(components):
            return "rel(" + ",".join(render_type(c) for c in components) + ")"
        case FnType(domain, codomain):
            parts = [render_type(c) for c in _flatten_pairs(domain)]
            return "fn(" + ",".join(parts + [render_type(codomain)]) + ")"
    raise ValueError(f"unrenderable type {t!r}")


def parse_type(text: str) -> SemType:
    """Parse the textual type syntax: e, t, s(W), pair(,), set(), rel(,...), fn(,...,)."""
    compact = text.replace(" ", "")
    ty, pos = _type_at(compact, 0)
    if pos != len(compact):
        raise ValueError(f"trailing input after type in {text!r}")
    return ty


def _type_at(s: str, i: int) -> tuple[SemType, int]:
    start = i
    while i < len(s) and (s[i].isalnum() or s[i] == "_"):
        i += 1
    name = s[start:i]
    if not name:
        raise ValueError(f"expected a type at position {start} in {s!r}")
    if i == len(s) or s[i] != "(":
        return _ground_type(name), i
    i += 1
    if name == "s":
        # argument is a frame label, not a nested type
        j = i
        while j < len(s) and s[j] not in ",)":
            j += 1
        if j == len(s) or s[j] != ")":
            raise ValueError(f"unterminated s(...) in {s!r}")
        return IdxType(s[i:j]), j + 1
    args: list[SemType] = []
    while True:
        arg, i = _type_at(s, i)
        args.append(arg)
        if i < len(s) and s[i] == ",":
            i += 1
            continue
        if i < len(s) and s[i] == ")":
            i += 1
            break
        raise ValueError(f"unterminated {name}(...) in {s!r}")
    return _compound_type(name, args), i


def _ground_type(name: str) -> SemType:
    if name == "e":
        return EntType()
    if name == "t":
        return TruthType()
    raise ValueError(f"unknown ground type {name!r}")


def _compound_type(name: str, args: list[SemType]) -> SemType:
    if name == "pair" and len(args) == 2:
        return PairType(args[0], args[1])
    if name == "set" and len(args) == 1:
        return SetType(args[0])
    if name == "rel" and args:
        return RelType(tuple(args))
    if name == "fn" and len(args) >= 2:
        return fn_type(args[:-1], args[-1])
    raise ValueError(f"bad type constructor {name!r} with {len(args)} arguments")


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class Value:
    pass


@dataclass(frozen=True)
class Entity(Value):
    ident: str


@dataclass(frozen=True)
class Truth(Value):
    flag: int

    def __post_init__(self) -> None:
        if self.flag not in (0, 1):
            raise ValueError(f"truth value must be 0 or 1, got {self.flag!r}")


@dataclass(frozen=True)
class IndexElem(Value):
    label: str
    ident: str


@dataclass(frozen=True)
class TupleV(Value):
    items: tuple[Value, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class SetV(Value):
    members: frozenset[Value]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))


@dataclass(frozen=True)
class FnV(Value):
    """Total finite map, entries kept sorted by a structural key."""

    entries: tuple[tuple[Value, Value], ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.entries, key=lambda e: value_key(e[0])))
        keys = [value_key(k) for k, _ in ordered]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate keys in function value")
        object.__setattr__(self, "entries", ordered)

    def apply(self, arg: Value) -> Value:
        for k, v in self.entries:
            if k == arg:
                return v
        raise KeyError(arg)


def value_key(v: Value) -> tuple:
    """Deterministic structural sort key, usable without model context."""
    match v:
        case Entity(ident):
            return ("e", ident)
        case Truth(flag):
            return ("t", flag)
        case IndexElem(label, ident):
            return ("s", label, ident)
        case TupleV(items):
            return ("tup", tuple(value_key(i) for i in items))
        case SetV(members):
            return ("set", tuple(sorted(value_key(m) for m in members)))
        case FnV(entries):
            return ("fn", tuple((value_key(k), value_key(w)) for k, w in entries))
    raise ValueError(f"unorderable value {v!r}")


# ---------------------------------------------------------------------------
# indices and assignments


@dataclass(frozen=True)
class Index:
    """One point of the index space: (frame label, element) per frame, in order."""

    components: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))

    def component(self, label: str) -> str:
        for l, e in self.components:
            if l == label:
                return e
        raise UnknownFrame(f"index has no component for frame {label!r}")

    def replace(self, label: str, element: str) -> "Index":
        if all(l != label for l, _ in self.components):
            raise UnknownFrame(f"index has no component for frame {label!r}")
        return Index(
            tuple((l, element if l == label else e) for l, e in self.components)
        )

    def render(self) -> str:
        if not self.components:
            return "()"
        return ",".join(e for _, e in self.components)


EMPTY_INDEX = Index(())


@dataclass(frozen=True)
class Assignment:
    """Partial map from variable names to entity ids."""

    bindings: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(tuple(b) for b in self.bindings))
        names = [x for x, _ in ordered]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable in assignment")
        object.__setattr__(self, "bindings", ordered)

    def lookup(self, var: str) -> Optional[str]:
        for x, k in self.bindings:
            if x == var:
                return k
        return None


def assignment_variant(
    g: Assignment, x: str, k: str, entity_domain: FinSet
) -> Assignment:
    """g with x rebound to k; k must name an entity."""
    if k not in entity_domain:
        raise UnknownEntity(f"{k!r} is not in the entity domain")
    updated = {var: e for var, e in g.bindings}
    updated[x] = k
    return Assignment(tuple(updated.items()))


# ---------------------------------------------------------------------------
# constants and models


@dataclass(frozen=True)
class Constant:
    name: str
    semtype: SemType
    table: tuple[tuple[Index, Value], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(tuple(e) for e in self.table))

    def value_at(self, s: Index) -> Value:
        for idx, v in self.table:
            if idx == s:
                return v
        raise UnknownIndex(f"constant {self.name!r} has no entry at {s.render()}")


@dataclass(frozen=True)
class Violation:
    """One well-formedness defect, reported as data."""

    kind: str
    constant: str
    detail: str


@dataclass(frozen=True)
class Model:
    entity_domain: FinSet
    frames: tuple[Frame, ...]
    constants: tuple[Constant, ...]
    designated: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "frames", tuple(self.frames))
        labels = [f.label for f in self.frames]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate frame labels")
        names = [c.name for c in self.constants]
        if len(set(names)) != len(names):
            raise ValueError("duplicate constant names")
        for l, e in self.designated:
            fr = _frame_of(self.frames, l)
            if fr is None:
                raise ValueError(f"designated element for unknown frame {l!r}")
            if e not in fr.domain:
                raise ValueError(f"designated element {e!r} not in frame {l!r}")
        position = {idx: i for i, idx in enumerate(_space_of(self.frames))}
        normalized = tuple(
            Constant(
                c.name,
                c.semtype,
                tuple(
                    sorted(
                        c.table,
                        key=lambda e: (position.get(e[0], len(position)), e[0].render()),
                    )
                ),
            )
            for c in sorted(self.constants, key=lambda c: c.name)
        )
        object.__setattr__(self, "constants", normalized)
        object.__setattr__(
            self, "designated", tuple(sorted(tuple(d) for d in self.designated))
        )

    def frame(self, label: str) -> Optional[Frame]:
        return _frame_of(self.frames, label)

    def constant(self, name: str) -> Optional[Constant]:
        for c in self.constants:
            if c.name == name:
                return c
        return None

    @property
    def is_extensional(self) -> bool:
        """Frame-free, or every frame already collapsed to a point."""
        return all(f.trivial for f in self.frames)

    def designated_for(self, label: str) -> str:
        """Chosen collapse element for a frame: explicit entry or first listed."""
        fr = self.frame(label)
        if fr is None:
            raise UnknownFrame(f"model has no frame {label!r}")
        for l, e in self.designated:
            if l == label:
                return e
        return fr.domain.elements[0]


def _frame_of(frames: tuple[Frame, ...], label: str) -> Optional[Frame]:
    for f in frames:
        if f.label == label:
            return f
    return None


def _space_of(frames: tuple[Frame, ...]) -> list[Index]:
    axes = [[(f.label, e) for e in f.domain.elements] for f in frames]
    return [Index(tuple(combo)) for combo in itertools.product(*axes)]


def index_space(m: Model) -> list[Index]:
    """All indices, frames varying lexicographically; [Index(())] when frame-free."""
    return _space_of(m.frames)


def the_index(m: Model) -> Index:
    """The unique index of an extensional-mode model."""
    space = index_space(m)
    if len(space) != 1:
        raise UnknownIndex("model has more than one index")
    return space[0]


# ---------------------------------------------------------------------------
# enumeration


def type_cardinality(m: Model, t: SemType, limit: int = MAX_DOMAIN_SIZE) -> int:
    """Size of the domain of t, refusing early when any layer exceeds limit."""
    n = _card(m, t, limit)
    return n


def _card(m: Model, t: SemType, limit: int) -> int:
    match t:
        case EntType():
            n = len(m.entity_domain)
        case TruthType():
            n = 2
        case IdxType(label):
            fr = m.frame(label)
            if fr is None:
                raise UngroundedType(f"no frame {label!r} in this model")
            n = len(fr.domain)
        case PairType(a, b):
            n = _card(m, a, limit) * _card(m, b, limit)
        case SetType(member):
            n = 2 ** _card(m, member, limit)
        case RelType(components):
            base = 1
            for c in components:
                base *= _card(m, c, limit)
                if base > limit:
                    raise DomainTooLarge(f"{render_type(t)} exceeds {limit} values")
            n = 2**base
        case FnType(domain, codomain):
            n = _card(m, codomain, limit) ** _card(m, domain, limit)
        case _:
            raise ValueError(f"unknown type {t!r}")
    if n > limit:
        raise DomainTooLarge(f"{render_type(t)} exceeds {limit} values")
    return n


def type_domain(m: Model, t: SemType, limit: int = MAX_DOMAIN_SIZE) -> list[Value]:
    """Canonical enumeration of every value of type t in the model."""
    _card(m, t, limit)
    return _enumerate(m, t, limit)


def _subsets(base: list[Value]) -> list[Value]:
    # bitmask order: bit i is base[i], masks ascending
    out = []
    for mask in range(1 << len(base)):
        out.append(
            SetV(frozenset(base[i] for i in range(len(base)) if mask >> i & 1))
        )
    return out


def _enumerate(m: Model, t: SemType, limit: int) -> list[Value]:
    match t:
        case EntType():
            return [Entity(e) for e in m.entity_domain.elements]
        case TruthType():
            return [Truth(0), Truth(1)]
        case IdxType(label):
            fr = m.frame(label)
            if fr is None:
                raise UngroundedType(f"no frame {label!r} in this model")
            return [IndexElem(label, k) for k in fr.domain.elements]
        case PairType(a, b):
            return [
                TupleV((x, y))
                for x in _enumerate(m, a, limit)
                for y in _enumerate(m, b, limit)
            ]
        case SetType(member):
            return _subsets(_enumerate(m, member, limit))
        case RelType(components):
            columns = [_enumerate(m, c, limit) for c in components]
            base: list[Value] = [TupleV(combo) for combo in itertools.product(*columns)]
            return _subsets(base)
        case FnType(domain, codomain):
            keys = _enumerate(m, domain, limit)
            vals = _enumerate(m, codomain, limit)
            return [
                FnV(tuple(zip(keys, choice)))
                for choice in itertools.product(vals, repeat=len(keys))
            ]
    raise ValueError(f"unknown type {t!r}")


# ---------------------------------------------------------------------------
# validation


def inhabits(m: Model, value: Value, t: SemType) -> bool:
    """Exhaustive membership check of a value in the domain of a type."""
    match (t, value):
        case (EntType(), Entity(ident)):
            return ident in m.entity_domain
        case (TruthType(), Truth(_)):
            return True
        case (IdxType(label), IndexElem(vlabel, ident)):
            fr = m.frame(label)
            if fr is None:
                raise UngroundedType(f"no frame {label!r} in this model")
            return vlabel == label and ident in fr.domain
        case (PairType(a, b), TupleV(items)):
            return (
                len(items) == 2
                and inhabits(m, items[0], a)
                and inhabits(m, items[1], b)
            )
        case (SetType(member), SetV(members)):
            return all(inhabits(m, v, member) for v in members)
        case (RelType(components), SetV(members)):
            return all(
                isinstance(v, TupleV)
                and len(v.items) == len(components)
                and all(inhabits(m, item, c) for item, c in zip(v.items, components))
                for v in members
            )
        case (FnType(domain, codomain), FnV(entries)):
            expected = {value_key(k) for k in type_domain(m, domain)}
            actual = {value_key(k) for k, _ in entries}
            return expected == actual and all(
                inhabits(m, v, codomain) for _, v in entries
            )
    return False


def validate(m: Model) -> list[Violation]:
    """Full well-formedness report. Empty means the model is evaluable."""
    out: list[Violation] = []
    if len(m.entity_domain) == 0:
        out.append(Violation("EmptyEntityDomain", "", "entity domain is empty"))
    space = index_space(m)
    known = set(space)
    for c in m.constants:
        seen: set[Index] = set()
        for idx, v in c.table:
            if idx in seen:
                out.append(
                    Violation("DuplicateIndexEntry", c.name, f"index {idx.render()}")
                )
                continue
            seen.add(idx)
            if idx not in known:
                out.append(
                    Violation("UnexpectedIndexEntry", c.name, f"index {idx.render()}")
                )
                continue
            try:
                ok = inhabits(m, v, c.semtype)
            except UngroundedType as err:
                out.append(Violation("UngroundedType", c.name, str(err)))
                continue
            except DomainTooLarge as err:
                out.append(Violation("DomainTooLarge", c.name, str(err)))
                continue
            if not ok:
                out.append(
                    Violation(
                        "IllTypedValue",
                        c.name,
                        f"index {idx.render()}: value does not inhabit "
                        f"{render_type(c.semtype)}",
                    )
                )
        for idx in space:
            if idx not in seen:
                out.append(
                    Violation("MissingIndexEntry", c.name, f"index {idx.render()}")
                )
    return out


_VALIDATION_CACHE: dict[Model, tuple[Violation, ...]] = {}


def cached_validate(m: Model) -> tuple[Violation, ...]:
    if m not in _VALIDATION_CACHE:
        _VALIDATION_CACHE[m] = tuple(validate(m))
    return _VALIDATION_CACHE[m]


# ---------------------------------------------------------------------------
# rendering


def render_value(v: Value, m: Optional[Model] = None) -> str:
    """Deterministic text form; set members sort by domain position when a
    model is supplied, structurally otherwise."""

    def sort_key(w: Value) -> tuple:
        if m is not None and isinstance(w, Entity) and w.ident in m.entity_domain:
            return ("e", m.entity_domain.position(w.ident))
        if m is not None and isinstance(w, TupleV):
            return ("tup", tuple(sort_key(i) for i in w.items))
        return value_key(w)

    match v:
        case Entity(ident):
            return ident
        case Truth(flag):
            return str(flag)
        case IndexElem(label, ident):
            return f"{label}:{ident}"
        case TupleV(items):
            return "(" + ",".join(render_value(i, m) for i in items) + ")"
        case SetV(members):
            inner = sorted(members, key=sort_key)
            return "{" + ", ".join(render_value(w, m) for w in inner) + "}"
        case FnV(entries):
            inner = sorted(entries, key=lambda e: sort_key(e[0]))
            return (
                "{"
                + ", ".join(
                    f"{render_value(k, m)}->{render_value(w, m)}" for k, w in inner
                )
                + "}"
            )
    raise ValueError(f"unrenderable value {v!r}")
