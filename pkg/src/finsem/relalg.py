"""Binary relations over finite carriers and their dagger-category operations.

Everything here is desk scale: carriers are tuples of element ids, relations
are frozensets of pairs, and every law is decided by exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass


class EndpointMismatch(Exception):
    pass


class NotEndorelation(Exception):
    pass


class NotJointlyMonic(Exception):
    pass


@dataclass(frozen=True)
class FinSet:
    """Finite carrier with a fixed listing order (the canonical order)."""

    name: str
    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"duplicate elements in carrier {self.name!r}")

    def __contains__(self, element: str) -> bool:
        return element in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def position(self, element: str) -> int:
        return self.elements.index(element)


@dataclass(frozen=True)
class Relation:
    """Binary relation between two carriers, kept as a frozenset of id pairs."""

    source: FinSet
    target: FinSet
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for x, y in self.pairs:
            if x not in self.source or y not in self.target:
                raise ValueError(
                    f"pair ({x!r}, {y!r}) escapes {self.source.name} -> {self.target.name}"
                )

    @property
    def is_endo(self) -> bool:
        return self.source == self.target

    def sorted_pairs(self) -> list[tuple[str, str]]:
        """Pairs in canonical order: source position first, then target position."""
        return sorted(
            self.pairs,
            key=lambda p: (self.source.position(p[0]), self.target.position(p[1])),
        )

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.pairs


@dataclass(frozen=True)
class FnGraph:
    """A total, single-valued relation used as a function between carriers."""

    underlying: Relation

    def __post_init__(self) -> None:
        table: dict[str, str] = {}
        for x, y in self.underlying.pairs:
            if x in table:
                raise ValueError(f"relation is not single-valued at {x!r}")
            table[x] = y
        for x in self.underlying.source.elements:
            if x not in table:
                raise ValueError(f"relation is not total: no value at {x!r}")

    @property
    def source(self) -> FinSet:
        return self.underlying.source

    @property
    def target(self) -> FinSet:
        return self.underlying.target

    def __call__(self, x: str) -> str:
        for a, b in self.underlying.pairs:
            if a == x:
                return b
        raise KeyError(x)


def identity(carrier: FinSet) -> Relation:
    return Relation(carrier, carrier, frozenset((e, e) for e in carrier.elements))


def identity_graph(carrier: FinSet) -> FnGraph:
    return FnGraph(identity(carrier))


def compose(r1: Relation, r2: Relation) -> Relation:
    """Diagram-order composite: first r1, then r2."""
    if r1.target != r2.source:
        raise EndpointMismatch(
            f"cannot compose {r1.source.name} -> {r1.target.name} "
            f"with {r2.source.name} -> {r2.target.name}"
        )
    successors: dict[str, set[str]] = {}
    for y, z in r2.pairs:
        successors.setdefault(y, set()).add(z)
    pairs = frozenset((x, z) for x, y in r1.pairs for z in successors.get(y, ()))
    return Relation(r1.source, r2.target, pairs)


def dagger(r: Relation) -> Relation:
    """Converse relation; swaps source and target."""
    return Relation(r.target, r.source, frozenset((y, x) for x, y in r.pairs))


def intersect(r1: Relation, r2: Relation) -> Relation:
    _require_parallel(r1, r2)
    return Relation(r1.source, r1.target, r1.pairs & r2.pairs)


def union(r1: Relation, r2: Relation) -> Relation:
    _require_parallel(r1, r2)
    return Relation(r1.source, r1.target, r1.pairs | r2.pairs)


def leq(r1: Relation, r2: Relation) -> bool:
    """Containment order on parallel relations."""
    _require_parallel(r1, r2)
    return r1.pairs <= r2.pairs


def _require_parallel(r1: Relation, r2: Relation) -> None:
    if r1.source != r2.source or r1.target != r2.target:
        raise EndpointMismatch(
            f"relations are not parallel: {r1.source.name} -> {r1.target.name} "
            f"vs {r2.source.name} -> {r2.target.name}"
        )


def pair_id(x: str, y: str) -> str:
    return f"({x},{y})"


def product_carrier(a: FinSet, b: FinSet) -> FinSet:
    """Cartesian product carrier, elements listed lexicographically by position."""
    elements = tuple(pair_id(x, y) for x in a.elements for y in b.elements)
    return FinSet(f"({a.name}x{b.name})", elements)


def product(r1: Relation, r2: Relation) -> Relation:
    """Componentwise product relation on the product carriers."""
    pairs = frozenset(
        (pair_id(x1, x2), pair_id(y1, y2))
        for x1, y1 in r1.pairs
        for x2, y2 in r2.pairs
    )
    return Relation(
        product_carrier(r1.source, r2.source),
        product_carrier(r1.target, r2.target),
        pairs,
    )


PROPERTY_NAMES = (
    "serial",
    "reflexive",
    "symmetric",
    "antisymmetric",
    "transitive",
    "total",
    "equivalence",
    "partial_order",
    "total_order",
    "strongly_connected",
    "weakly_connected",
)


def check_property(r: Relation, prop: str) -> bool:
    """Decide a named property of an endorelation by exhaustive check."""
    if not r.is_endo:
        raise NotEndorelation(f"{r.source.name} -> {r.target.name} is not an endorelation")
    dom = r.source.elements
    rp = r.pairs
    match prop:
        case "serial":
            return all(any((u, v) in rp for v in dom) for u in dom)
        case "reflexive":
            return all((u, u) in rp for u in dom)
        case "symmetric":
            return all((v, u) in rp for (u, v) in rp)
        case "antisymmetric":
            return all(u == v for (u, v) in rp if (v, u) in rp)
        case "transitive":
            return all(
                (u, w) in rp for (u, v) in rp for (v2, w) in rp if v == v2
            )
        case "total":
            # connexity: any two points are comparable (forces reflexivity)
            return all((u, v) in rp or (v, u) in rp for u in dom for v in dom)
        case "equivalence":
            return all(
                check_property(r, p) for p in ("reflexive", "symmetric", "transitive")
            )
        case "partial_order":
            return all(
                check_property(r, p)
                for p in ("reflexive", "antisymmetric", "transitive")
            )
        case "total_order":
            return check_property(r, "partial_order") and check_property(r, "total")
        case "strongly_connected":
            return all((u, v) in rp or (v, u) in rp for u in dom for v in dom)
        case "weakly_connected":
            return all(
                (v, w) in rp or (w, v) in rp
                for u in dom
                for v in dom
                for w in dom
                if ((u, v) in rp and (u, w) in rp)
                or ((v, u) in rp and (w, u) in rp)
            )
        case _:
            raise ValueError(f"unknown property {prop!r}")


def reflexive_iff_id_leq(r: Relation) -> bool:
    """True when the pointwise reflexivity check agrees with id <= r."""
    if not r.is_endo:
        raise NotEndorelation(f"{r.source.name} -> {r.target.name} is not an endorelation")
    pointwise = check_property(r, "reflexive")
    ordered = leq(identity(r.source), r)
    return pointwise == ordered


@dataclass(frozen=True)
class FunctionProfile:
    """Pointwise function facts next to their relation-algebraic reformulations.

    The dagger fields hold for exactly the relations whose pointwise
    counterparts hold: total+single-valued for is_function, and, restricted
    to functions, inj_eq for is_injective and surj_eq for is_surjective.
    """

    is_function: bool
    is_injective: bool
    is_surjective: bool
    dagger_eq_total: bool
    dagger_eq_single: bool
    inj_eq: bool
    surj_eq: bool


def function_characterization(r: Relation) -> FunctionProfile:
    dom, cod = r.source, r.target
    images = {x: {y for (a, y) in r.pairs if a == x} for x in dom.elements}
    preimages = {y: {x for (x, b) in r.pairs if b == y} for y in cod.elements}
    total = all(len(images[x]) >= 1 for x in dom.elements)
    single = all(len(images[x]) <= 1 for x in dom.elements)
    r_dag = dagger(r)
    return FunctionProfile(
        is_function=total and single,
        is_injective=all(len(preimages[y]) <= 1 for y in cod.elements),
        is_surjective=all(len(preimages[y]) >= 1 for y in cod.elements),
        dagger_eq_total=leq(identity(dom), compose(r, r_dag)),
        dagger_eq_single=leq(compose(r_dag, r), identity(cod)),
        inj_eq=compose(r, r_dag) == identity(dom),
        surj_eq=compose(r_dag, r) == identity(cod),
    )


def modularity_holds(r1: Relation, r2: Relation, r3: Relation) -> bool:
    """Modular law for r1: X -> Y, r2: Y -> Z, r3: X -> Z."""
    lhs = intersect(compose(r1, r2), r3)
    rhs = compose(intersect(r1, compose(r3, dagger(r2))), r2)
    return leq(lhs, rhs)


def graph_projections(r: Relation) -> tuple[FnGraph, FnGraph]:
    """Tabulate r as a span: a carrier of pair elements with its two projections.

    The apex lists one element per related pair, in canonical pair order.
    Composing dagger(p1) with p2 reproduces r.
    """
    ordered = r.sorted_pairs()
    apex = FinSet(
        f"pairs({r.source.name},{r.target.name})",
        tuple(pair_id(x, y) for x, y in ordered),
    )
    p1 = FnGraph(Relation(apex, r.source, frozenset((pair_id(x, y), x) for x, y in ordered)))
    p2 = FnGraph(Relation(apex, r.target, frozenset((pair_id(x, y), y) for x, y in ordered)))
    return p1, p2


def from_jointly_monic(p1: FnGraph, p2: FnGraph) -> Relation:
    """Recover the relation tabulated by a jointly monic span of functions."""
    if p1.source != p2.source:
        raise EndpointMismatch(
            f"span legs disagree on apex: {p1.source.name} vs {p2.source.name}"
        )
    seen: set[tuple[str, str]] = set()
    for z in p1.source.elements:
        image = (p1(z), p2(z))
        if image in seen:
            raise NotJointlyMonic(f"span legs collide at {image}")
        seen.add(image)
    return Relation(p1.target, p2.target, frozenset(seen))
