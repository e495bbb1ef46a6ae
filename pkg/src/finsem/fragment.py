"""Two small natural-language fragments over one union grammar.

The grammar is a data table; the lexicon comes from the model file, so new
nouns and verbs need no code change. Plain transitive sentences work against
any model; the modal word requires a model with frames and contributes a
Diamond over its frame, scoping over the fully saturated clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

from .denote import (
    Const,
    Diamond,
    Iota,
    ModeError,
    PredApp,
    PresuppositionFailure,
    Term,
    Var,
    eval_ext,
    eval_int,
    render_term,
)
from .semmodel import (
    Assignment,
    Index,
    Model,
    UnknownIndex,
    Value,
    render_value,
    the_index,
)


class UnknownWord(Exception):
    pass


class NoParse(Exception):
    pass


class AmbiguousParse(Exception):
    pass


@dataclass(frozen=True)
class LexEntry:
    word: str
    cat: str
    pred: Optional[str] = None  # N and V: predicate constant interpreted
    frame: Optional[str] = None  # Mod: frame quantified over
    sem: Optional[str] = None  # D: semantic operation, only "iota" exists


Lexicon = Mapping[str, LexEntry]


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]


# union of the plain-transitive and modal grammars
RULES = (
    Rule("S", ("DP", "VP")),
    Rule("DP", ("D", "NP")),
    Rule("NP", ("N",)),
    Rule("VP", ("V", "DP")),
    Rule("VP", ("Mod", "V'")),
    Rule("V'", ("V", "DP")),
)

LEXICAL_CATEGORIES = ("D", "N", "V", "Mod")


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple["ParseTree", ...] = ()
    word: Optional[str] = None

    def render(self) -> str:
        if self.word is not None:
            return f"({self.label} {self.word})"
        return "(" + " ".join([self.label] + [c.render() for c in self.children]) + ")"

    def words(self) -> list[str]:
        if self.word is not None:
            return [self.word]
        return [w for c in self.children for w in c.words()]


def iter_nodes(tree: ParseTree, depth: int = 0) -> Iterator[tuple[ParseTree, int]]:
    yield tree, depth
    for c in tree.children:
        yield from iter_nodes(c, depth + 1)


def parse(tokens: Sequence[str], lexicon: Lexicon) -> ParseTree:
    """Exhaustive parse; exactly one full-span S tree is required."""
    for w in tokens:
        if w not in lexicon:
            raise UnknownWord(f"{w!r} is not in the lexicon")
    full = [t for t, j in _parses("S", list(tokens), 0, lexicon) if j == len(tokens)]
    if not full:
        raise NoParse(f"no parse for {' '.join(tokens)!r}")
    if len(full) > 1:
        raise AmbiguousParse(f"{len(full)} parses for {' '.join(tokens)!r}")
    return full[0]


def _parses(
    symbol: str, tokens: list[str], i: int, lexicon: Lexicon
) -> list[tuple[ParseTree, int]]:
    out: list[tuple[ParseTree, int]] = []
    if symbol in LEXICAL_CATEGORIES:
        if i < len(tokens) and lexicon[tokens[i]].cat == symbol:
            out.append((ParseTree(symbol, (), tokens[i]), i + 1))
        return out
    for rule in RULES:
        if rule.lhs != symbol:
            continue
        partials: list[tuple[list[ParseTree], int]] = [([], i)]
        for sym in rule.rhs:
            grown: list[tuple[list[ParseTree], int]] = []
            for kids, j in partials:
                for t, k in _parses(sym, tokens, j, lexicon):
                    grown.append((kids + [t], k))
            partials = grown
        out.extend((ParseTree(symbol, tuple(kids)), j) for kids, j in partials)
    return out


# ---------------------------------------------------------------------------
# translation


def translate(tree: ParseTree, lexicon: Lexicon, mode: str) -> Term:
    """Term for a parse tree; mode is "extensional" or "intensional"."""
    term, _ = translate_with_nodes(tree, lexicon, mode)
    return term


def translate_with_nodes(
    tree: ParseTree, lexicon: Lexicon, mode: str
) -> tuple[Term, dict[int, Term]]:
    """Translation plus a map from node identity to that node's closed term.

    Subject-awaiting nodes (VP, V') record their term once saturated at S.
    Bound variables are issued in surface order: subject first.
    """
    node_terms: dict[int, Term] = {}
    counter = [0]

    def fresh() -> str:
        n = counter[0]
        counter[0] += 1
        return "xyz"[n] if n < 3 else f"x{n}"

    def go(node: ParseTree) -> Union[Term, str, object]:
        if node.word is not None:
            entry = lexicon[node.word]
            if node.label in ("N", "V"):
                node_terms[id(node)] = Const(entry.pred)
                return entry.pred
            return entry
        shape = (node.label, tuple(c.label for c in node.children))
        match shape:
            case ("NP", ("N",)):
                pred = go(node.children[0])
                node_terms[id(node)] = Const(pred)
                return pred
            case ("DP", ("D", "NP")):
                go(node.children[0])
                var = fresh()
                pred = go(node.children[1])
                term = Iota(var, PredApp(pred, (Var(var),)))
                node_terms[id(node)] = term
                return term
            case ("VP", ("V", "DP")) | ("V'", ("V", "DP")):
                vpred = go(node.children[0])
                obj = go(node.children[1])

                def clause(subj: Term, node=node, vpred=vpred, obj=obj) -> Term:
                    t = PredApp(vpred, (subj, obj))
                    node_terms[id(node)] = t
                    return t

                return clause
            case ("VP", ("Mod", "V'")):
                entry = lexicon[node.children[0].word]
                if mode != "intensional":
                    raise ModeError(
                        f"{entry.word!r} needs an intensional model"
                    )
                inner = go(node.children[1])

                def modal(subj: Term, node=node, entry=entry, inner=inner) -> Term:
                    t = Diamond(entry.frame, inner(subj))
                    node_terms[id(node)] = t
                    return t

                return modal
            case ("S", ("DP", "VP")):
                subj = go(node.children[0])
                vp = go(node.children[1])
                term = vp(subj)
                node_terms[id(node)] = term
                return term
        raise ValueError(f"no translation for node shape {shape!r}")

    term = go(tree)
    assert isinstance(term, Term)
    return term, node_terms


# ---------------------------------------------------------------------------
# sentence evaluation


@dataclass(frozen=True)
class SentenceResult:
    tree: ParseTree
    term: Term
    value: Value
    trace: tuple[str, ...]


def eval_sentence(
    sentence: Union[str, Sequence[str]],
    m: Model,
    lexicon: Lexicon,
    g: Optional[Assignment] = None,
    s: Optional[Index] = None,
) -> SentenceResult:
    """Parse, translate, and evaluate a sentence against a model.

    An index is required exactly when the model has a nontrivial frame; a
    fully collapsed model evaluates at its unique index, a frame-free one
    extensionally. A failed definite description names the offending DP.
    """
    tokens = sentence.split() if isinstance(sentence, str) else list(sentence)
    tree = parse(tokens, lexicon)
    mode = "intensional" if m.frames else "extensional"
    term, node_terms = translate_with_nodes(tree, lexicon, mode)

    if s is not None:
        evaluate = lambda t: eval_int(t, m, g, s)  # noqa: E731
    elif not m.frames:
        evaluate = lambda t: eval_ext(t, m, g)  # noqa: E731
    elif m.is_extensional:
        s0 = the_index(m)
        evaluate = lambda t: eval_int(t, m, g, s0)  # noqa: E731
    else:
        raise UnknownIndex("model has a nontrivial frame; an index is required")

    try:
        value = evaluate(term)
    except PresuppositionFailure as err:
        for node, _ in iter_nodes(tree):
            if node.label != "DP":
                continue
            try:
                evaluate(node_terms[id(node)])
            except PresuppositionFailure:
                covered = " ".join(node.words())
                raise PresuppositionFailure(f"{err} in DP '{covered}'") from None
        raise

    lines = []
    for node, depth in iter_nodes(tree):
        covered = " ".join(node.words())
        line = f"{'  ' * depth}{node.label} '{covered}'"
        t = node_terms.get(id(node))
        if t is not None:
            line += f" := {render_term(t)} = {render_value(evaluate(t), m)}"
        lines.append(line)
    return SentenceResult(tree, term, value, tuple(lines))
