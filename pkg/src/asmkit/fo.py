"""First-order compiler over named automatic relations.

Formulas over a registry of automatic relations compile to automatic
relations: atoms align variables to tracks, connectives map to the boolean
algebra, ∃ to projection and ∀ to ¬∃¬.  Every step minimizes, and a state
budget caps intermediate blowup (quantifier alternation is worst-case
exponential; we fail loudly instead of thrashing).
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    AutomaticRelation,
    BudgetExceededError,
    all_words_relation,
    equality_relation,
)


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


def exists_all(variables, body):
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def and_all(formulas):
    formulas = list(formulas)
    result = formulas[0]
    for f in formulas[1:]:
        result = And(result, f)
    return result


class Structure:
    """Named automatic relations a formula's atoms resolve against."""

    def __init__(self, relations: dict | None = None):
        self.relations: dict[str, AutomaticRelation] = {}
        for name, rel in (relations or {}).items():
            self.register(name, rel)

    def register(self, name: str, rel: AutomaticRelation):
        if name in self.relations:
            raise ValueError(f"duplicate relation name {name!r}")
        self.relations[name] = rel

    def __getitem__(self, name: str) -> AutomaticRelation:
        try:
            return self.relations[name]
        except KeyError:
            raise KeyError(f"unknown relation {name!r}") from None


def free_variables(formula) -> tuple:
    """Free variables in order of first occurrence."""
    out = []

    def walk(f, bound):
        if isinstance(f, Atom):
            for v in f.args:
                if v not in bound and v not in out:
                    out.append(v)
        elif isinstance(f, Eq):
            for v in (f.left, f.right):
                if v not in bound and v not in out:
                    out.append(v)
        elif isinstance(f, Not):
            walk(f.body, bound)
        elif isinstance(f, (And, Or)):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, (Exists, Forall)):
            walk(f.body, bound | {f.var})
        else:
            raise TypeError(f"not a formula node: {f!r}")

    walk(formula, set())
    return tuple(out)


def _align(rel_a, vars_a, rel_b, vars_b, budget):
    """Cylindrify/reorder both relations onto the merged variable order."""
    merged = list(vars_a) + [v for v in vars_b if v not in vars_a]

    def fit(rel, vs):
        cur = list(vs)
        for v in merged:
            if v not in cur:
                rel = rel.cylindrify(len(cur), budget)
                cur.append(v)
        perm = [cur.index(v) for v in merged]
        if perm != list(range(len(perm))):
            rel = rel.reorder(perm)
        return rel

    return fit(rel_a, vars_a), fit(rel_b, vars_b), tuple(merged)


def _compile(formula, structure, budget):
    """Returns (relation, variable order of its tracks)."""
    if isinstance(formula, Atom):
        rel = structure[formula.name]
        if len(formula.args) != rel.arity:
            raise ValueError(
                f"atom {formula.name} expects {rel.arity} arguments, got {len(formula.args)}"
            )
        # repeated variables: fuse duplicate tracks onto the first occurrence
        vars_out = []
        for i, v in enumerate(formula.args):
            if v in vars_out:
                keep = vars_out.index(v)
                rel = rel.fuse(keep, len(vars_out), budget)
            else:
                vars_out.append(v)
        return rel, tuple(vars_out)
    if isinstance(formula, Eq):
        return _compile(Atom("=", (formula.left, formula.right)), _EQ_STRUCTURE, budget)
    if isinstance(formula, Not):
        rel, vs = _compile(formula.body, structure, budget)
        return rel.complement(budget), vs
    if isinstance(formula, (And, Or)):
        rel_a, vars_a = _compile(formula.left, structure, budget)
        rel_b, vars_b = _compile(formula.right, structure, budget)
        rel_a, rel_b, merged = _align(rel_a, vars_a, rel_b, vars_b, budget)
        if isinstance(formula, And):
            return rel_a.intersect(rel_b, budget), merged
        return rel_a.union(rel_b, budget), merged
    if isinstance(formula, Exists):
        rel, vs = _compile(formula.body, structure, budget)
        if formula.var not in vs:
            return rel, vs
        idx = vs.index(formula.var)
        return rel.project(idx, budget), vs[:idx] + vs[idx + 1 :]
    if isinstance(formula, Forall):
        return _compile(Not(Exists(formula.var, Not(formula.body))), structure, budget)
    raise TypeError(f"not a formula node: {formula!r}")


_EQ_STRUCTURE = Structure({"=": equality_relation()})


def compile_formula(formula, structure: Structure, free_vars, budget: int | None = None) -> AutomaticRelation:
    """Compile to a relation whose tracks follow `free_vars` in order."""
    free_vars = tuple(free_vars)
    actual = free_variables(formula)
    missing = [v for v in actual if v not in free_vars]
    if missing:
        raise ValueError(f"free variables {missing} not listed in {free_vars}")
    rel, vs = _compile(formula, structure, budget)
    if not free_vars:
        return rel
    cur = list(vs)
    for v in free_vars:
        if v not in cur:
            rel = rel.cylindrify(len(cur), budget)
            cur.append(v)
    perm = [cur.index(v) for v in free_vars]
    if perm != list(range(len(perm))):
        rel = rel.reorder(perm)
    return rel


def decide(sentence, structure: Structure, budget: int | None = None) -> bool:
    """Truth value of a sentence (no free variables allowed)."""
    fv = free_variables(sentence)
    if fv:
        raise ValueError(f"sentence has free variables: {fv}")
    rel = compile_formula(sentence, structure, (), budget)
    return not rel.is_empty()


# ---------------------------------------------------------------------------
# textual formula syntax (prefix S-expressions) for the CLI


def _tokenize(text: str):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse_tokens(tokens, pos):
    if pos >= len(tokens):
        raise ValueError("unexpected end of formula")
    tok = tokens[pos]
    if tok != "(":
        raise ValueError(f"expected '(', got {tok!r}")
    pos += 1
    if pos >= len(tokens):
        raise ValueError("unexpected end of formula")
    head = tokens[pos]
    pos += 1
    if head in ("forall", "exists"):
        var = tokens[pos]
        pos += 1
        body, pos = _parse_tokens(tokens, pos)
        node = Forall(var, body) if head == "forall" else Exists(var, body)
    elif head == "not":
        body, pos = _parse_tokens(tokens, pos)
        node = Not(body)
    elif head in ("and", "or"):
        parts = []
        while tokens[pos] == "(":
            part, pos = _parse_tokens(tokens, pos)
            parts.append(part)
        if len(parts) < 2:
            raise ValueError(f"{head} needs at least two operands")
        node = parts[0]
        for part in parts[1:]:
            node = And(node, part) if head == "and" else Or(node, part)
    elif head == "eq":
        node = Eq(tokens[pos], tokens[pos + 1])
        pos += 2
    elif head == "atom":
        name = tokens[pos]
        pos += 1
        args = []
        while tokens[pos] != ")":
            args.append(tokens[pos])
            pos += 1
        node = Atom(name, tuple(args))
    else:
        raise ValueError(f"unknown formula head {head!r}")
    if tokens[pos] != ")":
        raise ValueError(f"expected ')' near token {pos}")
    return node, pos + 1


def parse_formula(text: str):
    """Parse the prefix S-expression formula syntax.

    Example: `(forall x (exists y (atom Add x y x)))`.
    """
    tokens = _tokenize(text)
    node, pos = _parse_tokens(tokens, 0)
    if pos != len(tokens):
        raise ValueError("trailing tokens after formula")
    return node
