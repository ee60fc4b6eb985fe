"""Syntactic checking of DKQ derivations.

First-order formulas extend the propositional syntax with predicate
applications ``P(x, c)`` and the quantifiers ``forall x.`` and ``exists x.``,
which bind as tightly as ``~``.  Lowercase names made of one letter from
``u``-``z`` optionally followed by digits are variables; other lowercase
names are constants.  Axiom schemes are written over the metavariables
``A``-``D`` and matched structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import ArityError, FileFormatError, FormulaSyntaxError, InputError, SubstitutionCaptureError
from .logic import PREC_UNARY, And, Atom, Formula, Implies, Not, Or, Parser, render_formula

VARIABLE_RE = re.compile(r"[u-z][0-9]*\Z")
TERM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


def is_variable(name: str) -> bool:
    return bool(VARIABLE_RE.match(name))


@dataclass(frozen=True)
class Pred(Formula):
    name: str
    terms: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise InputError(f"predicate {self.name} needs at least one term")

    def children(self):
        return ()

    def render(self, wrap) -> str:
        return f"{self.name}({', '.join(self.terms)})"


@dataclass(frozen=True)
class _Quantifier(Formula):
    var: str
    body: Formula

    keyword = ""

    def children(self):
        return (self.body,)

    def render(self, wrap) -> str:
        return f"{self.keyword} {self.var}. {wrap(self.body, PREC_UNARY)}"


@dataclass(frozen=True)
class ForAll(_Quantifier):
    keyword = "forall"


@dataclass(frozen=True)
class Exists(_Quantifier):
    keyword = "exists"


@dataclass(frozen=True)
class MetaVar(Formula):
    """A scheme placeholder standing for any formula."""

    name: str

    def children(self):
        return ()

    def render(self, wrap) -> str:
        return self.name


# --------------------------------------------------------------------------
# Parsing


class FOParser(Parser):
    def __init__(self, text: str, allow_meta: bool = False):
        super().__init__(text)
        self.allow_meta = allow_meta

    def primary_starts(self):
        return super().primary_starts() + ["exists", "forall", "predicate"]

    def parse_primary(self) -> Formula:
        t = self.tok
        if t.kind == "ident" and t.text in ("forall", "exists"):
            self.advance()
            var = self.expect("ident")
            if not is_variable(var.text):
                raise FormulaSyntaxError(f"{var.text!r} is not a variable", var.offset, ["variable"])
            self.expect(".")
            cls = ForAll if t.text == "forall" else Exists
            return cls(var.text, self.parse_neg())
        if t.kind == "ident" and t.text[0].isupper():
            self.advance()
            if self.tok.kind == "(":
                self.advance()
                terms = [self._term()]
                while self.tok.kind == ",":
                    self.advance()
                    terms.append(self._term())
                self.expect(")")
                return Pred(t.text, tuple(terms))
            if self.allow_meta:
                return MetaVar(t.text)
            self.i -= 1
            self.fail(["("])
        return super().parse_primary()

    def _term(self) -> str:
        t = self.tok
        if t.kind != "ident" or not TERM_RE.match(t.text):
            self.fail(["term"])
        self.advance()
        return t.text


def parse_fo(text: str, allow_meta: bool = False) -> Formula:
    return FOParser(text, allow_meta).parse()


# --------------------------------------------------------------------------
# Variables and substitution


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Pred):
        return frozenset(t for t in f.terms if is_variable(t))
    if isinstance(f, _Quantifier):
        return free_vars(f.body) - {f.var}
    if isinstance(f, Not):
        return free_vars(f.operand)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    return frozenset()


def terms_of(f: Formula) -> frozenset[str]:
    if isinstance(f, Pred):
        return frozenset(f.terms)
    if isinstance(f, _Quantifier):
        return terms_of(f.body)
    if isinstance(f, Not):
        return terms_of(f.operand)
    if isinstance(f, (And, Or, Implies)):
        return terms_of(f.left) | terms_of(f.right)
    return frozenset()


def substitute(f: Formula, x: str, t: str) -> Formula:
    """Replace the free occurrences of variable ``x`` by term ``t``."""
    if not is_variable(x):
        raise InputError(f"{x!r} is not a variable")
    if isinstance(f, Pred):
        return Pred(f.name, tuple(t if s == x else s for s in f.terms))
    if isinstance(f, _Quantifier):
        if f.var == x or x not in free_vars(f.body):
            return f
        if f.var == t:
            raise SubstitutionCaptureError(f"substituting {t} for {x} would be captured by the binder of {t}")
        return type(f)(f.var, substitute(f.body, x, t))
    if isinstance(f, Not):
        return Not(substitute(f.operand, x, t))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute(f.left, x, t), substitute(f.right, x, t))
    return f


def contains_exists(f: Formula) -> bool:
    if isinstance(f, Exists):
        return True
    if isinstance(f, ForAll):
        return contains_exists(f.body)
    if isinstance(f, Not):
        return contains_exists(f.operand)
    if isinstance(f, (And, Or, Implies)):
        return contains_exists(f.left) or contains_exists(f.right)
    return False


# --------------------------------------------------------------------------
# Schemes

Binding = dict


def match(pattern: Formula, f: Formula, env: Binding | None = None) -> Binding | None:
    """Extend ``env`` so that ``pattern`` instantiates to ``f``; None on failure.

    Quantifier variables in a pattern are placeholders for variables.
    """
    env = dict(env or {})
    stack = [(pattern, f)]
    while stack:
        p, g = stack.pop()
        if isinstance(p, MetaVar):
            if p.name in env:
                if env[p.name] != g:
                    return None
            else:
                env[p.name] = g
        elif isinstance(p, _Quantifier):
            if type(g) is not type(p):
                return None
            if env.setdefault(p.var, g.var) != g.var:
                return None
            stack.append((p.body, g.body))
        elif isinstance(p, Not):
            if not isinstance(g, Not):
                return None
            stack.append((p.operand, g.operand))
        elif isinstance(p, (And, Or, Implies)):
            if type(g) is not type(p):
                return None
            stack.append((p.left, g.left))
            stack.append((p.right, g.right))
        elif p != g:
            return None
    return env


@dataclass(frozen=True)
class AxiomScheme:
    id: int
    text: str
    matcher: Callable[[Formula], Binding | None]

    def match(self, f: Formula) -> Binding | None:
        return self.matcher(f)


def _pattern(text: str, side: Callable[[Binding], bool] | None = None):
    pat = parse_fo(text, allow_meta=True)

    def run(f):
        env = match(pat, f)
        if env is None or (side is not None and not side(env)):
            return None
        return env

    return run


def _instance_of_substitution(a: Formula, b: Formula) -> Binding | None:
    # b is a with some term t put for the free occurrences of some variable x
    if a == b:
        return {"A": a}
    for x in sorted(free_vars(a)):
        for t in sorted(terms_of(b)):
            try:
                if substitute(a, x, t) == b:
                    return {"A": a, "x": x, "t": t}
            except SubstitutionCaptureError:
                continue
    return None


def _printed_11(f):
    if isinstance(f, Implies):
        return _instance_of_substitution(f.left, f.right)
    return None


def _corrected_11(f):
    if isinstance(f, Implies) and isinstance(f.left, ForAll):
        env = _instance_of_substitution(f.left.body, f.right)
        if env is not None:
            env.setdefault("x", f.left.var)
            return env
    return None


def _x_not_free_in_a(env):
    return env["x"] not in free_vars(env["A"])


PRINTED_SCHEMES = {
    1: "A -> A",
    2: "A & B -> A",
    3: "A & B -> B",
    4: "A & (B | C) -> A & B | C",
    5: "A & (B | C) -> A & B | C",
    6: "(A -> B) & (B -> C) -> (A -> B & C)",
    7: "(A -> B) & (B -> C) -> (A -> C)",
    8: "(A -> ~B) -> (B -> ~A)",
    9: "~~A -> A",
    10: "A | ~A",
    11: "A -> A(t/x)",
    12: "(A -> B) -> (A -> forall x. B)",
    13: "A | B -> A | forall x. B",
}

CORRECTED_SCHEMES = {
    **PRINTED_SCHEMES,
    **{
        4: "A & (B | C) -> A & B | A & C",
        5: "A & B | A & C -> A & (B | C)",
        6: "(A -> B) & (A -> C) -> (A -> B & C)",
        11: "forall x. A -> A(t/x)",
        12: "(forall x. (A -> B)) -> (A -> forall x. B)",
        13: "(forall x. (A | B)) -> A | forall x. B",
    },
}


def _build(texts: Mapping[int, str], corrected: bool) -> dict[int, AxiomScheme]:
    out = {}
    for i, text in texts.items():
        if i == 11:
            matcher = _corrected_11 if corrected else _printed_11
        elif corrected and i in (12, 13):
            matcher = _pattern(text, _x_not_free_in_a)
        else:
            matcher = _pattern(text)
        out[i] = AxiomScheme(i, text, matcher)
    return out


SCHEMES = _build(PRINTED_SCHEMES, corrected=False)
CORRECTED = _build(CORRECTED_SCHEMES, corrected=True)


def schemes(corrected: bool = False) -> dict[int, AxiomScheme]:
    return CORRECTED if corrected else SCHEMES


def match_axiom(f: Formula, corrected: bool = False) -> list[tuple[int, Binding]]:
    out = []
    for i, scheme in schemes(corrected).items():
        env = scheme.match(f)
        if env is not None:
            out.append((i, dict(sorted(env.items()))))
    return out


# --------------------------------------------------------------------------
# Rules

RULE_ARITY = {"mp": 2, "adj": 2, "affix": 1, "gen": 1}


def check_rule(rule: str, premises: list[Formula], conclusion: Formula, var: str | None = None) -> bool:
    """Does ``conclusion`` follow from ``premises`` by one application of ``rule``?

    ``mp`` takes the minor premise first: ``[A, A -> B]``.
    """
    if rule not in RULE_ARITY:
        raise InputError(f"unknown rule {rule!r}")
    if len(premises) != RULE_ARITY[rule]:
        raise ArityError(f"{rule} takes {RULE_ARITY[rule]} premise(s), got {len(premises)}")
    if rule == "mp":
        return premises[1] == Implies(premises[0], conclusion)
    if rule == "adj":
        return conclusion == And(premises[0], premises[1])
    if rule == "affix":
        p = premises[0]
        if not (isinstance(p, Implies) and isinstance(p.left, Implies) and isinstance(p.right, Implies)):
            return False
        a, b, c, d = p.left.left, p.left.right, p.right.left, p.right.right
        return conclusion == Implies(Implies(b, c), Implies(a, d))
    # gen
    if not isinstance(conclusion, ForAll) or conclusion.body != premises[0]:
        return False
    return var is None or conclusion.var == var


# --------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Justification:
    rule: str  # "axiom", "premise" or a rule name
    refs: tuple[int, ...] = ()
    axiom: int | None = None
    var: str | None = None

    def __str__(self):
        if self.rule == "axiom":
            return f"axiom {self.axiom}"
        if self.rule == "premise":
            return "premise"
        if self.rule == "gen":
            return f"gen {self.refs[0]} {self.var}"
        return f"{self.rule} {','.join(map(str, self.refs))}"


@dataclass(frozen=True)
class DerivationLine:
    index: int
    formula: Formula
    justification: Justification

    def __str__(self):
        return f"{self.index}. {render_formula(self.formula)} [{self.justification}]"


@dataclass(frozen=True)
class Derivation:
    lines: tuple[DerivationLine, ...]
    premises: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "premises", tuple(self.premises))

    def prefix(self, n: int) -> "Derivation":
        return Derivation(self.lines[:n], self.premises)

    def to_text(self) -> str:
        return "".join(f"{line}\n" for line in self.lines)


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    line: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"error at line {self.line}: {self.reason}"


def _line_error(line: DerivationLine, seen: dict[int, Formula], d: Derivation, corrected: bool) -> str | None:
    j = line.justification
    f = line.formula
    if j.rule == "premise":
        if d.premises and f not in d.premises:
            return "not a declared premise"
        return None
    if j.rule == "axiom":
        if j.axiom not in schemes(corrected):
            return f"bad axiom id {j.axiom}"
        if contains_exists(f):
            return "the particular quantifier has no axioms"
        if schemes(corrected)[j.axiom].match(f) is None:
            return f"unification failure against axiom {j.axiom}"
        return None
    for r in j.refs:
        if r >= line.index:
            return f"forward reference to line {r}"
        if r not in seen:
            return f"reference to missing line {r}"
    if j.rule == "gen" and not is_variable(j.var or ""):
        return f"{j.var!r} is not a variable"
    try:
        ok = check_rule(j.rule, [seen[r] for r in j.refs], f, j.var)
    except (ArityError, InputError) as e:
        return str(e)
    return None if ok else f"bad {j.rule} instance"


def check_derivation(d: Derivation, corrected: bool = False) -> CheckReport:
    seen: dict[int, Formula] = {}
    for expected, line in enumerate(d.lines, 1):
        if line.index != expected:
            return CheckReport(False, line.index, f"expected line number {expected}")
        err = _line_error(line, seen, d, corrected)
        if err is not None:
            return CheckReport(False, line.index, err)
        seen[line.index] = line.formula
    return CheckReport(True)


_JUST_RE = {
    "axiom": re.compile(r"axiom\s+(\d+)\Z"),
    "premise": re.compile(r"premise\Z"),
    "mp": re.compile(r"mp\s+(\d+)\s*,\s*(\d+)\Z"),
    "adj": re.compile(r"adj\s+(\d+)\s*,\s*(\d+)\Z"),
    "affix": re.compile(r"affix\s+(\d+)\Z"),
    "gen": re.compile(r"gen\s+(\d+)\s+([a-z][a-zA-Z0-9_]*)\Z"),
}


def parse_justification(text: str) -> Justification:
    head = text.split(None, 1)[0] if text.strip() else ""
    rx = _JUST_RE.get(head)
    m = rx.match(text.strip()) if rx else None
    if m is None:
        raise InputError(f"malformed justification {text!r}")
    if head == "axiom":
        return Justification("axiom", axiom=int(m.group(1)))
    if head == "premise":
        return Justification("premise")
    if head == "gen":
        return Justification("gen", (int(m.group(1)),), var=m.group(2))
    return Justification(head, tuple(int(g) for g in m.groups()))


def _split_line(raw: str) -> tuple[int, str, str]:
    m = re.match(r"\s*(\d+)\.\s+(.*)\Z", raw)
    if not m:
        raise InputError("expected '<n>. <formula> [<justification>]'")
    index, rest = int(m.group(1)), m.group(2).rstrip()
    if rest.endswith("]") and "[" in rest:
        k = rest.rindex("[")
        return index, rest[:k].strip(), rest[k + 1:-1].strip()
    # bare form: the justification is the trailing keyword phrase
    m = re.search(r"\s((?:axiom|mp|adj|affix|gen)\s[^\s].*|premise)\Z", rest)
    if not m:
        raise InputError("missing justification")
    return index, rest[: m.start()].strip(), m.group(1).strip()


def parse_derivation(text: str, path=None, premises: Iterable[Formula] = ()) -> Derivation:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.split("#", 1)[0].strip():
            continue
        try:
            index, ftext, jtext = _split_line(raw.split("#", 1)[0])
            lines.append(DerivationLine(index, parse_fo(ftext), parse_justification(jtext)))
        except InputError as e:
            raise FileFormatError(str(e), lineno, path) from None
    return Derivation(tuple(lines), tuple(premises))


def check_text(text: str, corrected: bool = False, path=None) -> CheckReport:
    """Parse and check a derivation file's contents; parse failures are reported, not raised."""
    try:
        d = parse_derivation(text, path)
    except FileFormatError as e:
        return CheckReport(False, e.line, f"parse error: {e}")
    return check_derivation(d, corrected)


def load_derivation(path) -> Derivation:
    with open(path, encoding="utf-8") as fh:
        return parse_derivation(fh.read(), path)


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from iter_subformulas(f.operand)
    elif isinstance(f, (And, Or, Implies)):
        yield from iter_subformulas(f.left)
        yield from iter_subformulas(f.right)
    elif isinstance(f, _Quantifier):
        yield from iter_subformulas(f.body)
