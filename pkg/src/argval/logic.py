"""Propositional formulas: syntax trees, parsing, printing and a truth-table oracle.

Surface syntax (ASCII)::

    formula := disj ("->" formula)?
    disj    := conj ("|" conj)*
    conj    := neg ("&" neg)*
    neg     := "~" neg | atom | "(" formula ")"
    atom    := [a-z][a-zA-Z0-9_]*

``->`` is right-associative, ``&`` and ``|`` are left-associative, and
``~`` binds tightest.  Equality between formulas is syntactic.

Entailment and consistency are decided by exhaustive truth tables.  Each
formula is compiled to an integer bitmask over the rows of the table, so a
check over ``n`` atoms costs a handful of big-integer operations on
``2**n``-bit numbers instead of ``2**n`` recursive evaluations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import FileFormatError, FormulaSyntaxError, MissingAtomError, ResourceLimitError

DEFAULT_MAX_ATOMS = 20

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class of the formula tree.  Subclasses are frozen dataclasses."""

    __slots__ = ()

    def atoms(self) -> frozenset[str]:
        return frozenset(_iter_atoms(self))

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not ATOM_RE.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula

    def __repr__(self):
        return f"Not({self.operand!r})"


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


BINARY = (And, Or, Implies)


def _iter_atoms(f: Formula) -> Iterator[str]:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            yield g.name
        elif isinstance(g, Not):
            stack.append(g.operand)
        elif isinstance(g, BINARY):
            stack.append(g.left)
            stack.append(g.right)
        else:
            # first-order nodes contribute their own propositional atoms
            stack.extend(getattr(g, "children", lambda: ())())


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of a non-empty sequence."""
    it = iter(formulas)
    try:
        result = next(it)
    except StopIteration:
        raise ValueError("cannot conjoin an empty sequence") from None
    for f in it:
        result = And(result, f)
    return result


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.operand)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.operand)
    return 1 + max(depth(f.left), depth(f.right))


# --------------------------------------------------------------------------
# Lexing and parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<op>[~&|(),.])
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident", one of the operator strings, or "eof"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens carrying UTF-8 byte offsets."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}", _byte_offset(text, pos)
            )
        kind = m.lastgroup
        if kind != "ws":
            tok_text = m.group()
            tok_kind = "ident" if kind == "ident" else tok_text
            tokens.append(Token(tok_kind, tok_text, _byte_offset(text, pos)))
        pos = m.end()
    tokens.append(Token("eof", "", _byte_offset(text, n)))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class Parser:
    """Recursive-descent parser over a token list.

    Subclasses extend :meth:`parse_primary` to add first-order syntax.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail([kind])
        return self.advance()

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise FormulaSyntaxError(f"unexpected {found}", t.offset, expected)

    def parse(self) -> Formula:
        if self.tok.kind == "eof":
            raise FormulaSyntaxError("empty formula", 0, self.primary_starts())
        f = self.parse_formula()
        if self.tok.kind != "eof":
            self.fail(["->", "|", "&", "end of input"])
        return f

    def parse_formula(self) -> Formula:
        left = self.parse_disj()
        if self.tok.kind == "->":
            self.advance()
            return Implies(left, self.parse_formula())
        return left

    def parse_disj(self) -> Formula:
        f = self.parse_conj()
        while self.tok.kind == "|":
            self.advance()
            f = Or(f, self.parse_conj())
        return f

    def parse_conj(self) -> Formula:
        f = self.parse_neg()
        while self.tok.kind == "&":
            self.advance()
            f = And(f, self.parse_neg())
        return f

    def parse_neg(self) -> Formula:
        if self.tok.kind == "~":
            self.advance()
            return Not(self.parse_neg())
        return self.parse_primary()

    def primary_starts(self):
        return ["~", "(", "atom"]

    def parse_primary(self) -> Formula:
        t = self.tok
        if t.kind == "(":
            self.advance()
            f = self.parse_formula()
            self.expect(")")
            return f
        if t.kind == "ident" and ATOM_RE.match(t.text):
            self.advance()
            return Atom(t.text)
        self.fail(self.primary_starts())


def parse_formula(text: str) -> Formula:
    """Parse the ASCII surface syntax into a :class:`Formula`.

    >>> parse_formula("a & b | c")
    Or(And(Atom('a'), Atom('b')), Atom('c'))
    """
    return Parser(text).parse()


# --------------------------------------------------------------------------
# Printing

PREC_IMPLIES, PREC_OR, PREC_AND, PREC_UNARY = 1, 2, 3, 4


def precedence(f: Formula) -> int:
    if isinstance(f, Implies):
        return PREC_IMPLIES
    if isinstance(f, Or):
        return PREC_OR
    if isinstance(f, And):
        return PREC_AND
    return PREC_UNARY


def render_formula(f: Formula) -> str:
    """Canonical text with the fewest parentheses that still round-trip."""
    return _render(f, 0)


def _wrap(f: Formula, min_prec: int) -> str:
    s = _render(f, min_prec)
    return f"({s})" if precedence(f) < min_prec else s


def _render(f: Formula, min_prec: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + _wrap(f.operand, PREC_UNARY)
    if isinstance(f, Implies):
        return f"{_wrap(f.left, PREC_IMPLIES + 1)} -> {_wrap(f.right, PREC_IMPLIES)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, PREC_OR)} | {_wrap(f.right, PREC_OR + 1)}"
    if isinstance(f, And):
        return f"{_wrap(f.left, PREC_AND)} & {_wrap(f.right, PREC_AND + 1)}"
    render = getattr(f, "render", None)
    if render is None:
        raise TypeError(f"not a formula: {f!r}")
    return render(_wrap)


# --------------------------------------------------------------------------
# Semantics


@dataclass(frozen=True)
class Interpretation:
    """A truth assignment over a declared universe of atom names."""

    assignment: Mapping[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))

    @property
    def universe(self) -> frozenset[str]:
        return frozenset(self.assignment)

    def __getitem__(self, name: str) -> bool:
        return self.assignment[name]


def evaluate(f: Formula, interp: Interpretation | Mapping[str, bool]) -> bool:
    """Classical truth value of ``f``; every atom of ``f`` must be assigned."""
    assignment = interp.assignment if isinstance(interp, Interpretation) else interp
    missing = f.atoms() - set(assignment)
    if missing:
        raise MissingAtomError(missing)
    return _eval(f, assignment)


def _eval(f, v):
    if isinstance(f, Atom):
        return bool(v[f.name])
    if isinstance(f, Not):
        return not _eval(f.operand, v)
    if isinstance(f, And):
        return _eval(f.left, v) and _eval(f.right, v)
    if isinstance(f, Or):
        return _eval(f.left, v) or _eval(f.right, v)
    if isinstance(f, Implies):
        return (not _eval(f.left, v)) or _eval(f.right, v)
    raise TypeError(f"not a propositional formula: {f!r}")


def interpretations(atoms: Iterable[str]) -> Iterator[Interpretation]:
    """All assignments over ``atoms`` in binary-counting order (all false first)."""
    names = sorted(set(atoms))
    n = len(names)
    for row in range(1 << n):
        yield Interpretation({name: bool(row >> (n - 1 - k) & 1) for k, name in enumerate(names)})


class TruthTable:
    """Bitmask compiler for formulas over a fixed, ordered atom universe.

    Bit ``r`` of a mask is the truth value in row ``r``, where atom ``k``
    (in sorted order) is true in row ``r`` iff bit ``k`` of ``r`` is set.
    """

    def __init__(self, atoms: Iterable[str], max_atoms: int = DEFAULT_MAX_ATOMS):
        self.atoms = tuple(sorted(set(atoms)))
        if len(self.atoms) > max_atoms:
            raise ResourceLimitError(
                f"truth table over {len(self.atoms)} atoms exceeds the bound of {max_atoms}"
            )
        self.rows = 1 << len(self.atoms)
        self.full = (1 << self.rows) - 1
        self._atom_masks = {name: self._atom_mask(k) for k, name in enumerate(self.atoms)}
        self._cache: dict[Formula, int] = {}

    def _atom_mask(self, k: int) -> int:
        # rows where bit k is set: blocks of 2**k ones every 2**(k+1) rows
        block = 1 << k
        unit = ((1 << block) - 1) << block
        period = block << 1
        mask = 0
        for start in range(0, self.rows, period):
            mask |= unit << start
        return mask

    def mask(self, f: Formula) -> int:
        cached = self._cache.get(f)
        if cached is not None:
            return cached
        if isinstance(f, Atom):
            try:
                m = self._atom_masks[f.name]
            except KeyError:
                raise MissingAtomError([f.name]) from None
        elif isinstance(f, Not):
            m = self.full & ~self.mask(f.operand)
        elif isinstance(f, And):
            m = self.mask(f.left) & self.mask(f.right)
        elif isinstance(f, Or):
            m = self.mask(f.left) | self.mask(f.right)
        elif isinstance(f, Implies):
            m = (self.full & ~self.mask(f.left)) | self.mask(f.right)
        else:
            raise TypeError(f"not a propositional formula: {f!r}")
        self._cache[f] = m
        return m

    def models(self, gamma: Iterable[Formula]) -> int:
        m = self.full
        for g in gamma:
            m &= self.mask(g)
        return m

    def entails(self, gamma: Iterable[Formula], phi: Formula) -> bool:
        return self.models(gamma) & ~self.mask(phi) & self.full == 0

    def consistent(self, gamma: Iterable[Formula]) -> bool:
        return self.models(gamma) != 0


def _universe(formulas: Iterable[Formula]) -> set[str]:
    names: set[str] = set()
    for f in formulas:
        names |= f.atoms()
    return names


def entails(gamma: Iterable[Formula], phi: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Classical consequence: every model of ``gamma`` satisfies ``phi``."""
    gamma = list(gamma)
    table = TruthTable(_universe(gamma + [phi]), max_atoms)
    return table.entails(gamma, phi)


def is_consistent(gamma: Iterable[Formula], max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    gamma = list(gamma)
    table = TruthTable(_universe(gamma), max_atoms)
    return table.consistent(gamma)


# --------------------------------------------------------------------------
# Knowledge bases


class KnowledgeBase:
    """Insertion-ordered set of formulas; duplicates are rejected."""

    def __init__(self, formulas: Iterable[Formula] = ()):
        items: list[Formula] = []
        seen: set[Formula] = set()
        for f in formulas:
            if not isinstance(f, Formula):
                raise TypeError(f"not a formula: {f!r}")
            if f in seen:
                raise ValueError(f"duplicate formula in knowledge base: {render_formula(f)}")
            seen.add(f)
            items.append(f)
        self._formulas = tuple(items)
        self._index = {f: i for i, f in enumerate(self._formulas)}

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return self._formulas

    def index(self, f: Formula) -> int:
        return self._index[f]

    def __contains__(self, f) -> bool:
        return f in self._index

    def __iter__(self):
        return iter(self._formulas)

    def __len__(self):
        return len(self._formulas)

    def __eq__(self, other):
        return isinstance(other, KnowledgeBase) and self._formulas == other._formulas

    def __hash__(self):
        return hash(self._formulas)

    def __repr__(self):
        return f"KnowledgeBase([{', '.join(render_formula(f) for f in self._formulas)}])"

    def union(self, more: Iterable[Formula]) -> "KnowledgeBase":
        extra = [f for f in more if f not in self._index]
        return KnowledgeBase(self._formulas + tuple(extra))

    @classmethod
    def from_text(cls, text: str, path=None) -> "KnowledgeBase":
        formulas = []
        seen = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                f = parse_formula(line)
            except FormulaSyntaxError as exc:
                raise FileFormatError(str(exc), lineno, path) from None
            if f in seen:
                raise FileFormatError(
                    f"duplicate formula (first on line {seen[f]})", lineno, path
                )
            seen[f] = lineno
            formulas.append(f)
        return cls(formulas)

    def to_text(self) -> str:
        return "".join(render_formula(f) + "\n" for f in self._formulas)


def load_kb(path) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        return KnowledgeBase.from_text(fh.read(), path=str(path))
