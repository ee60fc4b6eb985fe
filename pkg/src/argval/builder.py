"""Deductive arguments built from a propositional knowledge base.

An argument is a pair ⟨support, claim⟩ where the support is a consistent,
subset-minimal part of the knowledge base that classically entails the
claim.  Supports are searched by increasing size with every subset's model
set cached as a bitmask, so checking a claim against a support is a single
mask comparison.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .af import Framework
from .errors import FileFormatError, FormulaSyntaxError, ResourceLimitError
from .logic import (
    DEFAULT_MAX_ATOMS,
    Formula,
    KnowledgeBase,
    Not,
    TruthTable,
    conjoin,
    entails,
    is_consistent,
    parse_formula,
    render_formula,
)


@dataclass(frozen=True)
class StructuredArgument:
    id: str
    support: tuple[Formula, ...]
    claim: Formula

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))

    def render(self) -> str:
        body = "; ".join(render_formula(f) for f in self.support)
        return f"argument({self.id}, [{body}], {render_formula(self.claim)})."

    def __str__(self):
        body = ", ".join(render_formula(f) for f in self.support)
        return f"<{{{body}}}, {render_formula(self.claim)}>"


@dataclass(frozen=True)
class BuilderConfig:
    max_support_size: int = 3
    claim_targets: tuple[Formula, ...] | None = None
    allow_inconsistent_support: bool = False
    node_budget: int = 200_000
    max_atoms: int = DEFAULT_MAX_ATOMS

    def __post_init__(self):
        if self.max_support_size < 1:
            raise ValueError("max_support_size must be at least 1")
        if self.claim_targets is not None:
            object.__setattr__(self, "claim_targets", tuple(self.claim_targets))


def canonical_undercut_claim(arg: StructuredArgument) -> Formula:
    if not arg.support:
        raise ValueError("an argument with empty support has no undercut")
    return Not(conjoin(arg.support))


def attacks(attacker: StructuredArgument, target: StructuredArgument, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Claim-rebut-support or undermining."""
    if not is_consistent((attacker.claim, *target.support), max_atoms):
        return True
    return any(entails(attacker.support, Not(phi), max_atoms) for phi in target.support)


def validate_argument(
    arg: StructuredArgument,
    kb: KnowledgeBase,
    allow_inconsistent: bool = False,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> list[str]:
    """Names of the argument invariants ``arg`` violates (empty when it is a valid argument)."""
    problems = []
    if any(f not in kb for f in arg.support):
        problems.append("support not contained in the knowledge base")
    if not entails(arg.support, arg.claim, max_atoms):
        problems.append("support does not entail the claim")
    if not allow_inconsistent and not is_consistent(arg.support, max_atoms):
        problems.append("support is inconsistent")
    for k in range(len(arg.support)):
        for sub in itertools.combinations(arg.support, k):
            if entails(sub, arg.claim, max_atoms):
                problems.append("support is not subset-minimal")
                break
        else:
            continue
        break
    return problems


def _order_key(support: Sequence[Formula], claim: Formula):
    return (len(support), "; ".join(render_formula(f) for f in support), render_formula(claim))


class _SupportIndex:
    """Model masks of every KB subset up to the size bound, computed lazily by size."""

    def __init__(self, kb: KnowledgeBase, table: TruthTable, cfg: BuilderConfig):
        self.kb = kb.formulas
        self.table = table
        self.cfg = cfg
        self.masks: dict[tuple[int, ...], int] = {(): table.full}
        self.by_size: list[list[tuple[int, ...]]] = [[()]]
        self.visited = 0
        self.formula_masks = [table.mask(f) for f in self.kb]

    def subsets(self, size: int) -> list[tuple[int, ...]]:
        while len(self.by_size) <= size:
            k = len(self.by_size)
            level = []
            for combo in itertools.combinations(range(len(self.kb)), k):
                self.visited += 1
                if self.visited > self.cfg.node_budget:
                    raise ResourceLimitError(
                        f"support search exceeded its budget of {self.cfg.node_budget} subsets"
                    )
                self.masks[combo] = self.masks[combo[:-1]] & self.formula_masks[combo[-1]]
                level.append(combo)
            self.by_size.append(level)
        return self.by_size[size]


def _arguments_for_claims(index: _SupportIndex, claims: Iterable[Formula]) -> list[tuple[tuple[Formula, ...], Formula]]:
    cfg, table = index.cfg, index.table
    out = []
    max_size = min(cfg.max_support_size, len(index.kb))
    for claim in claims:
        cm = table.mask(claim)
        entailing: set[tuple[int, ...]] = set()
        for size in range(max_size + 1):
            for combo in index.subsets(size):
                m = index.masks[combo]
                if m & ~cm:
                    continue
                entailing.add(combo)
                if any(combo[:i] + combo[i + 1:] in entailing for i in range(size)):
                    continue
                if not cfg.allow_inconsistent_support and m == 0:
                    continue
                out.append((tuple(index.kb[i] for i in combo), claim))
    return out


def build_arguments(kb: KnowledgeBase, cfg: BuilderConfig = BuilderConfig()) -> list[StructuredArgument]:
    atoms = set()
    for f in kb:
        atoms |= f.atoms()
    for f in cfg.claim_targets or ():
        atoms |= f.atoms()
    table = TruthTable(atoms, cfg.max_atoms)
    index = _SupportIndex(kb, table, cfg)

    if cfg.claim_targets is not None:
        found = _arguments_for_claims(index, dict.fromkeys(cfg.claim_targets))
    else:
        claims = dict.fromkeys([*kb, *(Not(f) for f in kb)])
        found = []
        pending = list(claims)
        while pending:
            new = _arguments_for_claims(index, pending)
            found += new
            pending = []
            for support, _ in new:
                if support:
                    u = Not(conjoin(support))
                    if u not in claims:
                        claims[u] = None
                        pending.append(u)
    unique = dict.fromkeys(found)
    ordered = sorted(unique, key=lambda sc: _order_key(*sc))
    return [StructuredArgument(f"arg{i}", s, c) for i, (s, c) in enumerate(ordered, 1)]


def framework_from_arguments(
    args: Sequence[StructuredArgument], max_atoms: int = DEFAULT_MAX_ATOMS
) -> tuple[Framework, dict[str, StructuredArgument]]:
    table = {a.id: a for a in args}
    if len(table) != len(args):
        raise ValueError("argument ids must be unique")
    edges = [(x.id, y.id) for x in args for y in args if attacks(x, y, max_atoms)]
    return Framework(table, edges), table


def framework_from_kb(
    kb: KnowledgeBase, cfg: BuilderConfig = BuilderConfig()
) -> tuple[Framework, dict[str, StructuredArgument]]:
    return framework_from_arguments(build_arguments(kb, cfg), cfg.max_atoms)


# --------------------------------------------------------------------------
# Argument-table text format

_ARG_RE = re.compile(r"argument\(\s*([A-Za-z0-9_]+)\s*,\s*\[(.*)\]\s*,\s*(.+)\)\.\Z")


def arguments_to_text(args: Iterable[StructuredArgument]) -> str:
    return "".join(a.render() + "\n" for a in args)


def arguments_from_text(text: str, path=None) -> list[StructuredArgument]:
    out: list[StructuredArgument] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        m = _ARG_RE.match(line)
        if not m:
            raise FileFormatError("expected argument(<id>, [<formula>; ...], <formula>).", lineno, path)
        ident, body, claim = m.groups()
        if ident in seen:
            raise FileFormatError(f"duplicate argument id {ident!r}", lineno, path)
        seen.add(ident)
        try:
            support = [parse_formula(p) for p in body.split(";") if p.strip()]
            out.append(StructuredArgument(ident, support, parse_formula(claim)))
        except FormulaSyntaxError as e:
            raise FileFormatError(str(e), lineno, path) from None
    return out


def load_arguments(path) -> list[StructuredArgument]:
    with open(path, encoding="utf-8") as fh:
        return arguments_from_text(fh.read(), path)
