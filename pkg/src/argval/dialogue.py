"""Dialogue games between a Proponent and an Opponent.

A dialogue starts with the Proponent's thesis at position 0 followed by the
two rank declarations at positions 1 and 2.  After that the Opponent moves
first and the agents alternate.  Every move either attacks an earlier
assertion of the other agent or defends against an earlier attack on one of
the mover's own assertions.  The agent to move without a legal move loses.

Structural rules (what a :class:`RuleSet` controls):

* identical moves are never repeated, except that the Proponent may repeat
  a defence;
* an agent defends against any single attack at most ``rank`` times;
* intuitionistic style answers only the latest undefended attack;
* an atom asserted by the Proponent may be challenged (``?!``) by the
  Opponent unless the Opponent has asserted that atom itself.  The challenge
  has no defence, so an atom can only safely be used once it is conceded;
* ``d11_atom_restriction``: the Opponent may not assert an atom ``p`` once
  the Proponent has asserted ``p`` or ``~p``, and atoms that occur both
  plainly and negated in the thesis count as conceded;
* ``negative_literal``: the Proponent attacks the Opponent's ``~p`` only
  after the Opponent has attacked a Proponent ``~p``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Union

from .errors import FileFormatError, FormulaSyntaxError, IllegalMoveError, InputError, ResourceLimitError
from .logic import And, Atom, Formula, Implies, Not, Or, parse_formula, render_formula, subformulas


class DepthCapExceededError(ResourceLimitError):
    pass


class Agent(str, enum.Enum):
    PROPONENT = "P"
    OPPONENT = "O"

    @property
    def other(self) -> "Agent":
        return Agent.OPPONENT if self is Agent.PROPONENT else Agent.PROPONENT

    @property
    def title(self) -> str:
        return "Proponent" if self is Agent.PROPONENT else "Opponent"

    def __str__(self):
        return self.value


class Kind(str, enum.Enum):
    ASSERT = "assert"
    REQUEST = "request"
    RANK = "rank"


class Function(str, enum.Enum):
    ATTACK = "attack"
    DEFENCE = "defence"


LEFT, RIGHT, WHICH, CHALLENGE = "?L", "?R", "?", "?!"
REQUESTS = (LEFT, RIGHT, WHICH, CHALLENGE)


@dataclass(frozen=True)
class Sequent:
    """A thesis ``conclusion [premise, ...]``."""

    conclusion: Formula
    premises: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        if not self.premises:
            raise InputError("a sequent thesis needs at least one premise")

    def __str__(self):
        return f"{render_formula(self.conclusion)} [{', '.join(render_formula(p) for p in self.premises)}]"


@dataclass(frozen=True)
class Premises:
    """The Opponent's concession of every premise of a sequent thesis in one move."""

    formulas: tuple[Formula, ...]

    def __str__(self):
        return ", ".join(render_formula(p) for p in self.formulas)


Thesis = Union[Formula, Sequent]
Payload = Union[Formula, Sequent, Premises, str, int]


def render_payload(p: Payload) -> str:
    if isinstance(p, Formula):
        return render_formula(p)
    return str(p)


@dataclass(frozen=True)
class Move:
    agent: Agent
    kind: Kind
    payload: Payload
    target: int | None = None
    function: Function | None = None
    part: int | None = None

    def __str__(self):
        if self.kind is Kind.RANK:
            return f"{self.agent}-rank {self.payload}"
        tgt = "" if self.target is None else f" {self.target}" + ("" if self.part is None else f".{self.part}")
        fn = "" if self.function is None else f" {self.function.value}"
        return f"{self.agent}{fn}{tgt} {render_payload(self.payload)}"


@dataclass(frozen=True)
class RuleSet:
    style: str = "classical"
    rank_o: int = 1
    rank_p: int = 1
    negative_literal: bool = False
    d11_atom_restriction: bool = False
    depth_cap: int = 64

    def __post_init__(self):
        if self.style not in ("classical", "intuitionistic"):
            raise InputError(f"unknown dialogue style {self.style!r}")
        if self.rank_o < 1 or self.rank_p < 1:
            raise InputError("ranks must be positive")
        if self.depth_cap < 1:
            raise InputError("depth_cap must be at least 1")

    def rank(self, agent: Agent) -> int:
        return self.rank_p if agent is Agent.PROPONENT else self.rank_o


PRESETS = {
    "classical": RuleSet(),
    "intuitionistic": RuleSet(style="intuitionistic"),
    "d11": RuleSet(d11_atom_restriction=True),
    "d11-nl": RuleSet(d11_atom_restriction=True, negative_literal=True),
}


def preset(name: str, rank_o: int | None = None, rank_p: int | None = None, **overrides) -> RuleSet:
    try:
        rules = PRESETS[name]
    except KeyError:
        raise InputError(f"unknown preset {name!r} (choose from {', '.join(PRESETS)})") from None
    if rank_o is not None:
        overrides["rank_o"] = rank_o
    if rank_p is not None:
        overrides["rank_p"] = rank_p
    return replace(rules, **overrides)


PRELUDE = 3  # thesis plus the two rank declarations


@dataclass(frozen=True)
class DialogueState:
    thesis: Thesis
    rules: RuleSet
    history: tuple[Move, ...] = field(default=())

    @property
    def to_move(self) -> Agent:
        return Agent.OPPONENT if len(self.history) % 2 == 1 else Agent.PROPONENT

    @property
    def moves_played(self) -> int:
        return len(self.history) - PRELUDE


def initial_state(thesis: Thesis, rules: RuleSet) -> DialogueState:
    return DialogueState(
        thesis,
        rules,
        (
            Move(Agent.PROPONENT, Kind.ASSERT, thesis),
            Move(Agent.OPPONENT, Kind.RANK, rules.rank_o),
            Move(Agent.PROPONENT, Kind.RANK, rules.rank_p),
        ),
    )


# --------------------------------------------------------------------------
# Local rules


def _attack_forms(f) -> list[tuple[Kind, Payload]]:
    if isinstance(f, Not):
        return [(Kind.ASSERT, f.operand)]
    if isinstance(f, And):
        return [(Kind.REQUEST, LEFT), (Kind.REQUEST, RIGHT)]
    if isinstance(f, Or):
        return [(Kind.REQUEST, WHICH)]
    if isinstance(f, Implies):
        return [(Kind.ASSERT, f.left)]
    if isinstance(f, Sequent):
        return [(Kind.ASSERT, Premises(f.premises))]
    return []


def _defence_forms(f, attack: Move) -> list[Formula]:
    if isinstance(f, And):
        return [f.left] if attack.payload == LEFT else [f.right] if attack.payload == RIGHT else []
    if isinstance(f, Or):
        return [f.left, f.right] if attack.payload == WHICH else []
    if isinstance(f, Implies):
        return [f.right]
    if isinstance(f, Sequent):
        return [f.conclusion]
    return []


def _asserted(move: Move) -> list[tuple[int | None, object]]:
    if move.kind is not Kind.ASSERT:
        return []
    if isinstance(move.payload, Premises):
        return list(enumerate(move.payload.formulas))
    return [(None, move.payload)]


def _target_formula(history, move: Move):
    for part, f in _asserted(history[move.target]):
        if part == move.part:
            return f
    return None


@lru_cache(maxsize=256)
def conceded_by_thesis(thesis: Thesis) -> frozenset[str]:
    """Atoms occurring in the thesis both plainly and under a negation."""
    parts = [thesis.conclusion, *thesis.premises] if isinstance(thesis, Sequent) else [thesis]
    plain, negated = set(), set()
    for p in parts:
        for g in subformulas(p):
            if isinstance(g, Atom):
                plain.add(g.name)
            elif isinstance(g, Not) and isinstance(g.operand, Atom):
                negated.add(g.operand.name)
    return frozenset(plain & negated)


def _opponent_atoms(history) -> set[str]:
    out = set()
    for m in history:
        if m.agent is Agent.OPPONENT:
            out.update(f.name for _, f in _asserted(m) if isinstance(f, Atom))
    return out


def _atom_licensed(state: DialogueState, name: str) -> bool:
    if name in _opponent_atoms(state.history):
        return True
    return state.rules.d11_atom_restriction and name in conceded_by_thesis(state.thesis)


def _violation(state: DialogueState, mv: Move) -> tuple[str, str] | None:
    """The (rule, reason) a move breaks, or None when it is legal."""
    h = state.history
    me, you = mv.agent, mv.agent.other
    if len(h) < PRELUDE:
        return "prelude", "the rank declarations have not been made"
    if me is not state.to_move:
        return "alternation", f"it is the {state.to_move.title}'s turn"
    if mv.kind is Kind.RANK or mv.function is None:
        return "move-form", "moves after the prelude are attacks or defences"
    if mv.target is None or not 0 <= mv.target < len(h) or h[mv.target].kind is Kind.RANK:
        return "position", f"no attackable or defendable move at position {mv.target}"
    tgt = h[mv.target]
    if tgt.agent is not you:
        return "position", "moves respond to the other agent's moves"

    if mv.function is Function.ATTACK:
        f = _target_formula(h, mv)
        if f is None:
            return "position", "the target position does not assert that formula"
        if mv.kind is Kind.REQUEST and mv.payload == CHALLENGE:
            if me is not Agent.OPPONENT or not isinstance(f, Atom):
                return "local-rule", "only the Opponent challenges, and only atoms"
            if _atom_licensed(state, f.name):
                return "formal-rule", f"atom {f.name} has been conceded by the Opponent"
        elif (mv.kind, mv.payload) not in _attack_forms(f):
            return "local-rule", f"{render_payload(mv.payload)} does not attack {render_payload(f)}"
        if mv in h:
            return "repetition", "this attack has already been played"
        if me is Agent.PROPONENT and state.rules.negative_literal:
            if isinstance(f, Not) and isinstance(f.operand, Atom):
                answered = any(
                    m.agent is Agent.OPPONENT
                    and m.function is Function.ATTACK
                    and h[m.target].agent is Agent.PROPONENT
                    and _target_formula(h, m) == f
                    for m in h
                )
                if not answered:
                    return "negative-literal", f"the Opponent has not attacked {render_formula(f)}"
    else:
        if tgt.function is not Function.ATTACK:
            return "position", "defences answer attacks"
        attacked = _target_formula(h, tgt)
        if mv.kind is not Kind.ASSERT or mv.part is not None or mv.payload not in _defence_forms(attacked, tgt):
            return "local-rule", f"{render_payload(mv.payload)} does not answer {render_payload(tgt.payload)}"
        if me is Agent.OPPONENT and mv in h:
            return "repetition", "the Opponent does not repeat a defence"
        used = sum(1 for m in h if m.agent is me and m.function is Function.DEFENCE and m.target == mv.target)
        if used >= state.rules.rank(me):
            return "rank", f"attack at position {counter_of(mv.target)} already answered {used} time(s)"
        if state.rules.style == "intuitionistic":
            open_attacks = [
                i
                for i, m in enumerate(h)
                if m.agent is you
                and m.function is Function.ATTACK
                and not any(d.agent is me and d.function is Function.DEFENCE and d.target == i for d in h)
            ]
            if not open_attacks or open_attacks[-1] != mv.target:
                return "intuitionistic", "only the last undefended attack may be answered"

    if me is Agent.OPPONENT and state.rules.d11_atom_restriction and isinstance(mv.payload, Atom):
        for m in h:
            if m.agent is Agent.PROPONENT and m.kind is Kind.ASSERT:
                f = m.payload
                if f == mv.payload or (isinstance(f, Not) and f.operand == mv.payload):
                    return "d11-atom", f"the Proponent has already asserted {render_formula(f)}"
    return None


def _candidates(state: DialogueState) -> Iterable[Move]:
    me = state.to_move
    you = me.other
    h = state.history
    for i, m in enumerate(h):
        if m.agent is not you or m.kind is Kind.RANK:
            continue
        for part, f in _asserted(m):
            for kind, payload in _attack_forms(f):
                yield Move(me, kind, payload, i, Function.ATTACK, part)
            if me is Agent.OPPONENT and isinstance(f, Atom):
                yield Move(me, Kind.REQUEST, CHALLENGE, i, Function.ATTACK, part)
        if m.function is Function.ATTACK and h[m.target].agent is me:
            for d in _defence_forms(_target_formula(h, m), m):
                yield Move(me, Kind.ASSERT, d, i, Function.DEFENCE)


def _move_key(m: Move):
    return (m.target, -1 if m.part is None else m.part, render_payload(m.payload), m.function.value)


def legal_moves(state: DialogueState) -> list[Move]:
    """Every legal move for the agent to move, by target position then payload text."""
    if len(state.history) < PRELUDE:
        return []
    moves = {m for m in _candidates(state) if _violation(state, m) is None}
    return sorted(moves, key=_move_key)


def apply_move(state: DialogueState, move: Move) -> DialogueState:
    bad = _violation(state, move)
    if bad is not None:
        raise IllegalMoveError(bad[0], counter_of(len(state.history)), bad[1])
    return replace(state, history=state.history + (move,))


def winner(state: DialogueState) -> Agent | None:
    if len(state.history) < PRELUDE or legal_moves(state):
        return None
    return state.to_move.other


def counter_of(position: int) -> int:
    """Table counter of a history position: the prelude's rank moves are not numbered."""
    return 0 if position == 0 else position - (PRELUDE - 1)


def position_of(counter: int) -> int:
    return 0 if counter == 0 else counter + (PRELUDE - 1)


# --------------------------------------------------------------------------
# Strategy search


@dataclass(frozen=True)
class StrategyNode:
    """A move together with the continuation that keeps the Proponent winning.

    After a Proponent move the children are every Opponent reply; after an
    Opponent move there is exactly one child, the Proponent's answer.  The
    root has ``move=None`` and stands for the state after the prelude.
    """

    move: Move | None
    children: tuple["StrategyNode", ...] = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def lines(self, indent: int = 0) -> list[str]:
        out = []
        if self.move is not None:
            m = self.move
            fn = "attack" if m.function is Function.ATTACK else "defend"
            where = str(counter_of(m.target)) + ("" if m.part is None else f".{m.part}")
            out.append("  " * indent + f"{m.agent} {fn} {where} {render_payload(m.payload)}")
            indent += 1
        for c in self.children:
            out += c.lines(indent)
        return out


@dataclass(frozen=True)
class StrategyResult:
    winner: Agent
    strategy: StrategyNode | None = None

    @property
    def proponent_wins(self) -> bool:
        return self.winner is Agent.PROPONENT


class _Solver:
    """AND-OR search with a win/loss table.

    Under classical style legality depends only on which moves have been
    played, not on their order, so transposed histories share one entry.
    """

    def __init__(self, rules: RuleSet):
        self.rules = rules
        self.ordered = rules.style == "intuitionistic"
        self.table: dict = {}
        # a move up to the positions it refers to, interned; copies are told apart by count
        self.interned: dict = {}
        self.interned_base: list = []
        self.seen_bases: set = set()

    def identify(self, ids: tuple, mv: Move) -> int:
        base = (mv.agent, mv.kind, mv.payload, mv.function, mv.part, None if mv.target is None else ids[mv.target])
        copies = sum(1 for i in ids if self.interned_base[i] == base) if base in self.seen_bases else 0
        ident = (base, copies)
        if ident not in self.interned:
            self.interned[ident] = len(self.interned)
            self.interned_base.append(base)
            self.seen_bases.add(base)
        return self.interned[ident]

    def identities(self, history) -> tuple:
        ids: tuple = ()
        for mv in history:
            ids += (self.identify(ids, mv),)
        return ids

    def _key(self, state: DialogueState, ids: tuple):
        return state.history if self.ordered else frozenset(ids)

    def wins(self, state: DialogueState, ids: tuple) -> bool:
        """True when the Proponent can force a win from ``state``."""
        if state.moves_played > self.rules.depth_cap:
            raise DepthCapExceededError(f"a play exceeded the depth cap of {self.rules.depth_cap} moves")
        key = self._key(state, ids)
        known = self.table.get(key)
        if known is not None:
            return known
        opponent = state.to_move is Agent.OPPONENT
        result = opponent
        for m in legal_moves(state):
            sub = self.wins(*self._step(state, ids, m))
            if opponent and not sub:
                result = False
                break
            if not opponent and sub:
                result = True
                break
        self.table[key] = result
        return result

    def _step(self, state: DialogueState, ids: tuple, m: Move):
        return replace(state, history=state.history + (m,)), ids + (self.identify(ids, m),)

    def strategy(self, state: DialogueState, ids: tuple) -> list[StrategyNode]:
        """Winning continuations from a state the Proponent wins."""
        out = []
        for m in legal_moves(state):
            nxt = self._step(state, ids, m)
            if not self.wins(*nxt):
                continue
            out.append(StrategyNode(m, tuple(self.strategy(*nxt))))
            if state.to_move is Agent.PROPONENT:
                break
        return out


def proponent_wins(thesis: Thesis, rules: RuleSet) -> StrategyResult:
    """Exhaustive AND-OR search for a Proponent strategy covering every Opponent reply."""
    solver = _Solver(rules)
    start = initial_state(thesis, rules)
    ids = solver.identities(start.history)
    if not solver.wins(start, ids):
        return StrategyResult(Agent.OPPONENT)
    return StrategyResult(Agent.PROPONENT, StrategyNode(None, tuple(solver.strategy(start, ids))))


# --------------------------------------------------------------------------
# Transcripts


@dataclass(frozen=True)
class TranscriptRow:
    agent: Agent
    expression: str
    reference: int | None
    counter: int


@dataclass(frozen=True)
class Transcript:
    rows: tuple[TranscriptRow, ...]
    rank_o: int
    rank_p: int
    verdict: Agent | None


def transcript(state: DialogueState) -> Transcript:
    rows = [TranscriptRow(Agent.PROPONENT, render_payload(state.thesis), None, 0)]
    for pos in range(PRELUDE, len(state.history)):
        m = state.history[pos]
        rows.append(TranscriptRow(m.agent, render_payload(m.payload), counter_of(m.target), counter_of(pos)))
    return Transcript(tuple(rows), state.rules.rank_o, state.rules.rank_p, winner(state))


def _as_concession(state: DialogueState, mv: Move) -> Move:
    # a single conceded premise reads like a plain formula in a script
    if (
        mv.function is Function.ATTACK
        and mv.target == 0
        and isinstance(state.thesis, Sequent)
        and isinstance(mv.payload, Formula)
    ):
        return replace(mv, payload=Premises((mv.payload,)))
    return mv


def play_script(thesis: Thesis, rules: RuleSet, script: Iterable[Move]) -> Transcript:
    state = initial_state(thesis, rules)
    for mv in script:
        state = apply_move(state, _as_concession(state, mv))
    return transcript(state)


def verdict_text(agent: Agent) -> str:
    return f"The {agent.title} wins"


def render_transcript(t: Transcript) -> str:
    width = max([6] + [len(r.expression) for r in t.rows])

    def o_cell(r: TranscriptRow | None) -> str:
        if r is None:
            return ""
        ref = "" if r.reference is None else str(r.reference)
        return f"({r.counter})".ljust(6) + r.expression.ljust(width) + "  " + ref.rjust(3)

    def p_cell(r: TranscriptRow | None) -> str:
        if r is None:
            return ""
        ref = "" if r.reference is None else str(r.reference)
        return ref.ljust(4) + r.expression.ljust(width) + "  " + f"({r.counter})"

    o_width = 6 + width + 5
    rule = "-" * o_width + "-+-" + "-" * (width + 10)
    lines = [f"Opponent (rank {t.rank_o})".ljust(o_width) + " | " + f"Proponent (rank {t.rank_p})", rule]
    pairs: list[list[TranscriptRow | None]] = [[None, t.rows[0]]]
    for r in t.rows[1:]:
        if r.agent is Agent.OPPONENT:
            pairs.append([r, None])
        else:
            pairs[-1][1] = r
    for o, p in pairs:
        lines.append((o_cell(o).ljust(o_width) + " | " + p_cell(p)).rstrip())
    if t.verdict is not None:
        lines += [rule, verdict_text(t.verdict)]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Script files


def parse_thesis(text: str, premises: str | None = None) -> Thesis:
    conclusion = parse_formula(text)
    if premises is None or not premises.strip():
        return conclusion
    return Sequent(conclusion, tuple(parse_formula(p) for p in premises.split(";") if p.strip()))


def parse_script(text: str, path=None) -> list[Move]:
    """Lines ``O|P attack|defend <counter>[.<part>] <payload>``; ``#`` starts a comment.

    Counters are the transcript numbers (the thesis is 0).  Premises conceded
    against a sequent thesis are separated by commas.
    """
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 3)
        if len(fields) != 4:
            raise FileFormatError("expected '<O|P> <attack|defend> <position> <payload>'", lineno, path)
        who, fn, where, payload = fields
        if who not in ("O", "P"):
            raise FileFormatError(f"unknown agent {who!r}", lineno, path)
        if fn not in ("attack", "defend"):
            raise FileFormatError(f"unknown move function {fn!r}", lineno, path)
        counter, _, part = where.partition(".")
        if not counter.isdigit() or (part and not part.isdigit()):
            raise FileFormatError(f"bad position {where!r}", lineno, path)
        try:
            if payload in REQUESTS:
                kind, value = Kind.REQUEST, payload
            elif "," in payload:
                kind, value = Kind.ASSERT, Premises(tuple(parse_formula(p) for p in payload.split(",")))
            else:
                kind, value = Kind.ASSERT, parse_formula(payload)
        except FormulaSyntaxError as e:
            raise FileFormatError(str(e), lineno, path) from None
        moves.append(
            Move(
                Agent(who),
                kind,
                value,
                position_of(int(counter)),
                Function.ATTACK if fn == "attack" else Function.DEFENCE,
                int(part) if part else None,
            )
        )
    return moves


def script_to_text(moves: Iterable[Move]) -> str:
    out = []
    for m in moves:
        where = str(counter_of(m.target)) + ("" if m.part is None else f".{m.part}")
        fn = "attack" if m.function is Function.ATTACK else "defend"
        out.append(f"{m.agent} {fn} {where} {render_payload(m.payload)}\n")
    return "".join(out)


def load_script(path) -> list[Move]:
    with open(path, encoding="utf-8") as fh:
        return parse_script(fh.read(), path)
