"""Dialogue games: replaying scripts and deciding theses.

Run with ``python3 notebooks/04_dialogues.py``.
"""

from importlib.resources import files

from argval.dialogue import load_script, play_script, preset, proponent_wins, render_transcript
from argval.logic import parse_formula

DATA = files("argval") / "data"
contradiction = parse_formula("a & ~a")

# the same opening under two rule sets
print(render_transcript(play_script(contradiction, preset("classical"), load_script(DATA / "table3.script"))))
print(render_transcript(play_script(contradiction, preset("d11"), load_script(DATA / "table4.script"))))

# contradictions survive while explosion fails once negative literals are guarded
for text in ("a & ~a", "a -> ~a -> b", "a & ~a -> b"):
    row = [f"{name}: {'P' if proponent_wins(parse_formula(text), preset(name)).proponent_wins else 'O'}"
           for name in ("classical", "d11", "d11-nl")]
    print(f"{text:<14}", "  ".join(row))

# a winning strategy, one line per move, indented by depth
result = proponent_wins(parse_formula("((a -> b) -> a) -> a"), preset("classical", 2, 2))
print("\n".join(result.strategy.lines()))
