import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argval.corpus import random_fo_formula, scheme_instance, single_token_tampers
from argval.dkq import (
    CORRECTED,
    SCHEMES,
    Derivation,
    ForAll,
    Pred,
    check_derivation,
    check_rule,
    check_text,
    free_vars,
    load_derivation,
    match_axiom,
    parse_derivation,
    parse_fo,
    substitute,
)
from argval.errors import ArityError, FileFormatError, FormulaSyntaxError, SubstitutionCaptureError
from argval.logic import parse_formula, render_formula

F = parse_fo
VALID_SAMPLES = ["sample10.dkq", "identity.dkq", "generalise.dkq", "quantified.dkq"]


@pytest.fixture(scope="module")
def samples(data_dir):
    return data_dir / "dkq_samples"


class TestSyntax:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("P(x)", Pred("P", ("x",))),
            ("forall x. P(x) -> Q(x, c)", F("(forall x. P(x)) -> Q(x, c)")),
            ("forall x. (P(x) -> p)", ForAll("x", F("P(x) -> p"))),
        ],
    )
    def test_parse(self, text, expected):
        assert F(text) == expected

    @pytest.mark.parametrize("text", ["forall c. P(c)", "P()", "P(x", "forall x P(x)"])
    def test_rejects(self, text):
        with pytest.raises(FormulaSyntaxError):
            F(text)

    def test_propositional_formulas_embed_unchanged(self):
        assert F("(a -> b) & ~c") == parse_formula("(a -> b) & ~c")

    @settings(max_examples=150)
    @given(st.integers(0, 10_000))
    def test_round_trip(self, seed):
        f = random_fo_formula(random.Random(seed), 4)
        assert F(render_formula(f)) == f

    def test_free_variables(self):
        assert free_vars(F("forall x. Q(x, y) & P(x)")) == {"x", "y"}


class TestSubstitution:
    def test_direct(self):
        assert substitute(F("P(x)"), "x", "c") == F("P(c)")

    def test_bound_occurrence_untouched(self):
        assert substitute(F("forall x. P(x)"), "x", "c") == F("forall x. P(x)")

    def test_no_binder(self):
        assert substitute(F("P(x) & Q(y)"), "y", "x") == F("P(x) & Q(x)")

    def test_capture(self):
        with pytest.raises(SubstitutionCaptureError):
            substitute(F("forall x. Q(x, y)"), "y", "x")


class TestSchemes:
    def test_examples(self):
        assert match_axiom(F("(p & q) -> p")) == [(2, {"A": F("p"), "B": F("q")})]
        assert match_axiom(F("p | ~p")) == [(10, {"A": F("p")})]
        assert match_axiom(F("p -> q")) == []

    def test_printed_duplicate(self):
        f = F("p & (q | r) -> p & q | r")
        assert [i for i, _ in match_axiom(f)] == [4, 5]

    def test_corrected_distribution(self):
        f = F("p & (q | r) -> p & q | p & r")
        assert [i for i, _ in match_axiom(f, corrected=True)] == [4]
        assert [i for i, _ in match_axiom(F("p & q | p & r -> p & (q | r)"), corrected=True)] == [5]

    def test_printed_scheme_six(self):
        assert 6 in dict(match_axiom(F("(p -> q) & (q -> r) -> (p -> q & r)")))
        assert 6 not in dict(match_axiom(F("(p -> q) & (p -> r) -> (p -> q & r)")))

    def test_corrected_side_condition(self):
        assert CORRECTED[12].match(F("(forall x. (p -> P(x))) -> p -> forall x. P(x)")) is not None
        assert CORRECTED[12].match(F("(forall x. (P(x) -> P(x))) -> P(x) -> forall x. P(x)")) is None

    @pytest.mark.parametrize("sid", range(1, 14))
    @pytest.mark.parametrize("corrected", [False, True])
    def test_random_instances_match(self, sid, corrected):
        rng = random.Random(sid)
        table = CORRECTED if corrected else SCHEMES
        for _ in range(25):
            f = scheme_instance(rng, sid, corrected)
            assert table[sid].match(f) is not None, render_formula(f)
            assert sid in dict(match_axiom(f, corrected))

    @settings(max_examples=100)
    @given(st.integers(0, 10_000))
    def test_duplicated_schemes_agree(self, seed):
        f = scheme_instance(random.Random(seed), 4)
        assert (SCHEMES[4].match(f) is None) == (SCHEMES[5].match(f) is None)


class TestRules:
    @pytest.mark.parametrize(
        "rule, premises, conclusion",
        [
            ("mp", ["p", "p -> q"], "q"),
            ("adj", ["p", "q"], "p & q"),
            ("affix", ["(p -> q) -> (r -> s)"], "(q -> r) -> (p -> s)"),
        ],
    )
    def test_valid(self, rule, premises, conclusion):
        assert check_rule(rule, [F(p) for p in premises], F(conclusion))

    def test_mp_order_matters(self):
        assert not check_rule("mp", [F("p -> q"), F("p")], F("q"))

    def test_gen(self):
        assert check_rule("gen", [F("P(x)")], F("forall x. P(x)"), "x")
        assert not check_rule("gen", [F("P(x)")], F("forall y. P(x)"), "x")

    def test_arity(self):
        with pytest.raises(ArityError):
            check_rule("mp", [F("p")], F("q"))


class TestDerivations:
    @pytest.mark.parametrize("name", VALID_SAMPLES)
    def test_samples_verify(self, samples, name):
        assert str(check_derivation(load_derivation(samples / name))) == "ok"

    def test_sample_has_ten_lines(self, samples):
        d = load_derivation(samples / "sample10.dkq")
        assert len(d.lines) == 10
        assert {ln.justification.rule for ln in d.lines} == {"axiom", "mp", "adj"}

    def test_not_an_instance(self, samples):
        r = check_derivation(load_derivation(samples / "not_an_instance.dkq"))
        assert (r.ok, r.line) == (False, 1)
        assert "unification failure" in r.reason

    @pytest.mark.parametrize(
        "text, line, reason",
        [
            ("1. p [premise]\n2. q [mp 1,3]\n", 2, "forward reference"),
            ("1. p [premise]\n3. p [premise]\n", 3, "expected line number 2"),
            ("1. p -> p [axiom 14]\n", 1, "bad axiom id"),
            ("1. p [premise]\n2. p & p [mp 1,1]\n", 2, "bad mp instance"),
            ("1. exists x. P(x) -> exists x. P(x) [axiom 1]\n", 1, "particular quantifier"),
        ],
    )
    def test_errors(self, text, line, reason):
        r = check_text(text)
        assert not r.ok and r.line == line and reason in r.reason

    def test_parse_error_is_reported(self):
        r = check_text("1. p & [premise]\n")
        assert not r.ok and r.line == 1 and r.reason.startswith("parse error")

    def test_bare_justification(self):
        assert check_text("1. p -> p axiom 1\n").ok

    def test_malformed_raises_from_parser(self):
        with pytest.raises(FileFormatError):
            parse_derivation("p -> p [axiom 1]\n")

    def test_declared_premises(self):
        d = parse_derivation("1. p [premise]\n", premises=[F("q")])
        assert not check_derivation(d).ok

    @pytest.mark.parametrize("name", VALID_SAMPLES)
    def test_prefix_closure(self, samples, name):
        d = load_derivation(samples / name)
        for n in range(len(d.lines) + 1):
            assert check_derivation(d.prefix(n)).ok

    def test_text_round_trip(self, samples):
        d = load_derivation(samples / "sample10.dkq")
        assert parse_derivation(d.to_text()) == d

    def test_every_single_token_tamper_of_sample_is_rejected(self, samples):
        text = (samples / "sample10.dkq").read_text()
        tampered = single_token_tampers(text)
        assert len(tampered) > 200
        assert not [t for t in tampered if check_text(t).ok]

    def test_connective_flip_can_surface_later(self, samples):
        # an axiom line with a flipped connective is often still an instance of
        # some scheme; the break then shows up where the line is used
        text = (samples / "sample10.dkq").read_text()
        flipped = text.replace("4. (p | ~p) & (q | ~q) -> p | ~p", "4. (p | ~p) & (q & ~q) -> p | ~p")
        r = check_text(flipped)
        assert (r.ok, r.line) == (False, 5)
