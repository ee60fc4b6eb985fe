import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argval.af import Framework, Status, enumerate_extensions
from argval.corpus import random_vaf
from argval.errors import CycleError, InputError, UnknownValueError
from argval.formats import load_vaf
from argval.vaf import (
    Audience,
    PracticeOrdering,
    ValueFramework,
    admissible_for,
    defeats_for,
    hasse_to_dot,
    practice_ordering,
    preferred_for_audience,
    reduce_for_audience,
    statuses_for_audience,
    valpref,
)
from oracles import powerset


def members(exts):
    return [set(e.members) for e in exts]


def oracle_preferred_for(vf, aud):
    """Maximal sets that are conflict-free and self-defending under audience defeat."""
    def beats(x, y):
        return (x, y) in vf.base.attacks and not aud.order.index(vf.value_map[y]) < aud.order.index(vf.value_map[x])

    nodes = vf.base.nodes
    adm = []
    for s in powerset(nodes):
        if any(beats(x, y) for x in s for y in s):
            continue
        if all(any(beats(z, y) for z in s) for x in s for y in nodes if beats(y, x)):
            adm.append(s)
    return {s for s in adm if not any(s < t for t in adm)}


@st.composite
def value_frameworks(draw):
    n = draw(st.integers(0, 5))
    nodes = [f"n{i}" for i in range(n)]
    pairs = [(x, y) for x in nodes for y in nodes]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    values = ["v0", "v1", "v2"][: draw(st.integers(1, 3))]
    vmap = {x: draw(st.sampled_from(values)) for x in nodes}
    order = draw(st.permutations(values))
    aud = Audience("aud", order)
    return ValueFramework(Framework(nodes, edges), values, vmap, {"aud": aud}), aud


@pytest.fixture(scope="module")
def kb0(data_dir):
    return load_vaf(data_dir / "vaf_kb0.vaf")


@pytest.fixture(scope="module")
def kb1(data_dir):
    return load_vaf(data_dir / "vaf_kb1.vaf")


class TestDefeat:
    def test_preferred_value_blocks_defeat(self, kb0):
        y, w = kb0.audience("y"), kb0.audience("w")
        # A2 (w) attacks A1 (y)
        assert not defeats_for(y, "A2", "A1", kb0)
        assert defeats_for(w, "A2", "A1", kb0)

    def test_equal_values_defeat(self):
        vf = ValueFramework(Framework("ab", [("a", "b")]), ["v"], {"a": "v", "b": "v"}, {"x": Audience("x", ["v"])})
        assert defeats_for(vf.audience("x"), "a", "b", vf)

    def test_valpref(self):
        aud = Audience("x", ["v1", "v2"])
        assert valpref(aud, "v1", "v2") and not valpref(aud, "v2", "v1")
        with pytest.raises(UnknownValueError):
            aud.rank("v3")

    def test_audience_must_order_every_value(self):
        with pytest.raises(InputError):
            ValueFramework(Framework("a", []), ["v", "u"], {"a": "v"}, {"x": Audience("x", ["v"])})

    def test_reduction_drops_blocked_attacks(self, kb0):
        assert reduce_for_audience(kb0, kb0.audience("y")).attacks == {("A3", "A2")}


class TestFixtures:
    def test_kb0_audiences(self, kb0):
        assert members(preferred_for_audience(kb0, kb0.audience("y"))) == [{"A1", "A3", "A4"}]
        assert members(preferred_for_audience(kb0, kb0.audience("w"))) == [{"A2", "A3", "A4"}]

    def test_kb0_practices(self, kb0):
        assert practice_ordering(kb0, kb0.audience("y")).pairs() == [("agriculture", "restoration")]
        assert practice_ordering(kb0, kb0.audience("w")).pairs() == [("restoration", "agriculture")]

    def test_kb1_common_ground(self, kb1):
        for name in ("y", "w"):
            assert statuses_for_audience(kb1, kb1.audience(name))["A5"] is Status.JUSTIFIED

    def test_hasse_dot(self, kb0):
        dot = hasse_to_dot(practice_ordering(kb0, kb0.audience("y")))
        assert '"agriculture" -> "restoration";' in dot


class TestHasse:
    def test_transitive_edges_removed(self):
        po = PracticeOrdering("pqr", {("p", "q"), ("q", "r"), ("p", "r")})
        dot = hasse_to_dot(po)
        assert '"p" -> "q"' in dot and '"q" -> "r"' in dot
        assert '"p" -> "r"' not in dot

    def test_cycle_rejected(self):
        po = PracticeOrdering("pqr", {("p", "q"), ("q", "r"), ("r", "p")})
        with pytest.raises(CycleError):
            hasse_to_dot(po)

    def test_irreflexive(self):
        with pytest.raises(InputError):
            PracticeOrdering("p", {("p", "p")})


class TestReduction:
    def test_random_corpus(self):
        rng = random.Random(5)
        for _ in range(40):
            vf = random_vaf(rng, 6, 3)
            for aud in vf.audiences.values():
                direct = members(preferred_for_audience(vf, aud))
                reduced = members(enumerate_extensions(reduce_for_audience(vf, aud), "preferred"))
                assert direct == reduced

    @settings(max_examples=120)
    @given(value_frameworks())
    def test_direct_search_matches_oracle(self, case):
        vf, aud = case
        assert {frozenset(m) for m in members(preferred_for_audience(vf, aud))} == oracle_preferred_for(vf, aud)

    @given(value_frameworks())
    def test_extensions_are_admissible_for_audience(self, case):
        vf, aud = case
        for e in preferred_for_audience(vf, aud):
            assert admissible_for(aud, e.members, vf)

    @given(value_frameworks())
    def test_practice_dominance_is_asymmetric(self, case):
        vf, aud = case
        pm = {x: ("p" if i % 2 else "q") for i, x in enumerate(vf.base.nodes)}
        dom = practice_ordering(vf, aud, pm).dominates
        assert not any((q, p) in dom for p, q in dom)

    def test_strict_reading_is_stronger(self):
        rng = random.Random(9)
        for _ in range(30):
            vf = random_vaf(rng, 5, 3)
            for aud in vf.audiences.values():
                for e in preferred_for_audience(vf, aud, strict_def10=True):
                    assert admissible_for(aud, e.members, vf, strict_def10=True)
                    assert admissible_for(aud, e.members, vf)
