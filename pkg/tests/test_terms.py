"""Term parsing, the shrink rules, generator moves, and derivations."""

import itertools
import random

import pytest

from finsemi import errors
from finsemi.constructors import named_small, rees_matrix
from finsemi.terms import (
    DoubledAlphabet,
    UpsilonStep,
    all_normal_forms,
    apply_derivation,
    apply_upsilon_step,
    derivation_search,
    evaluate_term,
    evaluate_word,
    involute_letter,
    iota,
    one_step_results,
    parse_term,
    parse_word,
    r0_flatten,
    random_matched_assignment,
    reduce,
    reduce_word,
    symbol_length,
    tau,
    term_to_text,
    theta_cs_equal,
    tilde_wedge,
    upsilon_neighbors,
    word_letters,
    word_to_text,
)


AB = DoubledAlphabet("xy")
ABCD = DoubledAlphabet("xyzw")


def T(text, alphabet=ABCD):
    return parse_term(text, alphabet)


def W(text, alphabet=ABCD):
    return parse_word(text, alphabet)


def test_alphabet():
    assert AB.letters == ("x", "y", "x'", "y'")
    assert AB.involute("x") == "x'"
    assert AB.involute("y'") == "y"
    assert "x'" in AB and "z" not in AB
    assert involute_letter(involute_letter("x")) == "x"
    with pytest.raises(errors.OutOfRangeError):
        AB.involute("z")
    with pytest.raises(errors.OutOfRangeError):
        DoubledAlphabet(["x", "x"])
    with pytest.raises(errors.OutOfRangeError):
        DoubledAlphabet(["ab"])


def test_parse_basic():
    assert T("x") == "x"
    assert T("x'y") == ("C", "x'", "y")
    assert T("(x ^ y)z") == ("C", ("W", "x", "y"), "z")
    assert T("((xy ^ z) ^ w)") == ("W", ("W", ("C", "x", "y"), "z"), "w")
    assert T("xyx") == ("C", "x", "y", "x")


def test_parse_errors_carry_positions():
    for text, at in [("", 0), ("x)", 1), ("(x", 0), ("(x^", 0),
                     ("(x y)", 0), ("q", 0), ("x(^y)", 1)]:
        with pytest.raises(errors.TermSyntaxError) as exc:
            T(text)
        assert exc.value.position == at


def test_term_text_roundtrip():
    for text in ["x", "x'y", "(x^y)z", "((xy^z)^w)", "(x^(y^z)w)"]:
        term = T(text)
        assert T(term_to_text(term)) == term


def test_iota_tau():
    assert iota("x") == "x"
    assert iota(T("(xy^z)")) == "x"
    assert tau(T("(x^yz)")) == "z"
    assert iota(T("(x'y^z)")) == "x'"
    assert tau(T("(x^y)z w")) == "w"


def test_r0_flatten_frozen():
    assert r0_flatten(T("xy")) == ("x", "y")
    assert r0_flatten(T("(xy^z)")) == (("x", "z"),)
    assert r0_flatten(T("(x^(y^z)w)")) == (("x", "w"),)
    assert r0_flatten(T("(x^y)z")) == (("x", "y"), "z")


def test_word_parse_and_text():
    assert W("(x^y)z") == (("x", "y"), "z")
    assert word_to_text(W("x'(y^x)")) == "x'(y^x)"


def test_reduce_rule_examples():
    assert reduce(T("x(y^x)")) == "x"
    assert reduce(T("(x^y)x")) == "x"
    assert reduce(T("x'x")) == ("W", "x'", "x")
    assert reduce(T("(x^y)(x^z)")) == ("W", "x", "z")
    assert reduce(T("(z^x)(y^x)")) == ("W", "z", "x")
    assert reduce(T("xx'")) == ("W", "x", "x'")


def test_reduce_longer():
    assert reduce(T("x(y^x)z")) == ("C", "x", "z")
    assert reduce(T("xx'x")) == "x"
    assert reduce(T("xx'xx'x")) == "x"
    assert reduce(T("(x^y)(x^z)(w^z)")) == ("W", "x", "z")
    assert reduce(reduce(T("x'x(y^x)(y^z)"))) == reduce(T("x'x(y^x)(y^z)"))


def test_theta_cs_equal():
    assert theta_cs_equal(T("xx'x"), T("x"))
    assert not theta_cs_equal(T("x"), T("y"))
    assert theta_cs_equal(T("x(y^x)z"), T("xz"))
    assert not theta_cs_equal(T("x'x"), T("xx'"))


def test_tilde_wedge():
    assert tilde_wedge(("x",), ("y",)) == (("x", "y"),)
    assert tilde_wedge(("x", "y"), ("z", "w")) == (("x", "w"),)
    assert tilde_wedge((("a", "b"), "c"), ("d",)) == (("a", "d"),)


def test_symbol_length():
    assert symbol_length("x") == 1
    assert symbol_length(T("(x^y)")) == 1
    assert symbol_length(T("(xy^z)")) == 3
    assert symbol_length(T("x(y^x)z")) == 3


def _random_term(rng, alphabet, ops):
    letters = alphabet.letters
    if ops == 0:
        return rng.choice(letters)
    k = rng.randrange(ops)
    left = _random_term(rng, alphabet, k)
    right = _random_term(rng, alphabet, ops - 1 - k)
    if rng.random() < 0.5:
        return ("W", left, right)
    from finsemi.terms import concat_terms
    return concat_terms(left, right)


def test_every_rule_application_shortens():
    rng = random.Random(11)
    for _ in range(200):
        term = _random_term(rng, AB, rng.randint(1, 5))
        for nxt in one_step_results(term):
            assert symbol_length(nxt) < symbol_length(term)


def test_confluence_on_samples():
    rng = random.Random(13)
    memo = {}
    for _ in range(300):
        term = _random_term(rng, AB, rng.randint(1, 5))
        forms = all_normal_forms(term, memo)
        assert len(forms) == 1
        assert next(iter(forms)) == reduce(term)


def test_apply_upsilon_frozen():
    assert apply_upsilon_step(("x'", "x", "y"), UpsilonStep("Y5", "fwd", 0)) \
        == (("x'", "x"), "y")
    assert apply_upsilon_step((("x", "z"),), UpsilonStep("Y3", "bwd", 0, "y")) \
        == (("x", "y"), ("x", "z"))
    assert apply_upsilon_step(("x", "x'", "x"), UpsilonStep("I", "fwd", 0)) \
        == ("x",)
    assert apply_upsilon_step(("y",), UpsilonStep("I", "bwd", 0)) \
        == ("y", "y'", "y")
    assert apply_upsilon_step((("z", "x"),), UpsilonStep("Y4", "bwd", 0, "y")) \
        == (("z", "x"), ("y", "x"))
    assert apply_upsilon_step((("z", "x"), ("y", "x")), UpsilonStep("Y4", "fwd", 0)) \
        == (("z", "x"),)
    assert apply_upsilon_step((("x'", "x"),), UpsilonStep("Y5", "bwd", 0)) \
        == ("x'", "x")


def test_apply_upsilon_errors():
    with pytest.raises(errors.NoMatchError):
        apply_upsilon_step(("x", "y"), UpsilonStep("Y5", "fwd", 0))
    with pytest.raises(errors.NoMatchError):
        apply_upsilon_step(("x",), UpsilonStep("I", "fwd", 0))
    with pytest.raises(errors.NoMatchError):
        apply_upsilon_step((("x", "y"),), UpsilonStep("Y5", "bwd", 0))
    with pytest.raises(errors.NoMatchError):
        apply_upsilon_step((("x", "y"),), UpsilonStep("Y3", "bwd", 0))
    with pytest.raises(errors.OutOfRangeError):
        apply_upsilon_step(("x",), UpsilonStep("I", "fwd", 3))
    with pytest.raises(errors.UnknownKindError):
        apply_upsilon_step(("x",), UpsilonStep("R1", "fwd", 0))


def test_known_five_step_chain():
    steps = [
        UpsilonStep("I", "bwd", 0),
        UpsilonStep("Y5", "fwd", 1),
        UpsilonStep("Y4", "fwd", 1),
        UpsilonStep("Y5", "bwd", 1),
        UpsilonStep("I", "fwd", 0),
    ]
    assert apply_derivation(("x", ("y", "x")), steps) == ("x",)
    seen = ("x", ("y", "x"))
    for step in steps:
        seen = apply_upsilon_step(seen, step)
        assert reduce_word(seen) == ("x",)


def test_neighbors_preserve_reduced_form():
    rng = random.Random(17)
    for _ in range(120):
        term = _random_term(rng, AB, rng.randint(1, 4))
        word = r0_flatten(term)
        base = reduce_word(word)
        for step, result in upsilon_neighbors(word, AB.letters, max_len=8):
            assert reduce_word(result) == base, (word, step)


def test_derivation_search_identity():
    assert derivation_search(("x",), ("x",)) == []


def test_derivation_search_finds_rule_one_chain():
    found = derivation_search(("x", ("y", "x")), ("x",), max_steps=8, max_len=6)
    assert found is not None and len(found) == 5
    assert apply_derivation(("x", ("y", "x")), found) == ("x",)
    dual = derivation_search((("x", "y"), "x"), ("x",), max_steps=8, max_len=6)
    assert dual is not None and len(dual) == 5


def test_derivation_search_absent_and_budget():
    assert derivation_search(("x",), ("y",), max_steps=4, max_len=3) is None
    with pytest.raises(errors.BudgetExceededError):
        derivation_search(("x", ("y", "x")), ("x",), max_steps=10, max_len=6,
                          node_budget=5)


def test_derivation_search_respects_rule_set():
    # without the triple-product move there is no way to grow plain letters
    found = derivation_search(("x", ("y", "x")), ("x",),
                              max_steps=6, max_len=6,
                              rule_set=("Y3", "Y4", "Y5"))
    assert found is None


def test_small_scale_completeness():
    # every theta-equal pair of words of length <= 2 over one base letter
    # pair is connected by a bounded chain
    xs = ["x", "x'"]
    symbols = xs + [(a, b) for a in xs for b in xs]
    words = [tuple(w) for n in (1, 2)
             for w in itertools.product(symbols, repeat=n)]
    buckets = {}
    for w in words:
        buckets.setdefault(reduce_word(w), []).append(w)
    checked = 0
    for group in buckets.values():
        for u, v in itertools.combinations(group, 2):
            found = derivation_search(u, v, max_steps=12, max_len=5,
                                      node_budget=500000)
            assert found is not None, (u, v)
            assert apply_derivation(u, found) == v
            checked += 1
    assert checked >= 30


def test_word_letters():
    assert word_letters((("x", "y"), "z")) == ["x", "x'", "y", "y'", "z", "z'"]


def test_matched_evaluation_soundness():
    rng = random.Random(23)
    s = rees_matrix(named_small("zn", 2), [[0, 0], [0, 1]])
    assignments = [random_matched_assignment(AB, s, rng) for _ in range(12)]
    for _ in range(60):
        term = _random_term(rng, AB, rng.randint(1, 4))
        red = reduce(term)
        for values in assignments:
            got = evaluate_term(term, s, values)
            assert got == evaluate_term(red, s, values)
            assert got == evaluate_word(r0_flatten(term), s, values)


def test_matched_assignment_requires_regular():
    rng = random.Random(3)
    with pytest.raises(errors.NotRegularError):
        random_matched_assignment(AB, named_small("null", 3), rng)


def test_matched_assignment_is_matched():
    rng = random.Random(5)
    s = named_small("b2")
    for _ in range(20):
        values = random_matched_assignment(AB, s, rng)
        for x in AB.base:
            assert values[x + "'"] in s.inverses_of(values[x])
