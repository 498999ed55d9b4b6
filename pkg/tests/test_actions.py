"""Actions by endomorphisms and the twisted product they induce."""

import itertools
import random

import numpy as np
import pytest

from finsemi import FiniteSemigroup, errors
from finsemi.actions import (
    Action,
    check_action,
    enumerate_actions,
    lambda_sdp,
    trivial_action,
    verify_lambda_product,
)
from finsemi.constructors import (
    direct_product,
    generated_subsemigroup,
    named_small,
    rees_matrix,
)


Z2 = named_small("zn", 2)
Z4 = named_small("zn", 4)
CHAIN2 = named_small("chain", 2)
L2 = named_small("left_zero", 2)
RB22 = named_small("rect_band", 2, 2)
B2 = named_small("b2")
MZ2 = rees_matrix(Z2, [[0, 0], [0, 1]])


def test_action_requires_inverse_acting_semigroup():
    with pytest.raises(errors.ActionInvalidError):
        trivial_action(RB22, Z2)


def test_action_shape_validation():
    with pytest.raises(errors.ActionInvalidError):
        Action(Z2, Z2, [[0, 1]])
    with pytest.raises(errors.ActionInvalidError):
        Action(Z2, Z2, [[0, 1], [0]])
    with pytest.raises(errors.ActionInvalidError):
        Action(Z2, Z2, [[0, 1], [0, 2]])


def test_check_action_trivial():
    assert check_action(trivial_action(Z2, Z4)) is True
    assert check_action(trivial_action(B2, MZ2)) is True


def test_check_action_endomorphism_witness():
    bad = Action(named_small("trivial"), Z4, [[0, 0, 1, 0]])
    verdict = check_action(bad)
    assert verdict[0] == "endomorphism" and verdict[1] == 0


def test_check_action_composition_witness():
    # doubling on Z4 squares to the zero map, not the identity
    bad = Action(Z2, Z4, [[0, 1, 2, 3], [0, 2, 0, 2]])
    verdict = check_action(bad)
    assert verdict[0] == "composition"


def test_check_action_group_by_automorphisms():
    negate = [(-x) % 4 for x in range(4)]
    assert check_action(Action(Z2, Z4, [list(range(4)), negate])) is True


def test_trivial_action_gives_direct_product_table():
    for t, k in [(Z2, B2), (CHAIN2, RB22), (B2, L2)]:
        prod = lambda_sdp(trivial_action(t, k))
        assert np.array_equal(prod.table, direct_product(t, k).table)


def test_lambda_sdp_rejects_invalid_action():
    with pytest.raises(errors.ActionInvalidError):
        lambda_sdp(Action(Z2, Z4, [[0, 1, 2, 3], [0, 2, 0, 2]]))


CRUSH = Action(CHAIN2, L2, [[0, 0], [0, 1]])    # bottom acts by crushing


def test_carrier_filter_frozen():
    prod = lambda_sdp(CRUSH)
    assert prod.carrier == ((0, 0), (0, 1), (1, 1))
    assert prod.n == 2 + 1     # |K| over the top, one fixpoint below
    assert np.array_equal(prod.table, [[0, 0, 0], [0, 1, 1], [0, 2, 2]])
    assert prod.decode(2) == (1, 1)
    assert prod.encode(1, 1) == 2
    with pytest.raises(errors.OutOfRangeError):
        prod.encode(1, 0)


def test_group_acting_with_proper_identity_endo_shrinks_carrier():
    crush = Action(Z2, CHAIN2, [[0, 0], [0, 0]])
    assert check_action(crush) is True
    assert lambda_sdp(crush).n == 2
    assert lambda_sdp(trivial_action(Z2, CHAIN2)).n == 4


def test_enumerate_actions_trivial_t_is_idempotent_endos():
    found = enumerate_actions(L2, named_small("trivial"))
    assert len(found) == 3
    for action in found:
        e = action.eps[0]
        assert tuple(e[v] for v in e) == e


def test_enumerate_actions_trivial_k():
    assert len(enumerate_actions(named_small("trivial"), B2)) == 1


def test_enumerate_actions_matches_bruteforce():
    # all endomaps of a left zero pair are endomorphisms; filter the
    # composition law over every pair of maps by hand
    maps = list(itertools.product(range(2), repeat=2))

    def compose(f, g):
        return tuple(f[v] for v in g)

    expected = set()
    for e1 in maps:
        for e0 in maps:
            eps = {0: e0, 1: e1}
            laws = all(
                compose(eps[p], eps[v]) == eps[CHAIN2.mul(p, v)]
                for p in range(2) for v in range(2))
            if laws:
                expected.add((e0, e1))
    got = {action.eps for action in enumerate_actions(L2, CHAIN2)}
    assert got == expected
    assert len(got) == 5


def test_enumerate_actions_budget():
    with pytest.raises(errors.BudgetExceededError):
        enumerate_actions(MZ2, B2, search_budget=10)


def test_enumerate_actions_limit():
    assert len(enumerate_actions(L2, CHAIN2, limit=2)) == 2


def test_verify_requires_completely_simple():
    prod = lambda_sdp(trivial_action(Z2, CHAIN2))
    with pytest.raises(errors.PreconditionError):
        verify_lambda_product(prod)


def test_verify_trivial_action_rect_band():
    report = verify_lambda_product(lambda_sdp(trivial_action(CHAIN2, RB22)))
    assert report.passed
    assert len(report.clauses) == 5
    assert [c.passed for c in report.clauses] == [True] * 5


def test_verify_group_on_group():
    prod = lambda_sdp(trivial_action(Z2, Z2))
    report = verify_lambda_product(prod)
    assert report.passed
    assert prod.is_group
    assert prod.idempotents == (prod.encode(0, 0),)


def test_verify_crush_action():
    report = verify_lambda_product(lambda_sdp(CRUSH))
    assert report.passed


def test_verify_all_enumerated_small_actions():
    cases = [(L2, CHAIN2), (RB22, CHAIN2), (L2, B2), (MZ2, CHAIN2)]
    for k, t in cases:
        for action in enumerate_actions(k, t):
            report = verify_lambda_product(lambda_sdp(action))
            assert report.passed, (k.n, t.n, action.eps, report.as_dict())


def test_report_as_dict():
    report = verify_lambda_product(lambda_sdp(trivial_action(CHAIN2, L2)))
    d = report.as_dict()
    assert d["passed"] is True
    assert len(d["clauses"]) == 5
    assert all(c["witness"] == "" for c in d["clauses"])


def test_regular_subsemigroups_stay_esolid_locally_inverse():
    rng = random.Random(7)
    prod = lambda_sdp(trivial_action(CHAIN2, MZ2))
    for _ in range(25):
        seed = rng.sample(range(prod.n), rng.randint(1, 4))
        sub, _ = generated_subsemigroup(prod, seed)
        if sub.is_regular:
            assert sub.is_e_solid and sub.is_locally_inverse
