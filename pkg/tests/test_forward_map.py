import random

import pytest

from scsgap import forward_map, hybrid_model
from scsgap.gadgets import GadgetVariant, reduce
from scsgap.hybrid_model import Assignment
from scsgap.superstring_core import is_superstring


@pytest.mark.parametrize('reduction_name, expected', [('b4_reduction', 522), ('a6_reduction', 540)])
def test_satisfying_assignment_meets_base_length(request, reduction_name, expected):
    reduction = request.getfixturevalue(reduction_name)
    phi = Assignment.zeros(reduction.instance)
    s_phi = forward_map.build_superstring(reduction, phi)

    assert is_superstring(s_phi, reduction.strings)
    assert len(s_phi) == expected

    check = forward_map.check_forward(reduction, phi, s_phi)
    assert check.ok
    assert check.unsat == 0
    assert check.compression == check.compression_bound
    assert check.report_line() == f'len={expected} bound={expected} u=0 ok=True'


def test_random_assignments_stay_within_bound(b4_reduction, a6_reduction, rng):
    for reduction in (b4_reduction, a6_reduction):
        for _ in range(10):
            phi = Assignment.random(reduction.instance, rng)
            s_phi = forward_map.build_superstring(reduction, phi)
            check = forward_map.check_forward(reduction, phi, s_phi)
            assert check.ok, check.report_line()
            assert check.length <= check.bound


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_random_instances_under_both_matchings(seed):
    e3 = hybrid_model.generate_e3('random', seed=seed, variables=6)
    for strategy in hybrid_model.MATCHING_STRATEGIES:
        instance = hybrid_model.build_hybrid(e3, matching_strategy=strategy)
        reduction = reduce(instance, GadgetVariant.B4)
        rng = random.Random(seed)
        for phi in (Assignment.zeros(instance), Assignment.random(instance, rng)):
            s_phi = forward_map.build_superstring(reduction, phi)
            assert forward_map.check_forward(reduction, phi, s_phi).ok


@pytest.mark.parametrize('seed', range(20))
def test_many_assignments_stay_within_bound(seed):
    e3 = hybrid_model.generate_e3('random', seed=seed, variables=3 + seed % 2)
    strategy = hybrid_model.MATCHING_STRATEGIES[seed % 2]
    variant = (GadgetVariant.B4, GadgetVariant.A6)[seed // 2 % 2]
    reduction = reduce(hybrid_model.build_hybrid(e3, matching_strategy=strategy), variant)
    rng = random.Random(seed)
    for _ in range(100):
        phi = Assignment.random(reduction.instance, rng)
        s_phi = forward_map.build_superstring(reduction, phi)
        check = forward_map.check_forward(reduction, phi, s_phi)
        assert check.ok, check.report_line()


def test_circle_order_keeps_the_bound(b4_reduction, rng):
    phi = Assignment.random(b4_reduction.instance, rng)
    owners = [circle.owner for circle in b4_reduction.instance.circles]
    for order in (owners, owners[::-1]):
        s_phi = forward_map.build_superstring(b4_reduction, phi, circle_order=order)
        assert is_superstring(s_phi, b4_reduction.strings)
        assert forward_map.check_forward(b4_reduction, phi, s_phi).ok


def test_plan_places_one_piece_per_junction(b4_reduction, rng):
    phi = Assignment.random(b4_reduction.instance, rng)
    plan = forward_map.plan_from_assignment(b4_reduction, phi)
    assert set(plan.junction_inserts) <= set(b4_reduction.instance.variables)
    placed = list(plan.junction_inserts.values()) + plan.tail
    assert len(placed) == len(set(placed))
    for gadget in b4_reduction.index:
        if gadget.kind in ('matching', 'eq3'):
            names = plan.choices[gadget.eq_id]
            assert sorted(name for eq_id, name in placed if eq_id == gadget.eq_id) == sorted(names)


def test_bad_circle_order(b4_reduction):
    with pytest.raises(ValueError, match='Circle order'):
        forward_map.plan_from_assignment(b4_reduction, Assignment.zeros(b4_reduction.instance), circle_order=['x_1'])
