import itertools

import pytest

from scsgap import backward_map, forward_map, hybrid_model, solvers
from scsgap.backward_map import Constellation
from scsgap.gadgets import GadgetVariant, reduce
from scsgap.hybrid_model import Assignment, unsat_count
from scsgap.superstring_core import is_superstring


def test_normalize_keeps_s_phi(b4_reduction):
    phi = Assignment.zeros(b4_reduction.instance)
    s_phi = forward_map.build_superstring(b4_reduction, phi)
    ns = backward_map.normalize(s_phi, b4_reduction)

    assert len(ns.string) == len(s_phi)
    assert is_superstring(ns.string, b4_reduction.strings)
    assert sorted(ns.order) == list(range(len(b4_reduction.strings)))
    assert all(names for names in ns.usage.values())


@pytest.mark.parametrize('reduction_name', ['b4_reduction', 'a6_reduction'])
def test_roundtrip_never_adds_unsatisfied_equations(request, reduction_name, rng):
    reduction = request.getfixturevalue(reduction_name)
    for _ in range(50):
        phi = Assignment.random(reduction.instance, rng)
        s_phi = forward_map.build_superstring(reduction, phi)
        ns = backward_map.normalize(s_phi, reduction)
        assert len(ns.string) <= len(s_phi)
        assert backward_map.circle_bits(ns, reduction) == dict(phi)

        psi = backward_map.extract_assignment(ns, reduction)
        assert set(psi) == set(reduction.instance.variables)
        assert unsat_count(reduction.instance, psi) <= unsat_count(reduction.instance, phi)
        assert backward_map.check_roundtrip(reduction, s_phi, psi).ok


def test_satisfying_assignment_reads_back_satisfying(b4_reduction):
    phi = Assignment.zeros(b4_reduction.instance)
    s_phi = forward_map.build_superstring(b4_reduction, phi)
    psi = backward_map.extract_assignment(backward_map.normalize(s_phi, b4_reduction), b4_reduction)
    check = backward_map.check_roundtrip(b4_reduction, s_phi, psi)
    assert check.unsat == 0
    assert check.report_line() == f'unsat=0 len={len(s_phi)} bound_ok=True'


def test_consistent_constellations_keep_the_circle_bits(b4_reduction):
    # All ones: every constellation is consistent, so each x + y + z = 0 stays violated.
    phi = Assignment({variable: 1 for variable in b4_reduction.instance.variables})
    s_phi = forward_map.build_superstring(b4_reduction, phi)
    ns = backward_map.normalize(s_phi, b4_reduction)
    psi = backward_map.extract_assignment(ns, b4_reduction)

    assert [psi[variable] for variable in ('x_1.7', 'y_1.7', 'z_1.7')] == [1, 1, 1]
    assert dict(psi) == dict(phi)
    assert backward_map.check_roundtrip(b4_reduction, s_phi, psi).unsat == 3


def test_polishing_is_opt_in(b4_reduction):
    phi = Assignment({variable: 1 for variable in b4_reduction.instance.variables})
    ns = backward_map.normalize(forward_map.build_superstring(b4_reduction, phi), b4_reduction)

    plain = backward_map.extract_assignment(ns, b4_reduction)
    polished = backward_map.extract_assignment(ns, b4_reduction, polish_flips=True)
    assert unsat_count(b4_reduction.instance, polished) <= unsat_count(b4_reduction.instance, plain)
    assert dict(plain) == dict(phi)


@pytest.mark.parametrize('pairs, expected', [
    (((1, 0), (1, 1)), (1, 1)),
    (((0, 0), (1, 1)), (0, 1)),
    (((1, 0), (0, 0)), (0, 0)),
    (((1, 0), (0, 1)), (0, 0)),
    (((0, 0), (1, 0)), (0, 0)),
    (((1, 1), (0, 1)), (1, 1)),
])
def test_checker_values(pairs, expected):
    constellation = Constellation('x_1:m1-2', ('x_1.1', 'x_1.2'), pairs)
    assert backward_map.assign_checkers(constellation) == expected


@pytest.mark.parametrize('pairs, rhs, expected', [
    (((1, 1), (1, 1), (1, 1)), 0, (1, 1, 1)),
    (((1, 0), (1, 1), (0, 0)), 0, (1, 1, 0)),
    (((1, 0), (0, 0), (0, 0)), 0, (0, 0, 0)),
    (((0, 0), (1, 0), (1, 1)), 1, (0, 0, 1)),
    (((0, 0), (0, 0), (0, 1)), 1, (0, 0, 1)),
])
def test_contact_values(pairs, rhs, expected):
    constellation = Constellation('e0', ('x_1.7', 'y_1.7', 'z_1.7'), pairs)
    assert backward_map.assign_contacts(constellation, rhs) == expected


def test_circle_order_does_not_change_the_extraction(b4_reduction, rng):
    owners = [circle.owner for circle in b4_reduction.instance.circles]
    for _ in range(3):
        phi = Assignment.random(b4_reduction.instance, rng)
        extracted = []
        for order in itertools.permutations(owners):
            s_phi = forward_map.build_superstring(b4_reduction, phi, circle_order=order)
            ns = backward_map.normalize(s_phi, b4_reduction)
            extracted.append(dict(backward_map.extract_assignment(ns, b4_reduction)))
        assert all(psi == extracted[0] for psi in extracted)


def test_majority_bits_read_s_phi(b4_reduction):
    instance = b4_reduction.instance
    zeros = Assignment.zeros(instance)
    s_zeros = forward_map.build_superstring(b4_reduction, zeros)
    assert backward_map.majority_bits(s_zeros, b4_reduction) == dict(zeros)

    ones = Assignment({variable: 1 for variable in instance.variables})
    bits = backward_map.majority_bits(forward_map.build_superstring(b4_reduction, ones), b4_reduction)
    # A large-role left checker shares its m1 letter with the previous circle piece:
    for circle in instance.circles:
        for i, j in circle.matching:
            gadget = b4_reduction.index.gadgets.get(f'{circle.owner}:c{j + 1}')
            if gadget is not None and not gadget.replaced:
                assert bits[circle.var(j + 1)] == 1


def test_greedy_superstring_roundtrip(b4_reduction):
    greedy = solvers.greedy_superstring(b4_reduction.strings)
    ns = backward_map.normalize(greedy.superstring, b4_reduction)
    assert len(ns.string) <= greedy.length

    psi = backward_map.extract_assignment(ns, b4_reduction)
    check = backward_map.check_roundtrip(b4_reduction, greedy.superstring, psi)
    assert check.ok
    assert check.length == greedy.length


@pytest.mark.parametrize('seed', range(100))
def test_greedy_roundtrip_on_small_instances(seed):
    e3 = hybrid_model.generate_e3('random', seed=seed, variables=3)
    strategy = hybrid_model.MATCHING_STRATEGIES[seed % len(hybrid_model.MATCHING_STRATEGIES)]
    variant = (GadgetVariant.B4, GadgetVariant.A6)[seed // 2 % 2]
    reduction = reduce(hybrid_model.build_hybrid(e3, matching_strategy=strategy), variant)

    greedy = solvers.greedy_superstring(reduction.strings)
    ns = backward_map.normalize(greedy.superstring, reduction)
    assert len(ns.string) <= greedy.length
    assert is_superstring(ns.string, reduction.strings)

    psi = backward_map.extract_assignment(ns, reduction)
    assert backward_map.check_roundtrip(reduction, greedy.superstring, psi).ok


def test_concatenation_without_overlaps(b4_reduction):
    s = tuple(symbol for string in b4_reduction.strings for symbol in string)
    ns = backward_map.normalize(s, b4_reduction)
    assert len(ns.string) <= len(s)

    psi = backward_map.extract_assignment(ns, b4_reduction)
    assert backward_map.check_roundtrip(b4_reduction, s, psi).ok


def test_majority_criterion_ties_give_zero(b4_reduction):
    gadget = b4_reduction.index.gadgets['y_1:c2']
    s = tuple(symbol for string in gadget.strings for symbol in string)
    assert backward_map.detect_alignment(s, gadget) == 0

    with pytest.raises(ValueError, match='two-variable'):
        backward_map.detect_alignment(s, b4_reduction.index.gadgets['e0'])


def test_constellations_of_a_constant_assignment(b4_reduction):
    bits = {variable: 1 for variable in b4_reduction.instance.variables}
    constellations = backward_map.read_constellations(b4_reduction, bits)
    assert len(constellations) == 27 + 3
    assert all(constellation.consistent for constellation in constellations)


def test_normalize_budget_is_enforced(b4_reduction):
    s = tuple(symbol for string in b4_reduction.strings for symbol in string)
    with pytest.raises(RuntimeError, match='budget'):
        backward_map.normalize(s, b4_reduction, budget=0)


def test_normalize_refuses_to_leave_a_gadget_unnormed(b4_reduction, monkeypatch):
    def rebuild_longer(gadget, offset, order, strings, ov, locked):
        return float('inf'), order, next(iter(gadget.alignments))

    monkeypatch.setattr(backward_map, '_rebuild', rebuild_longer)
    s = tuple(symbol for string in b4_reduction.strings for symbol in string)
    with pytest.raises(RuntimeError, match='without a simple alignment'):
        backward_map.normalize(s, b4_reduction)


def test_circle_bits_need_a_normed_superstring(b4_reduction):
    ns = backward_map.NormedSuperstring(string=(), order=(), usage={})
    with pytest.raises(RuntimeError, match='not normed'):
        backward_map.circle_bits(ns, b4_reduction)
