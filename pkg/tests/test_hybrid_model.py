import random

import pytest

from scsgap import hybrid_model
from scsgap.hybrid_model import Assignment, Eq3, E3LinInstance


def test_triple_counts(triple_instance):
    assert triple_instance.counts() == (3, 90, 3)
    for circle in triple_instance.circles:
        assert circle.length == 21
        assert circle.contacts == (7, 14, 21)
        assert len(circle.matching) == 9


def test_disjoint_counts_with_occurrence_override(disjoint_instance):
    assert disjoint_instance.counts() == (6, 60, 2)


def test_disjoint_template_needs_override():
    e3 = hybrid_model.generate_e3('disjoint')
    with pytest.raises(ValueError, match='exactly 3 times'):
        hybrid_model.build_hybrid(e3)


def test_copies_use_fresh_names():
    e3 = hybrid_model.generate_e3('triple', copies=3)
    assert len(e3.equations) == 9
    assert len(e3.variables) == 9
    assert e3.equations[0] == Eq3('x_1', 'y_1', 'z_1', 0)


def test_random_template_is_valid_and_seeded():
    first = hybrid_model.generate_e3('random', copies=2, seed=7, variables=6)
    second = hybrid_model.generate_e3('random', copies=2, seed=7, variables=6)
    assert first == second
    first.validate()
    assert all(count == 3 for count in first.occurrences().values())


def test_repeated_variable_is_rejected():
    e3 = E3LinInstance((Eq3('x', 'x', 'y', 0),))
    with pytest.raises(ValueError, match='more than once'):
        e3.validate(allow_any_occurrence=True)


@pytest.mark.parametrize('strategy', hybrid_model.MATCHING_STRATEGIES)
def test_matching_covers_checkers(strategy):
    matching = hybrid_model.build_matching(21, strategy)
    positions = sorted(position for pair in matching for position in pair)
    assert positions == [position for position in range(1, 22) if position % 7]
    assert all(i < j for i, j in matching)


def test_contacts_bound_in_occurrence_order(triple_instance):
    assert triple_instance.eq3[0][:3] == ('x_1.7', 'y_1.7', 'z_1.7')
    assert triple_instance.eq3[2][:3] == ('x_1.21', 'y_1.21', 'z_1.21')
    assert triple_instance.is_contact('x_1.14')
    assert not triple_instance.is_contact('x_1.13')


def test_equation_ids_and_kinds(triple_instance):
    ids = {equation.eq_id: equation.kind for equation in triple_instance.equations}
    assert ids['x_1:b'] == 'border'
    assert ids['x_1:c2'] == 'circle'
    assert ids['x_1:m1-2'] == 'matching'
    assert ids['e0'] == 'eq3'
    assert len(ids) == 90 + 3


def test_unsat_count(triple_instance):
    zeros = Assignment.zeros(triple_instance)
    assert hybrid_model.unsat_count(triple_instance, zeros) == 0

    ones = Assignment({variable: 1 for variable in triple_instance.variables})
    assert hybrid_model.unsat_count(triple_instance, ones) == 3

    # One flipped checker breaks its two circle equations and its matching equation:
    assert hybrid_model.unsat_count(triple_instance, zeros.flipped('x_1.3')) == 3


def test_unsat_count_needs_total_assignment(triple_instance):
    with pytest.raises(ValueError, match='missing'):
        hybrid_model.unsat_count(triple_instance, Assignment({'x_1.1': 0}))


def test_hybrid_file_roundtrip(tmp_path, triple_instance):
    path = hybrid_model.write_hybrid(tmp_path / 'triple.hybrid', triple_instance)
    assert hybrid_model.read_hybrid(path) == triple_instance


def test_e3_and_assignment_files(tmp_path, triple_instance):
    e3 = hybrid_model.generate_e3('random', seed=3)
    assert hybrid_model.read_e3(hybrid_model.write_e3(tmp_path / 'r.e3lin', e3)) == e3

    phi = Assignment.random(triple_instance, random.Random(5))
    path = hybrid_model.write_assignment(tmp_path / 'phi.txt', phi)
    with open(path, 'a') as handle:
        handle.write('unsat=0 len=10 bound_ok=True\n')
    assert dict(hybrid_model.read_assignment(path)) == dict(phi)


def test_bad_header_reports_line(tmp_path):
    path = tmp_path / 'bad.e3lin'
    path.write_text('e3 v1\neq a b c 0\n')
    with pytest.raises(ValueError, match=':1: expected header'):
        hybrid_model.read_e3(path)
