import pytest

from scsgap import gadgets, hybrid_model
from scsgap.gadgets import GadgetVariant
from scsgap.superstring_core import Symbol, max_overlap, merge_order, orbit_stats


def test_letter_totals(b4_reduction, a6_reduction):
    assert b4_reduction.strings.total_letters == 840
    assert a6_reduction.strings.total_letters == 864
    assert a6_reduction.strings.total_letters - b4_reduction.strings.total_letters == 8 * 3


def test_base_constants(b4_reduction, a6_reduction):
    assert b4_reduction.base_length() == 522
    assert b4_reduction.stated_base_length() == 519
    assert a6_reduction.base_length() == 540
    assert b4_reduction.base_compression() == 840 - 522
    assert a6_reduction.base_compression() == 864 - 540


@pytest.mark.parametrize('variant', list(GadgetVariant))
def test_orbit_size_is_eight(triple_instance, variant):
    reduction = gadgets.reduce(triple_instance, variant)
    _, largest = orbit_stats(reduction.strings)
    assert largest == gadgets.MAX_ORBIT

    for seed in range(50):
        e3 = hybrid_model.generate_e3('random', seed=seed, variables=4 + seed % 3)
        strategy = hybrid_model.MATCHING_STRATEGIES[seed % 2]
        reduction = gadgets.reduce(hybrid_model.build_hybrid(e3, matching_strategy=strategy), variant)
        _, largest = orbit_stats(reduction.strings)
        assert largest == gadgets.MAX_ORBIT


def test_disjoint_totals(disjoint_instance):
    reduction = gadgets.reduce(disjoint_instance, GadgetVariant.B4)
    assert reduction.strings.total_letters == 12 * 6 + 8 * 60 + 28 * 2
    assert reduction.base_length() == 5 * 60 + 16 * 2 + 8 * 6


def test_gadget_sizes(b4_reduction):
    kinds = {}
    for gadget in b4_reduction.index:
        kinds.setdefault(gadget.kind, []).append(gadget)

    assert len(kinds['border']) == 3
    assert all(len(gadget.strings) == 6 for gadget in kinds['border'])
    assert len(kinds['matching']) == 27
    assert len(kinds['eq3']) == 3

    replaced = [gadget for gadget in kinds['circle'] if gadget.replaced]
    # Only the x contacts of the three equations, all on circle x_1:
    assert sorted(gadget.eq_id for gadget in replaced) == ['x_1:c14', 'x_1:c21', 'x_1:c7']
    assert all(len(string) == 4 for gadget in replaced for string in gadget.strings)
    assert all(len(string) == 4 for gadget in kinds['eq3'] for string in gadget.strings)


def test_pair_alignments_overlap_two_letters(b4_reduction):
    for gadget in b4_reduction.index:
        if gadget.kind not in ('circle', 'matching') or gadget.replaced:
            continue
        for name, (piece,) in gadget.alignments.items():
            merged, overlaps = merge_order(gadget.strings, piece)
            assert overlaps == [2]
            assert len(merged) == gadget.letters - 2


def test_cyclic_alignments_overlap_everywhere(a6_reduction):
    for gadget in a6_reduction.index:
        if gadget.kind != 'eq3':
            continue
        for name, pieces in gadget.alignments.items():
            for piece in pieces:
                _, overlaps = merge_order(gadget.strings, piece)
                assert all(overlap > 0 for overlap in overlaps)


def test_circle_gadgets_share_only_m_letters(b4_reduction):
    # Consecutive circle gadgets meet with a one-letter overlap at most:
    circle = b4_reduction.instance.circles[0]
    first = b4_reduction.index.gadgets[f'{circle.owner}:c2']
    second = b4_reduction.index.gadgets[f'{circle.owner}:c3']
    for left in first.pieces('0'):
        for right in second.pieces('0'):
            assert max_overlap(left, right) <= 1


def test_gidx_roundtrip_and_check(tmp_path, b4_reduction, a6_reduction):
    path = gadgets.write_gidx(tmp_path / 'triple.gidx', b4_reduction)
    entries = gadgets.read_gidx(path)
    gadgets.check_gidx(b4_reduction, entries)
    assert entries[0][1] == 'border'
    assert entries[0][2] == (0, 1, 2, 3, 4, 5)

    with pytest.raises(ValueError):
        gadgets.check_gidx(a6_reduction, gadgets.read_gidx(gadgets.write_gidx(tmp_path / 'a6.gidx',
                                                                                  b4_reduction))[:-1])


def test_string_owners(b4_reduction):
    index = b4_reduction.index
    for gadget in index:
        for string_index in index.global_indices(gadget.eq_id):
            assert index.gadget_of(string_index) is gadget
            assert b4_reduction.strings[string_index] in gadget.strings


def test_threads_give_the_same_reduction(triple_instance, b4_reduction):
    parallel = gadgets.reduce(triple_instance, GadgetVariant.B4, threads=2)
    assert parallel.strings == b4_reduction.strings


def test_unknown_variant():
    with pytest.raises(ValueError, match='Unknown gadget variant'):
        GadgetVariant.from_name('c5')


@pytest.fixture(scope='module')
def shifted_reduction(triple_e3):
    return gadgets.reduce(hybrid_model.build_hybrid(triple_e3, matching_strategy='shifted'), GadgetVariant.B4)


def v(variable, tag):
    return Symbol('v', variable, tag)


def test_border_strings_for_rhs_zero(b4_reduction):
    c_left, c_right = Symbol('c', 'y_1', 'Cl'), Symbol('c', 'y_1', 'Cr')
    first, last = 'y_1.1', 'y_1.21'
    assert b4_reduction.index.gadgets['y_1:b'].strings == (
        (Symbol('c', 'y_1', 'L'), c_left),
        (c_left, v(first, 'm0'), v(last, 'l1'), c_right),
        (v(last, 'l1'), c_right, c_left, v(first, 'm0')),
        (c_left, v(first, 'r1'), v(last, 'm0'), c_right),
        (v(last, 'm0'), c_right, c_left, v(first, 'r1')),
        (c_right, Symbol('c', 'y_1', 'R')),
    )


@pytest.mark.parametrize('position, tags', [
    (2, ('l1', 'r1', 'm0', 'm0')),
    (11, ('l1', 'm1', 'm0', 'r0')),
    (12, ('m1', 'm1', 'l0', 'r0')),
    (21, ('m1', 'r1', 'l0', 'm0')),
])
def test_circle_strings_for_each_role_pair(shifted_reduction, position, tags):
    # Shifted matching on 21 positions: checkers 1-6 and 8-10 are small, 11-13 and 15-20 large.
    left, right = f'y_1.{position - 1}', f'y_1.{position}'
    p_string = (v(left, tags[0]), v(right, tags[1]), v(left, tags[2]), v(right, tags[3]))
    q_string = p_string[2:] + p_string[:2]
    gadget = shifted_reduction.index.gadgets[f'y_1:c{position}']
    assert gadget.strings == (p_string, q_string)
    assert gadget.pieces('1') == (p_string + q_string[2:],)
    assert gadget.pieces('0') == (q_string + p_string[2:],)


def test_a6_set_a_for_rhs_zero(a6_reduction):
    x, y = 'x_1.7', 'y_1.7'
    a1, a2, a3, c_letter = (Symbol('e', 'e0', tag) for tag in ('A1', 'A2', 'A3', 'C'))
    assert a6_reduction.index.gadgets['e0'].strings[:3] == (
        (v(x, 'r1'), a1, v(x, 'l1'), v(y, 'r1'), a2, v(y, 'l1')),
        (v(y, 'r1'), a2, v(y, 'l1'), v(x, 'm0'), a3, c_letter),
        (v(x, 'm0'), a3, c_letter, v(x, 'r1'), a1, v(x, 'l1')),
    )


def test_b4_sets_for_rhs_zero(b4_reduction):
    x, y, z = 'x_1.7', 'y_1.7', 'z_1.7'
    c_letter = Symbol('e', 'e0', 'C')
    assert b4_reduction.index.gadgets['e0'].strings == (
        (v(x, 'r1a'), v(x, 'l1'), v(y, 'r1'), v(y, 'l1')),
        (v(y, 'r1'), v(y, 'l1'), v(x, 'm0'), c_letter),
        (v(x, 'm0'), c_letter, v(x, 'r1a'), v(x, 'l1')),
        (v(x, 'r1b'), v(x, 'l1'), v(z, 'r1'), v(z, 'l1')),
        (v(z, 'r1'), v(z, 'l1'), c_letter, v(x, 'm0')),
        (c_letter, v(x, 'm0'), v(x, 'r1b'), v(x, 'l1')),
    )


def test_b4_replaced_circle_strings(shifted_reduction):
    left, contact = 'x_1.6', 'x_1.7'
    gadget = shifted_reduction.index.gadgets['x_1:c7']
    assert gadget.replaced
    assert gadget.strings == (
        (v(left, 'l1'), v(contact, 'r1b'), v(left, 'l1'), v(contact, 'r1a')),
        (v(left, 'l1'), v(contact, 'r1a'), v(left, 'm0'), v(contact, 'm0')),
        (v(left, 'm0'), v(contact, 'm0'), v(left, 'l1'), v(contact, 'r1b')),
    )
    strings = gadget.strings
    for index in range(3):
        assert max_overlap(strings[index], strings[(index + 1) % 3]) == 2
    assert sorted(gadget.alignments) == ['0', '1a', '1b']
