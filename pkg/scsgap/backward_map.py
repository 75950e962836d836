#!/usr/bin/env python

"""
Turn an arbitrary superstring of a reduction back into an assignment of the Hybrid instance.

The superstring is first normalized: its strings are re-merged in leftmost-occurrence order, gadgets already laid
out as a simple alignment are kept as blocks, and every other gadget is cut out and re-inserted in the simple
alignment that costs least, provided the total length does not grow. The circle alignment bits are then read off
and turned into values equation by equation through the matching and eq3 constellations.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Tuple

from scsgap.gadgets import alignment_bit
from scsgap.hybrid_model import Assignment, is_satisfied, unsat_count
from scsgap.superstring_core import (GString, is_superstring, leftmost_order, leftmost_positions, max_overlap,
                                     merge_order)

logger = logging.getLogger(__name__)

KIND_ORDER = {'border': 0, 'circle': 0, 'matching': 1, 'eq3': 2}


class Constellation(NamedTuple):
    """
    Alignment bits (X_p, X_(p+1)) around every position of a matching edge or an eq3.
    """
    eq_id: str
    variables: Tuple[str, ...]
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def consistent(self):
        return all(first == second for first, second in self.pairs)


@dataclass
class NormedSuperstring:
    string: GString
    order: Tuple[int, ...]
    usage: Dict[str, Tuple[str, ...]]


class RoundtripCheck(NamedTuple):
    unsat: int
    length: int
    slack: int
    stated_slack: int
    ok: bool

    def report_line(self):
        return f'unsat={self.unsat} len={self.length} bound_ok={self.ok}'


########################################################################################################################
# Majority criterion
########################################################################################################################

class _BoundaryCounts:
    """
    Leftmost occurrences of all strings of a reduction in one superstring, indexed by start and by end.
    """

    def __init__(self, s, strings):
        self.positions = leftmost_positions(s, strings)
        self.starts = {}
        self.ends = {}
        for string, start in self.positions.items():
            self.starts.setdefault(start, set()).add(string)
            self.ends.setdefault(start + len(string) - 1, set()).add(string)

    def one_letter_overlaps(self, piece_strings, own):
        first, last = piece_strings[0], piece_strings[-1]
        if first not in self.positions or last not in self.positions:
            raise ValueError('Gadget strings are missing from the superstring')
        from_left = self.ends.get(self.positions[first], set()) - own
        from_right = self.starts.get(self.positions[last] + len(last) - 1, set()) - own
        return len(from_left) + len(from_right)


def detect_alignment(s, gadget, strings=None, counts=None):
    """
    Alignment bit used by a circle, border or matching gadget in s, by the majority criterion.

    For each bit, count the strings outside the gadget that overlap the start of a piece (or its end) by exactly one
    letter, taking leftmost occurrences. The result is 1 only if the 1-alignments collect strictly more such
    overlaps; ties give 0.

    :param tuple s: a superstring containing the gadget strings
    :param gadgets.EquationGadget gadget: the gadget
    :param strings: all strings of the reduction (needed when counts is not given)
    :param counts: precomputed boundary counts for s
    :return int: 0 or 1
    """

    if gadget.kind == 'eq3':
        raise ValueError('The majority criterion applies to two-variable gadgets only')
    if counts is None:
        counts = _BoundaryCounts(s, strings if strings is not None else gadget.strings)

    own = set(gadget.strings)
    scores = {0: 0, 1: 0}
    for name, pieces in gadget.alignments.items():
        score = 0
        for piece in pieces:
            score += counts.one_letter_overlaps([gadget.strings[index] for index in piece], own)
        bit = alignment_bit(name)
        scores[bit] = max(scores[bit], score)

    return 1 if scores[1] > scores[0] else 0


########################################################################################################################
# Normalization
########################################################################################################################

class _Overlaps:
    def __init__(self, strings):
        self.strings = strings
        self._cache = {}

    def __call__(self, i, j):
        if i is None or j is None:
            return 0
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = max_overlap(self.strings[i], self.strings[j])
        return self._cache[key]


def _order_length(order, strings, ov):
    total = sum(len(strings[index]) for index in order)
    return total - sum(ov(previous, current) for previous, current in zip(order, order[1:]))


def _present(order_position, piece):
    start = order_position.get(piece[0])
    if start is None:
        return False
    return all(order_position.get(index) == start + offset for offset, index in enumerate(piece))


def _usage(gadget, offset, order_position):
    def present(name):
        return all(_present(order_position, tuple(offset + local for local in piece))
                   for piece in gadget.alignments[name])

    if gadget.kind != 'eq3':
        for name in gadget.alignments:
            if present(name):
                return (name,)
        return None

    if present('joint'):
        return ('joint',)
    a_names = [name for name in gadget.alignments if name.startswith('A:') and present(name)]
    b_names = [name for name in gadget.alignments if name.startswith('B:') and present(name)]
    if a_names and b_names:
        return (a_names[0], b_names[0])
    return None


def _options(gadget):
    if gadget.kind != 'eq3':
        return [(name,) for name in gadget.alignments]
    options = [('joint',)]
    options.extend((a_name, b_name) for a_name in gadget.alignments if a_name.startswith('A:')
                   for b_name in gadget.alignments if b_name.startswith('B:'))
    return options


def _lock(locked, gadget, offset, names):
    for name in names:
        for piece in gadget.alignments[name]:
            indices = [offset + local for local in piece]
            locked.update(zip(indices, indices[1:]))


def _insert_best(order, piece, strings, ov, locked):
    """
    Insert a piece (global indices, merged internally) at the cheapest unlocked gap; returns (order, added length).
    """

    piece_length = _order_length(piece, strings, ov)
    first, last = piece[0], piece[-1]
    best = None
    for gap in range(len(order) + 1):
        previous = order[gap - 1] if gap > 0 else None
        following = order[gap] if gap < len(order) else None
        if previous is not None and following is not None and (previous, following) in locked:
            continue
        delta = piece_length - ov(previous, first) - ov(last, following) + ov(previous, following)
        if best is None or delta < best[0]:
            best = (delta, gap)

    delta, gap = best
    return order[:gap] + list(piece) + order[gap:], delta


def _rebuild(gadget, offset, order, strings, ov, locked):
    members = set(range(offset, offset + len(gadget.strings)))
    remaining = [index for index in order if index not in members]
    base = _order_length(remaining, strings, ov)

    best = None
    for option in _options(gadget):
        candidate = remaining
        total = base
        for name in option:
            for piece in gadget.alignments[name]:
                candidate, delta = _insert_best(candidate, [offset + local for local in piece], strings, ov, locked)
                total += delta
        if best is None or total < best[0]:
            best = (total, candidate, option)
    return best


def normalize(s, reduction, budget=None):
    """
    Normalize a superstring of the reduction without making it longer.

    :param tuple s: superstring of reduction.strings
    :param gadgets.Reduction reduction: the reduction
    :param int budget: maximal number of gadget rebuild attempts, (#gadgets)^2 by default
    :return NormedSuperstring: the normalized string, its string order and the alignment used by every gadget
    :raises RuntimeError: if a gadget cannot be laid out in a simple alignment without lengthening the string, or the
        step budget is exceeded
    """

    strings = reduction.strings.strings
    index = reduction.index
    order = leftmost_order(s, strings)
    ov = _Overlaps(strings)
    total = _order_length(order, strings, ov)
    if total > len(s):
        raise RuntimeError(f'Leftmost-order merge gave {total} letters for a superstring of {len(s)}')

    gadgets = sorted(index, key=lambda gadget: KIND_ORDER[gadget.kind])
    budget = budget if budget is not None else max(1, len(gadgets)) ** 2

    order_position = {string_index: position for position, string_index in enumerate(order)}
    usage = {}
    locked = set()
    for gadget in gadgets:
        usage[gadget.eq_id] = _usage(gadget, index.offsets[gadget.eq_id], order_position)
        if usage[gadget.eq_id] is not None:
            _lock(locked, gadget, index.offsets[gadget.eq_id], usage[gadget.eq_id])

    steps = 0
    changed = True
    while changed:
        changed = False
        for gadget in gadgets:
            if usage[gadget.eq_id] is not None:
                continue
            steps += 1
            if steps > budget:
                raise RuntimeError(f'Normalization exceeded its budget of {budget} steps')

            offset = index.offsets[gadget.eq_id]
            new_total, new_order, option = _rebuild(gadget, offset, order, strings, ov, locked)
            if new_total > total:
                continue
            order, total = new_order, new_total
            usage[gadget.eq_id] = tuple(option)
            _lock(locked, gadget, offset, option)
            changed = True

    normed_string, _ = merge_order(strings, order)
    if len(normed_string) > len(s):
        raise RuntimeError(f'Normalization lengthened the superstring from {len(s)} to {len(normed_string)}')
    if not is_superstring(normed_string, strings):
        raise RuntimeError('Normalization lost a string of the reduction')

    unnormed = [eq_id for eq_id, names in usage.items() if names is None]
    if unnormed:
        raise RuntimeError(f'Normalization left {len(unnormed)} gadget(s) without a simple alignment: '
                           f'{", ".join(unnormed[:10])}')
    logger.debug(f'Normalized {len(s)} -> {len(normed_string)} letters in {steps} steps')

    return NormedSuperstring(normed_string, tuple(order), usage)


########################################################################################################################
# Assignment extraction
########################################################################################################################

def _usage_gadget_id(circle, position):
    return f'{circle.owner}:b' if position == 1 else f'{circle.owner}:c{position}'


def circle_bits(ns, reduction) -> Dict[str, int]:
    """
    X bits of every Hybrid variable: the alignment bit of the circle gadget ending at it (the border gadget for
    position 1), read from the usage record of the normalized superstring.
    """

    bits = {}
    for circle in reduction.instance.circles:
        for position in range(1, circle.length + 1):
            eq_id = _usage_gadget_id(circle, position)
            names = ns.usage.get(eq_id)
            if not names:
                raise RuntimeError(f'No simple alignment recorded for gadget {eq_id}; the superstring is not normed')
            bits[circle.var(position)] = alignment_bit(names[0])
    return bits


def majority_bits(s, reduction) -> Dict[str, int]:
    """
    The same bits read from s alone by the majority criterion.
    """

    counts = _BoundaryCounts(s, reduction.strings.strings)
    gadgets = reduction.index.gadgets
    return {circle.var(position): detect_alignment(s, gadgets[_usage_gadget_id(circle, position)], counts=counts)
            for circle in reduction.instance.circles for position in range(1, circle.length + 1)}


def read_constellations(reduction, bits) -> List[Constellation]:
    instance = reduction.instance
    constellations = []

    def pair(variable):
        circle, position = instance.circle_of(variable)
        return bits[variable], bits[circle.var(circle.successor(position))]

    for circle in instance.circles:
        for i, j in circle.matching:
            variables = (circle.var(i), circle.var(j))
            constellations.append(Constellation(f'{circle.owner}:m{i}-{j}', variables,
                                                tuple(pair(variable) for variable in variables)))
    for index, equation in enumerate(instance.eq3):
        variables = tuple(equation[:3])
        constellations.append(Constellation(f'e{index}', variables, tuple(pair(variable) for variable in variables)))

    return constellations


def assign_checkers(constellation) -> Tuple[int, int]:
    """
    Values of the two checkers of a matching constellation (X_i X_(i+1), X_j X_(j+1)).

    Equal X_i, X_j or a consistent constellation keep the bits. Otherwise x_i switches when X_i != X_(i+1), else x_j
    switches (then X_j != X_(j+1)).
    """

    (x_i, x_i_next), (x_j, x_j_next) = constellation.pairs
    if x_i == x_j or constellation.consistent:
        return x_i, x_j
    if x_i != x_i_next:
        return 1 - x_i, x_j
    return x_i, 1 - x_j


def assign_contacts(constellation, rhs) -> Tuple[int, int, int]:
    """
    Values of the three contacts of an eq3 constellation (X1 X2, Y1 Y2, Z1 Z2).

    The first bits are kept when the constellation is consistent or when they satisfy the equation; otherwise the
    first contact with X1 != X2 switches.
    """

    values = [first for first, _ in constellation.pairs]
    if constellation.consistent or sum(values) % 2 == rhs:
        return tuple(values)
    slot = next(slot for slot, (first, second) in enumerate(constellation.pairs) if first != second)
    values[slot] ^= 1
    return tuple(values)


def _flip_delta(instance, psi, variable):
    equations = instance.equations
    before = 0
    for position in instance.equations_of[variable]:
        before += not is_satisfied(equations[position], psi)
    psi[variable] ^= 1
    after = 0
    for position in instance.equations_of[variable]:
        after += not is_satisfied(equations[position], psi)
    psi[variable] ^= 1
    return after - before


def polish(instance, psi):
    """
    Single-variable flips, in variable order, while one strictly lowers the number of unsatisfied equations.

    :return int: number of flips applied
    """

    flips = 0
    improved = True
    while improved:
        improved = False
        for variable in instance.variables:
            if _flip_delta(instance, psi, variable) < 0:
                psi[variable] ^= 1
                flips += 1
                improved = True
    return flips


def extract_assignment(ns, reduction, polish_flips=False):
    """
    Assignment psi_s read from a normalized superstring.

    Every variable starts from the alignment bit of the circle gadget ending at it. Checkers then take the values of
    their matching constellation and contacts those of their eq3 constellation (see assign_checkers and
    assign_contacts). With polish_flips, improving single flips are applied afterwards.

    :param NormedSuperstring ns: normalized superstring
    :param gadgets.Reduction reduction: the reduction
    :param bool polish_flips: apply improving single flips to the result
    :return hybrid_model.Assignment: the total assignment psi_s
    """

    instance = reduction.instance
    bits = circle_bits(ns, reduction)
    psi = dict(bits)

    switched = 0
    for constellation in read_constellations(reduction, bits):
        if constellation.eq_id.startswith('e'):
            values = assign_contacts(constellation, instance.eq3[int(constellation.eq_id[1:])].rhs)
        else:
            values = assign_checkers(constellation)
        for variable, value in zip(constellation.variables, values):
            switched += value != bits[variable]
            psi[variable] = value

    flips = polish(instance, psi) if polish_flips else 0

    logger.debug(f'Extracted assignment: {switched} constellation switch(es), {flips} polishing flip(s)')
    return Assignment(psi)


def check_roundtrip(reduction, superstring, psi) -> RoundtripCheck:
    """
    unsat(psi) against the slack |s| - (5m2 + Cm3 + 8n) of the superstring it was read from.
    """

    unsat = unsat_count(reduction.instance, psi)
    slack = len(superstring) - reduction.base_length()
    return RoundtripCheck(unsat=unsat,
                          length=len(superstring),
                          slack=slack,
                          stated_slack=len(superstring) - reduction.stated_base_length(),
                          ok=unsat <= slack)
