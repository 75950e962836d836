#!/usr/bin/env python

"""
Build the superstring s_phi of a reduction from an assignment phi.

Every circle becomes one chain: the left border piece, the circle gadgets g_2 .. g_N in their phi-alignment and the
right border piece. Matching and eq3 alignments are inserted at junctions of that chain (one insertion per junction)
or appended after all circles when no junction gains overlap. Among equally good placements the case rule for the
equation wins, so satisfied equations always get the textbook placement.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, NamedTuple, Sequence, Tuple

from scsgap.gadgets import contact_active_bit
from scsgap.hybrid_model import unsat_count
from scsgap.superstring_core import GString, is_superstring, max_overlap, merge_order

logger = logging.getLogger(__name__)

EQ3_COMBINATIONS = tuple((a_name, b_name) for a_name in ('A:x', 'A:y', 'A:left')
                         for b_name in ('B:x', 'B:z', 'B:right')) + (('joint',),)


@dataclass
class AlignmentPlan:
    """
    One alignment choice per gadget plus where every insertable piece goes.

    choices: eq_id -> alignment names (one name, or two for an eq3 gadget using one alignment per set)
    junction_inserts: variable -> (eq_id, alignment name) inserted right after the fragment ending at that variable
    tail: (eq_id, alignment name) pieces appended after all circles, in gadget order
    """
    choices: Dict[str, Tuple[str, ...]]
    circle_order: Tuple[str, ...]
    junction_inserts: Dict[str, Tuple[str, str]] = field(default_factory=dict)
    tail: List[Tuple[str, str]] = field(default_factory=list)


class ForwardCheck(NamedTuple):
    length: int
    bound: int
    stated_bound: int
    unsat: int
    compression: int
    compression_bound: int
    ok: bool

    def report_line(self):
        return f'len={self.length} bound={self.bound} u={self.unsat} ok={self.ok}'


def _gain(left, piece, right):
    return max_overlap(left, piece) + max_overlap(piece, right) - max_overlap(left, right)


class _CircleChain:
    """
    Fragment strings around the junctions of one circle, for a fixed choice of circle alignments.
    """

    def __init__(self, reduction, circle, choices):
        self.circle = circle
        self.gadgets = reduction.index.gadgets
        self.choices = choices

    def _piece(self, eq_id, which=0):
        return self.gadgets[eq_id].pieces(self.choices[eq_id][0])[which]

    def left_of(self, position, override=None):
        """
        Fragment ending at junction `position`; override replaces the alignment of that fragment's gadget.
        """

        owner = self.circle.owner
        if position == 1:
            return self._piece(f'{owner}:b', 0)
        eq_id = f'{owner}:c{position}'
        if override is not None:
            return self.gadgets[eq_id].pieces(override)[0]
        return self._piece(eq_id)

    def right_of(self, position):
        owner = self.circle.owner
        if position == self.circle.length:
            return self._piece(f'{owner}:b', 1)
        return self._piece(f'{owner}:c{position + 1}')


def plan_from_assignment(reduction, phi, circle_order=None):
    """
    Choose the alignment of every gadget for phi and place the insertable pieces.

    :param gadgets.Reduction reduction: the reduction
    :param Mapping phi: total assignment of the Hybrid variables
    :param circle_order: owners in output order, the instance order by default
    :return AlignmentPlan: the plan
    """

    instance = reduction.instance
    gadgets = reduction.index.gadgets
    unsat_count(instance, phi)

    order = tuple(circle_order) if circle_order is not None else tuple(circle.owner for circle in instance.circles)
    if sorted(order) != sorted(circle.owner for circle in instance.circles):
        raise ValueError('Circle order must name every circle exactly once')

    plan = AlignmentPlan(choices={}, circle_order=order)

    for circle in instance.circles:
        plan.choices[f'{circle.owner}:b'] = (str(phi[circle.var(1)]),)
        for position in range(2, circle.length + 1):
            eq_id = f'{circle.owner}:c{position}'
            bit = phi[circle.var(position)]
            names = gadgets[eq_id].names_for_bit(bit)
            plan.choices[eq_id] = (names[0],)

    chains = {circle.owner: _CircleChain(reduction, circle, plan.choices) for circle in instance.circles}

    for circle in instance.circles:
        chain = chains[circle.owner]
        for i, j in circle.matching:
            _place_matching(plan, gadgets[f'{circle.owner}:m{i}-{j}'], chain, phi, i, j)

    for index, equation in enumerate(instance.eq3):
        _place_eq3(plan, reduction, gadgets[f'e{index}'], chains, equation, phi)

    for gadget in reduction.index:
        if gadget.kind in ('matching', 'eq3'):
            names = plan.choices[gadget.eq_id]
            placed = {name for variable, (eq_id, name) in plan.junction_inserts.items() if eq_id == gadget.eq_id}
            plan.tail.extend((gadget.eq_id, name) for name in names if name not in placed)

    logger.debug(f'Plan: {len(plan.junction_inserts)} junction insertions, {len(plan.tail)} tail pieces')
    return plan


def _place_matching(plan, gadget, chain, phi, i, j):
    circle = chain.circle
    if phi[circle.var(i)] == 1:
        candidates = [('1', i), ('0', j), ('0', i), ('1', j)]
    else:
        candidates = [('0', j), ('1', i), ('1', j), ('0', i)]
    candidates.extend([(candidates[0][0], None)])

    best = None
    for name, position in candidates:
        if position is None:
            gain = 0
        else:
            gain = _gain(chain.left_of(position), gadget.pieces(name)[0], chain.right_of(position))
        if best is None or gain > best[0]:
            best = (gain, name, position)

    _, name, position = best
    plan.choices[gadget.eq_id] = (name,)
    if position is not None:
        plan.junction_inserts[circle.var(position)] = (gadget.eq_id, name)


def _case_rule(active):
    """
    Displayed alignment choice for an eq3 gadget given which of x, y, z take the active value.

    Returns ((name, host), ...) with host one of 'x', 'y', 'z' or None for the tail.
    """

    x_on, y_on, z_on = active
    if x_on and y_on and z_on:
        return (('A:y', 'y'), ('B:z', 'z'))
    if x_on and y_on:
        return (('A:y', 'y'), ('B:x', 'x'))
    if x_on and z_on:
        return (('A:x', 'x'), ('B:z', 'z'))
    if y_on and z_on:
        return (('A:y', 'y'), ('B:z', 'z'))
    if x_on:
        return (('A:x', 'x'), ('B:right', None))
    if y_on:
        return (('A:y', 'y'), ('B:right', None))
    if z_on:
        return (('A:left', None), ('B:z', 'z'))
    return (('joint', 'x'),)


def _eq3_options(case_rule):
    yield case_rule
    for combination in EQ3_COMBINATIONS:
        for hosts in product(('x', 'y', 'z', None), repeat=len(combination)):
            used = [host for host in hosts if host is not None]
            if len(used) == len(set(used)):
                yield tuple(zip(combination, hosts))


def _place_eq3(plan, reduction, gadget, chains, equation, phi):
    instance = reduction.instance
    active_bit = contact_active_bit(equation.rhs)
    variables = {'x': equation.x, 'y': equation.y, 'z': equation.z}
    active = tuple(phi[variables[slot]] == active_bit for slot in 'xyz')

    junctions = {}
    for slot, variable in variables.items():
        circle, position = instance.circle_of(variable)
        junctions[slot] = (chains[circle.owner], position)

    x_circle, x_position = instance.circle_of(equation.x)
    x_circle_eq = f'{x_circle.owner}:c{x_position}'
    x_gadget = reduction.index.gadgets[x_circle_eq]
    if x_gadget.replaced and active[0]:
        replacement_names = x_gadget.names_for_bit(active_bit)
    else:
        replacement_names = [plan.choices[x_circle_eq][0]]

    internal = gadget.letters
    best = None
    for replacement in replacement_names:
        for option in _eq3_options(_case_rule(active)):
            score = internal - sum(len(gadget.pieces(name)[0]) for name, _ in option)
            for name, host in option:
                if host is None:
                    continue
                chain, position = junctions[host]
                override = replacement if host == 'x' else None
                score += _gain(chain.left_of(position, override=override), gadget.pieces(name)[0],
                               chain.right_of(position))
            if best is None or score > best[0]:
                best = (score, replacement, option)

    _, replacement, option = best
    plan.choices[x_circle_eq] = (replacement,)
    plan.choices[gadget.eq_id] = tuple(name for name, _ in option)
    for name, host in option:
        if host is not None:
            plan.junction_inserts[variables[host]] = (gadget.eq_id, name)


def assemble(reduction, plan) -> GString:
    """
    Merge the fragments dictated by the plan, circle by circle, then the tail pieces.
    """

    instance = reduction.instance
    gadgets = reduction.index.gadgets
    fragments: List[GString] = []

    def insert_after(variable):
        if variable in plan.junction_inserts:
            eq_id, name = plan.junction_inserts[variable]
            fragments.append(gadgets[eq_id].pieces(name)[0])

    for owner in plan.circle_order:
        circle = instance.circle_by_owner[owner]
        left_piece, right_piece = gadgets[f'{owner}:b'].pieces(plan.choices[f'{owner}:b'][0])
        fragments.append(left_piece)
        insert_after(circle.var(1))
        for position in range(2, circle.length + 1):
            eq_id = f'{owner}:c{position}'
            fragments.append(gadgets[eq_id].pieces(plan.choices[eq_id][0])[0])
            insert_after(circle.var(position))
        fragments.append(right_piece)

    for eq_id, name in plan.tail:
        fragments.append(gadgets[eq_id].pieces(name)[0])

    superstring, _ = merge_order(fragments, range(len(fragments)))
    return superstring


def build_superstring(reduction, phi, circle_order=None) -> GString:
    """
    The superstring s_phi; raises RuntimeError if the assembled string misses a string of the reduction.

    :param gadgets.Reduction reduction: the reduction
    :param Mapping phi: total assignment of the Hybrid variables
    :param Sequence circle_order: owners in output order, the instance order by default
    :return tuple: the superstring
    """

    plan = plan_from_assignment(reduction, phi, circle_order=circle_order)
    superstring = assemble(reduction, plan)
    if not is_superstring(superstring, reduction.strings):
        raise RuntimeError('Forward construction did not produce a superstring of the reduction')
    return superstring


def check_forward(reduction, phi, superstring: Sequence) -> ForwardCheck:
    """
    Length and compression of s_phi against the bounds base + u and base compression - u.
    """

    unsat = unsat_count(reduction.instance, phi)
    length = len(superstring)
    compression = reduction.strings.total_letters - length
    bound = reduction.base_length() + unsat
    compression_bound = reduction.base_compression() - unsat
    return ForwardCheck(length=length,
                        bound=bound,
                        stated_bound=reduction.stated_base_length() + unsat,
                        unsat=unsat,
                        compression=compression,
                        compression_bound=compression_bound,
                        ok=length <= bound and compression >= compression_bound)
