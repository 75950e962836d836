#!/usr/bin/env python

"""
Build the string set S(g) for every equation g of a Hybrid instance.

Every variable letter is decorated with one of the tags l0, l1, r0, r1, m0, m1 (plus the split tags r1a/r1b or
r0a/r0b used by the B4 variant). Which tags a position uses is decided by its role:

    small role (checker matched to a larger position, or contact of an rhs-0 equation):
        fragment-start letters  1 -> l1, 0 -> m0
        fragment-end letters    1 -> r1, 0 -> m0
    large role (checker matched to a smaller position, or contact of an rhs-1 equation):
        fragment-start letters  1 -> m1, 0 -> l0
        fragment-end letters    1 -> m1, 0 -> r0

A circle is laid out as a chain of fragments separated by junctions: junction p sits between the fragment ending
with the end letter of x.p and the fragment starting with the start letter of x.p. Two fragments meet with a
one-letter overlap only where both letters are the shared m letter.

File format "gidx v1" (sidecar of an "sset v1" file, line numbers are 1-based over the sset body):

    gidx v1
    gadget x:b border 1 2 3 4 5 6
    gadget x:c2 circle 7 8
"""

import logging
import traceback
from collections import OrderedDict
from concurrent.futures import as_completed
from concurrent.futures.process import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

from scsgap.hybrid_model import HybridInstance
from scsgap.superstring_core import GString, StringSet, Symbol, merge_order, orbit_stats

logger = logging.getLogger(__name__)

GIDX_HEADER = 'gidx v1'
MAX_ORBIT = 8
GADGET_KINDS = ('border', 'circle', 'matching', 'eq3')

EQ3_LETTERS = {'a6': 36, 'b4': 28}


class GadgetVariant(Enum):
    A6 = 'a6'
    B4 = 'b4'

    @classmethod
    def from_name(cls, name):
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(f'Unknown gadget variant "{name}"; choose from a6, b4') from None

    def __str__(self):
        return self.value


@dataclass
class EquationGadget:
    """
    The strings of one equation and its catalog of simple alignments.

    Each alignment maps a name to a tuple of pieces; a piece is a tuple of local string indices that are merged in
    that order.
    """
    eq_id: str
    kind: str
    strings: Tuple[GString, ...]
    alignments: Dict[str, Tuple[Tuple[int, ...], ...]]
    replaced: bool = False
    _merged: Dict[str, Tuple[GString, ...]] = field(default_factory=dict, repr=False, compare=False)

    def pieces(self, name) -> Tuple[GString, ...]:
        """
        Merged strings of the pieces of alignment `name`.
        """

        if name not in self._merged:
            if name not in self.alignments:
                raise ValueError(f'Gadget {self.eq_id} has no alignment "{name}"')
            self._merged[name] = tuple(merge_order(self.strings, piece)[0] for piece in self.alignments[name])
        return self._merged[name]

    def names_for_bit(self, bit):
        return [name for name in self.alignments if name[0] == str(bit)]

    @property
    def letters(self):
        return sum(len(string) for string in self.strings)


def alignment_bit(name):
    """
    Truth value encoded by a circle, border or matching alignment name ('0', '1', '1a', '0b', ...).
    """

    return int(name[0])


########################################################################################################################
# Letter roles
########################################################################################################################

class RoleTable:
    """
    Per-position letter decorations of a Hybrid instance.
    """

    _START = {True: {1: 'l1', 0: 'm0'}, False: {1: 'm1', 0: 'l0'}}
    _END = {True: {1: 'r1', 0: 'm0'}, False: {1: 'm1', 0: 'r0'}}

    def __init__(self, instance):
        self.instance = instance
        self._small = {}
        for circle in instance.circles:
            for position in range(1, circle.length + 1):
                variable = circle.var(position)
                if instance.is_contact(variable):
                    self._small[variable] = instance.contact_rhs(variable) == 0
                else:
                    self._small[variable] = position < circle.partners[position]

    def start(self, variable, bit) -> Symbol:
        return Symbol('v', variable, self._START[self._small[variable]][bit])

    def end(self, variable, bit) -> Symbol:
        return Symbol('v', variable, self._END[self._small[variable]][bit])

    def end_tag(self, variable, bit):
        return self._END[self._small[variable]][bit]


def contact_active_bit(rhs):
    """
    Value of a contact whose eq3 letters r/l are the ones the eq3 gadget shares with the circle (1 for rhs 0).
    """

    return 1 - rhs


########################################################################################################################
# Gadget constructors
########################################################################################################################

def circle_gadget(roles, circle, position):
    """
    Gadget of the circle equation x.(position-1) + x.position = 0.
    """

    left = circle.var(position - 1)
    right = circle.var(position)
    p_string = (roles.start(left, 1), roles.end(right, 1), roles.start(left, 0), roles.end(right, 0))
    q_string = (roles.start(left, 0), roles.end(right, 0), roles.start(left, 1), roles.end(right, 1))

    return EquationGadget(eq_id=f'{circle.owner}:c{position}',
                          kind='circle',
                          strings=(p_string, q_string),
                          alignments={'0': ((1, 0),), '1': ((0, 1),)})


def replaced_circle_gadget(roles, circle, position, rhs):
    """
    B4 replacement of the circle equation ending in x.position, the x contact of a three-variable equation: three
    strings aligned cyclically.

    The end letter of the contact's active value is split in two copies (a and b) so that either eq3 set can
    overlap the circle chain from the right.
    """

    left = circle.var(position - 1)
    contact = circle.var(position)
    active = contact_active_bit(rhs)
    passive = 1 - active
    split_a = Symbol('v', contact, f'{roles.end_tag(contact, active)}a')
    split_b = Symbol('v', contact, f'{roles.end_tag(contact, active)}b')
    start_active = roles.start(left, active)
    start_passive = roles.start(left, passive)
    end_passive = roles.end(contact, passive)

    r1 = (start_active, split_b, start_active, split_a)
    r2 = (start_active, split_a, start_passive, end_passive)
    r3 = (start_passive, end_passive, start_active, split_b)

    return EquationGadget(eq_id=f'{circle.owner}:c{position}',
                          kind='circle',
                          strings=(r1, r2, r3),
                          alignments={f'{passive}': ((2, 0, 1),),
                                      f'{active}a': ((1, 2, 0),),
                                      f'{active}b': ((0, 1, 2),)},
                          replaced=True)


def border_gadget(roles, circle):
    """
    Gadget of the border equation x.1 + x.N = 0, including the two circle terminals.
    """

    owner = circle.owner
    first = circle.var(1)
    last = circle.var(circle.length)
    l_letter, c_left, c_right, r_letter = (Symbol('c', owner, tag) for tag in ('L', 'Cl', 'Cr', 'R'))

    strings = ((l_letter, c_left),
               (c_left, roles.end(first, 0), roles.start(last, 1), c_right),
               (roles.start(last, 1), c_right, c_left, roles.end(first, 0)),
               (c_left, roles.end(first, 1), roles.start(last, 0), c_right),
               (roles.start(last, 0), c_right, c_left, roles.end(first, 1)),
               (c_right, r_letter))

    return EquationGadget(eq_id=f'{owner}:b',
                          kind='border',
                          strings=strings,
                          alignments={'0': ((0, 1, 2), (4, 3, 5)),
                                      '1': ((0, 3, 4), (2, 1, 5))})


def matching_gadget(circle, i, j):
    """
    Gadget of the matching equation x.i + x.j = 0 (i < j); i always plays the small role, j the large one.
    """

    if circle.partners.get(i) != j:
        raise ValueError(f'{{{i}, {j}}} is not an edge of the matching of circle {circle.owner}')
    if i > j:
        i, j = j, i

    small, large = circle.var(i), circle.var(j)
    r0_j, l0_j = Symbol('v', large, 'r0'), Symbol('v', large, 'l0')
    r1_i, l1_i = Symbol('v', small, 'r1'), Symbol('v', small, 'l1')
    x_string = (r0_j, l0_j, r1_i, l1_i)
    y_string = (r1_i, l1_i, r0_j, l0_j)

    return EquationGadget(eq_id=f'{circle.owner}:m{i}-{j}',
                          kind='matching',
                          strings=(x_string, y_string),
                          alignments={'0': ((0, 1),), '1': ((1, 0),)})


def eq3_gadget(index, equation, variant, roles):
    """
    Gadget of the three-variable equation x + y + z = rhs: the sets A (x, y) and B (x, z).

    Alignment names: 'A:x', 'A:y', 'A:left' for set A; 'B:x', 'B:z', 'B:right' for set B; 'joint' for the
    alignment of both sets sharing the C letter.
    """

    x, y, z = equation.x, equation.y, equation.z
    active = contact_active_bit(equation.rhs)
    owner = f'e{index}'

    def var_letter(variable, tag):
        return Symbol('v', variable, tag)

    xl = var_letter(x, f'l{active}')
    xm = var_letter(x, f'm{1 - active}')
    yr, yl = var_letter(y, f'r{active}'), var_letter(y, f'l{active}')
    zr, zl = var_letter(z, f'r{active}'), var_letter(z, f'l{active}')
    c_letter = Symbol('e', owner, 'C')

    if variant is GadgetVariant.A6:
        xr = var_letter(x, f'r{active}')
        a1, a2, a3, b1, b2, b3 = (Symbol('e', owner, tag) for tag in ('A1', 'A2', 'A3', 'B1', 'B2', 'B3'))
        strings = ((xr, a1, xl, yr, a2, yl),
                   (yr, a2, yl, xm, a3, c_letter),
                   (xm, a3, c_letter, xr, a1, xl),
                   (xr, b1, xl, zr, b2, zl),
                   (zr, b2, zl, c_letter, b3, xm),
                   (c_letter, b3, xm, xr, b1, xl))
    else:
        xr_a = var_letter(x, f'r{active}a')
        xr_b = var_letter(x, f'r{active}b')
        strings = ((xr_a, xl, yr, yl),
                   (yr, yl, xm, c_letter),
                   (xm, c_letter, xr_a, xl),
                   (xr_b, xl, zr, zl),
                   (zr, zl, c_letter, xm),
                   (c_letter, xm, xr_b, xl))

    alignments = OrderedDict([('A:x', ((0, 1, 2),)),
                              ('A:y', ((1, 2, 0),)),
                              ('A:left', ((2, 0, 1),)),
                              ('B:x', ((3, 4, 5),)),
                              ('B:z', ((4, 5, 3),)),
                              ('B:right', ((5, 3, 4),)),
                              ('joint', ((2, 0, 1, 5, 3, 4),))])

    return EquationGadget(eq_id=owner, kind='eq3', strings=strings, alignments=dict(alignments))


########################################################################################################################
# Whole-instance reduction
########################################################################################################################

@dataclass
class GadgetIndex:
    """
    Links every equation to its gadget and every string of the reduction to its owning gadget.
    """
    gadgets: Dict[str, EquationGadget]
    offsets: Dict[str, int]
    owners: List[str]

    @classmethod
    def from_gadgets(cls, gadgets):
        ordered = OrderedDict()
        offsets = {}
        owners = []
        for gadget in gadgets:
            if gadget.eq_id in ordered:
                raise RuntimeError(f'Gadget {gadget.eq_id} built twice')
            ordered[gadget.eq_id] = gadget
            offsets[gadget.eq_id] = len(owners)
            owners.extend([gadget.eq_id] * len(gadget.strings))
        return cls(dict(ordered), offsets, owners)

    def global_indices(self, eq_id):
        start = self.offsets[eq_id]
        return tuple(range(start, start + len(self.gadgets[eq_id].strings)))

    def gadget_of(self, string_index) -> EquationGadget:
        return self.gadgets[self.owners[string_index]]

    def __iter__(self):
        return iter(self.gadgets.values())

    def __len__(self):
        return len(self.gadgets)


@dataclass
class Reduction:
    instance: HybridInstance
    variant: GadgetVariant
    strings: StringSet
    index: GadgetIndex
    roles: RoleTable

    def base_length(self):
        """
        Length of the superstring built from a satisfying assignment: 5*m2 + C*m3 + 8*n.
        """

        n, m2, m3 = self.instance.counts()
        return 5 * m2 + (16 if self.variant is GadgetVariant.B4 else 22) * m3 + 8 * n

    def stated_base_length(self):
        """
        The same quantity with the circle term 7*n, as stated in the reduction's original accounting.
        """

        n, m2, m3 = self.instance.counts()
        return 5 * m2 + (16 if self.variant is GadgetVariant.B4 else 22) * m3 + 7 * n

    def base_compression(self):
        n, m2, m3 = self.instance.counts()
        return 3 * m2 + (12 if self.variant is GadgetVariant.B4 else 14) * m3 + 4 * n

    def stated_base_compression(self):
        n, m2, m3 = self.instance.counts()
        return 3 * m2 + (12 if self.variant is GadgetVariant.B4 else 14) * m3 + 5 * n

    def expected_letters(self):
        n, m2, m3 = self.instance.counts()
        return 12 * n + 8 * m2 + EQ3_LETTERS[self.variant.value] * m3


def _circle_gadgets(instance, variant, owner):
    """
    Border, circle and matching gadgets of one circle, in a fixed order.
    """

    roles = RoleTable(instance)
    circle = instance.circle_by_owner[owner]
    gadgets = [border_gadget(roles, circle)]
    for position in range(2, circle.length + 1):
        variable = circle.var(position)
        if variant is GadgetVariant.B4 and instance.is_first_contact(variable):
            gadgets.append(replaced_circle_gadget(roles, circle, position, instance.contact_rhs(variable)))
        else:
            gadgets.append(circle_gadget(roles, circle, position))
    for i, j in circle.matching:
        gadgets.append(matching_gadget(circle, i, j))
    return owner, gadgets


def reduce(instance, variant, threads=1):
    """
    Build the string set of a Hybrid instance, with its gadget index.

    Totals are checked by recount against 12n + 8m2 + 36m3 (A6) or 12n + 8m2 + 28m3 (B4), together with the maximal
    orbit size and substring-freeness.

    :param hybrid_model.HybridInstance instance: the Hybrid instance
    :param GadgetVariant variant: gadget variant
    :param int threads: worker processes used to build the circle gadgets
    :return Reduction: strings, gadget index and letter roles
    """

    variant = variant if isinstance(variant, GadgetVariant) else GadgetVariant.from_name(variant)
    roles = RoleTable(instance)
    owners = [circle.owner for circle in instance.circles]

    per_circle = {}
    if threads > 1 and len(owners) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            future_results = [pool.submit(_circle_gadgets, instance, variant, owner) for owner in owners]
            for future in as_completed(future_results):
                try:
                    owner, gadgets = future.result()
                except Exception as error:
                    logger.error(f'Error raised while building circle gadgets: {error}')
                    logger.error(f'traceback is:\n{traceback.format_exc()}')
                    raise RuntimeError(f'Building circle gadgets failed: {error}') from error
                per_circle[owner] = gadgets
    else:
        for owner in owners:
            per_circle[owner] = _circle_gadgets(instance, variant, owner)[1]

    gadgets = [gadget for owner in owners for gadget in per_circle[owner]]
    gadgets.extend(eq3_gadget(index, equation, variant, roles) for index, equation in enumerate(instance.eq3))

    index = GadgetIndex.from_gadgets(gadgets)
    try:
        strings = StringSet(string for gadget in gadgets for string in gadget.strings)
    except ValueError as error:
        raise RuntimeError(f'Gadget strings are not a valid string set: {error}') from error

    reduction = Reduction(instance, variant, strings, index, roles)
    _check_reduction(reduction)

    return reduction


def _check_reduction(reduction):
    total = reduction.strings.total_letters
    expected = reduction.expected_letters()
    if total != expected:
        raise RuntimeError(f'Letter recount {total} differs from the expected {expected} for variant '
                           f'{reduction.variant}')

    _, max_orbit = orbit_stats(reduction.strings)
    if max_orbit > MAX_ORBIT:
        raise RuntimeError(f'Maximal orbit size {max_orbit} exceeds {MAX_ORBIT}')

    for gadget in reduction.index:
        for name in gadget.alignments:
            for piece, merged in zip(gadget.alignments[name], gadget.pieces(name)):
                _, overlaps = merge_order(gadget.strings, piece)
                if any(overlap == 0 for overlap in overlaps):
                    raise RuntimeError(f'Alignment {name} of gadget {gadget.eq_id} has a zero-overlap join')

    n, m2, m3 = reduction.instance.counts()
    logger.debug(f'Reduction ({reduction.variant}): n={n}, m2={m2}, m3={m3}, {len(reduction.strings)} strings, '
                 f'{total} letters, maximal orbit {max_orbit}')


def write_gidx(path, reduction):
    with open(path, 'w', encoding='utf-8') as gidx_handle:
        gidx_handle.write(f'{GIDX_HEADER}\n')
        for gadget in reduction.index:
            lines = ' '.join(str(index + 1) for index in reduction.index.global_indices(gadget.eq_id))
            gidx_handle.write(f'gadget {gadget.eq_id} {gadget.kind} {lines}\n')
    return path


def read_gidx(path) -> List[Tuple[str, str, Tuple[int, ...]]]:
    """
    Read a "gidx v1" file as (eq_id, kind, 0-based string indices) entries.
    """

    entries = []
    header_seen = False
    with open(path, 'r', encoding='utf-8') as gidx_handle:
        for line_number, line in enumerate(gidx_handle, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if not header_seen:
                if line != GIDX_HEADER:
                    raise ValueError(f'{path}:{line_number}: expected header "{GIDX_HEADER}", found "{line}"')
                header_seen = True
                continue
            fields = line.split()
            if fields[0] != 'gadget' or len(fields) < 4 or fields[2] not in GADGET_KINDS \
                    or not all(field.isdigit() for field in fields[3:]):
                raise ValueError(f'{path}:{line_number}: expected "gadget <eq-id> <kind> <line numbers...>"')
            entries.append((fields[1], fields[2], tuple(int(field) - 1 for field in fields[3:])))

    if not header_seen:
        raise ValueError(f'{path}: empty file, expected header "{GIDX_HEADER}"')
    return entries


def check_gidx(reduction, entries):
    """
    Raise ValueError unless the gidx entries describe exactly the gadgets of the reduction.
    """

    expected = [(gadget.eq_id, gadget.kind, reduction.index.global_indices(gadget.eq_id))
                for gadget in reduction.index]
    if list(entries) != expected:
        raise ValueError('Gadget index does not match the reduction rebuilt from the Hybrid instance')