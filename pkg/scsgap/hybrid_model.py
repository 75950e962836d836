#!/usr/bin/env python

"""
Model, generate and evaluate Hybrid-problem instances.

An E3-LIN instance (three-variable XOR equations, every variable occurring three times) is turned into a Hybrid
instance: each variable x becomes a circle of 7*t_x copies x.1 .. x.(7t_x), where t_x is the number of occurrences
of x. Positions divisible by 7 are contact variables (one per occurrence, each joined to one three-variable equation);
the remaining checker variables are paired by a perfect matching. The equations are:

    circle:    x.p + x.(p+1) = 0     for p in 1 .. 7t_x - 1
    border:    x.1 + x.(7t_x) = 0
    matching:  x.i + x.j = 0         for {i, j} in the matching of x
    eq3:       x.a + y.b + z.c = rhs (one per equation of the E3-LIN instance)

File formats:

    e3lin v1            hybrid v1
    eq x y z 0          circle x 21
    eq x y z 1          match 1 2
                        ...
                        eq3 x.7 y.7 z.7 0
"""

import logging
import random
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Tuple

logger = logging.getLogger(__name__)

CIRCLE_BLOCK = 7
OCCURRENCES = 3
MATCHING_STRATEGIES = ('adjacent', 'shifted')
E3_TEMPLATES = ('triple', 'disjoint', 'random')

E3_HEADER = 'e3lin v1'
HYBRID_HEADER = 'hybrid v1'


def _check_name(name):
    if not name or any(character in name for character in '.:#') or any(character.isspace() for character in name):
        raise ValueError(f'Invalid variable name "{name}": names must be non-empty and free of ".", ":", "#" and '
                         f'whitespace')


def _check_bit(value, what='rhs'):
    if value not in (0, 1):
        raise ValueError(f'{what} must be 0 or 1, got {value!r}')


def var_id(owner, position):
    return f'{owner}.{position}'


def split_var_id(variable):
    """
    Split a Hybrid variable id "x.7" into ('x', 7).
    """

    owner, _, position = variable.rpartition('.')
    if not owner or not position.isdigit():
        raise ValueError(f'Malformed Hybrid variable id "{variable}"')
    return owner, int(position)


########################################################################################################################
# E3-LIN instances
########################################################################################################################

class Eq3(NamedTuple):
    a: str
    b: str
    c: str
    rhs: int


@dataclass(frozen=True)
class E3LinInstance:
    """
    Three-variable XOR equations with unnegated variables; negations are folded into rhs.
    """
    equations: Tuple[Eq3, ...]

    @cached_property
    def variables(self):
        ordered = {}
        for equation in self.equations:
            for name in equation[:3]:
                ordered.setdefault(name, None)
        return tuple(ordered)

    def occurrences(self):
        return Counter(name for equation in self.equations for name in equation[:3])

    def validate(self, allow_any_occurrence=False):
        for index, equation in enumerate(self.equations, start=1):
            for name in equation[:3]:
                _check_name(name)
            _check_bit(equation.rhs)
            if len(set(equation[:3])) != 3:
                raise ValueError(f'Equation {index} names a variable more than once: {" + ".join(equation[:3])}')

        if not allow_any_occurrence:
            wrong = {name: count for name, count in self.occurrences().items() if count != OCCURRENCES}
            if wrong:
                listed = ', '.join(f'{name} ({count}x)' for name, count in sorted(wrong.items()))
                raise ValueError(f'Every variable must occur exactly {OCCURRENCES} times; offending variables: '
                                 f'{listed}')


def generate_e3(template='triple', copies=1, seed=None, variables=6):
    """
    Generate an E3-LIN instance from a template, replicated `copies` times with fresh variable names.

    triple:   x+y+z=0 three times (three variables, three occurrences each)
    disjoint: a+b+c=0 and d+e+f=0 (six variables, one occurrence each; needs the occurrence override)
    random:   `variables` variables, three occurrences each, shuffled into equations without repeated variables,
              random rhs

    :param str template: one of E3_TEMPLATES
    :param int copies: number of disjoint copies
    :param int seed: seed for the random template
    :param int variables: number of variables per copy of the random template
    :return E3LinInstance: the generated instance
    """

    if copies < 1:
        raise ValueError(f'copies must be at least 1, got {copies}')
    if template not in E3_TEMPLATES:
        raise ValueError(f'Unknown template "{template}"; choose from {", ".join(E3_TEMPLATES)}')

    rng = random.Random(seed)
    equations = []
    for copy_number in range(1, copies + 1):
        if template == 'triple':
            base = [('x', 'y', 'z', 0)] * 3
        elif template == 'disjoint':
            base = [('a', 'b', 'c', 0), ('d', 'e', 'f', 0)]
        else:
            base = _random_base(rng, variables)

        for a, b, c, rhs in base:
            equations.append(Eq3(f'{a}_{copy_number}', f'{b}_{copy_number}', f'{c}_{copy_number}', rhs))

    return E3LinInstance(tuple(equations))


def _random_base(rng, variables, attempts=1000):
    if variables < 3:
        raise ValueError(f'The random template needs at least 3 variables, got {variables}')

    names = [f'v{index}' for index in range(1, variables + 1)]
    slots = [name for name in names for _ in range(OCCURRENCES)]
    for _ in range(attempts):
        rng.shuffle(slots)
        triples = [slots[start:start + 3] for start in range(0, len(slots), 3)]
        if all(len(set(triple)) == 3 for triple in triples):
            return [(*triple, rng.randint(0, 1)) for triple in triples]

    raise ValueError(f'Could not place {variables} variables into equations without repeats after {attempts} '
                     f'attempts')


def write_e3(path, e3):
    with open(path, 'w', encoding='utf-8') as e3_handle:
        e3_handle.write(f'{E3_HEADER}\n')
        for equation in e3.equations:
            e3_handle.write(f'eq {equation.a} {equation.b} {equation.c} {equation.rhs}\n')
    return path


def read_e3(path):
    equations = []
    for line_number, fields in _data_lines(path, E3_HEADER):
        if fields[0] != 'eq' or len(fields) != 5:
            raise ValueError(f'{path}:{line_number}: expected "eq <a> <b> <c> <rhs>"')
        equations.append(Eq3(fields[1], fields[2], fields[3], _parse_bit(fields[4], path, line_number)))
    return E3LinInstance(tuple(equations))


########################################################################################################################
# Hybrid instances
########################################################################################################################

class HybridEq3(NamedTuple):
    x: str
    y: str
    z: str
    rhs: int


class Equation(NamedTuple):
    eq_id: str
    kind: str
    variables: Tuple[str, ...]
    rhs: int


@dataclass(frozen=True)
class Circle:
    """
    The ring of copies of one E3-LIN variable, with the perfect matching on its checker positions.
    """
    owner: str
    length: int
    matching: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        _check_name(self.owner)
        if self.length < CIRCLE_BLOCK or self.length % CIRCLE_BLOCK:
            raise ValueError(f'Circle {self.owner}: length must be a positive multiple of {CIRCLE_BLOCK}, got '
                             f'{self.length}')

        covered = Counter(position for pair in self.matching for position in pair)
        if any(count != 1 for count in covered.values()) or set(covered) != set(self.checkers):
            raise ValueError(f'Circle {self.owner}: matching must cover every checker position exactly once')
        if any(i >= j for i, j in self.matching):
            raise ValueError(f'Circle {self.owner}: matching pairs must be written as (i, j) with i < j')

    @property
    def t(self):
        return self.length // CIRCLE_BLOCK

    @property
    def contacts(self):
        return tuple(range(CIRCLE_BLOCK, self.length + 1, CIRCLE_BLOCK))

    @property
    def checkers(self):
        return tuple(position for position in range(1, self.length + 1) if position % CIRCLE_BLOCK)

    @cached_property
    def partners(self) -> Dict[int, int]:
        partner_of = {}
        for i, j in self.matching:
            partner_of[i] = j
            partner_of[j] = i
        return partner_of

    def var(self, position):
        if not 1 <= position <= self.length:
            raise ValueError(f'Position {position} outside circle {self.owner} of length {self.length}')
        return var_id(self.owner, position)

    def successor(self, position):
        return position % self.length + 1

    @property
    def variables(self):
        return tuple(self.var(position) for position in range(1, self.length + 1))


def build_matching(length, strategy='adjacent'):
    """
    Deterministic perfect matching on the checker positions of a circle of the given length.

    adjacent: pair consecutive checker positions, skipping contacts
    shifted:  pair the k-th checker with the (k + half)-th checker
    """

    checkers = [position for position in range(1, length + 1) if position % CIRCLE_BLOCK]
    if strategy == 'adjacent':
        return tuple((checkers[k], checkers[k + 1]) for k in range(0, len(checkers), 2))
    elif strategy == 'shifted':
        half = len(checkers) // 2
        return tuple((checkers[k], checkers[k + half]) for k in range(half))
    raise ValueError(f'Unknown matching strategy "{strategy}"; choose from {", ".join(MATCHING_STRATEGIES)}')


@dataclass(frozen=True)
class HybridInstance:
    circles: Tuple[Circle, ...]
    eq3: Tuple[HybridEq3, ...]

    def __post_init__(self):
        owners = [circle.owner for circle in self.circles]
        if len(set(owners)) != len(owners):
            raise ValueError('Circle names must be unique')

        contacts = {circle.var(position) for circle in self.circles for position in circle.contacts}
        used = Counter()
        for index, equation in enumerate(self.eq3, start=1):
            _check_bit(equation.rhs)
            for variable in equation[:3]:
                if variable not in contacts:
                    raise ValueError(f'Three-variable equation {index} references {variable}, which is not a '
                                     f'contact variable')
                used[variable] += 1

        unused = sorted(contacts - set(used))
        repeated = sorted(variable for variable, count in used.items() if count > 1)
        if unused or repeated:
            raise ValueError(f'Every contact must appear in exactly one three-variable equation; unused: '
                             f'{", ".join(unused) or "none"}; repeated: {", ".join(repeated) or "none"}')

    @cached_property
    def circle_by_owner(self) -> Dict[str, Circle]:
        return {circle.owner: circle for circle in self.circles}

    @cached_property
    def contact_equation(self) -> Dict[str, Tuple[int, int]]:
        """
        Contact variable -> (index of its three-variable equation, slot 0/1/2 within it).
        """
        return {variable: (index, slot)
                for index, equation in enumerate(self.eq3)
                for slot, variable in enumerate(equation[:3])}

    @cached_property
    def variables(self) -> Tuple[str, ...]:
        return tuple(variable for circle in self.circles for variable in circle.variables)

    def circle_of(self, variable) -> Tuple[Circle, int]:
        owner, position = split_var_id(variable)
        return self.circle_by_owner[owner], position

    def is_contact(self, variable):
        return variable in self.contact_equation

    def is_first_contact(self, variable):
        """
        True for the contact in the x slot of its three-variable equation.
        """
        return self.contact_equation.get(variable, (None, None))[1] == 0

    def contact_rhs(self, variable):
        return self.eq3[self.contact_equation[variable][0]].rhs

    @cached_property
    def equations(self) -> Tuple[Equation, ...]:
        equations = []
        for circle in self.circles:
            owner = circle.owner
            equations.append(Equation(f'{owner}:b', 'border', (circle.var(1), circle.var(circle.length)), 0))
            for position in range(1, circle.length):
                equations.append(Equation(f'{owner}:c{position + 1}', 'circle',
                                          (circle.var(position), circle.var(position + 1)), 0))
            for i, j in circle.matching:
                equations.append(Equation(f'{owner}:m{i}-{j}', 'matching', (circle.var(i), circle.var(j)), 0))
        for index, equation in enumerate(self.eq3):
            equations.append(Equation(f'e{index}', 'eq3', tuple(equation[:3]), equation.rhs))
        return tuple(equations)

    @cached_property
    def equations_of(self) -> Dict[str, List[int]]:
        index = {variable: [] for variable in self.variables}
        for position, equation in enumerate(self.equations):
            for variable in equation.variables:
                index[variable].append(position)
        return index

    def counts(self) -> Tuple[int, int, int]:
        """
        (n, m2, m3): number of circles, two-variable equations and three-variable equations.
        """
        n = len(self.circles)
        m2 = sum(circle.length + len(circle.matching) for circle in self.circles)
        return n, m2, len(self.eq3)


def build_hybrid(e3, matching_strategy='adjacent', allow_any_occurrence=False):
    """
    Build the Hybrid instance of an E3-LIN instance.

    The nu-th occurrence of variable x (in equation order) is bound to contact x.(7*nu).

    :param E3LinInstance e3: the source equations
    :param str matching_strategy: one of MATCHING_STRATEGIES
    :param bool allow_any_occurrence: accept variables occurring other than three times (t_x = occurrence count)
    :return HybridInstance: the Hybrid instance
    """

    if matching_strategy not in MATCHING_STRATEGIES:
        raise ValueError(f'Unknown matching strategy "{matching_strategy}"; choose from '
                         f'{", ".join(MATCHING_STRATEGIES)}')

    e3.validate(allow_any_occurrence=allow_any_occurrence)
    occurrence_counts = e3.occurrences()

    circles = []
    for name in e3.variables:
        length = CIRCLE_BLOCK * occurrence_counts[name]
        circles.append(Circle(name, length, build_matching(length, matching_strategy)))

    seen = Counter()
    eq3 = []
    for equation in e3.equations:
        contacts = []
        for name in equation[:3]:
            seen[name] += 1
            contacts.append(var_id(name, CIRCLE_BLOCK * seen[name]))
        eq3.append(HybridEq3(*contacts, equation.rhs))

    instance = HybridInstance(tuple(circles), tuple(eq3))
    n, m2, m3 = instance.counts()
    logger.debug(f'Built Hybrid instance with n={n}, m2={m2}, m3={m3} ({matching_strategy} matching)')

    return instance


def write_hybrid(path, instance):
    with open(path, 'w', encoding='utf-8') as hybrid_handle:
        hybrid_handle.write(f'{HYBRID_HEADER}\n')
        for circle in instance.circles:
            hybrid_handle.write(f'circle {circle.owner} {circle.length}\n')
            for i, j in circle.matching:
                hybrid_handle.write(f'match {i} {j}\n')
        for equation in instance.eq3:
            hybrid_handle.write(f'eq3 {equation.x} {equation.y} {equation.z} {equation.rhs}\n')
    return path


def read_hybrid(path):
    circle_specs = []
    eq3 = []
    for line_number, fields in _data_lines(path, HYBRID_HEADER):
        keyword = fields[0]
        if keyword == 'circle' and len(fields) == 3 and fields[2].isdigit():
            circle_specs.append((fields[1], int(fields[2]), []))
        elif keyword == 'match' and len(fields) == 3 and fields[1].isdigit() and fields[2].isdigit():
            if not circle_specs:
                raise ValueError(f'{path}:{line_number}: "match" line before any "circle" line')
            i, j = sorted((int(fields[1]), int(fields[2])))
            circle_specs[-1][2].append((i, j))
        elif keyword == 'eq3' and len(fields) == 5:
            eq3.append(HybridEq3(fields[1], fields[2], fields[3], _parse_bit(fields[4], path, line_number)))
        else:
            raise ValueError(f'{path}:{line_number}: unrecognised line "{" ".join(fields)}"')

    circles = tuple(Circle(owner, length, tuple(matching)) for owner, length, matching in circle_specs)
    return HybridInstance(circles, tuple(eq3))


########################################################################################################################
# Assignments
########################################################################################################################

class Assignment(Mapping):
    """
    Map from Hybrid variable id to bit.
    """

    def __init__(self, bits):
        self._bits = {}
        for variable, bit in dict(bits).items():
            _check_bit(bit, what=f'bit of {variable}')
            self._bits[variable] = bit

    def __getitem__(self, variable):
        return self._bits[variable]

    def __iter__(self):
        return iter(self._bits)

    def __len__(self):
        return len(self._bits)

    def __repr__(self):
        return f'Assignment({len(self._bits)} variables, {sum(self._bits.values())} ones)'

    def flipped(self, *variables):
        bits = dict(self._bits)
        for variable in variables:
            bits[variable] = 1 - bits[variable]
        return Assignment(bits)

    @classmethod
    def zeros(cls, instance):
        return cls({variable: 0 for variable in instance.variables})

    @classmethod
    def random(cls, instance, rng):
        return cls({variable: rng.randint(0, 1) for variable in instance.variables})


def _check_total(instance, phi):
    missing = [variable for variable in instance.variables if variable not in phi]
    if missing:
        shown = ', '.join(missing[:5])
        raise ValueError(f'Assignment is missing {len(missing)} variable(s), e.g. {shown}')


def is_satisfied(equation, phi):
    value = 0
    for variable in equation.variables:
        value ^= phi[variable]
    return value == equation.rhs


def unsat_equations(instance, phi):
    _check_total(instance, phi)
    return [equation for equation in instance.equations if not is_satisfied(equation, phi)]


def unsat_count(instance, phi):
    """
    Number of equations of all four types left unsatisfied by phi.
    """

    return len(unsat_equations(instance, phi))


def write_assignment(path, phi):
    with open(path, 'w', encoding='utf-8') as assignment_handle:
        for variable, bit in phi.items():
            assignment_handle.write(f'var={variable} bit={bit}\n')
    return path


def read_assignment(path):
    bits = {}
    with open(path, 'r', encoding='utf-8') as assignment_handle:
        for line_number, line in enumerate(assignment_handle, start=1):
            line = line.strip()
            if not line or line.startswith('#') or not line.startswith('var='):
                continue
            fields = dict(field.split('=', 1) for field in line.split() if '=' in field)
            if 'var' not in fields or 'bit' not in fields:
                raise ValueError(f'{path}:{line_number}: expected "var=<id> bit=<b>"')
            bits[fields['var']] = _parse_bit(fields['bit'], path, line_number)
    return Assignment(bits)


########################################################################################################################
# Shared parsing helpers
########################################################################################################################

def _parse_bit(text, path, line_number):
    if text not in ('0', '1'):
        raise ValueError(f'{path}:{line_number}: expected a bit, found "{text}"')
    return int(text)


def _data_lines(path, header):
    header_seen = False
    with open(path, 'r', encoding='utf-8') as input_handle:
        for line_number, line in enumerate(input_handle, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if not header_seen:
                if line != header:
                    raise ValueError(f'{path}:{line_number}: expected header "{header}", found "{line}"')
                header_seen = True
                continue
            yield line_number, line.split()

    if not header_seen:
        raise ValueError(f'{path}: empty file, expected header "{header}"')
