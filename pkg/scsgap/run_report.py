#!/usr/bin/env python

"""
Line-oriented key=value run reports.
"""

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Union

from scsgap.superstring_core import orbit_stats

BOUND_FAILURE_EXIT = 3


@dataclass
class BoundCheck:
    name: str
    formula: str
    value: Union[int, Fraction]
    bound: Union[int, Fraction]
    passed: bool

    def line(self):
        return f'check={self.name} formula="{self.formula}" value={self.value} bound={self.bound} passed={self.passed}'


@dataclass
class RunReport:
    """
    Instance statistics, per-stage results, formula checks and timings of one subcommand run.
    """
    command: str
    stats: Dict[str, object] = field(default_factory=dict)
    results: Dict[str, object] = field(default_factory=dict)
    checks: List[BoundCheck] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    def add_instance_stats(self, reduction):
        n, m2, m3 = reduction.instance.counts()
        _, max_orbit = orbit_stats(reduction.strings)
        self.stats.update({'n': n,
                           'm2': m2,
                           'm3': m3,
                           'variant': str(reduction.variant),
                           'strings': len(reduction.strings),
                           'alphabet_size': len(reduction.strings.alphabet()),
                           'total_letters': reduction.strings.total_letters,
                           'max_orbit': max_orbit,
                           'max_string_length': reduction.strings.max_length})

    def check_at_most(self, name, formula, value, bound):
        check = BoundCheck(name, formula, int(value), int(bound), value <= bound)
        self.checks.append(check)
        return check

    def check_at_least(self, name, formula, value, bound):
        check = BoundCheck(name, formula, int(value), int(bound), value >= bound)
        self.checks.append(check)
        return check

    def check_equal(self, name, formula, value, expected):
        # Exact values (ints or Fractions) are reported unconverted.
        check = BoundCheck(name, formula, value, expected, value == expected)
        self.checks.append(check)
        return check

    def timed(self, stage, start):
        self.timings[stage] = time.perf_counter() - start

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failed(self):
        return [check for check in self.checks if not check.passed]

    def lines(self):
        lines = [f'command={self.command}']
        lines.extend(f'{key}={value}' for key, value in self.stats.items())
        lines.extend(f'{key}={value}' for key, value in self.results.items())
        lines.extend(check.line() for check in self.checks)
        lines.extend(f'time_{stage}={seconds:.3f}' for stage, seconds in self.timings.items())
        lines.append(f'all_checks_passed={self.passed}')
        return lines

    def write(self, report_directory):
        path = os.path.join(report_directory, f'{self.command}_report.txt')
        with open(path, 'w', encoding='utf-8') as report_handle:
            report_handle.write('\n'.join(self.lines()) + '\n')
        return path
