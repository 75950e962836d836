#!/usr/bin/env python

"""
Exact inapproximability ratios obtained from the reduction, in rational arithmetic.

Every copy of the two-equation E3-LIN gadget becomes six circles with 60 two-variable and 2 three-variable Hybrid
equations. With k copies and a fraction delta of unsatisfiable equations, the ratio between the superstring lengths of
the two sides of the gap is

    (M + 1 - delta) / (M + delta + c*6/k),    M = 5*60 + C*2

where C is 16 (B4) or 22 (A6) and c is the circle coefficient of the length formula.
"""

import sys
import textwrap
from fractions import Fraction

from scsgap import utils
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport

M2_PER_COPY = 60
M3_PER_COPY = 2
N_PER_COPY = 6

STATED_CIRCLE_COEFFICIENT = 7
RECOUNTED_CIRCLE_COEFFICIENT = 8


def _check_parameters(k, delta):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f'k must be a positive integer, got {k!r}')
    if not 0 < delta < 1:
        raise ValueError(f'delta must lie strictly between 0 and 1, got {delta}')


def length_constant(eq3_coefficient=16):
    return 5 * M2_PER_COPY + eq3_coefficient * M3_PER_COPY


def compression_constant(eq3_coefficient=12):
    return 3 * M2_PER_COPY + eq3_coefficient * M3_PER_COPY


def superstring_ratio(k, delta, circle_coefficient=STATED_CIRCLE_COEFFICIENT, eq3_coefficient=16):
    """
    Gap ratio for the shortest superstring problem with k copies.

    :param int k: number of copies
    :param Fraction delta: slack, 0 < delta < 1
    :param int circle_coefficient: coefficient of n in the length formula
    :param int eq3_coefficient: coefficient of m3 in the length formula
    :return Fraction: (M + 1 - delta) / (M + delta + circle_coefficient * 6 / k)
    """

    delta = Fraction(delta)
    _check_parameters(k, delta)
    base = length_constant(eq3_coefficient)
    return (base + 1 - delta) / (base + delta + Fraction(circle_coefficient * N_PER_COPY, k))


def limit_ratio(eq3_coefficient=16):
    base = length_constant(eq3_coefficient)
    return Fraction(base + 1, base)


def compression_ratio(eq3_coefficient=12):
    base = compression_constant(eq3_coefficient)
    return Fraction(base, base - 1)


def gap_table(k, delta):
    """
    All reported ratios, keyed by name.
    """

    delta = Fraction(delta)
    _check_parameters(k, delta)
    return {'superstring_stated': superstring_ratio(k, delta, STATED_CIRCLE_COEFFICIENT),
            'superstring_recounted': superstring_ratio(k, delta, RECOUNTED_CIRCLE_COEFFICIENT),
            'superstring_limit': limit_ratio(16),
            'compression_limit': compression_ratio(12),
            'a6_superstring_limit': limit_ratio(22)}


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('gap_bounds', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> COMPUTING GAP RATIOS <======\n')

    try:
        delta = Fraction(args.delta)
        table = gap_table(args.k, delta)
    except (ValueError, ZeroDivisionError) as error:
        utils.exit_on_value_error(error, logger=logger)

    report = RunReport('bounds')
    report.results.update({'k': args.k, 'delta': delta})
    for name, ratio in table.items():
        report.results[name] = f'{ratio.numerator}/{ratio.denominator}'
        logger.info(f'{"[INFO]:":10} {name:24} {ratio.numerator}/{ratio.denominator} (~{float(ratio):.6f})')

    report.check_equal('superstring_limit', '(5*60+16*2+1)/(5*60+16*2)', table['superstring_limit'],
                       Fraction(333, 332))
    report.check_equal('compression_limit', '(3*60+12*2)/(3*60+12*2-1)', table['compression_limit'],
                       Fraction(204, 203))
    report.check_equal('a6_superstring_limit', '(5*60+22*2+1)/(5*60+22*2)', table['a6_superstring_limit'],
                       Fraction(345, 344))

    report_path = report.write(report_directory)
    fill = textwrap.fill(f'{"[INFO]:":10} Gap ratios written to {report_path}', width=90, subsequent_indent=' ' * 11,
                         break_on_hyphens=False)
    logger.info(fill)

    if not report.passed:
        sys.exit(BOUND_FAILURE_EXIT)
