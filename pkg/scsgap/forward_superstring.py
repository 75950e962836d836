#!/usr/bin/env python

"""
Builds the superstring s_phi of a reduction from an assignment and checks |s_phi| <= 5m2 + Cm3 + 8n + unsat(phi).
"""

import random
import sys
import time
import textwrap

from scsgap import utils
from scsgap import hybrid_model
from scsgap import forward_map
from scsgap.reduce_instance import load_reduction
from scsgap.superstring_core import write_sset
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport


def assignment_for(args, instance, logger=None):
    """
    The assignment named on the command line: an assignment file, a seeded random assignment, or all zeros.

    :param args: argparse namespace with options assignment, random_assignment and seed
    :param hybrid_model.HybridInstance instance: the Hybrid instance
    :param logging.Logger logger: a logger object
    :return hybrid_model.Assignment: a total assignment
    """

    if args.assignment:
        phi = utils.load_input(hybrid_model.read_assignment, args.assignment, logger=logger)
        missing = [variable for variable in instance.variables if variable not in phi]
        if missing:
            utils.exit_on_value_error(ValueError(f'Assignment file {args.assignment} does not set {len(missing)} '
                                                 f'variable(s), e.g. {", ".join(missing[:5])}'), logger=logger)
        return hybrid_model.Assignment({variable: phi[variable] for variable in instance.variables})

    if args.random_assignment:
        logger.info(f'{"[INFO]:":10} Using a random assignment with seed {args.seed}')
        return hybrid_model.Assignment.random(instance, random.Random(args.seed))

    logger.info(f'{"[INFO]:":10} Using the all-zero assignment')
    return hybrid_model.Assignment.zeros(instance)


def add_forward_checks(report, check):
    report.results.update({'phi_unsat': check.unsat,
                           'forward_length': check.length,
                           'forward_stated_bound': check.stated_bound})
    report.check_at_most('forward_length', '5m2 + Cm3 + 8n + unsat(phi)', check.length, check.bound)
    report.check_at_least('forward_compression', "3m2 + C'm3 + 4n - unsat(phi)", check.compression,
                          check.compression_bound)


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('forward_superstring', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> BUILDING SUPERSTRING FROM ASSIGNMENT <======\n')

    reduction = load_reduction(args.hybrid_file, args.variant, threads=args.threads, logger=logger)
    phi = assignment_for(args, reduction.instance, logger=logger)

    start = time.perf_counter()
    try:
        superstring = forward_map.build_superstring(reduction, phi)
    except RuntimeError as error:
        logger.error(f'{"[ERROR]:":10} {error}')
        sys.exit(1)
    check = forward_map.check_forward(reduction, phi, superstring)

    report = RunReport('forward')
    report.timed('forward', start)
    report.add_instance_stats(reduction)
    add_forward_checks(report, check)

    write_sset(args.output, [superstring], comment=check.report_line())
    report.results['output'] = args.output
    report.write(report_directory)

    logger.info(f'{"[INFO]:":10} {check.report_line()}')
    fill = textwrap.fill(f'{"[INFO]:":10} Superstring of {check.length} letters written to {args.output} (stated '
                         f'bound {check.stated_bound})', width=90, subsequent_indent=' ' * 11,
                         break_on_hyphens=False)
    logger.info(fill)

    if not check.ok:
        logger.error(f'{"[ERROR]:":10} Superstring exceeds the length bound!')
        sys.exit(BOUND_FAILURE_EXIT)
