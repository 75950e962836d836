#!/usr/bin/env python

"""
Normalizes a superstring of a reduction and reads an assignment psi of the Hybrid instance from it.

The assignment file holds one "var=<id> bit=<b>" line per variable followed by "unsat=<u> len=<L> bound_ok=<bool>",
where bound_ok states unsat(psi) <= |s| - (5m2 + Cm3 + 8n).
"""

import sys
import time

from scsgap import utils
from scsgap import gadgets
from scsgap import backward_map
from scsgap.hybrid_model import unsat_count, write_assignment
from scsgap.reduce_instance import load_reduction
from scsgap.superstring_core import is_superstring, read_sset_strings
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport


def read_superstring(path, reduction, logger=None):
    """
    The single string of an "sset v1" file; exits with status 1 unless it is a superstring of the reduction.
    """

    strings = utils.load_input(read_sset_strings, path, logger=logger)
    if len(strings) != 1:
        utils.exit_on_value_error(ValueError(f'{path} holds {len(strings)} strings, expected exactly one '
                                             f'superstring'), logger=logger)
    superstring = strings[0]
    if not is_superstring(superstring, reduction.strings):
        utils.exit_on_value_error(ValueError(f'The string in {path} is not a superstring of the reduction'),
                                  logger=logger)
    return superstring


def _majority_disagreements(ns, reduction):
    recorded = backward_map.circle_bits(ns, reduction)
    majority = backward_map.majority_bits(ns.string, reduction)
    return sum(recorded[variable] != majority[variable] for variable in recorded)


def add_backward_checks(report, reduction, superstring, ns, psi):
    check = backward_map.check_roundtrip(reduction, superstring, psi)
    report.results.update({'superstring_length': len(superstring),
                           'normalized_length': len(ns.string),
                           'majority_disagreements': _majority_disagreements(ns, reduction),
                           'psi_unsat': check.unsat,
                           'stated_slack': check.stated_slack})
    report.check_at_most('normalized_length', '|normalize(s)| <= |s|', len(ns.string), len(superstring))
    report.check_at_most('psi_unsat', 'unsat(psi) <= |s| - (5m2 + Cm3 + 8n)', check.unsat, check.slack)
    return check


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('assignment_from_superstring', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> EXTRACTING ASSIGNMENT FROM SUPERSTRING <======\n')

    reduction = load_reduction(args.hybrid_file, args.variant, threads=args.threads, logger=logger)
    if args.gidx:
        entries = utils.load_input(gadgets.read_gidx, args.gidx, logger=logger)
        try:
            gadgets.check_gidx(reduction, entries)
        except ValueError as error:
            utils.exit_on_value_error(error, logger=logger)

    superstring = read_superstring(args.superstring, reduction, logger=logger)

    start = time.perf_counter()
    try:
        ns = backward_map.normalize(superstring, reduction)
    except RuntimeError as error:
        logger.error(f'{"[ERROR]:":10} {error}')
        sys.exit(1)
    psi = backward_map.extract_assignment(ns, reduction, polish_flips=args.polish)

    report = RunReport('extract')
    report.timed('extract', start)
    report.add_instance_stats(reduction)
    check = add_backward_checks(report, reduction, superstring, ns, psi)

    write_assignment(args.output, psi)
    with open(args.output, 'a', encoding='utf-8') as assignment_handle:
        assignment_handle.write(f'{check.report_line()}\n')
    report.results['output'] = args.output
    report.write(report_directory)

    logger.info(f'{"[INFO]:":10} {check.report_line()}')
    logger.info(f'{"[INFO]:":10} Assignment with {unsat_count(reduction.instance, psi)} unsatisfied equation(s) '
                f'written to {args.output}')

    if not check.ok:
        logger.error(f'{"[ERROR]:":10} Extracted assignment violates the unsat bound!')
        sys.exit(BOUND_FAILURE_EXIT)
