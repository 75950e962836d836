#!/usr/bin/env python

"""
End-to-end check of the reduction on one E3-LIN instance:

    E3-LIN -> Hybrid -> string set -> s_phi (forward) -> [solver superstring] -> normalize -> psi (backward)

Every stage adds its formula checks to one run report; any failed check ends the run with status 3.
"""

import sys
import time
import textwrap

from scsgap import utils
from scsgap import hybrid_model
from scsgap import gadgets
from scsgap import forward_map
from scsgap import backward_map
from scsgap import solvers
from scsgap.forward_superstring import add_forward_checks, assignment_for
from scsgap.assignment_from_superstring import add_backward_checks, read_superstring
from scsgap.reduce_instance import add_reduction_checks
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport


def _other_variant(variant):
    return gadgets.GadgetVariant.A6 if variant is gadgets.GadgetVariant.B4 else gadgets.GadgetVariant.B4


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('verify_reduction', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> VERIFYING REDUCTION PIPELINE <======\n')

    report = RunReport('verify')

    # Hybrid instance:
    e3 = utils.load_input(hybrid_model.read_e3, args.e3_file, logger=logger)
    start = time.perf_counter()
    try:
        instance = hybrid_model.build_hybrid(e3,
                                             matching_strategy=args.matching,
                                             allow_any_occurrence=args.allow_any_occurrence)
        variant = gadgets.GadgetVariant.from_name(args.variant)
    except ValueError as error:
        utils.exit_on_value_error(error, logger=logger)
    report.timed('hybrid', start)
    report.check_equal('m3', 'number of E3-LIN equations', instance.counts()[2], len(e3.equations))

    # String set, plus the letter difference to the other gadget variant:
    start = time.perf_counter()
    try:
        reduction = gadgets.reduce(instance, variant, threads=args.threads)
        other = gadgets.reduce(instance, _other_variant(variant), threads=args.threads)
    except RuntimeError as error:
        logger.error(f'{"[ERROR]:":10} Reduction failed: {error}')
        sys.exit(1)
    report.timed('reduce', start)
    add_reduction_checks(report, reduction)
    b4, a6 = (reduction, other) if variant is gadgets.GadgetVariant.B4 else (other, reduction)
    report.check_equal('variant_difference', '||S_A6|| - ||S_B4|| = 8m3',
                       a6.strings.total_letters - b4.strings.total_letters, 8 * instance.counts()[2])
    logger.info(f'{"[INFO]:":10} Reduction ({variant}): {len(reduction.strings)} strings, '
                f'{reduction.strings.total_letters} letters')

    # Forward map:
    phi = assignment_for(args, instance, logger=logger)
    start = time.perf_counter()
    try:
        s_phi = forward_map.build_superstring(reduction, phi)
    except RuntimeError as error:
        logger.error(f'{"[ERROR]:":10} {error}')
        sys.exit(1)
    forward_check = forward_map.check_forward(reduction, phi, s_phi)
    report.timed('forward', start)
    add_forward_checks(report, forward_check)
    logger.info(f'{"[INFO]:":10} forward: {forward_check.report_line()}')

    # Superstring to read back: a given file, a solver result or s_phi itself:
    start = time.perf_counter()
    if args.superstring:
        superstring = read_superstring(args.superstring, reduction, logger=logger)
        source = args.superstring
    elif args.algo:
        try:
            superstring = solvers.solve(reduction.strings, algorithm=args.algo).superstring
        except ValueError as error:
            utils.exit_on_value_error(error, logger=logger)
        source = args.algo
    else:
        superstring = s_phi
        source = 's_phi'
    report.timed('superstring', start)
    report.results['superstring_source'] = source

    # Backward map:
    start = time.perf_counter()
    try:
        ns = backward_map.normalize(superstring, reduction)
    except RuntimeError as error:
        logger.error(f'{"[ERROR]:":10} {error}')
        sys.exit(1)
    psi = backward_map.extract_assignment(ns, reduction, polish_flips=args.polish)
    report.timed('backward', start)
    roundtrip = add_backward_checks(report, reduction, superstring, ns, psi)
    if source == 's_phi':
        report.check_at_most('roundtrip_unsat', 'unsat(psi) <= unsat(phi) on s_phi', roundtrip.unsat,
                             forward_check.unsat)
    logger.info(f'{"[INFO]:":10} backward: {roundtrip.report_line()}')

    report_path = report.write(report_directory)
    fill = textwrap.fill(f'{"[INFO]:":10} {len(report.checks)} checks, all passed: {report.passed}. Report written '
                         f'to {report_path}', width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.info(fill)

    if not report.passed:
        for check in report.failed:
            logger.error(f'{"[ERROR]:":10} {check.line()}')
        sys.exit(BOUND_FAILURE_EXIT)
