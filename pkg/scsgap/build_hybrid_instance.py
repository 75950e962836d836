#!/usr/bin/env python

"""
Builds the Hybrid instance (circles, matchings and contact equations) of an E3-LIN instance.
"""

import sys
import textwrap

from scsgap import utils
from scsgap import hybrid_model
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('build_hybrid_instance', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> BUILDING HYBRID INSTANCE <======\n')

    e3 = utils.load_input(hybrid_model.read_e3, args.e3_file, logger=logger)
    try:
        instance = hybrid_model.build_hybrid(e3,
                                             matching_strategy=args.matching,
                                             allow_any_occurrence=args.allow_any_occurrence)
    except ValueError as error:
        utils.exit_on_value_error(error, logger=logger)

    hybrid_model.write_hybrid(args.output, instance)

    n, m2, m3 = instance.counts()
    report = RunReport('hybrid')
    report.stats.update({'n': n, 'm2': m2, 'm3': m3})
    report.results.update({'matching': args.matching, 'output': args.output})
    two_variable = sum(equation.kind != 'eq3' for equation in instance.equations)
    report.check_equal('m2', 'sum over circles of (7*t_x + |M_x|)', two_variable, m2)
    report.check_equal('m3', 'number of E3-LIN equations', m3, len(e3.equations))
    report.write(report_directory)

    fill = textwrap.fill(f'{"[INFO]:":10} Hybrid instance with n={n}, m2={m2}, m3={m3} written to {args.output}',
                         width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.info(fill)

    if not report.passed:
        logger.error(f'{"[ERROR]:":10} Equation counts do not match the instance!')
        sys.exit(BOUND_FAILURE_EXIT)
