#!/usr/bin/env python

"""
Solves a Shortest Superstring instance with the greedy, exact or brute-force solver.
"""

import sys
import time
import textwrap

from scsgap import utils
from scsgap import solvers
from scsgap import atsp_bridge
from scsgap.superstring_core import is_superstring, read_sset, write_sset
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('solve_superstring', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> SOLVING SHORTEST SUPERSTRING ({args.algo.upper()}) <======\n')

    strings = utils.load_input(read_sset, args.sset_file, logger=logger)

    start = time.perf_counter()
    try:
        result = solvers.solve(strings, algorithm=args.algo)
    except ValueError as error:
        utils.exit_on_value_error(error, logger=logger)

    report = RunReport('solve')
    report.timed('solve', start)
    report.stats.update({'strings': len(strings),
                         'total_letters': strings.total_letters,
                         'max_string_length': strings.max_length})
    report.results.update({'algorithm': args.algo,
                           'length': result.length,
                           'compression': result.compression})
    report.check_equal('superstring', 'every input string occurs in the output',
                       int(is_superstring(result.superstring, strings)), 1)
    report.check_equal('compression', '||S|| - |s|', result.compression, strings.total_letters - result.length)

    write_sset(args.output, [result.superstring], comment=f'len={result.length} comp={result.compression}')
    report.results['output'] = args.output

    if args.digraph:
        atsp_bridge.write_digraph(args.digraph, atsp_bridge.overlap_graph(strings))
        report.results['digraph'] = args.digraph

    report.write(report_directory)

    fill = textwrap.fill(f'{"[INFO]:":10} len={result.length} comp={result.compression}; superstring written to '
                         f'{args.output}', width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.info(fill)

    if not report.passed:
        for check in report.failed:
            logger.error(f'{"[ERROR]:":10} {check.line()}')
        sys.exit(BOUND_FAILURE_EXIT)
