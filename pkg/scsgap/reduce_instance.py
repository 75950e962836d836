#!/usr/bin/env python

"""
Reduces a Hybrid instance to a Shortest Superstring instance.

Writes the string set ("sset v1") and the gadget index sidecar ("gidx v1") that maps every equation to the lines of
its strings. Optionally writes the overlap graph of the string set as a MAX-ATSP instance ("digraph v1").
"""

import sys
import time
import textwrap

from scsgap import utils
from scsgap import hybrid_model
from scsgap import gadgets
from scsgap import atsp_bridge
from scsgap.superstring_core import write_sset
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport


def load_reduction(hybrid_file, variant, threads=1, logger=None):
    """
    Read a Hybrid instance and reduce it; exits with status 1 on input errors.

    :param str hybrid_file: path to a "hybrid v1" file
    :param str variant: gadget variant name
    :param int threads: worker processes for the circle gadgets
    :param logging.Logger logger: a logger object
    :return gadgets.Reduction: the reduction
    """

    instance = utils.load_input(hybrid_model.read_hybrid, hybrid_file, logger=logger)
    try:
        return gadgets.reduce(instance, gadgets.GadgetVariant.from_name(variant), threads=threads)
    except ValueError as error:
        utils.exit_on_value_error(error, logger=logger)
    except RuntimeError as error:
        logger.error(f'{"[ERROR]:":10} Reduction failed: {error}')
        sys.exit(1)


def add_reduction_checks(report, reduction):
    """
    Letter total, orbit size and string count checks shared by the reduce and verify commands.
    """

    report.add_instance_stats(reduction)
    eq3_letters = gadgets.EQ3_LETTERS[reduction.variant.value]
    report.check_equal('total_letters', f'12n + 8m2 + {eq3_letters}m3', reduction.strings.total_letters,
                       reduction.expected_letters())
    report.check_at_most('max_orbit', 'largest number of strings sharing one letter', report.stats['max_orbit'],
                         gadgets.MAX_ORBIT)
    report.check_equal('gadget_strings', 'strings indexed by the gadget index',
                       sum(len(gadget.strings) for gadget in reduction.index), len(reduction.strings))


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('reduce_instance', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> REDUCING HYBRID INSTANCE TO SHORTEST SUPERSTRING <======\n')

    start = time.perf_counter()
    reduction = load_reduction(args.hybrid_file, args.variant, threads=args.threads, logger=logger)

    report = RunReport('reduce')
    report.timed('reduce', start)
    add_reduction_checks(report, reduction)

    sset_file = f'{args.output_prefix}.sset'
    gidx_file = f'{args.output_prefix}.gidx'
    n, m2, m3 = reduction.instance.counts()
    write_sset(sset_file, reduction.strings,
               comment=f'variant={reduction.variant} n={n} m2={m2} m3={m3} letters={reduction.strings.total_letters}')
    gadgets.write_gidx(gidx_file, reduction)
    report.results.update({'sset': sset_file, 'gidx': gidx_file})

    if args.digraph:
        atsp_bridge.write_digraph(args.digraph, atsp_bridge.overlap_graph(reduction.strings))
        report.results['digraph'] = args.digraph

    report.results.update({'base_length': reduction.base_length(),
                           'stated_base_length': reduction.stated_base_length(),
                           'base_compression': reduction.base_compression(),
                           'stated_base_compression': reduction.stated_base_compression()})
    report.write(report_directory)

    fill = textwrap.fill(f'{"[INFO]:":10} {len(reduction.strings)} strings with {reduction.strings.total_letters} '
                         f'letters written to {sset_file}; gadget index written to {gidx_file}',
                         width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.info(fill)

    if not report.passed:
        for check in report.failed:
            logger.error(f'{"[ERROR]:":10} {check.line()}')
        sys.exit(BOUND_FAILURE_EXIT)
