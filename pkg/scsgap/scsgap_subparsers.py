#!/usr/bin/env python

"""
Contains argument subparsers
"""

from fractions import Fraction

from scsgap.hybrid_model import E3_TEMPLATES, MATCHING_STRATEGIES
from scsgap.solvers import ALGORITHMS

VARIANTS = ('a6', 'b4')


def _add_common_arguments(parser, threads=True):
    """
    Arguments shared by every subcommand.
    """

    parser.add_argument('--seed',
                        type=int,
                        default=1,
                        help='Seed for every random choice made by the subcommand. Default is: %(default)s')
    if threads:
        parser.add_argument('--threads',
                            type=int,
                            default=1,
                            help='Number of worker processes. Default is: %(default)s')
    parser.add_argument('--run_profiler',
                        action='store_true',
                        dest='run_profiler',
                        default=False,
                        help='If supplied, run the subcommand using cProfile. Saves a *.csv file of results')


def _add_hybrid_arguments(parser):
    parser.add_argument('hybrid_file',
                        type=str,
                        help='Hybrid instance in "hybrid v1" format')
    parser.add_argument('--variant',
                        choices=VARIANTS,
                        default='b4',
                        help='Gadget variant for three-variable equations. Default is: %(default)s')


def _add_assignment_arguments(parser):
    parser.add_argument('--assignment',
                        type=str,
                        default=None,
                        help='File with "var=<id> bit=<b>" lines. If neither this nor --random_assignment is given, '
                             'the all-zero assignment is used')
    parser.add_argument('--random_assignment',
                        action='store_true',
                        default=False,
                        help='Use a random assignment drawn with --seed. Default is: %(default)s')


def _add_polish_argument(parser):
    parser.add_argument('--polish',
                        action='store_true',
                        default=False,
                        help='After the constellation rules, apply single-variable flips while they lower the number '
                             'of unsatisfied equations. Default is: %(default)s')


def _add_matching_arguments(parser):
    parser.add_argument('--matching',
                        choices=MATCHING_STRATEGIES,
                        default='adjacent',
                        help='How the checker positions of every circle are paired. Default is: %(default)s')
    parser.add_argument('--allow_any_occurrence',
                        action='store_true',
                        default=False,
                        help='Accept variables that do not occur exactly three times. Default is: %(default)s')


def add_gen_parser(subparsers):
    """
    Parser for gen

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_gen: the subcommand parser
    """

    parser_gen = subparsers.add_parser('gen',
                                       help='Generate a template E3-LIN instance')
    parser_gen.add_argument('--template',
                            choices=E3_TEMPLATES,
                            default='triple',
                            help='Instance template. Default is: %(default)s')
    parser_gen.add_argument('--copies',
                            type=int,
                            default=1,
                            help='Number of disjoint copies of the template. Default is: %(default)s')
    parser_gen.add_argument('--variables',
                            type=int,
                            default=6,
                            help='Variables per copy of the random template. Default is: %(default)s')
    parser_gen.add_argument('--output',
                            type=str,
                            default='instance.e3lin',
                            help='Output file in "e3lin v1" format. Default is: %(default)s')
    _add_common_arguments(parser_gen, threads=False)

    return parser_gen


def add_hybrid_parser(subparsers):
    """
    Parser for hybrid

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_hybrid: the subcommand parser
    """

    parser_hybrid = subparsers.add_parser('hybrid',
                                          help='Build the Hybrid instance of an E3-LIN instance')
    parser_hybrid.add_argument('e3_file',
                               type=str,
                               help='E3-LIN instance in "e3lin v1" format')
    parser_hybrid.add_argument('--output',
                               type=str,
                               default='instance.hybrid',
                               help='Output file in "hybrid v1" format. Default is: %(default)s')
    _add_matching_arguments(parser_hybrid)
    _add_common_arguments(parser_hybrid, threads=False)

    return parser_hybrid


def add_reduce_parser(subparsers):
    """
    Parser for reduce

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_reduce: the subcommand parser
    """

    parser_reduce = subparsers.add_parser('reduce',
                                          help='Reduce a Hybrid instance to a Shortest Superstring instance;\nwrite '
                                               'the string set and its gadget index')
    _add_hybrid_arguments(parser_reduce)
    parser_reduce.add_argument('--output_prefix',
                               type=str,
                               default='reduction',
                               help='Prefix for the <prefix>.sset and <prefix>.gidx output files. Default is: '
                                    '%(default)s')
    parser_reduce.add_argument('--digraph',
                               type=str,
                               default=None,
                               help='If given, also write the overlap graph as a MAX-ATSP instance to this file')
    _add_common_arguments(parser_reduce)

    return parser_reduce


def add_forward_parser(subparsers):
    """
    Parser for forward

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_forward: the subcommand parser
    """

    parser_forward = subparsers.add_parser('forward',
                                           help='Build the superstring of an assignment and check its length bound')
    _add_hybrid_arguments(parser_forward)
    _add_assignment_arguments(parser_forward)
    parser_forward.add_argument('--output',
                                type=str,
                                default='forward.sset',
                                help='Output file holding the superstring. Default is: %(default)s')
    _add_common_arguments(parser_forward)

    return parser_forward


def add_solve_parser(subparsers):
    """
    Parser for solve

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_solve: the subcommand parser
    """

    parser_solve = subparsers.add_parser('solve',
                                         help='Solve a Shortest Superstring instance')
    parser_solve.add_argument('sset_file',
                              type=str,
                              help='String set in "sset v1" format')
    parser_solve.add_argument('--algo',
                              choices=tuple(ALGORITHMS),
                              default='greedy',
                              help='Solver: greedy merging, exact subset dynamic program (at most 18 strings) or '
                                   'brute force (at most 8 strings). Default is: %(default)s')
    parser_solve.add_argument('--output',
                              type=str,
                              default='solution.sset',
                              help='Output file holding the superstring. Default is: %(default)s')
    parser_solve.add_argument('--digraph',
                              type=str,
                              default=None,
                              help='If given, also write the overlap graph as a MAX-ATSP instance to this file')
    _add_common_arguments(parser_solve, threads=False)

    return parser_solve


def add_extract_parser(subparsers):
    """
    Parser for extract

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_extract: the subcommand parser
    """

    parser_extract = subparsers.add_parser('extract',
                                           help='Normalize a superstring of a reduction and read an assignment from it')
    _add_hybrid_arguments(parser_extract)
    parser_extract.add_argument('--superstring',
                                type=str,
                                required=True,
                                help='File in "sset v1" format holding one superstring of the reduction')
    parser_extract.add_argument('--gidx',
                                type=str,
                                default=None,
                                help='Gadget index written by "reduce"; if given it is checked against the '
                                     'rebuilt reduction')
    parser_extract.add_argument('--output',
                                type=str,
                                default='extracted.assignment',
                                help='Output assignment file. Default is: %(default)s')
    _add_polish_argument(parser_extract)
    _add_common_arguments(parser_extract)

    return parser_extract


def add_verify_parser(subparsers):
    """
    Parser for verify

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_verify: the subcommand parser
    """

    parser_verify = subparsers.add_parser('verify',
                                          help='Run the whole reduction on an E3-LIN instance and check every '
                                               'bound')
    parser_verify.add_argument('e3_file',
                               type=str,
                               help='E3-LIN instance in "e3lin v1" format')
    parser_verify.add_argument('--variant',
                               choices=VARIANTS,
                               default='b4',
                               help='Gadget variant for three-variable equations. Default is: %(default)s')
    parser_verify.add_argument('--algo',
                               choices=tuple(ALGORITHMS),
                               default=None,
                               help='If given, read the assignment back from this solver\'s superstring instead of '
                                    'from s_phi')
    parser_verify.add_argument('--superstring',
                               type=str,
                               default=None,
                               help='If given, read the assignment back from this superstring instead')
    _add_assignment_arguments(parser_verify)
    _add_polish_argument(parser_verify)
    _add_matching_arguments(parser_verify)
    _add_common_arguments(parser_verify)

    return parser_verify


def add_bounds_parser(subparsers):
    """
    Parser for bounds

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_bounds: the subcommand parser
    """

    parser_bounds = subparsers.add_parser('bounds',
                                          help='Print the exact gap ratios for k copies and slack delta')
    parser_bounds.add_argument('--k',
                               type=int,
                               default=1,
                               help='Number of copies of the two-equation gadget. Default is: %(default)s')
    parser_bounds.add_argument('--delta',
                               type=Fraction,
                               default=Fraction(1, 100),
                               help='Slack, a fraction strictly between 0 and 1 such as 1/100. Default is: '
                                    '%(default)s')
    _add_common_arguments(parser_bounds, threads=False)

    return parser_bounds


def add_bench_parser(subparsers):
    """
    Parser for bench

    :param argparse._SubParsersAction subparsers:
    :return argparse.ArgumentParser parser_bench: the subcommand parser
    """

    parser_bench = subparsers.add_parser('bench',
                                         help='Check the forward and backward maps on many generated instances')
    parser_bench.add_argument('--template',
                              choices=E3_TEMPLATES,
                              default='random',
                              help='Instance template. Default is: %(default)s')
    parser_bench.add_argument('--copies',
                              type=int,
                              default=1,
                              help='Number of disjoint copies of the template. Default is: %(default)s')
    parser_bench.add_argument('--variables',
                              type=int,
                              default=6,
                              help='Variables per copy of the random template. Default is: %(default)s')
    parser_bench.add_argument('--variant',
                              choices=VARIANTS,
                              default='b4',
                              help='Gadget variant for three-variable equations. Default is: %(default)s')
    parser_bench.add_argument('--matching',
                              choices=MATCHING_STRATEGIES,
                              default='adjacent',
                              help='How the checker positions of every circle are paired. Default is: %(default)s')
    parser_bench.add_argument('--instances',
                              type=int,
                              default=10,
                              help='Number of generated instances. Default is: %(default)s')
    parser_bench.add_argument('--assignments',
                              type=int,
                              default=5,
                              help='Random assignments tried per instance, besides all zeros. Default is: '
                                   '%(default)s')
    _add_common_arguments(parser_bench)

    return parser_bench
