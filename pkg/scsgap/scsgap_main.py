#!/usr/bin/env python

"""
scsgap: a gap-preserving reduction from E3-LIN to the Shortest Superstring problem

Builds the Hybrid instance of an E3-LIN instance, reduces it to a string set, maps assignments to short
superstrings and superstrings back to assignments, and checks every length bound on the way.

For a list of available subcommands, run:

    scsgap --help

"""

import argparse
import sys
import cProfile
import textwrap

# f-strings will produce a 'SyntaxError: invalid syntax' error if not supported by Python version:
f'scsgap requires Python 3.8 or higher.'

# Import non-standard-library modules:
unsuccessful_imports = []
try:
    import numpy
except ImportError:
    unsuccessful_imports.append('numpy')
try:
    import progressbar
except ImportError:
    unsuccessful_imports.append('progressbar2')


if unsuccessful_imports:
    package_list = '\n'.join(unsuccessful_imports)
    sys.exit(f'The required Python packages are not found:\n\n{package_list}\n\nAre they installed for the Python '
             f'installation used to run scsgap?')

# Import program modules:
from scsgap.version import __version__
from scsgap import scsgap_subparsers
from scsgap import generate_e3lin
from scsgap import build_hybrid_instance
from scsgap import reduce_instance
from scsgap import forward_superstring
from scsgap import solve_superstring
from scsgap import assignment_from_superstring
from scsgap import verify_reduction
from scsgap import gap_bounds
from scsgap import benchmark
from scsgap import utils

########################################################################################################################
# Define functions
########################################################################################################################


def _start_subcommand(args, subcommand, log_directory):
    """
    Create the subcommand logger and log the version, parameters and platform.

    :param args: argparse namespace for the subcommand
    :param str subcommand: subcommand name, used for the log file name
    :param str log_directory: path to directory for log files
    :return logging.Logger: a logger object
    """

    # Create a dictionary from the argparse Namespace:
    parameters = vars(args)

    logger = utils.setup_logger(__name__, f'{log_directory}/{subcommand}')

    logger.info(f'{"[INFO]:":10} scsgap version {__version__} subcommand "{subcommand}" was called with these '
                f'arguments:\n')

    for parameter, value in parameters.items():
        if not parameter == 'func':
            logger.info(f'{" " * 10} {parameter}: {value}')
    logger.info('')

    # Log system details for debugging:
    utils.get_platform_info(logger=logger)

    return logger


def gen_main(args,
             log_directory=None,
             report_directory=None):
    """
    Calls the function main() from module generate_e3lin

    :param args: argparse namespace with subparser options for function generate_e3lin.main()
    :param str log_directory: path to directory for log files
    :param str report_directory: path to directory for report files
    :return: None: no return value specified; default is None
    """

    logger = _start_subcommand(args, 'gen', log_directory)

    generate_e3lin.main(
        args,
        report_directory,
        logger=logger)


def hybrid_main(args,
                log_directory=None,
                report_directory=None):
    """
    Turn an E3-LIN file into a Hybrid instance (subcommand hybrid).
    """

    logger = _start_subcommand(args, 'hybrid', log_directory)

    build_hybrid_instance.main(
        args,
        report_directory,
        logger=logger)


def reduce_main(args,
                log_directory=None,
                report_directory=None):
    """
    Reduce a Hybrid instance to a string set (subcommand reduce).
    """

    logger = _start_subcommand(args, 'reduce', log_directory)

    reduce_instance.main(
        args,
        report_directory,
        logger=logger)


def forward_main(args,
                 log_directory=None,
                 report_directory=None):
    """
    Build the superstring of an assignment (subcommand forward).
    """

    logger = _start_subcommand(args, 'forward', log_directory)

    # Assignment file and random assignment are alternatives:
    if args.assignment and args.random_assignment:
        logger.error(f'{"[ERROR]:":10} Please provide at most one of the parameters --assignment, '
                     f'--random_assignment\n')
        sys.exit(1)

    forward_superstring.main(
        args,
        report_directory,
        logger=logger)


def solve_main(args,
               log_directory=None,
               report_directory=None):
    """
    Run a superstring solver on an sset file (subcommand solve).
    """

    logger = _start_subcommand(args, 'solve', log_directory)

    solve_superstring.main(
        args,
        report_directory,
        logger=logger)


def extract_main(args,
                 log_directory=None,
                 report_directory=None):
    """
    Read an assignment back from a superstring (subcommand extract).
    """

    logger = _start_subcommand(args, 'extract', log_directory)

    assignment_from_superstring.main(
        args,
        report_directory,
        logger=logger)


def verify_main(args,
                log_directory=None,
                report_directory=None):
    """
    Run the whole reduction round trip and check every bound (subcommand verify).
    """

    logger = _start_subcommand(args, 'verify', log_directory)

    if args.assignment and args.random_assignment:
        logger.error(f'{"[ERROR]:":10} Please provide at most one of the parameters --assignment, '
                     f'--random_assignment\n')
        sys.exit(1)

    if args.algo and args.superstring:
        logger.error(f'{"[ERROR]:":10} Please provide at most one of the parameters --algo, --superstring\n')
        sys.exit(1)

    verify_reduction.main(
        args,
        report_directory,
        logger=logger)


def bounds_main(args,
                log_directory=None,
                report_directory=None):
    """
    Report the inapproximability ratios (subcommand bounds).
    """

    logger = _start_subcommand(args, 'bounds', log_directory)

    gap_bounds.main(
        args,
        report_directory,
        logger=logger)


def bench_main(args,
               log_directory=None,
               report_directory=None):
    """
    Benchmark the forward and backward maps on random instances (subcommand bench).
    """

    logger = _start_subcommand(args, 'bench', log_directory)

    benchmark.main(
        args,
        report_directory,
        logger=logger)


def parse_arguments(argv=None):
    """
    Creates main parser and add subparsers. Parses command line arguments

    :param list argv: arguments to parse; sys.argv[1:] when None
    :return argparse.Namespace arguments: arguments for the given command/subcommand
    """

    parser = argparse.ArgumentParser(prog='scsgap', description=__doc__,
                                     formatter_class=argparse.RawTextHelpFormatter,
                                     epilog='To view parameters and help for a subcommand, use e.g. "reduce --help"')
    group_1 = parser.add_mutually_exclusive_group(required=False)
    group_1.add_argument('--version', '-v',
                         dest='version',
                         action='version',
                         version=f'scsgap {__version__}',
                         help='Print the scsgap version number.')

    # Add subparsers:
    subparsers = parser.add_subparsers(title='Subcommands for scsgap', metavar='', )
    subparsers.required = True
    parser_gen = scsgap_subparsers.add_gen_parser(subparsers)
    parser_hybrid = scsgap_subparsers.add_hybrid_parser(subparsers)
    parser_reduce = scsgap_subparsers.add_reduce_parser(subparsers)
    parser_forward = scsgap_subparsers.add_forward_parser(subparsers)
    parser_solve = scsgap_subparsers.add_solve_parser(subparsers)
    parser_extract = scsgap_subparsers.add_extract_parser(subparsers)
    parser_verify = scsgap_subparsers.add_verify_parser(subparsers)
    parser_bounds = scsgap_subparsers.add_bounds_parser(subparsers)
    parser_bench = scsgap_subparsers.add_bench_parser(subparsers)

    # Set functions for subparsers:
    parser_gen.set_defaults(func=gen_main)
    parser_hybrid.set_defaults(func=hybrid_main)
    parser_reduce.set_defaults(func=reduce_main)
    parser_forward.set_defaults(func=forward_main)
    parser_solve.set_defaults(func=solve_main)
    parser_extract.set_defaults(func=extract_main)
    parser_verify.set_defaults(func=verify_main)
    parser_bounds.set_defaults(func=bounds_main)
    parser_bench.set_defaults(func=bench_main)

    # Parse and return all arguments:
    arguments = parser.parse_args(argv)

    return arguments


def main():

    title = textwrap.dedent(
        r"""

      ___  ___  ___   __ _  __ _  _ __
     / __|/ __|/ __| / _` |/ _` || '_ \
     \__ \ (__ \__ \| (_| | (_| || |_) |
     |___/\___||___/ \__, |\__,_|| .__/
                     |___/       |_|
                          ..xyz..yzx..zxy..

        """)

    sys.stderr.write(title)
    sys.stderr.flush()

    if len(sys.argv) == 1:
        sys.stderr.write(__doc__)
        sys.exit(1)

    # Parse arguments for the command/subcommand used:
    args = parse_arguments()

    # Create a directory for logs and reports of each subcommand:
    utils.createfolder('00_logs_and_reports')
    log_directory = utils.createfolder('00_logs_and_reports/logs')
    report_directory = utils.createfolder('00_logs_and_reports/reports')

    # Run the function associated with the subcommand, with or without cProfile:
    if args.run_profiler:
        profiler = cProfile.Profile()
        profiler.enable()

        args.func(args,
                  log_directory=log_directory,
                  report_directory=report_directory)

        profiler.disable()
        csv = utils.cprofile_to_csv(profiler)

        with open(f'{sys.argv[1]}_cprofile.csv', 'w+') as cprofile_handle:
            cprofile_handle.write(csv)
    else:
        args.func(args,
                  log_directory=log_directory,
                  report_directory=report_directory)


########################################################################################################################
# Run the script
########################################################################################################################
if __name__ == '__main__':
    main()

################################################## END OF SCRIPT #######################################################
