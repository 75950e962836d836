#!/usr/bin/env python

"""
Logging, input checks and profiling helpers shared by the scsgap subcommands.
"""

import os
import sys
import logging
import datetime
import io
import pstats
import textwrap
import platform


def check_inputs(file_list,
                 logger=None):
    """
    Checks that provided files exist and are not empty; exits with status 1 otherwise.

    :param list file_list: paths of input files
    :param logging.Logger logger: a logger object
    :return:
    """

    missing_files = []
    empty_files = []
    for item in file_list:
        if not os.path.isfile(item):
            missing_files.append(item)
        elif not file_exists_and_not_empty(item):
            empty_files.append(item)
        else:
            logger.debug(f'Expected file {item} exists and is not empty, proceeding...')

    if missing_files:
        joined = ', '.join(missing_files)
        logger.error(f'{"[ERROR]:":10} The following file(s) do not exist: {joined}')
        sys.exit(1)

    if empty_files:
        joined = ', '.join(empty_files)
        logger.error(f'{"[ERROR]:":10} The following file(s) are empty: {joined}')
        sys.exit(1)


def load_input(loader, path, logger=None):
    """
    Checks an input file and parses it with `loader`; parse errors are logged and end the run with status 1.

    :param function loader: parser taking a path
    :param str path: path to the input file
    :param logging.Logger logger: a logger object
    :return: whatever the loader returns
    """

    check_inputs([path], logger=logger)
    try:
        return loader(path)
    except ValueError as error:
        fill = textwrap.fill(f'{"[ERROR]:":10} Could not read {path}: {error}', width=90,
                             subsequent_indent=' ' * 11, break_on_hyphens=False)
        logger.error(fill)
        sys.exit(1)


def exit_on_value_error(error, logger=None):
    """
    Log a library ValueError as an input error and exit with status 1.
    """

    fill = textwrap.fill(f'{"[ERROR]:":10} {error}', width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.error(fill)
    sys.exit(1)


def setup_logger(name, log_file, console_level=logging.INFO, file_level=logging.DEBUG,
                 logger_object_level=logging.DEBUG):
    """
    Build the logger of one scsgap subcommand.

    Messages go to stderr from console_level up and to a timestamped log file from file_level up. The package logger
    "scsgap" is attached to the same file so that library modules log their DEBUG records next to the command's.

    :param str name: logger name
    :param str log_file: log file path without the timestamp and extension
    :param int console_level: stderr threshold
    :param int file_level: log file threshold
    :param int logger_object_level: threshold of the logger itself
    :return logging.Logger: the subcommand logger
    """

    # Timestamp for the log file name:
    date_and_time = datetime.datetime.now().strftime("%Y-%m-%d-%H_%M_%S")

    file_handler = logging.FileHandler(f'{log_file}_{date_and_time}.log', mode='w')
    file_handler.setLevel(file_level)
    file_format = logging.Formatter('%(asctime)s - %(filename)s - %(name)s - %(funcName)s - %(levelname)s - %('
                                    'message)s')
    file_handler.setFormatter(file_format)

    # stderr:
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_format = logging.Formatter('%(message)s')
    console_handler.setFormatter(console_format)

    # Setup logger; a repeated call in the same process replaces the previous handlers:
    logger_object = logging.getLogger(name)
    logger_object.setLevel(logger_object_level)
    logger_object.propagate = False
    for handler in list(logger_object.handlers):
        logger_object.removeHandler(handler)
        handler.close()

    logger_object.addHandler(console_handler)
    logger_object.addHandler(file_handler)

    # Library modules log to the same file:
    package_logger = logging.getLogger('scsgap')
    package_logger.setLevel(logging.DEBUG)
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
        handler.close()
    package_file_handler = logging.FileHandler(f'{log_file}_{date_and_time}.log', mode='a')
    package_file_handler.setLevel(file_level)
    package_file_handler.setFormatter(file_format)
    package_logger.addHandler(package_file_handler)

    return logger_object


def createfolder(directory):
    """
    Create a directory (and its parents) unless it exists; exit with status 1 if it cannot be made.
    """

    try:
        if not os.path.exists(directory):
            os.makedirs(directory)
        return directory
    except OSError:
        print(f'{"[ERROR]:":10} Error creating directory: {directory}')
        sys.exit(1)


def file_exists_and_not_empty(file_name):
    """
    True for a regular file with at least one byte.
    """

    return os.path.isfile(file_name) and not os.path.getsize(file_name) == 0


def log_called_arguments(module_name, args, logger=None):
    """
    Debug-log the command line and parsed arguments a module was called with.
    """

    logger.debug(f'{"[INFO]:":10} Module {module_name} was called with these arguments:')
    fill = textwrap.fill(' '.join(sys.argv[1:]), width=90, initial_indent=' ' * 11, subsequent_indent=' ' * 11,
                         break_on_hyphens=False)
    logger.debug(f'{fill}\n')
    logger.debug(args)


def cprofile_to_csv(profile_binary_file):
    """
    Render the statistics of a finished cProfile.Profile as csv text, sorted by cumulative time.

    Adapted from https://gist.github.com/ralfstx/a173a7e4c37afa105a66f371a09aa83e
    """

    out_stream = io.StringIO()
    pstats.Stats(profile_binary_file, stream=out_stream).sort_stats('cumtime').print_stats()
    result = out_stream.getvalue()
    result = 'ncalls' + result.split('ncalls')[-1]  # chop off header lines
    lines = [','.join(line.rstrip().split(None, 5)) for line in result.split('\n')]

    return '\n'.join(lines)


def get_platform_info(logger=None):
    """
    Debug-log the platform and Python version.
    """

    logger.debug(f'uname:     {platform.uname()}')
    logger.debug(f'system:    {platform.system()}')
    logger.debug(f'release:   {platform.release()}')
    logger.debug(f'machine:   {platform.machine()}')
    logger.debug(f'python:    {platform.python_version()}')
