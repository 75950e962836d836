#!/usr/bin/env python

"""
Writes a template E3-LIN instance in "e3lin v1" format.
"""

import textwrap

from scsgap import utils
from scsgap import hybrid_model
from scsgap.run_report import RunReport


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('generate_e3lin', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> GENERATING E3-LIN INSTANCE <======\n')

    try:
        e3 = hybrid_model.generate_e3(args.template,
                                      copies=args.copies,
                                      seed=args.seed,
                                      variables=args.variables)
        e3.validate(allow_any_occurrence=args.template == 'disjoint')
    except ValueError as error:
        utils.exit_on_value_error(error, logger=logger)

    hybrid_model.write_e3(args.output, e3)

    report = RunReport('gen')
    report.results.update({'template': args.template,
                           'copies': args.copies,
                           'seed': args.seed,
                           'equations': len(e3.equations),
                           'variables': len(e3.variables),
                           'output': args.output})
    report.write(report_directory)

    fill = textwrap.fill(f'{"[INFO]:":10} Wrote {len(e3.equations)} equations over {len(e3.variables)} variables '
                         f'to {args.output}', width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.info(fill)
