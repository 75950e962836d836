#!/usr/bin/env python

"""
Runs the forward and backward maps over many generated instances and random assignments.

One row per instance goes to a tab-separated report: sizes, the worst forward excess |s_phi| - (base + unsat(phi))
over all trials (never positive when the bounds hold), and counts of failed checks.
"""

import os
import random
import sys
import time
import textwrap
import traceback
from concurrent.futures import as_completed
from concurrent.futures.process import ProcessPoolExecutor

import progressbar

from scsgap import utils
from scsgap import hybrid_model
from scsgap import gadgets
from scsgap import forward_map
from scsgap import backward_map
from scsgap.run_report import BOUND_FAILURE_EXIT, RunReport

BENCH_COLUMNS = ('instance', 'seed', 'n', 'm2', 'm3', 'strings', 'letters', 'trials', 'max_excess',
                 'forward_failures', 'normalize_failures', 'roundtrip_failures', 'seconds')


def bench_instance(instance_number, template, copies, variables, matching, variant, assignments, seed):
    """
    Build one instance and check s_phi and its round trip for `assignments` random assignments plus all zeros.

    :return dict: one report row keyed by BENCH_COLUMNS
    """

    start = time.perf_counter()
    rng = random.Random(seed)
    e3 = hybrid_model.generate_e3(template, copies=copies, seed=seed, variables=variables)
    instance = hybrid_model.build_hybrid(e3, matching_strategy=matching,
                                         allow_any_occurrence=template == 'disjoint')
    reduction = gadgets.reduce(instance, gadgets.GadgetVariant.from_name(variant))

    trials = [hybrid_model.Assignment.zeros(instance)]
    trials.extend(hybrid_model.Assignment.random(instance, rng) for _ in range(assignments))

    max_excess = None
    forward_failures = normalize_failures = roundtrip_failures = 0
    for phi in trials:
        s_phi = forward_map.build_superstring(reduction, phi)
        forward_check = forward_map.check_forward(reduction, phi, s_phi)
        excess = forward_check.length - forward_check.bound
        max_excess = excess if max_excess is None else max(max_excess, excess)
        forward_failures += not forward_check.ok

        ns = backward_map.normalize(s_phi, reduction)
        normalize_failures += len(ns.string) > len(s_phi)
        psi = backward_map.extract_assignment(ns, reduction)
        roundtrip = backward_map.check_roundtrip(reduction, s_phi, psi)
        roundtrip_failures += not roundtrip.ok or roundtrip.unsat > forward_check.unsat

    n, m2, m3 = instance.counts()
    return {'instance': instance_number,
            'seed': seed,
            'n': n,
            'm2': m2,
            'm3': m3,
            'strings': len(reduction.strings),
            'letters': reduction.strings.total_letters,
            'trials': len(trials),
            'max_excess': max_excess,
            'forward_failures': forward_failures,
            'normalize_failures': normalize_failures,
            'roundtrip_failures': roundtrip_failures,
            'seconds': f'{time.perf_counter() - start:.3f}'}


def run_benchmark(args, logger=None):
    """
    Run bench_instance for every instance, in parallel when args.threads > 1.

    :return list: report rows ordered by instance number
    """

    jobs = [(number, args.template, args.copies, args.variables, args.matching, args.variant, args.assignments,
             args.seed + number) for number in range(1, args.instances + 1)]
    rows = []
    bar = progressbar.ProgressBar(max_value=len(jobs))

    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            future_results = [pool.submit(bench_instance, *job) for job in jobs]
            for future in as_completed(future_results):
                try:
                    rows.append(future.result())
                except Exception as error:
                    logger.error(f'{"[ERROR]:":10} Error raised while benchmarking an instance: {error}')
                    logger.error(f'{"[ERROR]:":10} traceback is:\n{traceback.format_exc()}')
                    sys.exit(1)
                bar.update(len(rows))
    else:
        for job in jobs:
            rows.append(bench_instance(*job))
            bar.update(len(rows))
    bar.finish()

    return sorted(rows, key=lambda row: row['instance'])


def write_bench_tsv(path, rows):
    with open(path, 'w', encoding='utf-8') as tsv_handle:
        tsv_handle.write('\t'.join(BENCH_COLUMNS) + '\n')
        for row in rows:
            tsv_handle.write('\t'.join(str(row[column]) for column in BENCH_COLUMNS) + '\n')
    return path


def main(args, report_directory, logger=None):
    """
    Entry point for the scsgap_main.py script

    :param args: argparse namespace with subparser options for function main()
    :param str report_directory: path to directory for report files
    :param logging.Logger logger: a logger object
    :return:
    """

    utils.log_called_arguments('benchmark', args, logger=logger)
    logger.info(f'\n{"[INFO]:":10} ======> BENCHMARKING FORWARD AND BACKWARD MAPS <======\n')

    if args.instances < 1 or args.assignments < 0:
        utils.exit_on_value_error(ValueError('--instances must be at least 1 and --assignments at least 0'),
                                  logger=logger)

    start = time.perf_counter()
    try:
        rows = run_benchmark(args, logger=logger)
    except ValueError as error:
        utils.exit_on_value_error(error, logger=logger)

    tsv_path = write_bench_tsv(os.path.join(report_directory, 'bench_results.tsv'), rows)

    report = RunReport('bench')
    report.timed('bench', start)
    report.results.update({'instances': len(rows),
                           'trials': sum(row['trials'] for row in rows),
                           'tsv': tsv_path})
    report.check_at_most('max_excess', '|s_phi| - (5m2 + Cm3 + 8n + unsat(phi))',
                         max(row['max_excess'] for row in rows), 0)
    for column in ('forward_failures', 'normalize_failures', 'roundtrip_failures'):
        report.check_equal(column, f'instances x trials with {column.replace("_", " ")}',
                           sum(row[column] for row in rows), 0)
    report.write(report_directory)

    fill = textwrap.fill(f'{"[INFO]:":10} Benchmarked {len(rows)} instance(s); per-instance results written to '
                         f'{tsv_path}', width=90, subsequent_indent=' ' * 11, break_on_hyphens=False)
    logger.info(fill)

    if not report.passed:
        for check in report.failed:
            logger.error(f'{"[ERROR]:":10} {check.line()}')
        sys.exit(BOUND_FAILURE_EXIT)
