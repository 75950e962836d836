import logging
import sys
from fractions import Fraction

import pytest

from scsgap import gap_bounds, scsgap_main
from scsgap import (assignment_from_superstring, benchmark, build_hybrid_instance, forward_superstring,
                    generate_e3lin, reduce_instance, solve_superstring, verify_reduction)
from scsgap.hybrid_model import read_assignment, read_hybrid, unsat_count
from scsgap.run_report import BOUND_FAILURE_EXIT
from scsgap.superstring_core import read_sset, read_sset_strings

logger = logging.getLogger('scsgap_tests')


def run(module, argv, report_directory):
    args = scsgap_main.parse_arguments(argv)
    module.main(args, str(report_directory), logger=logger)
    return args


def report_values(path):
    values = {}
    for line in path.read_text().splitlines():
        key, _, value = line.partition('=')
        values.setdefault(key, value)
    return values


def test_limit_ratios():
    assert gap_bounds.limit_ratio() == Fraction(333, 332)
    assert gap_bounds.compression_ratio() == Fraction(204, 203)
    assert gap_bounds.limit_ratio(22) == Fraction(345, 344)


def test_ratios_for_k_copies():
    delta = Fraction(1, 100)
    assert gap_bounds.superstring_ratio(1, delta) == Fraction(33299, 37401)
    assert gap_bounds.superstring_ratio(1, delta, gap_bounds.RECOUNTED_CIRCLE_COEFFICIENT) == Fraction(33299, 38001)

    table = gap_bounds.gap_table(10 ** 9, Fraction(1, 10 ** 9))
    assert table['superstring_stated'] < table['superstring_limit']
    assert table['superstring_recounted'] < table['superstring_stated']


@pytest.mark.parametrize('k, delta', [(0, Fraction(1, 2)), (1, Fraction(0)), (1, Fraction(1)), (2.5, Fraction(1, 2))])
def test_ratio_parameters_are_checked(k, delta):
    with pytest.raises(ValueError):
        gap_bounds.superstring_ratio(k, delta)


def test_bounds_subcommand(tmp_path):
    args = run(gap_bounds, ['bounds', '--k', '5', '--delta', '1/50'], tmp_path)
    assert args.delta == Fraction(1, 50)
    values = report_values(tmp_path / 'bounds_report.txt')
    assert values['superstring_limit'] == '333/332'
    assert values['all_checks_passed'] == 'True'
    checks = [line for line in (tmp_path / 'bounds_report.txt').read_text().splitlines() if line.startswith('check=')]
    assert 'value=333/332 bound=333/332 passed=True' in checks[0]
    assert 'value=204/203 bound=204/203 passed=True' in checks[1]
    assert 'value=345/344 bound=345/344 passed=True' in checks[2]


def test_bounds_compare_whole_fractions(tmp_path, monkeypatch):
    # Same numerator, wrong denominator:
    table = gap_bounds.gap_table(5, Fraction(1, 50))
    table['superstring_limit'] = Fraction(333, 331)
    monkeypatch.setattr(gap_bounds, 'gap_table', lambda k, delta: table)

    with pytest.raises(SystemExit) as error:
        run(gap_bounds, ['bounds', '--k', '5', '--delta', '1/50'], tmp_path)
    assert error.value.code == BOUND_FAILURE_EXIT
    assert report_values(tmp_path / 'bounds_report.txt')['all_checks_passed'] == 'False'


def test_bad_delta_exits_with_status_one(tmp_path):
    with pytest.raises(SystemExit) as error:
        run(gap_bounds, ['bounds', '--delta', '3/2'], tmp_path)
    assert error.value.code == 1


def test_pipeline(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    run(generate_e3lin, ['gen', '--template', 'triple', '--output', 'triple.e3lin'], tmp_path)
    run(build_hybrid_instance, ['hybrid', 'triple.e3lin', '--output', 'triple.hybrid'], tmp_path)
    assert read_hybrid('triple.hybrid').counts() == (3, 90, 3)

    run(reduce_instance, ['reduce', 'triple.hybrid', '--output_prefix', 'triple', '--digraph', 'triple.digraph'],
        tmp_path)
    assert read_sset('triple.sset').total_letters == 840
    assert report_values(tmp_path / 'reduce_report.txt')['all_checks_passed'] == 'True'

    run(forward_superstring, ['forward', 'triple.hybrid', '--output', 'forward.sset'], tmp_path)
    assert len(read_sset_strings('forward.sset')[0]) == 522

    run(solve_superstring, ['solve', 'triple.sset', '--algo', 'greedy', '--output', 'greedy.sset'], tmp_path)

    run(assignment_from_superstring, ['extract', 'triple.hybrid', '--superstring', 'greedy.sset', '--gidx',
                                      'triple.gidx', '--output', 'psi.txt'], tmp_path)
    psi_lines = (tmp_path / 'psi.txt').read_text().splitlines()
    assert psi_lines[-1].endswith('bound_ok=True')
    psi = read_assignment('psi.txt')
    assert len(psi) == 63
    unsat = unsat_count(read_hybrid('triple.hybrid'), psi)
    assert psi_lines[-1].startswith(f'unsat={unsat} ')

    # The extracted assignment feeds back into forward:
    run(forward_superstring, ['forward', 'triple.hybrid', '--assignment', 'psi.txt', '--output', 'again.sset'],
        tmp_path)
    assert len(read_sset_strings('again.sset')[0]) <= 522 + unsat

    run(assignment_from_superstring, ['extract', 'triple.hybrid', '--superstring', 'greedy.sset', '--gidx',
                                      'triple.gidx', '--output', 'polished.txt', '--polish'], tmp_path)
    polished = read_assignment('polished.txt')
    assert unsat_count(read_hybrid('triple.hybrid'), polished) <= unsat
    assert (tmp_path / 'polished.txt').read_text().splitlines()[-1].endswith('bound_ok=True')


def test_extract_rejects_a_non_superstring(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(generate_e3lin, ['gen', '--output', 'triple.e3lin'], tmp_path)
    run(build_hybrid_instance, ['hybrid', 'triple.e3lin', '--output', 'triple.hybrid'], tmp_path)
    (tmp_path / 'short.sset').write_text('sset v1\nc:x_1:L c:x_1:Cl\n')

    with pytest.raises(SystemExit) as error:
        run(assignment_from_superstring, ['extract', 'triple.hybrid', '--superstring', 'short.sset'], tmp_path)
    assert error.value.code == 1


@pytest.mark.parametrize('extra', [[], ['--algo', 'greedy'], ['--random_assignment', '--seed', '4'],
                                   ['--algo', 'greedy', '--polish']])
def test_verify(tmp_path, monkeypatch, extra):
    monkeypatch.chdir(tmp_path)
    run(generate_e3lin, ['gen', '--output', 'triple.e3lin'], tmp_path)
    run(verify_reduction, ['verify', 'triple.e3lin'] + extra, tmp_path)
    values = report_values(tmp_path / 'verify_report.txt')
    assert values['all_checks_passed'] == 'True'
    assert values['total_letters'] == '840'


def test_bench(tmp_path):
    run(benchmark, ['bench', '--template', 'triple', '--instances', '2', '--assignments', '1'], tmp_path)
    rows = (tmp_path / 'bench_results.tsv').read_text().splitlines()
    assert rows[0].split('\t') == list(benchmark.BENCH_COLUMNS)
    assert len(rows) == 3
    assert report_values(tmp_path / 'bench_report.txt')['all_checks_passed'] == 'True'


def test_main_without_arguments(monkeypatch):
    monkeypatch.setattr(sys, 'argv', ['scsgap'])
    with pytest.raises(SystemExit) as error:
        scsgap_main.main()
    assert error.value.code == 1


def test_main_writes_logs_and_reports(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(sys, 'argv', ['scsgap', 'bounds', '--k', '3'])
    scsgap_main.main()
    assert (tmp_path / '00_logs_and_reports' / 'reports' / 'bounds_report.txt').is_file()
    assert list((tmp_path / '00_logs_and_reports' / 'logs').glob('bounds_*.log'))
