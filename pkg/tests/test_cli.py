# !/usr/bin/env python
"""
==============================================================
Description  : 命令行测试
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

import json

import pytest

from xtrnls.cli import ExitCode, main
from xtrnls.io import read_snapshot, read_timeseries_csv

from .conftest import CASE_I_AMPLITUDE

SMALL_RUN = """
dimension = 2
n = 32
box = 8
gamma = 1, 1.2
omega = 0.3
lambda = 0.5
dt = 1e-2
t_end = 0.1
sample_every = 2
"""


def _error_lines(err: str) -> list[str]:
    return [line for line in err.splitlines() if line.startswith('xtrnls: error:')]


@pytest.fixture
def config_file(tmp_path):
    def factory(text: str = SMALL_RUN, name: str = 'run.cfg'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path

    return factory


def test_alpha_prints_value(capsys):
    assert main(['alpha', '--gamma-min', '1', '--omega', '0']) == ExitCode.OK
    assert capsys.readouterr().out.strip() == '2'


def test_alpha_writes_summary_when_asked(tmp_path, capsys):
    assert main(['alpha', '--gamma-min', '1', '--omega', '0.5', '--output-dir', str(tmp_path)]) == 0
    summary = json.loads((tmp_path / 'summary.json').read_text(encoding='utf-8'))
    assert summary['command'] == 'alpha'
    assert summary['residuals']['alpha_omega'] == pytest.approx(float(capsys.readouterr().out))


def test_alpha_rejects_fast_rotation(capsys):
    assert main(['alpha', '--gamma-min', '1', '--omega', '1.5']) == ExitCode.ERROR
    assert len(_error_lines(capsys.readouterr().err)) == 1


def test_bad_arguments_exit_with_error(capsys):
    assert main(['alpha', '--gamma-min', 'x', '--omega', '0']) == ExitCode.ERROR
    assert main(['teleport']) == ExitCode.ERROR
    assert len(_error_lines(capsys.readouterr().err)) == 2


def test_missing_config_file(tmp_path, capsys):
    assert main(['simulate', '--config', str(tmp_path / 'absent.cfg')]) == ExitCode.ERROR
    assert len(_error_lines(capsys.readouterr().err)) == 1


def test_invalid_config_names_field(config_file, tmp_path, capsys):
    path = config_file(SMALL_RUN.replace('n = 32', 'n = 30'))
    assert main(['simulate', '--config', str(path), '--output-dir', str(tmp_path / 'out')]) == ExitCode.ERROR
    (line,) = _error_lines(capsys.readouterr().err)
    assert 'n' in line
    assert not (tmp_path / 'out' / 'summary.json').exists()


def test_declared_experiment_must_match_command(config_file, tmp_path, capsys):
    path = config_file(SMALL_RUN + 'experiment = blowup\n')
    assert main(['simulate', '--config', str(path), '--output-dir', str(tmp_path / 'out')]) == ExitCode.ERROR
    (line,) = _error_lines(capsys.readouterr().err)
    assert 'experiment' in line
    assert not (tmp_path / 'out' / 'summary.json').exists()

    matching = config_file(SMALL_RUN + 'experiment = simulate\n', name='match.cfg')
    assert main(['simulate', '--config', str(matching), '--output-dir', str(tmp_path / 'ok')]) == ExitCode.OK


def test_simulate_writes_outputs(config_file, tmp_path):
    out = tmp_path / 'out'
    assert main(['simulate', '--config', str(config_file()), '--output-dir', str(out)]) == ExitCode.OK
    records = read_timeseries_csv(out / 'timeseries.csv')
    assert len(records) == 6
    psi, t = read_snapshot(out / 'timeseries_final.rnls')
    assert psi.grid.n == (32, 32)
    assert t == pytest.approx(0.1)

    summary = json.loads((out / 'summary.json').read_text(encoding='utf-8'))
    assert summary['status'] == 'completed'
    assert summary['config_echo']['trap.gamma'] == '1, 1.2'
    assert {item['path'] for item in summary['files']} == {'timeseries.csv', 'timeseries_final.rnls'}
    assert all(item['bytes'] > 0 for item in summary['files'])
    assert summary['residuals']['mass']['pass'] is True


def test_simulate_is_byte_reproducible(config_file, tmp_path):
    path = config_file()
    assert main(['simulate', '--config', str(path), '--output-dir', str(tmp_path / 'a')]) == 0
    assert main(['simulate', '--config', str(path), '--output-dir', str(tmp_path / 'b')]) == 0
    for name in ('timeseries.csv', 'timeseries_final.rnls'):
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes()


def test_output_dir_from_config(config_file, tmp_path):
    out = tmp_path / 'from_config'
    path = config_file(SMALL_RUN + f'output_dir = {out}\n')
    assert main(['simulate', '--config', str(path)]) == ExitCode.OK
    assert (out / 'summary.json').exists()


def test_simulate_reports_blowup(config_file, tmp_path):
    text = f"""
dimension = 2
n = 64
box = 8
gamma = 1
lambda = -1
dt = 1e-3
t_end = 3
sample_every = 100
initial.amplitude = {CASE_I_AMPLITUDE!r}
solver.blowup_grad_factor = 2
"""
    out = tmp_path / 'out'
    assert main(['simulate', '--config', str(config_file(text)), '--output-dir', str(out)]) == ExitCode.BLOWUP
    summary = json.loads((out / 'summary.json').read_text(encoding='utf-8'))
    assert summary['status'] == 'blowup_detected'
    assert 0.0 < summary['residuals']['t_detect'] < 3.0


def test_simulate_unresolved_exit_code(config_file, tmp_path):
    text = SMALL_RUN.replace('lambda = 0.5', 'lambda = -1') + 'initial.width = 0.25\ninitial.amplitude = 8\n'
    out = tmp_path / 'out'
    assert main(['simulate', '--config', str(config_file(text)), '--output-dir', str(out)]) == ExitCode.VERDICT_FAILED
    assert json.loads((out / 'summary.json').read_text(encoding='utf-8'))['status'] == 'unresolved'


def test_equivalence_writes_both_series(config_file, tmp_path):
    text = SMALL_RUN.replace('n = 32', 'n = 64').replace('dt = 1e-2', 'dt = 1e-3').replace('sample_every = 2', 'sample_every = 20')
    out = tmp_path / 'out'
    code = main(['equivalence', '--config', str(config_file(text)), '--output-dir', str(out)])
    assert code == ExitCode.OK
    assert (out / 'timeseries_lab_frame.csv').exists()
    assert (out / 'timeseries_rotating_frame.csv').exists()
    summary = json.loads((out / 'summary.json').read_text(encoding='utf-8'))
    assert summary['residuals']['field_l2']['pass'] is True


def test_blowup_not_applicable_exits_zero(config_file, tmp_path):
    out = tmp_path / 'out'
    assert main(['blowup', '--config', str(config_file()), '--output-dir', str(out)]) == ExitCode.OK
    summary = json.loads((out / 'summary.json').read_text(encoding='utf-8'))
    assert summary['status'] == 'not_applicable'
    assert summary['residuals']['t_star_bound'] is None


def test_groundstate_command(config_file, tmp_path):
    text = SMALL_RUN.replace('omega = 0.3\n', '')
    out = tmp_path / 'out'
    assert main(['groundstate', '--config', str(config_file(text)), '--output-dir', str(out)]) == ExitCode.OK
    psi, _t = read_snapshot(out / 'groundstate.rnls')
    assert psi.grid.n == (32, 32)
    (record,) = read_timeseries_csv(out / 'groundstate.csv')
    assert record.mass == pytest.approx(1.0, abs=1e-10)


def test_plot_command(config_file, tmp_path):
    out = tmp_path / 'out'
    assert main(['simulate', '--config', str(config_file()), '--output-dir', str(out)]) == 0
    svg = tmp_path / 'mass.svg'
    assert main(['plot', '--csv', str(out / 'timeseries.csv'), '--columns', 'mass', 'energy_omega', '--output', str(svg)]) == 0
    assert svg.read_bytes().startswith(b'<?xml')


def test_plot_unknown_column(config_file, tmp_path, capsys):
    out = tmp_path / 'out'
    main(['simulate', '--config', str(config_file()), '--output-dir', str(out)])
    assert main(['plot', '--csv', str(out / 'timeseries.csv'), '--columns', 'entropy']) == ExitCode.ERROR
    assert len(_error_lines(capsys.readouterr().err)) == 1


@pytest.mark.slow
def test_blowup_command_case_i(config_file, tmp_path):
    text = f"""
dimension = 2
n = 256
box = 5
gamma = 1
omega = 0.5
lambda = -1
dt = 1e-4
t_end = 1
sample_every = 100
initial.amplitude = {CASE_I_AMPLITUDE!r}
"""
    out = tmp_path / 'out'
    assert main(['blowup', '--config', str(config_file(text)), '--output-dir', str(out)]) == ExitCode.OK
    summary = json.loads((out / 'summary.json').read_text(encoding='utf-8'))
    assert summary['status'] == 'pass'
    assert summary['residuals']['t_detect'] <= 1.25 * summary['residuals']['t_star_bound']
