# !/usr/bin/env python
"""
==============================================================
Description  : 命令行入口模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

子命令:
    simulate | equivalence | blowup | virial | convergence | groundstate  --config PATH
    alpha --gamma-min G --omega W
    plot --csv PATH --columns NAME [NAME ...]

退出码:
    0  完成 / 实验通过
    1  错误, 标准错误流输出单行诊断
    2  实验判定未通过(含分辨率不足)
    3  simulate 检测到爆破

退出码为 0/2/3 且存在输出目录时写出 summary.json:
status, residuals, files(路径与字节数), config_echo。

xtrnls simulate --config run.cfg
python -m xtrnls alpha --gamma-min 1 --omega 0
==============================================================
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, NoReturn

import numpy as np
from xtlog import mylog

from .diagnostics import ExperimentReport, blowup_experiment, convergence_order, frame_equivalence, verify_balance_laws, verify_virial
from .errors import ConfigValidationError, RnlsError
from .io import (
    RunConfig,
    build_grid,
    build_initial_field,
    build_model,
    build_params,
    parse_config,
    render_svg_timeseries,
    write_snapshot,
    write_timeseries_csv,
)
from .model import alpha_omega
from .observables import CSV_COLUMNS, compute_record
from .propagators import RunResult, RunStatus, imaginary_time_ground_state, run

SUMMARY_NAME = 'summary.json'


class ExitCode(IntEnum):
    OK = 0
    ERROR = 1
    VERDICT_FAILED = 2
    BLOWUP = 3


@dataclass
class Summary:
    """一次命令执行的摘要, 最终写为 summary.json"""

    command: str
    output_dir: Path | None
    status: str = 'completed'
    residuals: dict[str, Any] = field(default_factory=dict)
    files: list[Path] = field(default_factory=list)
    config_echo: dict[str, str] = field(default_factory=dict)
    extras: dict[str, Any] = field(default_factory=dict)

    def add_file(self, path: Path) -> Path:
        self.files.append(path)
        return path

    def add_report(self, report: ExperimentReport) -> None:
        self.residuals.update({name: {'value': report.residuals[name], 'tolerance': report.tolerances.get(name), 'pass': report.verdicts.get(name)} for name in report.residuals})
        self.extras[report.name] = {'passed': report.passed, 'notes': report.notes, **report.extras}

    def _relative(self, path: Path) -> str:
        if self.output_dir is not None and path.is_relative_to(self.output_dir):
            return path.relative_to(self.output_dir).as_posix()
        return path.as_posix()

    def to_dict(self) -> dict[str, Any]:
        return {
            'command': self.command,
            'status': self.status,
            'residuals': self.residuals,
            'files': [{'path': self._relative(path), 'bytes': path.stat().st_size} for path in self.files],
            'config_echo': self.config_echo,
            'extras': self.extras,
        }

    def write(self) -> Path | None:
        if self.output_dir is None:
            return None
        path = self.output_dir / SUMMARY_NAME
        self.output_dir.mkdir(parents=True, exist_ok=True)
        with path.open('w', encoding='utf-8', newline='\n') as handle:
            json.dump(_jsonable(self.to_dict()), handle, indent=2, ensure_ascii=False, sort_keys=True)
            handle.write('\n')
        return path


def _jsonable(value: Any) -> Any:
    """转换为严格JSON: 非有限浮点数写成字符串, numpy标量转Python标量"""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, str | int | float | bool) or value is None:
        return value
    return str(value)


class _Parser(argparse.ArgumentParser):
    """参数错误按退出码1处理, 与实验未通过的2区分"""

    def error(self, message: str) -> NoReturn:
        raise RnlsError(f'{self.prog}: {message}')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='xtrnls', description='旋转非线性薛定谔方程谱方法模拟与诊断')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    for name, help_text in (
        ('simulate', '推进并写出观测量CSV与最终快照'),
        ('equivalence', '两个后端交叉验证'),
        ('blowup', '爆破判据实验'),
        ('virial', '位力恒等式检验'),
        ('convergence', '时间收敛阶测量'),
        ('groundstate', '虚时间基态'),
    ):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument('--config', required=True, help='key = value 配置文件路径')
        sub.add_argument('--output-dir', default=None, help='覆盖配置中的 output.dir')

    alpha = commands.add_parser('alpha', help='计算 alpha_omega')
    alpha.add_argument('--gamma-min', type=float, required=True)
    alpha.add_argument('--omega', type=float, required=True, help='旋转频率大小 |Omega|')
    alpha.add_argument('--output-dir', default=None, help='给出时写 summary.json')

    plot = commands.add_parser('plot', help='把观测量CSV画成SVG')
    plot.add_argument('--csv', required=True)
    plot.add_argument('--columns', nargs='+', required=True, metavar='NAME', help=f'可选 {",".join(CSV_COLUMNS)}')
    plot.add_argument('--output', default=None, help='SVG路径, 缺省与CSV同名')
    plot.add_argument('--output-dir', default=None, help='给出时写 summary.json')
    return parser


def _load(args: argparse.Namespace) -> tuple[RunConfig, Path]:
    path = Path(args.config)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as err:
        raise RnlsError(f'无法读取配置 {path}: {err.strerror or err}') from err
    cfg = parse_config(text)
    output_dir = Path(args.output_dir or cfg.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    mylog.info(f'cli | {args.command} config={path} output_dir={output_dir}')
    return cfg, output_dir


def _write_run(result: RunResult, summary: Summary, stem: str = 'timeseries') -> None:
    """写出一次推进的CSV与最终快照"""
    assert summary.output_dir is not None
    summary.add_file(write_timeseries_csv(result.records, summary.output_dir / f'{stem}.csv'))
    summary.add_file(write_snapshot(result.final_field, result.t_final, summary.output_dir / f'{stem}_final.rnls'))
    summary.extras.setdefault('runs', {})[stem] = {
        'status': str(result.status),
        't_final': result.t_final,
        't_detect': result.t_detect,
        'final_frame': str(result.final_frame),
        'records': len(result.records),
    }


def _verdict(report: ExperimentReport, summary: Summary) -> ExitCode:
    summary.add_report(report)
    summary.status = 'pass' if report.passed else 'fail'
    return ExitCode.OK if report.passed else ExitCode.VERDICT_FAILED


def _cmd_simulate(cfg: RunConfig, summary: Summary) -> ExitCode:
    grid, model, params = build_grid(cfg), build_model(cfg), build_params(cfg)
    result = run(build_initial_field(cfg, grid, model), model, params)
    _write_run(result, summary)
    summary.status = str(result.status)
    if result.status is not RunStatus.UNRESOLVED and len(result.records) >= 2:
        try:
            summary.add_report(verify_balance_laws(result))
        except RnlsError as err:
            mylog.warning(f'cli | 守恒律检验跳过: {err.message}')
    if result.status is RunStatus.BLOWUP_DETECTED:
        summary.residuals['t_detect'] = result.t_detect
        return ExitCode.BLOWUP
    return ExitCode.OK if result.completed else ExitCode.VERDICT_FAILED


def _cmd_equivalence(cfg: RunConfig, summary: Summary) -> ExitCode:
    grid, model, params = build_grid(cfg), build_model(cfg), build_params(cfg)
    report = frame_equivalence(model, grid, build_initial_field(cfg, grid, model), params)
    for stem, result in report.runs.items():
        _write_run(result, summary, f'timeseries_{stem}')
    return _verdict(report, summary)


def _cmd_blowup(cfg: RunConfig, summary: Summary) -> ExitCode:
    grid, model, params = build_grid(cfg), build_model(cfg), build_params(cfg)
    report, blowup = blowup_experiment(model, grid, build_initial_field(cfg, grid, model), params)
    _write_run(report.runs['run'], summary)
    summary.residuals['t_detect'] = report.extras['t_detect']
    summary.residuals['t_star_bound'] = blowup.t_star_bound
    if not blowup.applicable:
        summary.add_report(report)
        summary.status = 'not_applicable'
        return ExitCode.OK
    return _verdict(report, summary)


def _cmd_virial(cfg: RunConfig, summary: Summary) -> ExitCode:
    grid, model, params = build_grid(cfg), build_model(cfg), build_params(cfg)
    result = run(build_initial_field(cfg, grid, model), model, params)
    _write_run(result, summary)
    if not result.completed:
        summary.status = str(result.status)
        return ExitCode.VERDICT_FAILED
    return _verdict(verify_virial(result), summary)


def _cmd_convergence(cfg: RunConfig, summary: Summary) -> ExitCode:
    grid, model = build_grid(cfg), build_model(cfg)
    report = convergence_order(model, grid, build_initial_field(cfg, grid, model), cfg.t_end, cfg.dt_ladder(), cfg.backend)
    return _verdict(report, summary)


def _cmd_groundstate(cfg: RunConfig, summary: Summary) -> ExitCode:
    assert summary.output_dir is not None
    grid, model = build_grid(cfg), build_model(cfg)
    state = imaginary_time_ground_state(model, grid, tol=cfg.groundstate_tol)
    record = compute_record(state, 0.0, model)
    summary.add_file(write_snapshot(state, 0.0, summary.output_dir / 'groundstate.rnls'))
    summary.add_file(write_timeseries_csv([record], summary.output_dir / 'groundstate.csv'))
    summary.residuals.update({'energy_zero': record.energy_zero, 'mass': record.mass})
    return ExitCode.OK


_CONFIG_HANDLERS = {
    'simulate': _cmd_simulate,
    'equivalence': _cmd_equivalence,
    'blowup': _cmd_blowup,
    'virial': _cmd_virial,
    'convergence': _cmd_convergence,
    'groundstate': _cmd_groundstate,
}


def _dispatch(args: argparse.Namespace) -> tuple[ExitCode, Summary]:
    if args.command == 'alpha':
        summary = Summary('alpha', Path(args.output_dir) if args.output_dir else None)
        value = alpha_omega(args.gamma_min, abs(args.omega))
        print(format(value, '.17g'))
        summary.residuals['alpha_omega'] = value
        summary.config_echo = {'gamma_min': repr(args.gamma_min), 'omega': repr(args.omega)}
        return ExitCode.OK, summary

    if args.command == 'plot':
        summary = Summary('plot', Path(args.output_dir) if args.output_dir else None)
        summary.add_file(render_svg_timeseries(args.csv, args.columns, args.output))
        summary.config_echo = {'csv': str(args.csv), 'columns': ','.join(args.columns)}
        return ExitCode.OK, summary

    cfg, output_dir = _load(args)
    if cfg.experiment is not None and cfg.experiment != args.command:
        raise ConfigValidationError('experiment', f'配置声明为 {cfg.experiment!r}, 与子命令 {args.command!r} 不符')
    summary = Summary(args.command, output_dir, config_echo=dict(cfg.echo))
    return _CONFIG_HANDLERS[args.command](cfg, summary), summary


def main(argv: Sequence[str] | None = None) -> int:
    """命令行主函数, 返回退出码"""
    try:
        args = build_parser().parse_args(argv)
        code, summary = _dispatch(args)
        summary.write()
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except (RnlsError, OSError) as err:
        message = err.message if isinstance(err, RnlsError) else str(err)
        message = ' '.join(message.split())
        mylog.error(f'cli | {message}')
        sys.stderr.write(f'xtrnls: error: {message}\n')
        return ExitCode.ERROR
    mylog.info(f'cli | {args.command} 结束, 退出码 {int(code)}')
    return int(code)


__all__ = ['ExitCode', 'Summary', 'build_parser', 'main']
